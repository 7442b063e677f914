/*
unfurl - surface flattening toolkit

Copyright 2026 The unfurl authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "unfurl/kernels.hpp"
#include "unfurl/mesh.hpp"
#include "unfurl/uv_map.hpp"

namespace unfurl
{

/**
 * @brief 8-bit raster with the mapping from UV space to pixels
 *
 * Pixel (x,y) covers the UV point origin + ((x+0.5)/scale, ...) with row 0
 * at the top (decreasing v). scale is pixels per UV unit.
 */
struct RasterImage {
    int width{0};
    int height{0};
    int channels{1};  // 1 = grayscale, 3 = RGB
    std::vector<std::uint8_t> pixels;
    Vec2 origin;
    double scale{1.0};

    std::uint8_t& at(int x, int y, int c = 0)
    {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t at(int x, int y, int c = 0) const
    {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
};

/** @brief Texture raster plus the fold coverage mask */
struct TextureRaster {
    RasterImage image;     // grayscale
    RasterImage fold_mask; // 255 where more than one face claimed the pixel
    std::size_t fold_pixel_count{0};
};

/**
 * @brief Render the flattened texture image
 *
 * Pixel-center sampling with a deterministic shared-edge tie rule; each
 * covered pixel takes barycentric interpolation of per-vertex intensity,
 * or a bilinear source-texture lookup when the mesh carries one. Pixels
 * claimed by several faces (folds) go to the face with the greatest 3D
 * area and are flagged in the fold mask. Background is 0.
 *
 * @throws MissingTexture when the mesh has neither intensity nor texture
 * @throws EmptyParameterization when no face has 2D extent
 */
TextureRaster rasterize_texture(const TriMesh3& mesh, const UVMap& uv, double resolution,
                                kernels::Backend backend = kernels::default_backend());

/**
 * @brief Per-face flat-color error image
 *
 * Each face is filled with the shipped 256-entry colormap sampled at
 * (value-lo)/(hi-lo), clamped to [0,1].
 *
 * @throws LengthMismatch unless values has one entry per face
 */
RasterImage heatmap(const TriMesh3& mesh, const UVMap& uv,
                    const std::vector<double>& per_face_values, double lo, double hi,
                    double resolution,
                    kernels::Backend backend = kernels::default_backend());

/** @brief Binary PPM out: P5 for 1 channel, P6 for 3; maxval 255, no comments */
void write_ppm(const RasterImage& image, const std::filesystem::path& path);

/** @brief Read a binary P5/P6 file (used for sidecar textures) */
RasterImage read_ppm(const std::filesystem::path& path);

/** The fixed 256-entry RGB colormap used by heatmap() */
const std::array<std::array<std::uint8_t, 3>, 256>& error_colormap();

}  // namespace unfurl
