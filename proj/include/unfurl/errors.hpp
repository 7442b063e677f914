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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace unfurl
{

/** @brief Base class for all toolkit errors */
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/** @brief Malformed or unreadable mesh file */
class ParseError : public Error
{
public:
    using Error::Error;
};

struct ValidationReport;

/** @brief Mesh violates a structural invariant; carries the validation report */
class InvalidMesh : public Error
{
public:
    InvalidMesh(const std::string& msg, std::vector<std::uint32_t> degenerateFaces = {},
                int boundaryLoops = -1)
        : Error(msg)
        , degenerate_face_ids(std::move(degenerateFaces))
        , boundary_loop_count(boundaryLoops)
    {
    }

    std::vector<std::uint32_t> degenerate_face_ids;
    int boundary_loop_count;
};

/** @brief Operation requires disk topology (exactly one boundary loop) */
class NotADisk : public Error
{
public:
    using Error::Error;
};

/** @brief A linear or nonlinear solve failed or did not converge */
class SolverFailure : public Error
{
public:
    using Error::Error;
};

/** @brief Simulation produced non-finite positions or velocities */
class Diverged : public Error
{
public:
    using Error::Error;
};

/** @brief Parameterization has (near-)zero 2D area where a metric needs one */
class DegenerateParameterization : public Error
{
public:
    DegenerateParameterization(const std::string& msg,
                               std::vector<std::uint32_t> faces = {})
        : Error(msg), face_ids(std::move(faces))
    {
    }

    std::vector<std::uint32_t> face_ids;
};

/** @brief Mesh carries neither per-vertex intensity nor a source texture */
class MissingTexture : public Error
{
public:
    using Error::Error;
};

/** @brief UV map has no renderable faces */
class EmptyParameterization : public Error
{
public:
    using Error::Error;
};

/** @brief Per-face value array does not match the face count */
class LengthMismatch : public Error
{
public:
    using Error::Error;
};

/** @brief Invalid run configuration */
class ConfigError : public Error
{
public:
    using Error::Error;
};

}  // namespace unfurl
