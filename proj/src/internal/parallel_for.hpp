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

#include "unfurl/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace unfurl::kernels::detail
{

/**
 * Static-schedule parallel loop over [0, count). Each index must write
 * disjoint outputs; per-index work is identical on both backends, so
 * results are bit-identical regardless of backend or thread count.
 */
template <class Fn>
void parallel_for(Backend backend, std::int64_t count, Fn&& fn)
{
#ifdef _OPENMP
    if (backend == Backend::OpenMP) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
#else
    (void)backend;
#endif
    for (std::int64_t i = 0; i < count; i++) {
        fn(i);
    }
}

}  // namespace unfurl::kernels::detail
