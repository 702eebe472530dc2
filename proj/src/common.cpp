// SPDX-License-Identifier: Apache-2.0
//
// mmwlink - link-level simulator for mmWave MIMO-OFDM with low-resolution converters
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmwlink/common.hpp"

#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

#if defined(__GNUC__)
// Pin the BLAS backend to one thread when OpenBLAS is the provider. The
// matrices here are small, and internal BLAS threading must not interact
// with the harness worker pool.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));
#endif

namespace mmwlink
{

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

arma::cx_vec Rng::cnormal_vec(arma::uword n, double variance)
{
    arma::cx_vec v(n);
    const double scale = std::sqrt(variance);
    for (arma::uword i = 0; i < n; ++i)
        v(i) = scale * cnormal();
    return v;
}

arma::cx_mat Rng::cnormal_mat(arma::uword n_rows, arma::uword n_cols, double variance)
{
    arma::cx_mat m(n_rows, n_cols);
    const double scale = std::sqrt(variance);
    for (arma::uword j = 0; j < n_cols; ++j)
        for (arma::uword i = 0; i < n_rows; ++i)
            m(i, j) = scale * cnormal();
    return m;
}

void parallel_for(arma::uword count, unsigned threads, const std::function<void(arma::uword)> &fn)
{
#if defined(__GNUC__)
    if (openblas_set_num_threads)
        openblas_set_num_threads(1);
#endif

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<arma::uword>(threads, std::max<arma::uword>(count, 1)));

    if (threads <= 1 || count <= 1)
    {
        for (arma::uword i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<arma::uword> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr first_error;
    std::mutex error_mutex;

    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(
            [&]()
            {
                for (;;)
                {
                    const arma::uword i = next.fetch_add(1);
                    if (i >= count)
                        return;
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error)
                            first_error = std::current_exception();
                    }
                }
            });
    for (auto &th : pool)
        th.join();

    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace mmwlink
