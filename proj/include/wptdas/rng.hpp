// SPDX-License-Identifier: Apache-2.0
//
// wptdas: link-level simulator for wireless power transfer with distributed antennas
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

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace wptdas
{

// Substream namespaces. A stream is identified by (master seed, tag, indices...).
enum class StreamTag : std::uint64_t
{
    channel = 1, // (realization, user)
    link = 2,    // (realization, cell, strategy) or (realization, frame)
};

/*!
 * Seed-reproducible random stream.
 *
 * Every stream is keyed by the master seed and a path of 64-bit words, so a
 * realization's draws do not depend on which thread runs it or in what order
 * realizations are visited. The engine and std::seed_seq are bit-specified by
 * the standard; the variate transforms below are written out explicitly so
 * results are identical across standard libraries.
 */
class RandomStream
{
  public:
    RandomStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path);

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Circularly-symmetric complex Gaussian with E|g|^2 = mean_power, returned as
    // (amplitude, phase) with phase in [-pi, pi).
    struct Polar
    {
        double amplitude;
        double phase;
    };
    Polar complex_gaussian(double mean_power);

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

inline RandomStream make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t a, std::uint64_t b = 0,
                                std::uint64_t c = 0)
{
    return RandomStream(seed, {static_cast<std::uint64_t>(tag), a, b, c});
}

} // namespace wptdas
