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

#include "wptdas/rng.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace wptdas
{

RandomStream::RandomStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path)
{
    std::vector<std::uint32_t> words;
    words.reserve(2 * (path.size() + 1));
    auto push = [&words](std::uint64_t w) {
        words.push_back(static_cast<std::uint32_t>(w & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(w >> 32));
    };
    push(master_seed);
    for (auto w : path)
        push(w);
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

double RandomStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

RandomStream::Polar RandomStream::complex_gaussian(double mean_power)
{
    // -ln(U) with U in (0, 1] is Exp(1); its square root times sqrt(mean_power) is
    // Rayleigh with E[a^2] = mean_power.
    double const u_mag = 1.0 - uniform();
    double const u_phase = uniform();
    return {std::sqrt(-mean_power * std::log(u_mag)), -std::numbers::pi + 2.0 * std::numbers::pi * u_phase};
}

} // namespace wptdas
