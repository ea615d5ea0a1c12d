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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wptdas
{

// Thrown when an input violates a documented invariant (profiles, tables, configs, dimensions).
struct ValidationError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// The limited-feedback word cannot index every candidate pair.
struct CapacityError : std::length_error
{
    using std::length_error::length_error;
};

struct DecodeError : std::out_of_range
{
    using std::out_of_range::out_of_range;
};

// Simulation clock. Integer microseconds so frame arithmetic closes exactly.
using Micros = std::chrono::duration<std::int64_t, std::micro>;

inline double to_seconds(Micros t) { return static_cast<double>(t.count()) * 1e-6; }

/// 1-based antenna label (antenna 1 ... M), as used on the air and in output files.
struct AntennaId
{
    int value = 1;

    constexpr std::size_t index() const { return static_cast<std::size_t>(value - 1); }
    static constexpr AntennaId from_index(std::size_t i) { return AntennaId{static_cast<int>(i) + 1}; }
    friend constexpr bool operator==(AntennaId, AntennaId) = default;
    friend constexpr auto operator<=>(AntennaId, AntennaId) = default;
};

/// 1-based operating-frequency label (f_1 ... f_N).
struct FrequencyId
{
    int value = 1;

    constexpr std::size_t index() const { return static_cast<std::size_t>(value - 1); }
    static constexpr FrequencyId from_index(std::size_t i) { return FrequencyId{static_cast<int>(i) + 1}; }
    friend constexpr bool operator==(FrequencyId, FrequencyId) = default;
    friend constexpr auto operator<=>(FrequencyId, FrequencyId) = default;
};

inline constexpr const char* kVersion = "1.0.0";

} // namespace wptdas
