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

#include "wptdas/common.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace wptdas
{

enum class Provenance : std::uint8_t
{
    steady_state,
    adc_sampled,
};

/// M x N grid of candidate dc powers (watts), rows = antennas, columns = frequencies.
class CandidateMatrix
{
  public:
    CandidateMatrix(std::size_t antennas, std::size_t frequencies, Provenance provenance = Provenance::steady_state);

    std::size_t antennas() const { return rows_; }
    std::size_t frequencies() const { return cols_; }

    double at(AntennaId m, FrequencyId n) const { return values_[offset(m, n)]; }
    Provenance provenance(AntennaId m, FrequencyId n) const { return provenance_[offset(m, n)]; }
    void set(AntennaId m, FrequencyId n, double watts, Provenance p = Provenance::steady_state);

    /// Rows and columns picked by label, in the given order; labels are renumbered 1..k.
    CandidateMatrix submatrix(std::span<const AntennaId> rows, std::span<const FrequencyId> cols) const;

  private:
    std::size_t offset(AntennaId m, FrequencyId n) const;

    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
    std::vector<Provenance> provenance_;
};

enum class Strategy : std::uint8_t
{
    none,
    frequency_only,
    antenna_only,
    joint,
};

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view text);
inline constexpr Strategy kAllStrategies[] = {Strategy::none, Strategy::frequency_only, Strategy::antenna_only,
                                              Strategy::joint};

struct SelectionDecision
{
    AntennaId antenna;
    FrequencyId frequency;
    double value = 0.0;
    Strategy strategy = Strategy::joint;
};

// Ties resolve to the lowest antenna index, then the lowest frequency index.
SelectionDecision select_joint(CandidateMatrix const& c);
SelectionDecision select_frequency_only(CandidateMatrix const& c, AntennaId fixed_antenna);
SelectionDecision select_antenna_only(CandidateMatrix const& c, FrequencyId fixed_frequency);
SelectionDecision no_selection(CandidateMatrix const& c, AntennaId fixed_antenna, FrequencyId fixed_frequency);

/// Middle label of N candidates (f_8 for N = 15); lower middle when N is even.
inline FrequencyId middle_frequency(std::size_t n) { return FrequencyId{static_cast<int>((n + 1) / 2)}; }

/// Applies a strategy with the default baselines: antenna 1 and the middle frequency.
SelectionDecision apply_strategy(Strategy s, CandidateMatrix const& c);

} // namespace wptdas
