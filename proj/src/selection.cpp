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

#include "wptdas/selection.hpp"

#include <cmath>
#include <string>

namespace wptdas
{

CandidateMatrix::CandidateMatrix(std::size_t antennas, std::size_t frequencies, Provenance provenance)
    : rows_(antennas), cols_(frequencies)
{
    if (rows_ < 1 || cols_ < 1)
        throw ValidationError("candidate matrix must be at least 1x1");
    values_.assign(rows_ * cols_, 0.0);
    provenance_.assign(rows_ * cols_, provenance);
}

std::size_t CandidateMatrix::offset(AntennaId m, FrequencyId n) const
{
    if (m.value < 1 || m.index() >= rows_ || n.value < 1 || n.index() >= cols_)
        throw std::out_of_range("candidate (" + std::to_string(m.value) + ", " + std::to_string(n.value) +
                                ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    return m.index() * cols_ + n.index();
}

void CandidateMatrix::set(AntennaId m, FrequencyId n, double watts, Provenance p)
{
    if (!(watts >= 0.0) || !std::isfinite(watts))
        throw ValidationError("candidate dc power must be finite and >= 0");
    auto const k = offset(m, n);
    values_[k] = watts;
    provenance_[k] = p;
}

CandidateMatrix CandidateMatrix::submatrix(std::span<const AntennaId> rows, std::span<const FrequencyId> cols) const
{
    CandidateMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
        {
            auto const k = offset(rows[i], cols[j]);
            out.values_[i * out.cols_ + j] = values_[k];
            out.provenance_[i * out.cols_ + j] = provenance_[k];
        }
    return out;
}

std::string_view to_string(Strategy s)
{
    switch (s)
    {
    case Strategy::none:
        return "none";
    case Strategy::frequency_only:
        return "frequency_only";
    case Strategy::antenna_only:
        return "antenna_only";
    case Strategy::joint:
        return "joint";
    }
    return "?";
}

Strategy parse_strategy(std::string_view text)
{
    for (auto s : kAllStrategies)
        if (to_string(s) == text)
            return s;
    throw ValidationError("unknown strategy '" + std::string(text) + "'");
}

SelectionDecision select_joint(CandidateMatrix const& c)
{
    SelectionDecision best{AntennaId{1}, FrequencyId{1}, c.at(AntennaId{1}, FrequencyId{1}), Strategy::joint};
    for (std::size_t i = 0; i < c.antennas(); ++i)
        for (std::size_t j = 0; j < c.frequencies(); ++j)
        {
            auto const m = AntennaId::from_index(i);
            auto const n = FrequencyId::from_index(j);
            if (c.at(m, n) > best.value)
                best = {m, n, c.at(m, n), Strategy::joint};
        }
    return best;
}

SelectionDecision select_frequency_only(CandidateMatrix const& c, AntennaId fixed_antenna)
{
    SelectionDecision best{fixed_antenna, FrequencyId{1}, c.at(fixed_antenna, FrequencyId{1}), Strategy::frequency_only};
    for (std::size_t j = 1; j < c.frequencies(); ++j)
    {
        auto const n = FrequencyId::from_index(j);
        if (c.at(fixed_antenna, n) > best.value)
            best = {fixed_antenna, n, c.at(fixed_antenna, n), Strategy::frequency_only};
    }
    return best;
}

SelectionDecision select_antenna_only(CandidateMatrix const& c, FrequencyId fixed_frequency)
{
    SelectionDecision best{AntennaId{1}, fixed_frequency, c.at(AntennaId{1}, fixed_frequency), Strategy::antenna_only};
    for (std::size_t i = 1; i < c.antennas(); ++i)
    {
        auto const m = AntennaId::from_index(i);
        if (c.at(m, fixed_frequency) > best.value)
            best = {m, fixed_frequency, c.at(m, fixed_frequency), Strategy::antenna_only};
    }
    return best;
}

SelectionDecision no_selection(CandidateMatrix const& c, AntennaId fixed_antenna, FrequencyId fixed_frequency)
{
    return {fixed_antenna, fixed_frequency, c.at(fixed_antenna, fixed_frequency), Strategy::none};
}

SelectionDecision apply_strategy(Strategy s, CandidateMatrix const& c)
{
    switch (s)
    {
    case Strategy::none:
        return no_selection(c, AntennaId{1}, middle_frequency(c.frequencies()));
    case Strategy::frequency_only:
        return select_frequency_only(c, AntennaId{1});
    case Strategy::antenna_only:
        return select_antenna_only(c, middle_frequency(c.frequencies()));
    case Strategy::joint:
        return select_joint(c);
    }
    throw std::logic_error("apply_strategy: bad strategy");
}

} // namespace wptdas
