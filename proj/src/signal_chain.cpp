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

#include "wptdas/signal_chain.hpp"

#include <complex>

namespace wptdas
{

double rf_power_at(ChannelRealization const& ch, AntennaId m, double freq_hz, LinkBudget const& budget)
{
    return received_rf_power(budget, std::abs(frequency_response(ch, m, freq_hz)));
}

double dc_power_at(ChannelRealization const& ch, AntennaId m, double freq_hz, LinkBudget const& budget,
                   EfficiencyCurve const& curve)
{
    return output_dc_power(rf_power_at(ch, m, freq_hz, budget), curve, freq_hz);
}

CandidateMatrix rf_power_matrix(ChannelRealization const& ch, FrequencyGrid const& grid, LinkBudget const& budget)
{
    CandidateMatrix out(ch.num_antennas(), grid.size());
    for (std::size_t i = 0; i < ch.num_antennas(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j)
        {
            auto const m = AntennaId::from_index(i);
            auto const n = FrequencyId::from_index(j);
            out.set(m, n, rf_power_at(ch, m, grid.frequency(n), budget));
        }
    return out;
}

CandidateMatrix dc_power_matrix(ChannelRealization const& ch, FrequencyGrid const& grid, LinkBudget const& budget,
                                EfficiencyCurve const& curve)
{
    CandidateMatrix out(ch.num_antennas(), grid.size());
    for (std::size_t i = 0; i < ch.num_antennas(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j)
        {
            auto const m = AntennaId::from_index(i);
            auto const n = FrequencyId::from_index(j);
            out.set(m, n, dc_power_at(ch, m, grid.frequency(n), budget, curve));
        }
    return out;
}

} // namespace wptdas
