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

#include "wptdas/channel.hpp"
#include "wptdas/rectenna.hpp"
#include "wptdas/selection.hpp"

namespace wptdas
{

// Channel -> received RF power -> rectifier. These are the steady-state (true) values;
// the frame protocol observes them only through settling and the ADC.

double rf_power_at(ChannelRealization const& ch, AntennaId m, double freq_hz, LinkBudget const& budget);

double dc_power_at(ChannelRealization const& ch, AntennaId m, double freq_hz, LinkBudget const& budget,
                   EfficiencyCurve const& curve);

/// RF power for every (antenna, grid frequency) pair.
CandidateMatrix rf_power_matrix(ChannelRealization const& ch, FrequencyGrid const& grid, LinkBudget const& budget);

/// Output dc power for every (antenna, grid frequency) pair.
CandidateMatrix dc_power_matrix(ChannelRealization const& ch, FrequencyGrid const& grid, LinkBudget const& budget,
                                EfficiencyCurve const& curve);

} // namespace wptdas
