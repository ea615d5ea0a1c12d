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

#include "wptdas/protocol.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace wptdas
{

struct FrameRecord
{
    std::size_t frame;
    int user;
    bool active;
    AntennaId antenna;   // pair emitted during the WPT phase
    FrequencyId frequency;
    double p_dc_w;       // user's steady-state dc power in the WPT phase
    double energy_j;     // harvested by this user over the whole frame
};

struct UserState
{
    int id = 1;
    ChannelRealization channel;
    RectennaConfig rectenna;
    double extra_loss_db = 0.0; // position-dependent attenuation on top of the shared budget

    std::optional<SelectionDecision> last_decision{}; // the transmitter's fallback for this user
    double accumulated_energy = 0.0;
    double voltage = 0.0;
    std::vector<FrameRecord> trace{};
};

struct TdmaShared
{
    FrequencyGrid grid = FrequencyGrid::uniform(2.4e9, 75e6, 15);
    LinkBudget budget;
    FrameSchedule schedule;
    ControlLinkModel link;
    AdcModel adc;
    std::optional<CandidateSet> candidates;
};

struct TdmaResult
{
    std::vector<FrameRecord> trace{};      // frame-major, users in id order
    std::vector<EventLog> logs;          // active user's log, one per frame
    std::vector<SelectionDecision> applied;
    std::vector<double> frame_sum_power; // sum over users of WPT-phase dc power
    std::vector<double> average_power;   // per user (id order), mean WPT-phase dc power over frames

    double average_sum_power() const;
};

/*!
 * Round-robin TDMA over users sorted by id.
 *
 * Frame i trains for user (i mod K): its channel drives the ADC matrix and the
 * feedback. Every other user harvests through its own channel whatever the
 * transmitter emits, slot by slot in training and the applied pair during WPT.
 * Frames are consumed from `rng` in order.
 */
TdmaResult run_tdma(std::vector<UserState>& users, std::size_t frames, TdmaShared const& shared, RandomStream& rng);

/// `frame,user,active_flag,antenna,frequency,p_dc_watts,energy_joules`
void write_tdma_trace_csv(std::ostream& out, TdmaResult const& result);

} // namespace wptdas
