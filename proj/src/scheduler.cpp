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

#include "wptdas/scheduler.hpp"

#include "wptdas/format.hpp"
#include "wptdas/signal_chain.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace wptdas
{

namespace
{

LinkBudget user_budget(LinkBudget base, UserState const& u)
{
    base.path_loss_db += u.extra_loss_db;
    return base;
}

} // namespace

double TdmaResult::average_sum_power() const
{
    return std::accumulate(average_power.begin(), average_power.end(), 0.0);
}

TdmaResult run_tdma(std::vector<UserState>& users, std::size_t frames, TdmaShared const& shared, RandomStream& rng)
{
    if (users.empty())
        throw ValidationError("run_tdma: no users");
    if (frames < 1)
        throw ValidationError("run_tdma: need at least one frame");
    for (auto const& u : users)
        if (u.extra_loss_db < 0.0)
            throw ValidationError("run_tdma: extra loss must be >= 0 dB");

    std::vector<std::size_t> order(users.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return users[a].id < users[b].id; });

    std::size_t const k = users.size();
    TdmaResult result;
    result.trace.reserve(frames * k);
    result.average_power.assign(k, 0.0);
    Micros const frame_len = shared.schedule.frame_duration();
    Micros const wpt_span = shared.schedule.wpt - shared.link.latency;

    for (std::size_t f = 0; f < frames; ++f)
    {
        UserState& active = users[order[f % k]];
        FrameSetup const setup{shared.grid, user_budget(shared.budget, active), active.rectenna, shared.schedule,
                               shared.link, shared.adc};
        FrameOptions opts;
        opts.start = frame_len * static_cast<std::int64_t>(f);
        opts.initial_voltage = active.voltage;
        opts.candidates = shared.candidates;
        auto outcome = run_frame(active.channel, setup, active.last_decision, rng, opts);

        active.last_decision = outcome.applied;
        active.voltage = outcome.final_voltage;
        CandidateSet const cands = shared.candidates ? *shared.candidates
                                                     : CandidateSet::full(active.channel.num_antennas(), shared.grid.size());
        auto const& applied = outcome.applied;

        double sum_power = 0.0;
        for (std::size_t slot = 0; slot < k; ++slot)
        {
            UserState& u = users[order[slot]];
            bool const is_active = &u == &active;
            double p_wpt = 0.0;
            double energy = 0.0;
            if (is_active)
            {
                p_wpt = applied.value;
                energy = outcome.log.harvested_energy_training + outcome.log.harvested_energy_wpt;
            }
            else
            {
                auto const budget = user_budget(shared.budget, u);
                double v = u.voltage;
                double const ts = to_seconds(shared.schedule.slot);
                for (auto m : cands.antennas)
                    for (auto n : cands.frequencies)
                    {
                        double const p = dc_power_at(u.channel, m, shared.grid.frequency(n), budget, u.rectenna.curve);
                        double const vt = dc_voltage(p, u.rectenna.load_ohms);
                        energy += settling_energy(vt, v, ts, u.rectenna);
                        v = settled_voltage(vt, v, ts, u.rectenna);
                    }
                p_wpt = dc_power_at(u.channel, applied.antenna, shared.grid.frequency(applied.frequency), budget,
                                    u.rectenna.curve);
                energy += p_wpt * to_seconds(wpt_span);
                u.voltage = wpt_span.count() > 0 ? dc_voltage(p_wpt, u.rectenna.load_ohms) : v;
            }
            u.accumulated_energy += energy;
            FrameRecord rec{f, u.id, is_active, applied.antenna, applied.frequency, p_wpt, energy};
            u.trace.push_back(rec);
            result.trace.push_back(rec);
            result.average_power[slot] += p_wpt;
            sum_power += p_wpt;
        }
        result.frame_sum_power.push_back(sum_power);
        result.applied.push_back(applied);
        result.logs.push_back(std::move(outcome.log));
    }
    for (auto& p : result.average_power)
        p /= static_cast<double>(frames);
    return result;
}

void write_tdma_trace_csv(std::ostream& out, TdmaResult const& result)
{
    out << "frame,user,active_flag,antenna,frequency,p_dc_watts,energy_joules\n";
    for (auto const& r : result.trace)
        out << r.frame << ',' << r.user << ',' << (r.active ? 1 : 0) << ',' << r.antenna.value << ','
            << r.frequency.value << ',' << format_number(r.p_dc_w) << ',' << format_number(r.energy_j) << '\n';
}

} // namespace wptdas
