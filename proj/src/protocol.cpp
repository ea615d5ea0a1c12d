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

#include "wptdas/protocol.hpp"

#include "wptdas/format.hpp"
#include "wptdas/signal_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace wptdas
{

void FrameSchedule::validate() const
{
    if (slot.count() <= 0)
        throw ValidationError("schedule: slot duration must be positive");
    if (wpt.count() < 0)
        throw ValidationError("schedule: WPT duration must be >= 0");
    if (training_slots < 1)
        throw ValidationError("schedule: need at least one training slot");
}

void ControlLinkModel::validate() const
{
    if (!(drop_probability >= 0.0 && drop_probability <= 1.0))
        throw ValidationError("link: drop probability must be in [0, 1]");
    if (delivery == Delivery::ideal && drop_probability != 0.0)
        throw ValidationError("link: an ideal link cannot drop messages");
    if (latency.count() < 0)
        throw ValidationError("link: latency must be >= 0");
}

double AdcModel::quantize(double v) const
{
    if (!enabled)
        return v;
    double const levels = std::ldexp(1.0, bits) - 1.0;
    double const code = std::round(std::clamp(v, 0.0, full_scale_v) / full_scale_v * levels);
    return code * full_scale_v / levels;
}

void AdcModel::validate() const
{
    if (bits < 1 || bits > 24)
        throw ValidationError("adc: resolution must be 1..24 bits");
    if (!(full_scale_v > 0.0))
        throw ValidationError("adc: full scale must be positive");
}

std::string_view to_string(EventKind kind)
{
    switch (kind)
    {
    case EventKind::slot_start:
        return "SlotStart";
    case EventKind::adc_sample:
        return "AdcSample";
    case EventKind::message_sent:
        return "MessageSent";
    case EventKind::message_dropped:
        return "MessageDropped";
    case EventKind::feedback_applied:
        return "FeedbackApplied";
    case EventKind::wpt_phase_start:
        return "WptPhaseStart";
    case EventKind::frame_end:
        return "FrameEnd";
    }
    return "?";
}

std::size_t EventLog::count(EventKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [kind](Event const& e) { return e.kind == kind; }));
}

std::uint8_t encode_feedback(AntennaId m, FrequencyId n, FeedbackDims dims)
{
    if (dims.antennas * dims.frequencies > kFeedbackCapacity)
        throw CapacityError(std::to_string(dims.antennas * dims.frequencies) + " candidates need more than " +
                            std::to_string(kFeedbackBits) + " feedback bits");
    if (m.value < 1 || m.index() >= dims.antennas || n.value < 1 || n.index() >= dims.frequencies)
        throw std::out_of_range("encode_feedback: pair outside candidate dimensions");
    return static_cast<std::uint8_t>(m.index() * dims.frequencies + n.index());
}

std::pair<AntennaId, FrequencyId> decode_feedback(std::uint8_t code, FeedbackDims dims)
{
    if (dims.frequencies == 0 || code >= dims.antennas * dims.frequencies)
        throw DecodeError("feedback code " + std::to_string(code) + " outside " + std::to_string(dims.antennas) + "x" +
                          std::to_string(dims.frequencies));
    return {AntennaId::from_index(code / dims.frequencies), FrequencyId::from_index(code % dims.frequencies)};
}

CandidateSet CandidateSet::full(std::size_t antennas, std::size_t frequencies)
{
    CandidateSet s;
    for (std::size_t i = 0; i < antennas; ++i)
        s.antennas.push_back(AntennaId::from_index(i));
    for (std::size_t j = 0; j < frequencies; ++j)
        s.frequencies.push_back(FrequencyId::from_index(j));
    return s;
}

FrameOutcome run_frame(ChannelRealization const& ch, FrameSetup const& setup,
                       std::optional<SelectionDecision> const& prior, RandomStream& rng, FrameOptions const& options)
{
    auto const& sched = setup.schedule;
    auto const& rect = setup.rectenna;
    sched.validate();
    setup.link.validate();
    setup.adc.validate();
    setup.budget.validate();
    rect.validate();
    if (setup.link.latency > sched.wpt)
        throw ValidationError("link latency exceeds the WPT phase");

    CandidateSet const cands = options.candidates ? *options.candidates
                                                  : CandidateSet::full(ch.num_antennas(), setup.grid.size());
    if (cands.antennas.empty() || cands.frequencies.empty())
        throw ValidationError("run_frame: empty candidate set");
    for (auto m : cands.antennas)
        if (m.value < 1 || m.index() >= ch.num_antennas())
            throw ValidationError("run_frame: candidate antenna outside the channel realization");
    for (auto n : cands.frequencies)
        if (n.value < 1 || n.index() >= setup.grid.size())
            throw ValidationError("run_frame: candidate frequency outside the grid");
    if (cands.size() != sched.training_slots)
        throw ValidationError("run_frame: " + std::to_string(cands.size()) + " candidates but schedule has " +
                              std::to_string(sched.training_slots) + " training slots");
    if (prior && (prior->antenna.value < 1 || prior->antenna.index() >= ch.num_antennas() ||
                  prior->frequency.value < 1 || prior->frequency.index() >= setup.grid.size()))
        throw ValidationError("run_frame: prior selection outside the channel/grid");
    FeedbackDims const dims{cands.antennas.size(), cands.frequencies.size()};
    if (cands.size() > kFeedbackCapacity)
        throw CapacityError("run_frame: candidate set exceeds the 6-bit feedback word");

    EventLog log;
    log.frame_start = options.start;
    log.frame_duration = sched.frame_duration();
    log.events.reserve(2 * cands.size() + cands.antennas.size() + 8);

    CandidateMatrix adc(dims.antennas, dims.frequencies, Provenance::adc_sampled);
    Micros t = options.start;
    double v = options.initial_voltage;

    for (std::size_t i = 0; i < dims.antennas; ++i)
    {
        AntennaId const m = cands.antennas[i];
        log.messages.push_back({ControlMessage::Kind::activate_antenna, static_cast<std::uint8_t>(m.value), t, true});
        log.events.push_back({t, EventKind::message_sent, m.value, 0, static_cast<double>(m.value)});
        for (std::size_t j = 0; j < dims.frequencies; ++j)
        {
            FrequencyId const n = cands.frequencies[j];
            log.events.push_back({t, EventKind::slot_start, m.value, n.value, 0.0});
            double const p_dc = dc_power_at(ch, m, setup.grid.frequency(n), setup.budget, rect.curve);
            double const v_target = dc_voltage(p_dc, rect.load_ohms);
            double const ts = to_seconds(sched.slot);
            log.harvested_energy_training += settling_energy(v_target, v, ts, rect);
            v = settled_voltage(v_target, v, ts, rect);
            t += sched.slot;
            double const sampled = setup.adc.quantize(v);
            log.events.push_back({t, EventKind::adc_sample, m.value, n.value, sampled});
            adc.set(AntennaId::from_index(i), FrequencyId::from_index(j), sampled * sampled / rect.load_ohms,
                    Provenance::adc_sampled);
        }
    }

    auto const local = select_joint(adc);
    SelectionDecision const decision{cands.antennas[local.antenna.index()], cands.frequencies[local.frequency.index()],
                                     local.value, Strategy::joint};
    std::uint8_t const code = feedback_byte(encode_feedback(local.antenna, local.frequency, dims));
    bool const delivered = setup.link.delivery == Delivery::ideal || !rng.bernoulli(setup.link.drop_probability);
    log.messages.push_back({ControlMessage::Kind::feedback, code, t, delivered});
    log.events.push_back({t, EventKind::message_sent, decision.antenna.value, decision.frequency.value,
                          static_cast<double>(code)});

    SelectionDecision applied = decision;
    if (!delivered)
    {
        log.events.push_back({t, EventKind::message_dropped, decision.antenna.value, decision.frequency.value,
                              static_cast<double>(code)});
        applied = prior ? *prior
                        : SelectionDecision{cands.antennas.front(), cands.frequencies[middle_frequency(dims.frequencies).index()],
                                            0.0, Strategy::none};
    }
    applied.value = dc_power_at(ch, applied.antenna, setup.grid.frequency(applied.frequency), setup.budget, rect.curve);

    Micros const wpt_start = t + setup.link.latency;
    if (delivered)
        log.events.push_back({wpt_start, EventKind::feedback_applied, applied.antenna.value, applied.frequency.value,
                              static_cast<double>(code)});
    log.events.push_back({wpt_start, EventKind::wpt_phase_start, applied.antenna.value, applied.frequency.value,
                          applied.value});

    Micros const wpt_span = sched.wpt - setup.link.latency;
    log.harvested_energy_wpt = applied.value * to_seconds(wpt_span);
    double const final_voltage = wpt_span.count() > 0 ? dc_voltage(applied.value, rect.load_ohms) : v;

    log.events.push_back({options.start + sched.frame_duration(), EventKind::frame_end, 0, 0,
                          log.harvested_energy_training + log.harvested_energy_wpt});

    return FrameOutcome{std::move(log), decision, applied, delivered, std::move(adc), final_voltage};
}

EnergyBudget energy_budget(double e_train, double e_wpt, Micros frame_duration, double soc_power_w,
                           double radio_power_w, double radio_bitrate_bps, std::size_t bytes_sent)
{
    if (!(radio_bitrate_bps > 0.0))
        throw ValidationError("energy budget: radio bitrate must be positive");
    EnergyBudget b;
    b.e_train = e_train;
    b.e_wpt = e_wpt;
    b.e_dc = e_train + e_wpt;
    b.e_soc = to_seconds(frame_duration) * soc_power_w;
    b.t_radio = 8.0 * static_cast<double>(bytes_sent) / radio_bitrate_bps;
    b.e_radio = b.t_radio * radio_power_w;
    b.e_consumed = b.e_soc + b.e_radio;
    b.e_net = b.e_dc - b.e_consumed;
    b.efficiency = b.e_dc > 0.0 ? b.e_net / b.e_dc : std::numeric_limits<double>::quiet_NaN();
    return b;
}

EnergyBudget receiver_energy_budget(EventLog const& log, ReceiverConsumption const& consumption)
{
    if (!log.complete())
        throw ValidationError("receiver_energy_budget: log has no FrameEnd");
    return energy_budget(log.harvested_energy_training, log.harvested_energy_wpt, log.frame_duration,
                         consumption.soc_power_w, consumption.radio_power_w, consumption.radio_bitrate_bps,
                         consumption.bytes_sent.value_or(log.bytes_sent()));
}

void write_event_log_csv(std::ostream& out, EventLog const& log)
{
    out << "t_us,event,antenna,frequency,value\n";
    for (auto const& e : log.events)
        out << e.t.count() << ',' << to_string(e.kind) << ',' << e.antenna << ',' << e.frequency << ','
            << format_number(e.value) << '\n';
}

} // namespace wptdas
