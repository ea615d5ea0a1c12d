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
#include "wptdas/common.hpp"
#include "wptdas/rectenna.hpp"
#include "wptdas/rng.hpp"
#include "wptdas/selection.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace wptdas
{

/// Frame timing. Defaults: 60 slots of 18 ms, then 2.92 s of power transfer, 4 s in total.
struct FrameSchedule
{
    Micros slot{18'000};
    std::size_t training_slots = 60;
    Micros wpt{2'920'000};

    Micros training_duration() const { return slot * static_cast<std::int64_t>(training_slots); }
    Micros frame_duration() const { return training_duration() + wpt; }
    void validate() const;
};

enum class Delivery : std::uint8_t
{
    ideal,
    lossy,
};

// Abstract control channel. Only the feedback message is subject to loss; antenna
// activation messages are always delivered.
struct ControlLinkModel
{
    Delivery delivery = Delivery::ideal;
    double drop_probability = 0.0;
    Micros latency{0}; // feedback-to-switch delay; the transmitter idles meanwhile
    int channel = kControlChannel;

    void validate() const;
};

// Receiver ADC: 12 bits over 0..3.3 V unless configured otherwise.
struct AdcModel
{
    bool enabled = true;
    int bits = 12;
    double full_scale_v = 3.3;

    double quantize(double v) const;
    void validate() const;
};

struct ControlMessage
{
    enum class Kind : std::uint8_t
    {
        activate_antenna,
        feedback,
    };
    static constexpr std::size_t size_bytes = 1;

    Kind kind;
    std::uint8_t payload; // antenna label, or the feedback byte
    Micros timestamp;
    bool delivered = true;
};

enum class EventKind : std::uint8_t
{
    slot_start,
    adc_sample,
    message_sent,
    message_dropped,
    feedback_applied,
    wpt_phase_start,
    frame_end,
};

std::string_view to_string(EventKind kind);

struct Event
{
    Micros t;
    EventKind kind;
    int antenna = 0;   // 0 when not applicable
    int frequency = 0; // 0 when not applicable
    double value = 0.0;
};

struct EventLog
{
    Micros frame_start{0};
    Micros frame_duration{0};
    std::vector<Event> events;
    std::vector<ControlMessage> messages;
    double harvested_energy_training = 0.0; // J
    double harvested_energy_wpt = 0.0;      // J

    std::size_t bytes_sent() const { return messages.size() * ControlMessage::size_bytes; }
    std::size_t count(EventKind kind) const;
    bool complete() const { return !events.empty() && events.back().kind == EventKind::frame_end; }
};

inline constexpr std::size_t kFeedbackBits = 6;
inline constexpr std::size_t kFeedbackCapacity = std::size_t{1} << kFeedbackBits;

struct FeedbackDims
{
    std::size_t antennas;
    std::size_t frequencies;
};

/// code = (m - 1) * N + (n - 1). Throws CapacityError when M * N exceeds 64.
std::uint8_t encode_feedback(AntennaId m, FrequencyId n, FeedbackDims dims);
/// Inverse of encode_feedback. Throws DecodeError for code >= M * N.
std::pair<AntennaId, FrequencyId> decode_feedback(std::uint8_t code, FeedbackDims dims);
/// On-air byte: the code in the low 6 bits, upper bits zero.
inline std::uint8_t feedback_byte(std::uint8_t code) { return code & 0x3F; }

/// Antennas and frequencies swept during training, by global label, in sweep order.
struct CandidateSet
{
    std::vector<AntennaId> antennas;
    std::vector<FrequencyId> frequencies;

    static CandidateSet full(std::size_t antennas, std::size_t frequencies);
    std::size_t size() const { return antennas.size() * frequencies.size(); }
};

struct FrameSetup
{
    FrequencyGrid grid = FrequencyGrid::uniform(2.4e9, 75e6, 15);
    LinkBudget budget;
    RectennaConfig rectenna;
    FrameSchedule schedule;
    ControlLinkModel link;
    AdcModel adc;
};

struct FrameOptions
{
    Micros start{0};
    double initial_voltage = 0.0; // rectifier output at frame start
    std::optional<CandidateSet> candidates;
};

struct FrameOutcome
{
    EventLog log;
    SelectionDecision decision;   // receiver's choice from the ADC matrix (global labels)
    SelectionDecision applied;    // pair used in the WPT phase; value = steady-state dc power
    bool feedback_delivered = true;
    CandidateMatrix adc_matrix;   // candidate-set coordinates, ADC-derived powers
    double final_voltage = 0.0;
};

/*!
 * Simulates one adaptive frame.
 *
 * Training: for each candidate antenna the receiver sends an activation message,
 * then the transmitter sweeps the candidate frequencies for one slot each. The
 * rectifier output settles from the previous slot's voltage; the ADC samples at
 * slot end. The receiver picks the largest sampled power and feeds back its
 * 6-bit index. If the feedback is lost, the transmitter keeps `prior`, or the
 * first antenna and middle frequency of the candidate set when there is none.
 *
 * `rng` is consumed only on a lossy link (one draw per frame).
 */
FrameOutcome run_frame(ChannelRealization const& ch, FrameSetup const& setup,
                       std::optional<SelectionDecision> const& prior, RandomStream& rng,
                       FrameOptions const& options = {});

struct ReceiverConsumption
{
    double soc_power_w = 2.6e-6;
    double radio_power_w = 48e-3;
    double radio_bitrate_bps = 250e3;
    std::optional<std::size_t> bytes_sent; // defaults to what the log recorded
};

struct EnergyBudget
{
    double e_train = 0.0;
    double e_wpt = 0.0;
    double e_dc = 0.0;
    double e_soc = 0.0;
    double t_radio = 0.0;
    double e_radio = 0.0;
    double e_consumed = 0.0;
    double e_net = 0.0;
    double efficiency = 0.0; // e_net / e_dc; NaN when nothing was harvested
};

EnergyBudget energy_budget(double e_train, double e_wpt, Micros frame_duration, double soc_power_w,
                           double radio_power_w, double radio_bitrate_bps, std::size_t bytes_sent);

/// Throws ValidationError when the log has no FrameEnd.
EnergyBudget receiver_energy_budget(EventLog const& log, ReceiverConsumption const& consumption);

/// CSV with header `t_us,event,antenna,frequency,value`.
void write_event_log_csv(std::ostream& out, EventLog const& log);

} // namespace wptdas
