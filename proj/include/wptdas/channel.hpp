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
#include "wptdas/rng.hpp"
#include "wptdas/units.hpp"

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wptdas
{

inline constexpr double kSpeedOfLight = 3.0e8; // m/s, fixed so 10 m at 2.4 GHz gives 60.046 dB

struct Tap
{
    double delay_s;
    double mean_power; // linear, fraction of the profile total
};

/*!
 * Power-delay profile of a tapped-delay-line channel.
 *
 * Delays are strictly increasing from a non-negative first delay, every tap has
 * positive power, and the powers sum to one. Absolute scale lives in LinkBudget.
 */
class TapProfile
{
  public:
    TapProfile(std::string name, std::vector<Tap> taps);

    // Builds a profile from (delay ns, power dB) rows and normalizes to unit sum.
    static TapProfile from_db(std::string name, std::span<const std::pair<double, double>> delay_ns_power_db);

    std::string const& name() const { return name_; }
    std::span<const Tap> taps() const { return taps_; }
    std::size_t size() const { return taps_.size(); }

    double rms_delay_spread() const;

  private:
    std::string name_;
    std::vector<Tap> taps_;
};

// PDP text format: one tap per line, `delay_ns  power_db`, `#` starts a comment.
TapProfile parse_pdp(std::istream& in, std::string name);
TapProfile load_pdp(std::filesystem::path const& path);

// "model-E-NLOS", "single-tap-flat", "two-tap-test".
TapProfile builtin_profile(std::string_view name);
std::vector<std::string> builtin_profile_names();

struct PathGain
{
    double delay_s;
    double amplitude; // alpha >= 0
    double phase;     // zeta in [-pi, pi)

    std::complex<double> gain() const { return std::polar(amplitude, phase); }
};

/// One block-static multipath realization per distributed transmit antenna.
class ChannelRealization
{
  public:
    explicit ChannelRealization(std::vector<std::vector<PathGain>> per_antenna);

    std::size_t num_antennas() const { return paths_.size(); }
    std::span<const PathGain> paths(AntennaId m) const;

  private:
    std::vector<std::vector<PathGain>> paths_;
};

/*!
 * Draws an independent Rayleigh tap set for each antenna.
 *
 * Draw order is antenna-major, tap-minor; each tap consumes two uniforms
 * (magnitude, then phase).
 */
ChannelRealization sample_channel(TapProfile const& profile, std::size_t num_antennas, RandomStream& rng);

/// Sum over taps of g * exp(-j 2 pi f tau). Throws std::out_of_range on a bad antenna.
std::complex<double> frequency_response(ChannelRealization const& ch, AntennaId m, double freq_hz);

enum class GridMode
{
    uniform_in_band,
    ieee_channel_plan,
};

std::string_view to_string(GridMode mode);
GridMode parse_grid_mode(std::string_view text);

class FrequencyGrid
{
  public:
    // count points across [center - B/2, center + B/2], endpoints included; count 1 gives the center.
    static FrequencyGrid uniform(double center_hz, double bandwidth_hz, std::size_t count);
    // f_k = 2400 + 5k MHz, k = 1..count, count <= 15 (channel 16 carries control traffic).
    static FrequencyGrid ieee_channel_plan(std::size_t count);

    GridMode mode() const { return mode_; }
    double center() const { return center_; }
    double bandwidth() const { return bandwidth_; }
    std::size_t size() const { return freqs_.size(); }
    double frequency(FrequencyId n) const;
    std::span<const double> frequencies() const { return freqs_; }

  private:
    GridMode mode_ = GridMode::uniform_in_band;
    double center_ = 0.0;
    double bandwidth_ = 0.0;
    std::vector<double> freqs_;
};

inline constexpr std::size_t kMaxWptChannels = 15;
inline constexpr int kControlChannel = 16;
inline double ieee_channel_frequency(int k) { return (2400.0 + 5.0 * k) * 1e6; }

inline constexpr double kDefaultTxPowerDbm = 36.0;
inline constexpr double kDefaultPathLossDb = 60.046;

struct LinkBudget
{
    double tx_power_w = dbm_to_watts(kDefaultTxPowerDbm);
    double path_loss_db = kDefaultPathLossDb;
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;

    void validate() const;
    // Deterministic end-to-end loss in dB (path loss minus antenna gains).
    double net_loss_db() const { return path_loss_db - tx_gain_dbi - rx_gain_dbi; }
};

/// Free-space loss 20 log10(4 pi d f / c) minus antenna gains.
double path_loss_db(double distance_m, double freq_hz, double tx_gain_dbi = 0.0, double rx_gain_dbi = 0.0);

/// P * A^2 after the budget's deterministic loss; `amplitude` is the normalized fading amplitude.
double received_rf_power(LinkBudget const& budget, double amplitude);

} // namespace wptdas
