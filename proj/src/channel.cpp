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

#include "wptdas/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace wptdas
{

namespace
{

// Same table as data/model-E-NLOS.pdp: TGn model E, cluster powers summed per delay.
constexpr char const* kModelE = R"(
   0   -2.6000
  10   -3.0000
  20   -3.5000
  30   -3.9000
  50    0.0668
  80   -1.2260
 110   -2.5260
 140   -3.8260
 180   -3.3547
 230   -5.5349
 280   -7.6426
 330   -9.8553
 380  -12.0426
 430  -14.2147
 490  -15.3285
 560  -18.3366
 640  -20.7000
 730  -24.6000
)";

constexpr char const* kSingleTapFlat = "0 0\n";
constexpr char const* kTwoTapTest = "0 0\n100 0\n";

} // namespace

TapProfile::TapProfile(std::string name, std::vector<Tap> taps) : name_(std::move(name)), taps_(std::move(taps))
{
    if (taps_.empty())
        throw ValidationError("profile '" + name_ + "': no taps");
    if (!(taps_.front().delay_s >= 0.0))
        throw ValidationError("profile '" + name_ + "': first delay must be >= 0");
    double sum = 0.0;
    for (std::size_t i = 0; i < taps_.size(); ++i)
    {
        auto const& t = taps_[i];
        if (!std::isfinite(t.delay_s) || !(t.mean_power > 0.0) || !std::isfinite(t.mean_power))
            throw ValidationError("profile '" + name_ + "': tap " + std::to_string(i + 1) +
                                  " needs finite delay and positive power");
        if (i > 0 && !(t.delay_s > taps_[i - 1].delay_s))
            throw ValidationError("profile '" + name_ + "': delays must be strictly increasing");
        sum += t.mean_power;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("profile '" + name_ + "': tap powers sum to " + std::to_string(sum) + ", expected 1");
}

TapProfile TapProfile::from_db(std::string name, std::span<const std::pair<double, double>> delay_ns_power_db)
{
    std::vector<Tap> taps;
    taps.reserve(delay_ns_power_db.size());
    double total = 0.0;
    for (auto const& [delay_ns, power_db] : delay_ns_power_db)
    {
        double const lin = db_to_linear(power_db);
        taps.push_back({delay_ns * 1e-9, lin});
        total += lin;
    }
    if (!(total > 0.0) || !std::isfinite(total))
        throw ValidationError("profile '" + name + "': total power must be finite and positive");
    for (auto& t : taps)
        t.mean_power /= total;
    return TapProfile(std::move(name), std::move(taps));
}

double TapProfile::rms_delay_spread() const
{
    double mean = 0.0;
    for (auto const& t : taps_)
        mean += t.mean_power * t.delay_s;
    double var = 0.0;
    for (auto const& t : taps_)
        var += t.mean_power * (t.delay_s - mean) * (t.delay_s - mean);
    return std::sqrt(var);
}

TapProfile parse_pdp(std::istream& in, std::string name)
{
    std::vector<std::pair<double, double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        double delay_ns = 0.0;
        double power_db = 0.0;
        if (!(ls >> delay_ns))
        {
            ls.clear();
            std::string rest;
            if (ls >> rest)
                throw ValidationError("PDP '" + name + "' line " + std::to_string(line_no) + ": expected `delay_ns power_db`");
            continue; // blank or comment-only
        }
        if (!(ls >> power_db))
            throw ValidationError("PDP '" + name + "' line " + std::to_string(line_no) + ": missing power_db");
        std::string extra;
        if (ls >> extra)
            throw ValidationError("PDP '" + name + "' line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
        rows.emplace_back(delay_ns, power_db);
    }
    return TapProfile::from_db(std::move(name), rows);
}

TapProfile load_pdp(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open PDP file: " + path.string());
    return parse_pdp(in, path.stem().string());
}

TapProfile builtin_profile(std::string_view name)
{
    char const* text = nullptr;
    if (name == "model-E-NLOS")
        text = kModelE;
    else if (name == "single-tap-flat")
        text = kSingleTapFlat;
    else if (name == "two-tap-test")
        text = kTwoTapTest;
    else
        throw ValidationError("unknown built-in profile '" + std::string(name) + "'");
    std::istringstream in(text);
    return parse_pdp(in, std::string(name));
}

std::vector<std::string> builtin_profile_names() { return {"model-E-NLOS", "single-tap-flat", "two-tap-test"}; }

ChannelRealization::ChannelRealization(std::vector<std::vector<PathGain>> per_antenna) : paths_(std::move(per_antenna))
{
    if (paths_.empty())
        throw ValidationError("channel realization needs at least one antenna");
}

std::span<const PathGain> ChannelRealization::paths(AntennaId m) const
{
    if (m.value < 1 || m.index() >= paths_.size())
        throw std::out_of_range("antenna " + std::to_string(m.value) + " out of range 1.." + std::to_string(paths_.size()));
    return paths_[m.index()];
}

ChannelRealization sample_channel(TapProfile const& profile, std::size_t num_antennas, RandomStream& rng)
{
    if (num_antennas < 1)
        throw ValidationError("sample_channel: num_antennas must be >= 1");
    std::vector<std::vector<PathGain>> all(num_antennas);
    for (auto& antenna : all)
    {
        antenna.reserve(profile.size());
        for (auto const& tap : profile.taps())
        {
            auto const g = rng.complex_gaussian(tap.mean_power);
            antenna.push_back({tap.delay_s, g.amplitude, g.phase});
        }
    }
    return ChannelRealization(std::move(all));
}

std::complex<double> frequency_response(ChannelRealization const& ch, AntennaId m, double freq_hz)
{
    std::complex<double> acc{0.0, 0.0};
    for (auto const& p : ch.paths(m))
        acc += std::polar(p.amplitude, p.phase - 2.0 * std::numbers::pi * freq_hz * p.delay_s);
    return acc;
}

std::string_view to_string(GridMode mode)
{
    return mode == GridMode::uniform_in_band ? "uniform" : "ieee";
}

GridMode parse_grid_mode(std::string_view text)
{
    if (text == "uniform" || text == "uniform-in-band")
        return GridMode::uniform_in_band;
    if (text == "ieee" || text == "ieee-channel-plan")
        return GridMode::ieee_channel_plan;
    throw ValidationError("unknown grid mode '" + std::string(text) + "' (expected uniform or ieee)");
}

FrequencyGrid FrequencyGrid::uniform(double center_hz, double bandwidth_hz, std::size_t count)
{
    if (count < 1)
        throw ValidationError("frequency grid needs at least one point");
    if (!(center_hz > 0.0) || !(bandwidth_hz >= 0.0) || bandwidth_hz / 2.0 >= center_hz)
        throw ValidationError("frequency grid: need center > 0 and 0 <= bandwidth < 2*center");
    FrequencyGrid g;
    g.mode_ = GridMode::uniform_in_band;
    g.center_ = center_hz;
    g.bandwidth_ = bandwidth_hz;
    g.freqs_.resize(count);
    if (count == 1)
    {
        g.freqs_[0] = center_hz;
        return g;
    }
    double const lo = center_hz - bandwidth_hz / 2.0;
    double const step = bandwidth_hz / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        g.freqs_[i] = lo + step * static_cast<double>(i);
    return g;
}

FrequencyGrid FrequencyGrid::ieee_channel_plan(std::size_t count)
{
    if (count < 1 || count > kMaxWptChannels)
        throw ValidationError("ieee channel plan supports 1.." + std::to_string(kMaxWptChannels) + " WPT channels");
    FrequencyGrid g;
    g.mode_ = GridMode::ieee_channel_plan;
    g.freqs_.resize(count);
    for (std::size_t k = 1; k <= count; ++k)
        g.freqs_[k - 1] = ieee_channel_frequency(static_cast<int>(k));
    g.center_ = (g.freqs_.front() + g.freqs_.back()) / 2.0;
    g.bandwidth_ = g.freqs_.back() - g.freqs_.front();
    return g;
}

double FrequencyGrid::frequency(FrequencyId n) const
{
    if (n.value < 1 || n.index() >= freqs_.size())
        throw std::out_of_range("frequency " + std::to_string(n.value) + " out of range 1.." + std::to_string(freqs_.size()));
    return freqs_[n.index()];
}

void LinkBudget::validate() const
{
    if (!(tx_power_w > 0.0) || !std::isfinite(tx_power_w))
        throw ValidationError("link budget: tx power must be positive");
    if (!(path_loss_db >= 0.0) || !std::isfinite(path_loss_db))
        throw ValidationError("link budget: path loss must be >= 0 dB");
    if (!std::isfinite(tx_gain_dbi) || !std::isfinite(rx_gain_dbi))
        throw ValidationError("link budget: antenna gains must be finite");
}

double path_loss_db(double distance_m, double freq_hz, double tx_gain_dbi, double rx_gain_dbi)
{
    if (!(distance_m > 0.0) || !(freq_hz > 0.0))
        throw std::domain_error("path_loss_db: distance and frequency must be positive");
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * freq_hz / kSpeedOfLight) - tx_gain_dbi - rx_gain_dbi;
}

double received_rf_power(LinkBudget const& budget, double amplitude)
{
    return budget.tx_power_w * db_to_linear(-budget.net_loss_db()) * amplitude * amplitude;
}

} // namespace wptdas
