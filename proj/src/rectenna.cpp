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

#include "wptdas/rectenna.hpp"

#include "wptdas/units.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace wptdas
{

namespace
{

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void require_increasing(std::span<const double> axis, char const* what)
{
    if (axis.empty())
        throw ValidationError(std::string("efficiency table: empty ") + what + " axis");
    for (std::size_t i = 0; i < axis.size(); ++i)
    {
        if (!std::isfinite(axis[i]))
            throw ValidationError(std::string("efficiency table: non-finite ") + what + " axis value");
        if (i > 0 && !(axis[i] > axis[i - 1]))
            throw ValidationError(std::string("efficiency table: ") + what + " axis must be strictly increasing");
    }
}

// Returns lower index and weight of the upper neighbour, clamping outside the axis.
std::pair<std::size_t, double> locate(std::span<const double> axis, double x)
{
    if (axis.size() == 1 || x <= axis.front())
        return {0, 0.0};
    if (x >= axis.back())
        return {axis.size() - 2, 1.0};
    auto const upper = std::upper_bound(axis.begin(), axis.end(), x);
    auto const i = static_cast<std::size_t>(upper - axis.begin()) - 1;
    return {i, (x - axis[i]) / (axis[i + 1] - axis[i])};
}

bool parse_number(std::string const& token, double& out)
{
    auto const* first = token.data();
    auto const* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string> tokenize(std::string line)
{
    if (auto hash = line.find('#'); hash != std::string::npos)
        line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;)
        tokens.push_back(t);
    return tokens;
}

} // namespace

ParametricEfficiency ParametricEfficiency::fit(double eta_peak, double peak_power_dbm, double anchor_dbm,
                                               double anchor_eta, double rise_slope_per_db,
                                               double breakdown_power_dbm, double breakdown_slope_db_per_db)
{
    ParametricEfficiency p{eta_peak, peak_power_dbm, rise_slope_per_db, 0.0, breakdown_power_dbm,
                           breakdown_slope_db_per_db};
    if (!(anchor_dbm < peak_power_dbm) || !(anchor_eta > 0.0) || !(anchor_eta < eta_peak))
        throw ValidationError("parametric efficiency: anchor must lie below the peak in power and efficiency");
    if (!(rise_slope_per_db > 0.0))
        throw ValidationError("parametric efficiency: rise slope must be positive");

    // The ratio s(k(a - c)) / s(k(peak - c)) falls monotonically as c increases.
    double const target = anchor_eta / eta_peak;
    auto ratio = [&](double c) {
        return logistic(rise_slope_per_db * (anchor_dbm - c)) / logistic(rise_slope_per_db * (peak_power_dbm - c));
    };
    double lo = anchor_dbm - 200.0 / rise_slope_per_db;
    double hi = peak_power_dbm + 200.0 / rise_slope_per_db;
    if (!(ratio(lo) > target && ratio(hi) < target))
        throw ValidationError("parametric efficiency: anchor not reachable with this rise slope");
    for (int i = 0; i < 200; ++i)
    {
        double const mid = 0.5 * (lo + hi);
        (ratio(mid) > target ? lo : hi) = mid;
    }
    p.rise_center_dbm = 0.5 * (lo + hi);
    p.validate();
    return p;
}

void ParametricEfficiency::validate() const
{
    if (!(eta_peak > 0.0 && eta_peak <= 1.0))
        throw ValidationError("parametric efficiency: eta_peak must be in (0, 1]");
    if (!(rise_slope_per_db > 0.0) || !std::isfinite(rise_slope_per_db))
        throw ValidationError("parametric efficiency: rise slope must be positive");
    if (!(breakdown_slope_db_per_db > 0.0) || !std::isfinite(breakdown_slope_db_per_db))
        throw ValidationError("parametric efficiency: breakdown slope must be positive");
    if (!(breakdown_power_dbm >= peak_power_dbm))
        throw ValidationError("parametric efficiency: breakdown power must be >= peak power");
    if (!std::isfinite(rise_center_dbm) || !std::isfinite(peak_power_dbm))
        throw ValidationError("parametric efficiency: non-finite parameter");
}

double ParametricEfficiency::at_dbm(double p_dbm) const
{
    if (p_dbm <= peak_power_dbm)
        return eta_peak * logistic(rise_slope_per_db * (p_dbm - rise_center_dbm)) /
               logistic(rise_slope_per_db * (peak_power_dbm - rise_center_dbm));
    if (p_dbm <= breakdown_power_dbm)
        return eta_peak;
    return eta_peak * db_to_linear(-breakdown_slope_db_per_db * (p_dbm - breakdown_power_dbm));
}

EfficiencyTable::EfficiencyTable(std::vector<double> power_dbm, std::vector<double> freq_hz, std::vector<double> values)
    : power_dbm_(std::move(power_dbm)), freq_hz_(std::move(freq_hz)), values_(std::move(values))
{
    require_increasing(power_dbm_, "power");
    require_increasing(freq_hz_, "frequency");
    if (values_.size() != power_dbm_.size() * freq_hz_.size())
        throw ValidationError("efficiency table: body is " + std::to_string(values_.size()) + " values, expected " +
                              std::to_string(power_dbm_.size() * freq_hz_.size()));
    for (double v : values_)
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("efficiency table: efficiency values must lie in [0, 1]");
}

double EfficiencyTable::at(double p_dbm, double freq_hz) const
{
    auto const [i, wp] = locate(power_dbm_, p_dbm);
    auto const [j, wf] = locate(freq_hz_, freq_hz);
    std::size_t const nf = freq_hz_.size();
    std::size_t const i1 = std::min(i + 1, power_dbm_.size() - 1);
    std::size_t const j1 = std::min(j + 1, nf - 1);
    double const v00 = values_[i * nf + j];
    double const v01 = values_[i * nf + j1];
    double const v10 = values_[i1 * nf + j];
    double const v11 = values_[i1 * nf + j1];
    return (1.0 - wp) * ((1.0 - wf) * v00 + wf * v01) + wp * ((1.0 - wf) * v10 + wf * v11);
}

EfficiencyTable parse_efficiency_table(std::istream& in)
{
    std::vector<double> freqs_hz;
    std::vector<double> powers;
    std::vector<double> body;
    bool have_header = false;
    int line_no = 0;
    for (std::string line; std::getline(in, line);)
    {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty())
            continue;
        auto where = [&] { return "efficiency table line " + std::to_string(line_no) + ": "; };
        double x = 0.0;
        if (!have_header)
        {
            std::size_t start = parse_number(tokens[0], x) ? 0 : 1;
            for (std::size_t k = start; k < tokens.size(); ++k)
            {
                if (!parse_number(tokens[k], x))
                    throw ValidationError(where() + "bad frequency '" + tokens[k] + "'");
                freqs_hz.push_back(x * 1e6);
            }
            have_header = true;
            continue;
        }
        if (tokens.size() != freqs_hz.size() + 1)
            throw ValidationError(where() + "expected " + std::to_string(freqs_hz.size() + 1) + " columns");
        for (std::size_t k = 0; k < tokens.size(); ++k)
        {
            if (!parse_number(tokens[k], x))
                throw ValidationError(where() + "bad number '" + tokens[k] + "'");
            (k == 0 ? powers : body).push_back(x);
        }
    }
    if (!have_header)
        throw ValidationError("efficiency table: missing frequency header row");
    return EfficiencyTable(std::move(powers), std::move(freqs_hz), std::move(body));
}

EfficiencyTable load_efficiency_table(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open efficiency table: " + path.string());
    return parse_efficiency_table(in);
}

EfficiencyCurve::EfficiencyCurve(ParametricEfficiency p) : model_(p) { p.validate(); }

ParametricEfficiency EfficiencyCurve::default_parametric()
{
    return ParametricEfficiency::fit(0.40, 0.0, -20.0, 0.25, 0.15, 3.0, 3.0);
}

double efficiency(EfficiencyCurve const& curve, double p_rf_w, double freq_hz)
{
    if (!(p_rf_w >= 0.0))
        throw std::domain_error("efficiency: input power must be >= 0");
    if (p_rf_w == 0.0)
        return 0.0;
    double const p_dbm = watts_to_dbm(p_rf_w);
    double const eta = std::visit(
        [&](auto const& m) {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, EfficiencyTable>)
                return m.at(p_dbm, freq_hz);
            else
                return m.at_dbm(p_dbm);
        },
        curve.model());
    return std::clamp(eta, 0.0, 1.0);
}

double output_dc_power(double p_rf_w, EfficiencyCurve const& curve, double freq_hz)
{
    return p_rf_w * efficiency(curve, p_rf_w, freq_hz);
}

double dc_voltage(double p_dc_w, double load_ohms)
{
    if (!(p_dc_w >= 0.0) || !(load_ohms > 0.0))
        throw std::domain_error("dc_voltage: need p_dc >= 0 and load > 0");
    return std::sqrt(p_dc_w * load_ohms);
}

void RectennaConfig::validate() const
{
    if (!(load_ohms > 0.0) || !std::isfinite(load_ohms))
        throw ValidationError("rectenna: load resistance must be positive");
    if (!(settle_time_constant_s > 0.0) || !std::isfinite(settle_time_constant_s))
        throw ValidationError("rectenna: settle time constant must be positive");
}

double settled_voltage(double v_target, double v_initial, double elapsed_s, RectennaConfig const& cfg)
{
    if (!(elapsed_s >= 0.0))
        throw std::domain_error("settled_voltage: elapsed time must be >= 0");
    double const x = elapsed_s / cfg.settle_time_constant_s;
    return v_initial * std::exp(-x) - v_target * std::expm1(-x);
}

double settling_energy(double v_target, double v_initial, double duration_s, RectennaConfig const& cfg)
{
    if (!(duration_s >= 0.0))
        throw std::domain_error("settling_energy: duration must be >= 0");
    double const tau = cfg.settle_time_constant_s;
    double const d = v_initial - v_target;
    double const x = duration_s / tau;
    double const integral = v_target * v_target * duration_s + 2.0 * v_target * d * tau * -std::expm1(-x) +
                            d * d * 0.5 * tau * -std::expm1(-2.0 * x);
    return integral / cfg.load_ohms;
}

} // namespace wptdas
