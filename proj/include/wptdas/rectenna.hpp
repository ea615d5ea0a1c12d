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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

namespace wptdas
{

/*!
 * Closed-form RF-to-dc efficiency of a single-diode rectifier, in the dBm domain.
 *
 *   p <= peak:             eta_peak * s(k (p - c)) / s(k (peak - c)),  s = logistic
 *   peak < p <= breakdown: eta_peak
 *   p > breakdown:         eta_peak * 10^(-slope_bd (p - breakdown) / 10)
 *
 * The breakdown slope is in dB of efficiency per dB of input; above 1 dB/dB the
 * output dc power itself falls past breakdown. Flat in frequency.
 */
struct ParametricEfficiency
{
    double eta_peak = 0.40;
    double peak_power_dbm = 0.0;
    double rise_slope_per_db = 0.15;
    double rise_center_dbm = -22.852095081059414;
    double breakdown_power_dbm = 3.0;
    double breakdown_slope_db_per_db = 3.0;

    // Solves rise_center_dbm so that eta(anchor_dbm) == anchor_eta.
    static ParametricEfficiency fit(double eta_peak, double peak_power_dbm, double anchor_dbm, double anchor_eta,
                                    double rise_slope_per_db, double breakdown_power_dbm,
                                    double breakdown_slope_db_per_db);

    void validate() const;
    double at_dbm(double p_dbm) const;
};

/// Measured efficiency grid over (input power dBm) x (frequency Hz), bilinear with edge clamping.
class EfficiencyTable
{
  public:
    // values are row-major: one row per power point, one column per frequency point.
    EfficiencyTable(std::vector<double> power_dbm, std::vector<double> freq_hz, std::vector<double> values);

    double at(double p_dbm, double freq_hz) const;

    std::span<const double> power_axis() const { return power_dbm_; }
    std::span<const double> frequency_axis() const { return freq_hz_; }

  private:
    std::vector<double> power_dbm_;
    std::vector<double> freq_hz_;
    std::vector<double> values_;
};

// Text matrix: first row = frequency axis in MHz (an optional non-numeric corner label
// may precede it), then one row per input power: `power_dbm eff_1 ... eff_N`.
EfficiencyTable parse_efficiency_table(std::istream& in);
EfficiencyTable load_efficiency_table(std::filesystem::path const& path);

class EfficiencyCurve
{
  public:
    EfficiencyCurve() : model_(default_parametric()) {}
    EfficiencyCurve(ParametricEfficiency p);
    EfficiencyCurve(EfficiencyTable t) : model_(std::move(t)) {}

    static ParametricEfficiency default_parametric();

    bool is_table() const { return std::holds_alternative<EfficiencyTable>(model_); }
    std::variant<EfficiencyTable, ParametricEfficiency> const& model() const { return model_; }

  private:
    std::variant<EfficiencyTable, ParametricEfficiency> model_;
};

/// Efficiency in [0, 1]; zero input power gives zero.
double efficiency(EfficiencyCurve const& curve, double p_rf_w, double freq_hz);

double output_dc_power(double p_rf_w, EfficiencyCurve const& curve, double freq_hz);

double dc_voltage(double p_dc_w, double load_ohms);

struct RectennaConfig
{
    EfficiencyCurve curve;
    double load_ohms = 10e3;
    double settle_time_constant_s = 2e-3;

    void validate() const;
};

/// First-order settling toward v_target.
double settled_voltage(double v_target, double v_initial, double elapsed_s, RectennaConfig const& cfg);

/// Energy delivered to the load, integral of v(t)^2 / R over [0, duration] along the settling trajectory.
double settling_energy(double v_target, double v_initial, double duration_s, RectennaConfig const& cfg);

} // namespace wptdas
