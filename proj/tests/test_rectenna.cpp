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
#include "wptdas/rng.hpp"
#include "wptdas/units.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace wptdas;

namespace
{

EfficiencyCurve table_2x2()
{
    return EfficiencyCurve(EfficiencyTable({-20.0, 0.0}, {2.40e9, 2.48e9}, {0.10, 0.20, 0.30, 0.60}));
}

// Trapezoid integral of v(t)^2 / R over the settling trajectory.
double numeric_energy(double vt, double v0, double dur, RectennaConfig const& cfg, int steps)
{
    double const h = dur / steps;
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i)
    {
        double const v = vt + (v0 - vt) * std::exp(-i * h / cfg.settle_time_constant_s);
        acc += (i == 0 || i == steps ? 0.5 : 1.0) * v * v;
    }
    return acc * h / cfg.load_ohms;
}

} // namespace

TEST_CASE("default curve anchor points")
{
    EfficiencyCurve const c;
    CHECK(efficiency(c, dbm_to_watts(0.0), 2.4e9) == doctest::Approx(0.40).epsilon(1e-12));
    CHECK(efficiency(c, dbm_to_watts(-20.0), 2.4e9) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(efficiency(c, dbm_to_watts(3.0), 2.4e9) == doctest::Approx(0.40).epsilon(1e-12));
    // 3 dB/dB decay: 1 dB past breakdown costs a factor 10^-0.3.
    CHECK(efficiency(c, dbm_to_watts(4.0), 2.4e9) == doctest::Approx(0.40 * std::pow(10.0, -0.3)).epsilon(1e-12));
    auto const fitted = EfficiencyCurve::default_parametric();
    CHECK(fitted.rise_center_dbm == doctest::Approx(ParametricEfficiency{}.rise_center_dbm).epsilon(1e-12));
}

TEST_CASE("efficiency at zero input is zero; negative input rejected")
{
    CHECK(efficiency(EfficiencyCurve{}, 0.0, 2.4e9) == 0.0);
    CHECK(output_dc_power(0.0, EfficiencyCurve{}, 2.4e9) == 0.0);
    CHECK(efficiency(table_2x2(), 0.0, 2.4e9) == 0.0);
    CHECK_THROWS_AS(efficiency(EfficiencyCurve{}, -1e-6, 2.4e9), std::domain_error);
}

TEST_CASE("single-cell table is constant everywhere")
{
    EfficiencyCurve const c(EfficiencyTable({-20.0}, {2.44e9}, {0.25}));
    auto rng = make_stream(1, StreamTag::channel, 0);
    for (int i = 0; i < 200; ++i)
    {
        double const p = dbm_to_watts(-60.0 + 90.0 * rng.uniform());
        double const f = 1e9 + 4e9 * rng.uniform();
        CHECK(efficiency(c, p, f) == 0.25);
    }
}

TEST_CASE("bilinear midpoint is the mean of the four corners")
{
    auto const c = table_2x2();
    CHECK(efficiency(c, dbm_to_watts(-10.0), 2.44e9) == doctest::Approx((0.1 + 0.2 + 0.3 + 0.6) / 4.0).epsilon(1e-12));
    // Exact grid points, edges and clamping.
    CHECK(efficiency(c, dbm_to_watts(-20.0), 2.40e9) == doctest::Approx(0.1));
    CHECK(efficiency(c, dbm_to_watts(0.0), 2.48e9) == doctest::Approx(0.6));
    CHECK(efficiency(c, dbm_to_watts(-50.0), 2.30e9) == doctest::Approx(0.1));
    CHECK(efficiency(c, dbm_to_watts(20.0), 2.60e9) == doctest::Approx(0.6));
    CHECK(efficiency(c, dbm_to_watts(-10.0), 2.30e9) == doctest::Approx(0.2));
}

TEST_CASE("table validation happens at construction")
{
    CHECK_THROWS_AS(EfficiencyTable({0.0, -10.0}, {2.4e9}, {0.1, 0.2}), ValidationError);
    CHECK_THROWS_AS(EfficiencyTable({0.0, 0.0}, {2.4e9}, {0.1, 0.2}), ValidationError);
    CHECK_THROWS_AS(EfficiencyTable({0.0}, {2.5e9, 2.4e9}, {0.1, 0.2}), ValidationError);
    CHECK_THROWS_AS(EfficiencyTable({0.0}, {2.4e9}, {1.2}), ValidationError);
    CHECK_THROWS_AS(EfficiencyTable({0.0}, {2.4e9}, {-0.1}), ValidationError);
    CHECK_THROWS_AS(EfficiencyTable({0.0}, {2.4e9}, {0.1, 0.2}), ValidationError);
    CHECK_THROWS_AS(EfficiencyTable({}, {2.4e9}, {}), ValidationError);
}

TEST_CASE("efficiency table text format")
{
    std::istringstream in("# demo\nMHz, 2400, 2480\n-20, 0.1, 0.2\n0, 0.3, 0.6\n");
    auto const t = parse_efficiency_table(in);
    CHECK(t.frequency_axis()[1] == 2480e6);
    CHECK(t.at(-10.0, 2.44e9) == doctest::Approx(0.3));
    std::istringstream no_corner("2400 2480\n-20 0.1 0.2\n");
    CHECK(parse_efficiency_table(no_corner).power_axis().size() == 1);
    std::istringstream ragged("2400 2480\n-20 0.1\n");
    CHECK_THROWS_AS(parse_efficiency_table(ragged), ValidationError);
    std::istringstream unordered("2400\n0 0.1\n-20 0.1\n");
    CHECK_THROWS_AS(parse_efficiency_table(unordered), ValidationError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(parse_efficiency_table(empty), ValidationError);
    auto const shipped = load_efficiency_table(std::string(WPTDAS_DATA_DIR) + "/efficiency-example.csv");
    CHECK(shipped.frequency_axis().size() == 5);
    CHECK_THROWS_AS(load_efficiency_table("/nonexistent.csv"), ValidationError);
}

TEST_CASE("efficiency stays in [0, 1] and P_DC <= P_RF")
{
    EfficiencyCurve const curves[] = {EfficiencyCurve{}, table_2x2(),
                                      EfficiencyCurve(load_efficiency_table(std::string(WPTDAS_DATA_DIR) +
                                                                            "/efficiency-example.csv"))};
    auto rng = make_stream(2, StreamTag::channel, 0);
    for (auto const& c : curves)
        for (int i = 0; i < 2000; ++i)
        {
            double const p = dbm_to_watts(-90.0 + 130.0 * rng.uniform());
            double const f = 2.2e9 + 0.5e9 * rng.uniform();
            double const eta = efficiency(c, p, f);
            CHECK(eta >= 0.0);
            CHECK(eta <= 1.0);
            CHECK(output_dc_power(p, c, f) <= p);
        }
}

TEST_CASE("default curve: P_DC rises, then falls past breakdown")
{
    EfficiencyCurve const c;
    auto const& p = std::get<ParametricEfficiency>(c.model());
    // Sign pattern of finite differences: + up to breakdown, - after, with exactly one change.
    int changes = 0;
    int last_sign = 0;
    double prev = output_dc_power(dbm_to_watts(-60.0), c, 2.4e9);
    for (double dbm = -59.9; dbm <= 20.0; dbm += 0.1)
    {
        double const cur = output_dc_power(dbm_to_watts(dbm), c, 2.4e9);
        int const sign = cur > prev ? 1 : (cur < prev ? -1 : 0);
        REQUIRE(sign != 0);
        if (last_sign != 0 && sign != last_sign)
            ++changes;
        if (dbm < p.breakdown_power_dbm)
            CHECK(sign == 1);
        if (dbm > p.breakdown_power_dbm + 0.1)
            CHECK(sign == -1);
        last_sign = sign;
        prev = cur;
    }
    CHECK(changes == 1);
    // eta itself increases below the peak.
    double e_prev = 0.0;
    for (double dbm = -60.0; dbm <= p.peak_power_dbm; dbm += 0.5)
    {
        double const e = p.at_dbm(dbm);
        CHECK(e > e_prev);
        e_prev = e;
    }
}

TEST_CASE("output dc power definition")
{
    EfficiencyCurve const c(EfficiencyTable({-40.0, 10.0}, {2.4e9}, {0.25, 0.25}));
    CHECK(output_dc_power(10e-6, c, 2.4e9) == doctest::Approx(2.5e-6).epsilon(1e-12));
}

TEST_CASE("parametric validation and fitting")
{
    CHECK_THROWS_AS(ParametricEfficiency::fit(0.4, 0.0, 5.0, 0.25, 0.15, 3.0, 3.0), ValidationError);
    CHECK_THROWS_AS(ParametricEfficiency::fit(0.4, 0.0, -20.0, 0.5, 0.15, 3.0, 3.0), ValidationError);
    CHECK_THROWS_AS(ParametricEfficiency::fit(0.4, 0.0, -20.0, 0.25, 0.0, 3.0, 3.0), ValidationError);
    CHECK_THROWS_AS(ParametricEfficiency::fit(0.4, 0.0, -20.0, 0.25, 0.15, -1.0, 3.0), ValidationError);
    CHECK_THROWS_AS(ParametricEfficiency::fit(1.5, 0.0, -20.0, 0.25, 0.15, 3.0, 3.0), ValidationError);
    auto const p = ParametricEfficiency::fit(0.6, -5.0, -25.0, 0.2, 0.2, 0.0, 2.0);
    CHECK(p.at_dbm(-25.0) == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(p.at_dbm(-5.0) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("dc voltage")
{
    CHECK(dc_voltage(1e-6, 10e3) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(dc_voltage(0.0, 10e3) == 0.0);
    CHECK(dc_voltage(4e-6, 10e3) == doctest::Approx(2.0 * dc_voltage(1e-6, 10e3)).epsilon(1e-12));
    CHECK_THROWS_AS(dc_voltage(-1.0, 10e3), std::domain_error);
    CHECK_THROWS_AS(dc_voltage(1.0, 0.0), std::domain_error);
}

TEST_CASE("settling")
{
    RectennaConfig cfg;
    CHECK(settled_voltage(1.0, 0.3, 0.0, cfg) == 0.3);
    CHECK(settled_voltage(1.0, 0.3, 1e3, cfg) == 1.0);
    double const tau = cfg.settle_time_constant_s;
    CHECK(std::abs(settled_voltage(2.0, 0.0, tau * std::log(100.0), cfg) - 0.99 * 2.0) < 1e-12);
    double prev = settled_voltage(1.0, 0.0, 0.0, cfg);
    for (double t = 1e-4; t < 0.02; t += 1e-4)
    {
        double const v = settled_voltage(1.0, 0.0, t, cfg);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(settled_voltage(1.0, 0.0, -1.0, cfg), std::domain_error);
    // 18 ms slots with the 2 ms default settle to better than 99.98 %.
    CHECK(settled_voltage(1.0, 0.0, 0.018, cfg) > 0.9998);
}

TEST_CASE("settling energy matches numerical integration")
{
    RectennaConfig cfg;
    for (auto [vt, v0] : {std::pair{0.5, 0.0}, {0.1, 0.4}, {0.3, 0.3}, {0.0, 0.2}})
    {
        double const analytic = settling_energy(vt, v0, 0.018, cfg);
        CHECK(analytic == doctest::Approx(numeric_energy(vt, v0, 0.018, cfg, 200000)).epsilon(1e-8));
        CHECK(analytic >= 0.0);
    }
    // Already settled: plain P * t.
    double const v = dc_voltage(5e-6, cfg.load_ohms);
    CHECK(settling_energy(v, v, 2.0, cfg) == doctest::Approx(5e-6 * 2.0).epsilon(1e-12));
    CHECK(settling_energy(v, 0.0, 0.0, cfg) == 0.0);
}

TEST_CASE("rectenna config validation")
{
    RectennaConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.load_ohms = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = RectennaConfig{};
    cfg.settle_time_constant_s = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
