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

#include "wptdas/experiments.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace wptdas;

namespace
{

ExperimentConfig small_config(std::size_t realizations = 60)
{
    ExperimentConfig cfg;
    cfg.realizations = realizations;
    cfg.seed = 11;
    return cfg;
}

double harmonic(std::size_t m)
{
    double h = 0.0;
    for (std::size_t k = 1; k <= m; ++k)
        h += 1.0 / static_cast<double>(k);
    return h;
}

EfficiencyCurve constant_eta(double eta)
{
    return EfficiencyCurve(EfficiencyTable({-200.0, 100.0}, {2.4e9}, {eta, eta}));
}

std::string csv(ExperimentResult const& r)
{
    std::ostringstream os;
    write_results_csv(os, r, "h");
    return os.str();
}

} // namespace

TEST_CASE("nested frequency subsets")
{
    auto labels = [](std::size_t n, std::size_t n_max) {
        std::vector<int> out;
        for (auto f : nested_frequency_subset(n, n_max))
            out.push_back(f.value);
        return out;
    };
    CHECK(labels(1, 15) == std::vector<int>{8});
    CHECK(labels(3, 15) == std::vector<int>{4, 8, 12});
    CHECK(labels(5, 15) == std::vector<int>{1, 4, 8, 12, 15});
    CHECK(labels(15, 15).size() == 15);
    CHECK(labels(1, 5) == std::vector<int>{3});
    CHECK(labels(5, 5) == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(labels(2, 9) == std::vector<int>{1, 9});
    for (std::size_t n = 1; n <= 9; ++n)
    {
        auto const l = labels(n, 9);
        CHECK(l.size() == n);
        CHECK(std::is_sorted(l.begin(), l.end()));
        CHECK(std::adjacent_find(l.begin(), l.end()) == l.end());
    }
    CHECK_THROWS_AS(nested_frequency_subset(0, 15), ValidationError);
    CHECK_THROWS_AS(nested_frequency_subset(16, 15), ValidationError);
}

TEST_CASE("config validation")
{
    auto cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    auto bad = cfg;
    bad.realizations = 0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = cfg;
    bad.antenna_sweep = {5};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = cfg;
    bad.frequency_sweep = {16};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = cfg;
    bad.users = 0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = cfg;
    bad.users = 2;
    bad.user_extra_loss_db = {0.0};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad.user_extra_loss_db = {0.0, -1.0};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = cfg;
    bad.strategies.clear();
    CHECK_THROWS_AS(run_sweep(bad), ValidationError);
}

TEST_CASE("config hash tracks result-relevant fields")
{
    auto a = small_config();
    auto b = a;
    CHECK(config_hash(a) == config_hash(b));
    b.seed = 12;
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.budget.path_loss_db += 1.0;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("cell layout and lookup")
{
    auto cfg = small_config(5);
    auto const res = run_sweep(cfg);
    CHECK(res.cells.size() == 4 * 4 * 4);
    CHECK(res.cells.front().antennas == 1);
    CHECK(res.cells.front().frequencies == 1);
    CHECK(res.cells.front().strategy == Strategy::none);
    CHECK(res.cells.back().antennas == 4);
    CHECK(res.cells.back().frequencies == 15);
    CHECK(res.cells.back().strategy == Strategy::joint);
    for (auto const& c : res.cells)
        CHECK(c.samples.size() == 5);
    CHECK_THROWS_AS(res.find(7, 1, Strategy::joint), std::out_of_range);

    cfg.users = 2;
    auto const two = run_sweep(cfg);
    CHECK(two.cells.size() == 4 * 4 * 4 * 3);
    CHECK(two.find(2, 3, Strategy::joint, kSumUser).avg_pdc_w ==
          doctest::Approx(two.find(2, 3, Strategy::joint, 1).avg_pdc_w + two.find(2, 3, Strategy::joint, 2).avg_pdc_w));
}

TEST_CASE("parallel sweep is bit-identical to the serial reference")
{
    for (std::size_t users : {1u, 2u})
    {
        auto cfg = small_config(40);
        cfg.users = users;
        if (users == 2)
            cfg.user_extra_loss_db = {0.0, 3.0};
        auto const ref = run_sweep_serial(cfg);
        for (int jobs : {1, 4})
        {
            auto const par = run_sweep(cfg, jobs);
            REQUIRE(par.cells.size() == ref.cells.size());
            for (std::size_t i = 0; i < ref.cells.size(); ++i)
            {
                CHECK(par.cells[i].avg_pdc_w == ref.cells[i].avg_pdc_w);
                CHECK(par.cells[i].stderr_w == ref.cells[i].stderr_w);
                CHECK(par.cells[i].avg_prf_w == ref.cells[i].avg_prf_w);
                CHECK(par.cells[i].samples == ref.cells[i].samples);
            }
            CHECK(csv(par) == csv(ref));
        }
    }
}

TEST_CASE("with one antenna and one frequency every strategy coincides")
{
    auto cfg = small_config(50);
    cfg.antenna_sweep = {1};
    cfg.frequency_sweep = {1};
    auto const res = run_sweep(cfg);
    double const v = res.find(1, 1, Strategy::none).avg_pdc_w;
    CHECK(v > 0.0);
    CHECK(res.find(1, 1, Strategy::joint).avg_pdc_w == v);
    CHECK(res.find(1, 1, Strategy::antenna_only).avg_pdc_w == v);
    CHECK(res.find(1, 1, Strategy::frequency_only).avg_pdc_w == v);
}

TEST_CASE("per-realization dominance and nested-set monotonicity")
{
    auto const cfg = small_config(100);
    auto const res = run_sweep(cfg);
    for (std::size_t m : cfg.antenna_sweep)
        for (std::size_t n : cfg.frequency_sweep)
        {
            auto const& j = res.find(m, n, Strategy::joint).samples;
            auto const& a = res.find(m, n, Strategy::antenna_only).samples;
            auto const& f = res.find(m, n, Strategy::frequency_only).samples;
            auto const& z = res.find(m, n, Strategy::none).samples;
            for (std::size_t r = 0; r < j.size(); ++r)
            {
                CHECK(j[r] >= a[r]);
                CHECK(j[r] >= f[r]);
                CHECK(a[r] >= z[r]);
                CHECK(f[r] >= z[r]);
            }
        }
    for (std::size_t m : cfg.antenna_sweep)
        for (std::size_t k = 1; k < cfg.frequency_sweep.size(); ++k)
        {
            auto const& lo = res.find(m, cfg.frequency_sweep[k - 1], Strategy::joint).samples;
            auto const& hi = res.find(m, cfg.frequency_sweep[k], Strategy::joint).samples;
            for (std::size_t r = 0; r < lo.size(); ++r)
                CHECK(hi[r] >= lo[r]);
        }
    for (std::size_t n : cfg.frequency_sweep)
        for (std::size_t k = 1; k < cfg.antenna_sweep.size(); ++k)
        {
            auto const& lo = res.find(cfg.antenna_sweep[k - 1], n, Strategy::joint).samples;
            auto const& hi = res.find(cfg.antenna_sweep[k], n, Strategy::joint).samples;
            for (std::size_t r = 0; r < lo.size(); ++r)
                CHECK(hi[r] >= lo[r]);
        }
}

TEST_CASE("stderr is the sample deviation over sqrt(R)")
{
    auto const res = run_sweep(small_config(30));
    auto const& c = res.find(3, 5, Strategy::joint);
    double mean = 0.0;
    for (double x : c.samples)
        mean += x;
    mean /= 30.0;
    double ss = 0.0;
    for (double x : c.samples)
        ss += (x - mean) * (x - mean);
    CHECK(c.avg_pdc_w == doctest::Approx(mean).epsilon(1e-12));
    CHECK(c.stderr_w == doctest::Approx(std::sqrt(ss / 29.0) / std::sqrt(30.0)).epsilon(1e-12));
    CHECK(run_sweep(small_config(1)).cells[0].stderr_w == 0.0);
}

TEST_CASE("antenna selection gain follows the harmonic number")
{
    ExperimentConfig cfg;
    cfg.profile = builtin_profile("single-tap-flat");
    cfg.rectenna.curve = constant_eta(0.5);
    cfg.antenna_sweep = {1, 2, 4};
    cfg.frequency_sweep = {1};
    cfg.strategies = {Strategy::none, Strategy::antenna_only};
    cfg.realizations = 4000;
    cfg.seed = 3;
    auto const res = run_sweep(cfg);
    double const base = res.find(1, 1, Strategy::none).avg_prf_w;
    for (std::size_t m : {2u, 4u})
    {
        double const ratio = res.find(m, 1, Strategy::antenna_only).avg_prf_w / base;
        CHECK(ratio == doctest::Approx(harmonic(m)).epsilon(0.05));
        CHECK(res.find(m, 1, Strategy::antenna_only).avg_pdc_w ==
              doctest::Approx(0.5 * res.find(m, 1, Strategy::antenna_only).avg_prf_w).epsilon(1e-12));
    }
}

TEST_CASE("protocol pipeline matches the ideal sweep under ideal conditions")
{
    ProtocolExperimentConfig pc;
    pc.base = small_config(30);
    pc.base.antenna_sweep = {2, 4};
    pc.base.frequency_sweep = {3, 15};
    pc.base.rectenna.settle_time_constant_s = 10e-6;
    pc.adc.enabled = false;
    pc.keep_logs = true;
    auto const proto = run_protocol_experiment(pc);
    auto const ideal = run_sweep(pc.base);
    REQUIRE(proto.summary.cells.size() == ideal.cells.size());
    for (std::size_t i = 0; i < ideal.cells.size(); ++i)
    {
        auto const& a = proto.summary.cells[i].samples;
        auto const& b = ideal.cells[i].samples;
        REQUIRE(a.size() == b.size());
        for (std::size_t r = 0; r < a.size(); ++r)
            CHECK(std::abs(a[r] - b[r]) <= 1e-9 * std::abs(b[r]));
    }
    CHECK(proto.logs.size() == 30);
    for (auto const& log : proto.logs)
    {
        CHECK(log.complete());
        CHECK(log.bytes_sent() == 5);
        CHECK(log.count(EventKind::adc_sample) == 60);
    }
}

TEST_CASE("protocol pipeline is deterministic across thread counts")
{
    ProtocolExperimentConfig pc;
    pc.base = small_config(20);
    pc.base.users = 2;
    pc.link.delivery = Delivery::lossy;
    pc.link.drop_probability = 0.3;
    auto const a = run_protocol_experiment(pc, 1);
    auto const b = run_protocol_experiment(pc, 4);
    CHECK(csv(a.summary) == csv(b.summary));
}

TEST_CASE("lossy feedback lands between no selection and joint selection")
{
    ProtocolExperimentConfig pc;
    pc.base = small_config(400);
    pc.base.antenna_sweep = {4};
    pc.base.frequency_sweep = {15};
    pc.base.strategies = {Strategy::none, Strategy::joint};
    pc.link.delivery = Delivery::lossy;
    pc.link.drop_probability = 0.5;
    auto const lossy = run_protocol_experiment(pc).summary;
    auto const ideal = run_sweep(pc.base);
    double const l = lossy.find(4, 15, Strategy::joint).avg_pdc_w;
    CHECK(l > ideal.find(4, 15, Strategy::none).avg_pdc_w);
    CHECK(l < ideal.find(4, 15, Strategy::joint).avg_pdc_w);
}

TEST_CASE("results CSV layout")
{
    auto cfg = small_config(3);
    cfg.antenna_sweep = {1, 4};
    cfg.frequency_sweep = {1, 15};
    cfg.users = 2;
    auto const text = csv(run_sweep(cfg));
    CHECK(text.rfind("# h\nM,N,strategy,user,avg_pdc_watts,stderr_watts,realizations,seed\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2 + 2 * 2 * 4 * 3);
    CHECK(text.find("\n1,1,none,1,") != std::string::npos);
    CHECK(text.find("\n4,15,joint,sum,") != std::string::npos);
}

TEST_CASE("power budget report")
{
    auto const r = power_budget_report(BudgetInputs{});
    CHECK(r.receiver.e_train == doctest::Approx(4.212e-6));
    CHECK(r.receiver.e_wpt == doctest::Approx(59.568e-6));
    CHECK(r.receiver.e_dc == doctest::Approx(63.78e-6));
    CHECK(r.receiver.e_soc == doctest::Approx(10.4e-6));
    CHECK(r.receiver.e_radio == doctest::Approx(7.68e-6));
    CHECK(r.receiver.e_consumed == doctest::Approx(18.08e-6));
    CHECK(r.receiver.e_net == doctest::Approx(45.70e-6));
    CHECK(r.receiver.efficiency == doctest::Approx(45.70 / 63.78).epsilon(1e-9));
    CHECK(r.tx_total_w == doctest::Approx(84.0 + 48e-3 + 2.6e-6));

    BudgetInputs free;
    free.receiver = {0.0, 0.0, 250e3, 0};
    CHECK(power_budget_report(free).receiver.efficiency == doctest::Approx(1.0));

    BudgetInputs poor;
    poor.train_power_w = 0.0;
    poor.wpt_power_w = 1e-7;
    auto const p = power_budget_report(poor);
    CHECK(p.receiver.e_net < 0.0);
    CHECK(p.receiver.efficiency < 0.0);

    std::ostringstream os;
    write_budget_csv(os, r, "h");
    CHECK(os.str().rfind("# h\nquantity,value,unit\n", 0) == 0);
    CHECK(format_budget_report(r).find("71.7") != std::string::npos);
}
