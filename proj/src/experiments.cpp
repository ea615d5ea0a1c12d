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

#include "wptdas/format.hpp"
#include "wptdas/scheduler.hpp"
#include "wptdas/signal_chain.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <sstream>

namespace wptdas
{

void ExperimentConfig::validate() const
{
    if (realizations < 1)
        throw ValidationError("experiment: realizations must be >= 1");
    if (num_antennas < 1)
        throw ValidationError("experiment: need at least one antenna");
    if (antenna_sweep.empty() || frequency_sweep.empty() || strategies.empty())
        throw ValidationError("experiment: sweep lists must be non-empty");
    for (auto m : antenna_sweep)
        if (m < 1 || m > num_antennas)
            throw ValidationError("experiment: antenna sweep value " + std::to_string(m) + " outside 1.." +
                                  std::to_string(num_antennas));
    for (auto n : frequency_sweep)
        if (n < 1 || n > grid.size())
            throw ValidationError("experiment: frequency sweep value " + std::to_string(n) + " outside 1.." +
                                  std::to_string(grid.size()));
    if (users < 1)
        throw ValidationError("experiment: need at least one user");
    if (!user_extra_loss_db.empty() && user_extra_loss_db.size() != users)
        throw ValidationError("experiment: user_extra_loss_db needs one value per user");
    for (double l : user_extra_loss_db)
        if (!(l >= 0.0) || !std::isfinite(l))
            throw ValidationError("experiment: user extra loss must be finite and >= 0 dB");
    budget.validate();
    rectenna.validate();
}

double ExperimentConfig::extra_loss_db(std::size_t user_index) const
{
    return user_extra_loss_db.empty() ? 0.0 : user_extra_loss_db.at(user_index);
}

std::string describe(ExperimentConfig const& cfg)
{
    std::ostringstream os;
    os << "profile=" << cfg.profile.name();
    for (auto const& t : cfg.profile.taps())
        os << ' ' << format_number(t.delay_s) << ':' << format_number(t.mean_power);
    os << "\ngrid=" << to_string(cfg.grid.mode());
    for (double f : cfg.grid.frequencies())
        os << ' ' << format_number(f);
    os << "\nantennas=" << cfg.num_antennas << "\nantenna_sweep=";
    for (auto m : cfg.antenna_sweep)
        os << m << ' ';
    os << "\nfrequency_sweep=";
    for (auto n : cfg.frequency_sweep)
        os << n << ' ';
    os << "\nstrategies=";
    for (auto s : cfg.strategies)
        os << to_string(s) << ' ';
    os << "\nusers=" << cfg.users << "\nextra_loss=";
    for (double l : cfg.user_extra_loss_db)
        os << format_number(l) << ' ';
    os << "\nrealizations=" << cfg.realizations << "\nseed=" << cfg.seed;
    os << "\nbudget=" << format_number(cfg.budget.tx_power_w) << ' ' << format_number(cfg.budget.path_loss_db) << ' '
       << format_number(cfg.budget.tx_gain_dbi) << ' ' << format_number(cfg.budget.rx_gain_dbi);
    os << "\nrectenna=" << format_number(cfg.rectenna.load_ohms) << ' '
       << format_number(cfg.rectenna.settle_time_constant_s) << "\ncurve=";
    if (auto const* p = std::get_if<ParametricEfficiency>(&cfg.rectenna.curve.model()))
    {
        os << "parametric " << format_number(p->eta_peak) << ' ' << format_number(p->peak_power_dbm) << ' '
           << format_number(p->rise_slope_per_db) << ' ' << format_number(p->rise_center_dbm) << ' '
           << format_number(p->breakdown_power_dbm) << ' ' << format_number(p->breakdown_slope_db_per_db);
    }
    else
    {
        auto const& t = std::get<EfficiencyTable>(cfg.rectenna.curve.model());
        os << "table";
        for (double p : t.power_axis())
            for (double f : t.frequency_axis())
                os << ' ' << format_number(t.at(p, f));
        for (double p : t.power_axis())
            os << " p" << format_number(p);
        for (double f : t.frequency_axis())
            os << " f" << format_number(f);
    }
    os << '\n';
    return os.str();
}

std::uint64_t config_hash(ExperimentConfig const& cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : describe(cfg))
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<FrequencyId> nested_frequency_subset(std::size_t n, std::size_t n_max)
{
    if (n < 1 || n > n_max)
        throw ValidationError("frequency subset size " + std::to_string(n) + " outside 1.." + std::to_string(n_max));
    std::vector<int> labels;
    if (n_max == 15 && n == 3)
        labels = {4, 8, 12};
    else if (n_max == 15 && n == 5)
        labels = {1, 4, 8, 12, 15};
    else if (n == 1)
        labels = {middle_frequency(n_max).value};
    else
        for (std::size_t i = 0; i < n; ++i)
            labels.push_back(1 + static_cast<int>(std::lround(static_cast<double>(i) * static_cast<double>(n_max - 1) /
                                                              static_cast<double>(n - 1))));
    std::vector<FrequencyId> out;
    for (int l : labels)
        out.push_back(FrequencyId{l});
    return out;
}

CellResult const& ExperimentResult::find(std::size_t m, std::size_t n, Strategy s, int user) const
{
    for (auto const& c : cells)
        if (c.antennas == m && c.frequencies == n && c.strategy == s && c.user == user)
            return c;
    throw std::out_of_range("no result cell M=" + std::to_string(m) + " N=" + std::to_string(n) + " " +
                            std::string(to_string(s)) + " user " + std::to_string(user));
}

namespace
{

struct CellKey
{
    std::size_t m;
    std::size_t n;
    Strategy strategy;
    int user;
};

// Cell order: M, then N, then strategy, then users 1..K and (for K >= 2) the sum.
std::vector<CellKey> cell_layout(ExperimentConfig const& cfg)
{
    std::vector<CellKey> keys;
    for (auto m : cfg.antenna_sweep)
        for (auto n : cfg.frequency_sweep)
            for (auto s : cfg.strategies)
            {
                for (std::size_t u = 1; u <= cfg.users; ++u)
                    keys.push_back({m, n, s, static_cast<int>(u)});
                if (cfg.users > 1)
                    keys.push_back({m, n, s, kSumUser});
            }
    return keys;
}

// Values laid out [realization][cell][pdc, prf].
ExperimentResult aggregate(ExperimentConfig const& cfg, std::vector<CellKey> const& keys,
                           std::vector<double> const& values)
{
    std::size_t const r_count = cfg.realizations;
    ExperimentResult res;
    res.seed = cfg.seed;
    res.realizations = r_count;
    res.users = cfg.users;
    res.config_hash = config_hash(cfg);
    res.cells.reserve(keys.size());
    for (std::size_t c = 0; c < keys.size(); ++c)
    {
        CellResult cell{.antennas = keys[c].m, .frequencies = keys[c].n, .strategy = keys[c].strategy, .user = keys[c].user};
        cell.samples.resize(r_count);
        double sum = 0.0;
        double sum_rf = 0.0;
        for (std::size_t r = 0; r < r_count; ++r)
        {
            double const x = values[(r * keys.size() + c) * 2];
            cell.samples[r] = x;
            sum += x;
            sum_rf += values[(r * keys.size() + c) * 2 + 1];
        }
        double const n = static_cast<double>(r_count);
        cell.avg_pdc_w = sum / n;
        cell.avg_prf_w = sum_rf / n;
        if (r_count > 1)
        {
            double ss = 0.0;
            for (double x : cell.samples)
                ss += (x - cell.avg_pdc_w) * (x - cell.avg_pdc_w);
            cell.stderr_w = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        }
        res.cells.push_back(std::move(cell));
    }
    return res;
}

LinkBudget user_budget(ExperimentConfig const& cfg, std::size_t u)
{
    LinkBudget b = cfg.budget;
    b.path_loss_db += cfg.extra_loss_db(u);
    return b;
}

std::vector<ChannelRealization> draw_users(ExperimentConfig const& cfg, std::size_t r)
{
    std::vector<ChannelRealization> chans;
    chans.reserve(cfg.users);
    for (std::size_t u = 0; u < cfg.users; ++u)
    {
        auto rng = make_stream(cfg.seed, StreamTag::channel, r, u);
        chans.push_back(sample_channel(cfg.profile, cfg.num_antennas, rng));
    }
    return chans;
}

std::vector<AntennaId> first_antennas(std::size_t m)
{
    std::vector<AntennaId> out;
    for (std::size_t i = 0; i < m; ++i)
        out.push_back(AntennaId::from_index(i));
    return out;
}

struct Pair
{
    AntennaId m;
    FrequencyId n;
};

// Fills one realization's block: per cell, (dc, rf) at the selected pair(s).
void realization_block(ExperimentConfig const& cfg, std::vector<CellKey> const& keys, std::size_t r, double* out)
{
    auto const chans = draw_users(cfg, r);
    std::size_t const k = cfg.users;
    std::vector<CandidateMatrix> dc, rf;
    for (std::size_t u = 0; u < k; ++u)
    {
        auto const b = user_budget(cfg, u);
        rf.push_back(rf_power_matrix(chans[u], cfg.grid, b));
        CandidateMatrix d(rf.back().antennas(), rf.back().frequencies());
        for (std::size_t i = 0; i < d.antennas(); ++i)
            for (std::size_t j = 0; j < d.frequencies(); ++j)
            {
                auto const m = AntennaId::from_index(i);
                auto const n = FrequencyId::from_index(j);
                d.set(m, n, output_dc_power(rf.back().at(m, n), cfg.rectenna.curve, cfg.grid.frequency(n)));
            }
        dc.push_back(std::move(d));
    }

    std::size_t c = 0;
    while (c < keys.size())
    {
        auto const& key = keys[c];
        auto const rows = first_antennas(key.m);
        auto const cols = nested_frequency_subset(key.n, cfg.grid.size());
        std::vector<Pair> sel;
        for (std::size_t u = 0; u < k; ++u)
        {
            auto const local = apply_strategy(key.strategy, dc[u].submatrix(rows, cols));
            sel.push_back({local.antenna, cols[local.frequency.index()]});
        }
        double sum_dc = 0.0;
        double sum_rf = 0.0;
        for (std::size_t j = 0; j < k; ++j)
        {
            double p = 0.0;
            double q = 0.0;
            for (auto const& s : sel)
            {
                p += dc[j].at(s.m, s.n);
                q += rf[j].at(s.m, s.n);
            }
            p /= static_cast<double>(k);
            q /= static_cast<double>(k);
            out[2 * c] = p;
            out[2 * c + 1] = q;
            sum_dc += p;
            sum_rf += q;
            ++c;
        }
        if (k > 1)
        {
            out[2 * c] = sum_dc;
            out[2 * c + 1] = sum_rf;
            ++c;
        }
    }
}

template <class Body>
void parallel_realizations(std::size_t count, int jobs, Body body)
{
    std::exception_ptr error;
    int const threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(count); ++r)
    {
        try
        {
            body(static_cast<std::size_t>(r));
        }
        catch (...)
        {
#pragma omp critical(wptdas_sweep_error)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace

ExperimentResult run_sweep(ExperimentConfig const& cfg, int jobs)
{
    cfg.validate();
    auto const keys = cell_layout(cfg);
    std::vector<double> values(cfg.realizations * keys.size() * 2);
    parallel_realizations(cfg.realizations, jobs,
                          [&](std::size_t r) { realization_block(cfg, keys, r, &values[r * keys.size() * 2]); });
    return aggregate(cfg, keys, values);
}

ExperimentResult run_sweep_serial(ExperimentConfig const& cfg)
{
    cfg.validate();
    auto const keys = cell_layout(cfg);
    std::size_t const k = cfg.users;
    std::vector<double> values(cfg.realizations * keys.size() * 2);
    for (std::size_t r = 0; r < cfg.realizations; ++r)
    {
        auto const chans = draw_users(cfg, r);
        for (std::size_t c = 0; c < keys.size(); ++c)
        {
            auto const& key = keys[c];
            auto const cols = nested_frequency_subset(key.n, cfg.grid.size());
            auto const base_n = cols[middle_frequency(cols.size()).index()];

            // Candidate pairs allowed by the strategy, scanned antenna-major.
            std::vector<Pair> allowed;
            for (std::size_t i = 0; i < key.m; ++i)
                for (auto n : cols)
                {
                    AntennaId const m = AntennaId::from_index(i);
                    bool const ok = key.strategy == Strategy::joint ||
                                    (key.strategy == Strategy::frequency_only && m.value == 1) ||
                                    (key.strategy == Strategy::antenna_only && n == base_n) ||
                                    (key.strategy == Strategy::none && m.value == 1 && n == base_n);
                    if (ok)
                        allowed.push_back({m, n});
                }

            auto pick = [&](std::size_t u) {
                auto const b = user_budget(cfg, u);
                Pair best = allowed.front();
                double best_p = -1.0;
                for (auto const& p : allowed)
                {
                    double const v = dc_power_at(chans[u], p.m, cfg.grid.frequency(p.n), b, cfg.rectenna.curve);
                    if (v > best_p)
                    {
                        best_p = v;
                        best = p;
                    }
                }
                return best;
            };

            double* out = &values[(r * keys.size() + c) * 2];
            if (key.user == kSumUser)
            {
                // Sum row follows the K user rows; add user 1 first.
                double s_dc = 0.0;
                double s_rf = 0.0;
                for (std::size_t j = k; j >= 1; --j)
                {
                    s_dc += values[(r * keys.size() + c - j) * 2];
                    s_rf += values[(r * keys.size() + c - j) * 2 + 1];
                }
                out[0] = s_dc;
                out[1] = s_rf;
                continue;
            }
            std::size_t const j = static_cast<std::size_t>(key.user - 1);
            auto const b = user_budget(cfg, j);
            double p = 0.0;
            double q = 0.0;
            for (std::size_t a = 0; a < k; ++a)
            {
                Pair const s = pick(a);
                double const f = cfg.grid.frequency(s.n);
                p += dc_power_at(chans[j], s.m, f, b, cfg.rectenna.curve);
                q += rf_power_at(chans[j], s.m, f, b);
            }
            out[0] = p / static_cast<double>(k);
            out[1] = q / static_cast<double>(k);
        }
    }
    return aggregate(cfg, keys, values);
}

ProtocolExperimentResult run_protocol_experiment(ProtocolExperimentConfig const& cfg, int jobs)
{
    auto const& base = cfg.base;
    base.validate();
    cfg.link.validate();
    cfg.adc.validate();
    auto const keys = cell_layout(base);
    std::size_t const k = base.users;
    std::size_t const frames = cfg.frames_per_realization > 0 ? cfg.frames_per_realization : k;
    std::size_t const max_m = *std::max_element(base.antenna_sweep.begin(), base.antenna_sweep.end());
    std::size_t const max_n = *std::max_element(base.frequency_sweep.begin(), base.frequency_sweep.end());

    std::vector<double> values(base.realizations * keys.size() * 2);
    std::vector<std::vector<EventLog>> logs(base.realizations);

    parallel_realizations(base.realizations, jobs, [&](std::size_t r) {
        auto const chans = draw_users(base, r);
        double* out = &values[r * keys.size() * 2];
        std::size_t c = 0;
        std::size_t cell_index = 0;
        while (c < keys.size())
        {
            auto const& key = keys[c];
            auto const cols = nested_frequency_subset(key.n, base.grid.size());
            CandidateSet cands;
            switch (key.strategy)
            {
            case Strategy::joint:
                cands = {first_antennas(key.m), cols};
                break;
            case Strategy::frequency_only:
                cands = {{AntennaId{1}}, cols};
                break;
            case Strategy::antenna_only:
                cands = {first_antennas(key.m), {cols[middle_frequency(cols.size()).index()]}};
                break;
            case Strategy::none:
                cands = {{AntennaId{1}}, {cols[middle_frequency(cols.size()).index()]}};
                break;
            }

            TdmaShared shared;
            shared.grid = base.grid;
            shared.budget = base.budget;
            shared.schedule = FrameSchedule{cfg.slot, cands.size(), cfg.wpt};
            shared.link = cfg.link;
            shared.adc = cfg.adc;
            shared.candidates = cands;

            std::vector<UserState> users;
            for (std::size_t u = 0; u < k; ++u)
                users.push_back(UserState{.id = static_cast<int>(u + 1),
                                          .channel = chans[u],
                                          .rectenna = base.rectenna,
                                          .extra_loss_db = base.extra_loss_db(u)});

            auto rng = make_stream(base.seed, StreamTag::link, r, cell_index * 8 + static_cast<std::uint64_t>(key.strategy));
            auto tdma = run_tdma(users, frames, shared, rng);

            double sum_dc = 0.0;
            double sum_rf = 0.0;
            for (std::size_t j = 0; j < k; ++j)
            {
                LinkBudget b = base.budget;
                b.path_loss_db += base.extra_loss_db(j);
                double q = 0.0;
                for (auto const& a : tdma.applied)
                    q += rf_power_at(chans[j], a.antenna, base.grid.frequency(a.frequency), b);
                q /= static_cast<double>(frames);
                out[2 * c] = tdma.average_power[j];
                out[2 * c + 1] = q;
                sum_dc += tdma.average_power[j];
                sum_rf += q;
                ++c;
            }
            if (k > 1)
            {
                out[2 * c] = sum_dc;
                out[2 * c + 1] = sum_rf;
                ++c;
            }
            if (cfg.keep_logs && key.strategy == Strategy::joint && key.m == max_m && key.n == max_n)
                logs[r] = std::move(tdma.logs);
            ++cell_index;
        }
    });

    ProtocolExperimentResult res;
    res.summary = aggregate(base, keys, values);
    for (auto& l : logs)
        for (auto& e : l)
            res.logs.push_back(std::move(e));
    return res;
}

void write_results_csv(std::ostream& out, ExperimentResult const& result, std::string const& header)
{
    out << "# " << header << '\n';
    out << "M,N,strategy,user,avg_pdc_watts,stderr_watts,realizations,seed\n";
    for (auto const& c : result.cells)
    {
        out << c.antennas << ',' << c.frequencies << ',' << to_string(c.strategy) << ',';
        if (c.user == kSumUser)
            out << "sum";
        else
            out << c.user;
        out << ',' << format_number(c.avg_pdc_w) << ',' << format_number(c.stderr_w) << ',' << result.realizations
            << ',' << result.seed << '\n';
    }
}

BudgetReport power_budget_report(BudgetInputs const& in)
{
    in.schedule.validate();
    BudgetReport rep;
    rep.receiver = energy_budget(in.train_power_w * to_seconds(in.schedule.training_duration()),
                                 in.wpt_power_w * to_seconds(in.schedule.wpt), in.schedule.frame_duration(),
                                 in.receiver.soc_power_w, in.receiver.radio_power_w, in.receiver.radio_bitrate_bps,
                                 in.receiver.bytes_sent.value_or(5));
    rep.tx_pa_supply_w = in.tx_pa_supply_w;
    rep.tx_radio_w = in.tx_radio_w;
    rep.tx_soc_w = in.tx_soc_w;
    rep.tx_total_w = in.tx_pa_supply_w + in.tx_radio_w + in.tx_soc_w;
    return rep;
}

std::string format_budget_report(BudgetReport const& report)
{
    auto const& b = report.receiver;
    char buf[1024];
    std::snprintf(buf, sizeof(buf),
                  "receiver energy per frame\n"
                  "  E_DC   %8.2f uJ\n"
                  "  E_SoC  %8.2f uJ\n"
                  "  E_RF   %8.2f uJ\n"
                  "  E_Zol  %8.2f uJ\n"
                  "  E_net  %8.2f uJ\n"
                  "  efficiency %.1f %%\n"
                  "transmitter consumption\n"
                  "  PA supply %.4g W\n"
                  "  radio     %.4g W\n"
                  "  SoC       %.4g W\n"
                  "  total     %.6g W\n",
                  b.e_dc * 1e6, b.e_soc * 1e6, b.e_radio * 1e6, b.e_consumed * 1e6, b.e_net * 1e6,
                  b.efficiency * 100.0, report.tx_pa_supply_w, report.tx_radio_w, report.tx_soc_w, report.tx_total_w);
    return buf;
}

void write_budget_csv(std::ostream& out, BudgetReport const& report, std::string const& header)
{
    auto const& b = report.receiver;
    out << "# " << header << '\n' << "quantity,value,unit\n";
    auto row = [&](char const* name, double v, char const* unit) {
        out << name << ',' << format_number(v) << ',' << unit << '\n';
    };
    row("e_train", b.e_train, "J");
    row("e_wpt", b.e_wpt, "J");
    row("e_dc", b.e_dc, "J");
    row("e_soc", b.e_soc, "J");
    row("t_radio", b.t_radio, "s");
    row("e_rf", b.e_radio, "J");
    row("e_zol", b.e_consumed, "J");
    row("e_net", b.e_net, "J");
    row("efficiency", b.efficiency, "1");
    row("tx_pa_supply", report.tx_pa_supply_w, "W");
    row("tx_radio", report.tx_radio_w, "W");
    row("tx_soc", report.tx_soc_w, "W");
    row("tx_total", report.tx_total_w, "W");
}

} // namespace wptdas
