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

#include "wptdas/cli.hpp"

#include "wptdas/config.hpp"
#include "wptdas/experiments.hpp"
#include "wptdas/format.hpp"
#include "wptdas/scheduler.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace wptdas
{

namespace
{

namespace fs = std::filesystem;

char const* const kOutDirEnv = "WPTDAS_OUT_DIR";

struct Manifest
{
    std::string subcommand;
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int jobs = 0;
    bool quiet = false;
    std::vector<std::string> pdp_files;
    std::vector<std::string> table_files;
};

std::string hex(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string header(Manifest const& m, AppConfig const& cfg)
{
    return std::string("wptdas ") + kVersion + " " + m.subcommand + " seed=" + std::to_string(cfg.experiment.seed) +
           " config_hash=" + hex(config_hash(cfg));
}

fs::path output_dir(Manifest const& m)
{
    fs::path dir = m.out_dir;
    if (dir.empty())
    {
        char const* env = std::getenv(kOutDirEnv);
        dir = env && *env ? fs::path(env) : fs::path(".");
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw ValidationError("output directory " + dir.string() + " is not usable");
    return dir;
}

std::ofstream open_output(fs::path const& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ValidationError("cannot write " + path.string());
    return f;
}

void check_written(std::ofstream& f, fs::path const& path)
{
    f.close();
    if (!f)
        throw ValidationError("failed writing " + path.string());
}

AppConfig build_config(Manifest const& m)
{
    AppConfig cfg = m.config_path.empty() ? AppConfig{} : load_config(m.config_path);
    if (m.seed)
        cfg.experiment.seed = *m.seed;
    cfg.validate();
    return cfg;
}

int cmd_sweep(Manifest const& m, AppConfig const& cfg, std::ostream& out)
{
    ExperimentResult res;
    if (cfg.pipeline == Pipeline::ideal)
        res = run_sweep(cfg.experiment, m.jobs);
    else
    {
        ProtocolExperimentConfig pc;
        pc.base = cfg.experiment;
        pc.slot = cfg.schedule.slot;
        pc.wpt = cfg.schedule.wpt;
        pc.link = cfg.link;
        pc.adc = cfg.adc;
        pc.frames_per_realization = cfg.frames;
        res = run_protocol_experiment(pc, m.jobs).summary;
    }
    auto const path = output_dir(m) / "sweep.csv";
    auto f = open_output(path);
    write_results_csv(f, res, header(m, cfg));
    check_written(f, path);
    if (!m.quiet)
    {
        out << "sweep: " << res.cells.size() << " rows, " << res.realizations << " realizations -> " << path.string()
            << '\n';
        char line[160];
        for (auto const& c : res.cells)
        {
            std::snprintf(line, sizeof(line), "  M=%zu N=%-2zu %-14s user=%-3s %12.4f uW  (se %.4f)\n", c.antennas,
                          c.frequencies, std::string(to_string(c.strategy)).c_str(),
                          c.user == kSumUser ? "sum" : std::to_string(c.user).c_str(), c.avg_pdc_w * 1e6,
                          c.stderr_w * 1e6);
            out << line;
        }
    }
    return 0;
}

int cmd_frame(Manifest const& m, AppConfig const& cfg, std::ostream& out)
{
    auto const& ex = cfg.experiment;
    auto ch_rng = make_stream(ex.seed, StreamTag::channel, 0, 0);
    auto const ch = sample_channel(ex.profile, ex.num_antennas, ch_rng);
    FrameSetup setup{ex.grid, ex.budget, ex.rectenna, cfg.schedule, cfg.link, cfg.adc};
    setup.budget.path_loss_db += ex.extra_loss_db(0);
    auto link_rng = make_stream(ex.seed, StreamTag::link, 0, 0);
    auto const outcome = run_frame(ch, setup, std::nullopt, link_rng);

    auto const path = output_dir(m) / "frame_events.csv";
    auto f = open_output(path);
    f << "# " << header(m, cfg) << '\n';
    write_event_log_csv(f, outcome.log);
    check_written(f, path);
    if (!m.quiet)
    {
        auto const b = receiver_energy_budget(outcome.log, {});
        out << "frame: " << outcome.log.events.size() << " events -> " << path.string() << '\n'
            << "  selected antenna " << outcome.decision.antenna.value << ", frequency "
            << outcome.decision.frequency.value << " (" << format_number(ex.grid.frequency(outcome.decision.frequency))
            << " Hz)\n"
            << "  feedback " << (outcome.feedback_delivered ? "delivered" : "dropped") << ", applied antenna "
            << outcome.applied.antenna.value << ", frequency " << outcome.applied.frequency.value << '\n'
            << "  WPT-phase dc power " << format_number(outcome.applied.value) << " W\n"
            << "  harvested " << format_number(b.e_dc) << " J, consumed " << format_number(b.e_consumed)
            << " J, net " << format_number(b.e_net) << " J, " << outcome.log.bytes_sent() << " control bytes\n";
    }
    return 0;
}

int cmd_tdma(Manifest const& m, AppConfig const& cfg, std::ostream& out)
{
    auto const& ex = cfg.experiment;
    std::vector<UserState> users;
    for (std::size_t u = 0; u < ex.users; ++u)
    {
        auto rng = make_stream(ex.seed, StreamTag::channel, 0, u);
        users.push_back(UserState{.id = static_cast<int>(u + 1),
                                  .channel = sample_channel(ex.profile, ex.num_antennas, rng),
                                  .rectenna = ex.rectenna,
                                  .extra_loss_db = ex.extra_loss_db(u)});
    }
    TdmaShared shared;
    shared.grid = ex.grid;
    shared.budget = ex.budget;
    shared.schedule = cfg.schedule;
    shared.link = cfg.link;
    shared.adc = cfg.adc;
    std::size_t const frames = cfg.frames > 0 ? cfg.frames : ex.users;
    auto link_rng = make_stream(ex.seed, StreamTag::link, 0, 0);
    auto const res = run_tdma(users, frames, shared, link_rng);

    auto const path = output_dir(m) / "tdma_trace.csv";
    auto f = open_output(path);
    f << "# " << header(m, cfg) << '\n';
    write_tdma_trace_csv(f, res);
    check_written(f, path);
    if (!m.quiet)
    {
        out << "tdma: " << users.size() << " users, " << frames << " frames -> " << path.string() << '\n';
        for (std::size_t u = 0; u < users.size(); ++u)
            out << "  user " << users[u].id << " average dc power " << format_number(res.average_power[u])
                << " W, energy " << format_number(users[u].accumulated_energy) << " J\n";
        out << "  sum average dc power " << format_number(res.average_sum_power()) << " W\n";
    }
    return 0;
}

int cmd_budget(Manifest const& m, AppConfig const& cfg, std::ostream& out)
{
    auto const report = power_budget_report(cfg.budget);
    auto const path = output_dir(m) / "budget.csv";
    auto f = open_output(path);
    write_budget_csv(f, report, header(m, cfg));
    check_written(f, path);
    if (!m.quiet)
        out << format_budget_report(report);
    return 0;
}

int cmd_validate(Manifest const& m, AppConfig const&, std::ostream& out)
{
    for (auto const& p : m.pdp_files)
    {
        auto const prof = load_pdp(p);
        if (!m.quiet)
            out << "pdp " << p << ": " << prof.size() << " taps, rms delay spread "
                << format_number(prof.rms_delay_spread() * 1e9) << " ns\n";
    }
    for (auto const& p : m.table_files)
    {
        auto const t = load_efficiency_table(p);
        if (!m.quiet)
            out << "efficiency table " << p << ": " << t.power_axis().size() << " x " << t.frequency_axis().size()
                << '\n';
    }
    if (!m.quiet)
        out << "config " << (m.config_path.empty() ? std::string("(defaults)") : m.config_path) << ": ok\n";
    return 0;
}

} // namespace

int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"wptdas: link-level simulator for wireless power transfer with distributed antennas", "wptdas"};
    app.set_version_flag("--version", std::string(kVersion));
    app.footer(std::string("Environment:\n  ") + kOutDirEnv +
               "  default output directory when --out is not given (else the current directory)");
    app.require_subcommand(1);

    Manifest m;
    std::uint64_t seed = 0;
    app.add_option("-c,--config", m.config_path, "INI config file")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("-s,--seed", seed, "master seed override (unsigned 64-bit)");
    app.add_option("-o,--out", m.out_dir, "output directory");
    app.add_option("-j,--jobs", m.jobs, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    app.add_flag("-q,--quiet", m.quiet, "suppress the summary on stdout");

    std::vector<std::pair<CLI::App*, int (*)(Manifest const&, AppConfig const&, std::ostream&)>> commands{
        {app.add_subcommand("sweep", "Monte Carlo sweep over M, N and strategy -> sweep.csv"), cmd_sweep},
        {app.add_subcommand("frame", "one adaptive frame with event-log dump -> frame_events.csv"), cmd_frame},
        {app.add_subcommand("tdma", "round-robin multi-user frames -> tdma_trace.csv"), cmd_tdma},
        {app.add_subcommand("budget", "per-frame receiver energy budget -> budget.csv"), cmd_budget},
        {app.add_subcommand("validate", "check the config and optional data files"), cmd_validate},
    };
    auto* validate = commands.back().first;
    validate->add_option("--pdp", m.pdp_files, "power-delay profile file to lint")->check(CLI::ExistingFile);
    validate->add_option("--efficiency-table", m.table_files, "efficiency table file to lint")
        ->check(CLI::ExistingFile);
    for (auto& [sub, fn] : commands)
        sub->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        return app.exit(e, out, err);
    }
    if (seed_opt->count() > 0)
        m.seed = seed;

    try
    {
        for (auto& [sub, fn] : commands)
            if (sub->parsed())
            {
                m.subcommand = sub->get_name();
                auto const cfg = build_config(m);
                return fn(m, cfg, out);
            }
    }
    catch (std::exception const& e)
    {
        err << "wptdas: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace wptdas
