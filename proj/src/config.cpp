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

#include "wptdas/config.hpp"

#include "wptdas/format.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wptdas
{

namespace
{

namespace pt = boost::property_tree;

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_double(std::string_view text, std::string const& what)
{
    std::string const t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
        throw ValidationError(what + ": '" + t + "' is not a finite number");
    return v;
}

std::uint64_t parse_uint(std::string_view text, std::string const& what)
{
    std::string const t = trim(text);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw ValidationError(what + ": '" + t + "' is not a non-negative integer");
    return v;
}

std::vector<std::string> split_list(std::string_view text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : text)
    {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
        {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        }
        else
            cur.push_back(c);
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

bool parse_bool(std::string_view text, std::string const& what)
{
    auto const t = lower(trim(text));
    if (t == "1" || t == "true" || t == "on" || t == "yes")
        return true;
    if (t == "0" || t == "false" || t == "off" || t == "no")
        return false;
    throw ValidationError(what + ": '" + t + "' is not a boolean");
}

Micros parse_micros(std::string_view text, std::string const& what)
{
    auto const v = parse_uint(text, what);
    return Micros{static_cast<std::int64_t>(v)};
}

std::filesystem::path resolve(std::filesystem::path const& base, std::string const& p)
{
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

// Reads one section, rejecting keys not in `allowed`.
class Section
{
  public:
    Section(pt::ptree const* tree, std::string name, std::set<std::string> allowed)
        : tree_(tree), name_(std::move(name))
    {
        if (!tree_)
            return;
        for (auto const& [key, child] : *tree_)
        {
            if (!child.empty())
                throw ValidationError("config [" + name_ + "]: nested key '" + key + "'");
            if (!allowed.count(key))
                throw ValidationError("config [" + name_ + "]: unknown key '" + key + "'");
        }
    }

    std::optional<std::string> get(std::string const& key) const
    {
        if (!tree_)
            return std::nullopt;
        if (auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0')))
            return trim(*v);
        return std::nullopt;
    }

    std::string what(std::string const& key) const { return "config [" + name_ + "] " + key; }

    template <class F>
    void with(std::string const& key, F f) const
    {
        if (auto v = get(key))
            f(*v, what(key));
    }

  private:
    pt::ptree const* tree_;
    std::string name_;
};

} // namespace

double parse_power(std::string_view text)
{
    std::string const t = trim(text);
    std::string num = t;
    std::string unit;
    auto const pos = t.find_first_of("dDWmMuUnN");
    if (pos != std::string::npos)
    {
        num = trim(t.substr(0, pos));
        unit = lower(trim(t.substr(pos)));
    }
    double const v = parse_double(num, "power '" + t + "'");
    if (unit.empty() || unit == "dbm")
        return dbm_to_watts(v);
    double scale = 0.0;
    if (unit == "w")
        scale = 1.0;
    else if (unit == "mw")
        scale = 1e-3;
    else if (unit == "uw")
        scale = 1e-6;
    else if (unit == "nw")
        scale = 1e-9;
    else
        throw ValidationError("power '" + t + "': unknown unit '" + unit + "'");
    if (v < 0.0)
        throw ValidationError("power '" + t + "' must be >= 0");
    return v * scale;
}

void AppConfig::validate() const
{
    experiment.validate();
    schedule.validate();
    link.validate();
    adc.validate();
    budget.schedule.validate();
    if (link.latency > schedule.wpt)
        throw ValidationError("link latency exceeds the WPT phase");
    std::size_t const full = experiment.num_antennas * experiment.grid.size();
    if (full > kFeedbackCapacity)
        throw CapacityError(std::to_string(experiment.num_antennas) + " antennas x " +
                            std::to_string(experiment.grid.size()) + " frequencies exceed the 6-bit feedback word");
    auto const& r = budget.receiver;
    if (!(r.radio_bitrate_bps > 0.0))
        throw ValidationError("budget: radio bitrate must be positive");
    for (double p : {budget.train_power_w, budget.wpt_power_w, r.soc_power_w, r.radio_power_w, budget.tx_pa_supply_w,
                     budget.tx_radio_w, budget.tx_soc_w})
        if (!(p >= 0.0) || !std::isfinite(p))
            throw ValidationError("budget: powers must be finite and >= 0");
}

std::string describe(AppConfig const& cfg)
{
    std::ostringstream os;
    os << describe(cfg.experiment);
    os << "schedule=" << cfg.schedule.slot.count() << ' ' << cfg.schedule.wpt.count() << "\nlink="
       << (cfg.link.delivery == Delivery::ideal ? "ideal" : "lossy") << ' ' << format_number(cfg.link.drop_probability)
       << ' ' << cfg.link.latency.count() << "\nadc=" << cfg.adc.enabled << ' ' << cfg.adc.bits << ' '
       << format_number(cfg.adc.full_scale_v) << "\npipeline=" << (cfg.pipeline == Pipeline::ideal ? "ideal" : "protocol")
       << "\nframes=" << cfg.frames;
    auto const& b = cfg.budget;
    os << "\nbudget_inputs=" << format_number(b.train_power_w) << ' ' << format_number(b.wpt_power_w) << ' '
       << b.schedule.slot.count() << ' ' << b.schedule.training_slots << ' ' << b.schedule.wpt.count() << ' '
       << format_number(b.receiver.soc_power_w) << ' ' << format_number(b.receiver.radio_power_w) << ' '
       << format_number(b.receiver.radio_bitrate_bps) << ' ' << b.receiver.bytes_sent.value_or(0) << ' '
       << format_number(b.tx_pa_supply_w) << ' ' << format_number(b.tx_radio_w) << ' ' << format_number(b.tx_soc_w)
       << '\n';
    return os.str();
}

std::uint64_t config_hash(AppConfig const& cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : describe(cfg))
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

AppConfig parse_config(std::istream& in, std::filesystem::path const& base_dir)
{
    pt::ptree tree;
    try
    {
        pt::ini_parser::read_ini(in, tree);
    }
    catch (pt::ini_parser_error const& e)
    {
        throw ValidationError("config: " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    std::map<std::string, pt::ptree const*> sections;
    for (auto const& [name, child] : tree)
    {
        static std::set<std::string> const known{"channel", "rectenna", "schedule", "link", "experiment", "budget"};
        if (!known.count(name))
            throw ValidationError("config: unknown section [" + name + "]");
        if (child.empty() && !child.data().empty())
            throw ValidationError("config: key '" + name + "' outside any section");
        sections[name] = &child;
    }
    auto sec = [&](std::string const& name) -> pt::ptree const* {
        auto it = sections.find(name);
        return it == sections.end() ? nullptr : it->second;
    };

    AppConfig cfg;
    auto& ex = cfg.experiment;

    // [channel]
    Section const ch(sec("channel"), "channel",
                     {"profile", "pdp_file", "antennas", "grid", "center_frequency_hz", "bandwidth_hz", "frequencies",
                      "tx_power", "path_loss_db", "distance_m", "tx_gain_dbi", "rx_gain_dbi"});
    if (ch.get("profile") && ch.get("pdp_file"))
        throw ValidationError("config [channel]: give either profile or pdp_file");
    ch.with("profile", [&](auto const& v, auto const&) { ex.profile = builtin_profile(v); });
    ch.with("pdp_file", [&](auto const& v, auto const&) { ex.profile = load_pdp(resolve(base_dir, v)); });
    ch.with("antennas", [&](auto const& v, auto const& w) { ex.num_antennas = parse_uint(v, w); });
    {
        GridMode mode = GridMode::uniform_in_band;
        double center = 2.4e9;
        double bandwidth = 75e6;
        std::size_t count = 15;
        ch.with("grid", [&](auto const& v, auto const&) { mode = parse_grid_mode(v); });
        ch.with("center_frequency_hz", [&](auto const& v, auto const& w) { center = parse_double(v, w); });
        ch.with("bandwidth_hz", [&](auto const& v, auto const& w) { bandwidth = parse_double(v, w); });
        ch.with("frequencies", [&](auto const& v, auto const& w) { count = parse_uint(v, w); });
        if (mode == GridMode::ieee_channel_plan && (ch.get("center_frequency_hz") || ch.get("bandwidth_hz")))
            throw ValidationError("config [channel]: center/bandwidth do not apply to the ieee grid");
        ex.grid = mode == GridMode::uniform_in_band ? FrequencyGrid::uniform(center, bandwidth, count)
                                                    : FrequencyGrid::ieee_channel_plan(count);
    }
    ch.with("tx_power", [&](auto const& v, auto const&) { ex.budget.tx_power_w = parse_power(v); });
    ch.with("tx_gain_dbi", [&](auto const& v, auto const& w) { ex.budget.tx_gain_dbi = parse_double(v, w); });
    ch.with("rx_gain_dbi", [&](auto const& v, auto const& w) { ex.budget.rx_gain_dbi = parse_double(v, w); });
    if (ch.get("path_loss_db") && ch.get("distance_m"))
        throw ValidationError("config [channel]: give either path_loss_db or distance_m");
    ch.with("path_loss_db", [&](auto const& v, auto const& w) { ex.budget.path_loss_db = parse_double(v, w); });
    ch.with("distance_m", [&](auto const& v, auto const& w) {
        double const d = parse_double(v, w);
        if (!(d > 0.0))
            throw ValidationError(w + " must be positive");
        ex.budget.path_loss_db = path_loss_db(d, ex.grid.center());
    });

    // [rectenna]
    Section const re(sec("rectenna"), "rectenna",
                     {"model", "table_file", "eta_peak", "peak_power", "anchor_power", "anchor_efficiency",
                      "rise_slope_per_db", "breakdown_power", "breakdown_slope_db_per_db", "load_ohms",
                      "settle_time_constant_s"});
    {
        std::string model = "parametric";
        re.with("model", [&](auto const& v, auto const&) { model = lower(v); });
        static char const* const shape_keys[] = {"eta_peak",          "peak_power",      "anchor_power",
                                                 "anchor_efficiency", "rise_slope_per_db", "breakdown_power",
                                                 "breakdown_slope_db_per_db"};
        if (model == "table")
        {
            auto const file = re.get("table_file");
            if (!file)
                throw ValidationError("config [rectenna]: model = table needs table_file");
            for (auto const* k : shape_keys)
                if (re.get(k))
                    throw ValidationError(std::string("config [rectenna]: ") + k + " does not apply to a table");
            ex.rectenna.curve = EfficiencyCurve(load_efficiency_table(resolve(base_dir, *file)));
        }
        else if (model == "parametric")
        {
            if (re.get("table_file"))
                throw ValidationError("config [rectenna]: table_file needs model = table");
            double eta = 0.40, peak = 0.0, anchor = -20.0, anchor_eta = 0.25, slope = 0.15, bd = 3.0, bd_slope = 3.0;
            auto dbm = [](std::string const& v) { return watts_to_dbm(parse_power(v)); };
            re.with("eta_peak", [&](auto const& v, auto const& w) { eta = parse_double(v, w); });
            re.with("peak_power", [&](auto const& v, auto const&) { peak = dbm(v); });
            re.with("anchor_power", [&](auto const& v, auto const&) { anchor = dbm(v); });
            re.with("anchor_efficiency", [&](auto const& v, auto const& w) { anchor_eta = parse_double(v, w); });
            re.with("rise_slope_per_db", [&](auto const& v, auto const& w) { slope = parse_double(v, w); });
            re.with("breakdown_power", [&](auto const& v, auto const&) { bd = dbm(v); });
            re.with("breakdown_slope_db_per_db", [&](auto const& v, auto const& w) { bd_slope = parse_double(v, w); });
            ex.rectenna.curve = EfficiencyCurve(ParametricEfficiency::fit(eta, peak, anchor, anchor_eta, slope, bd, bd_slope));
        }
        else
            throw ValidationError("config [rectenna]: model must be parametric or table");
    }
    re.with("load_ohms", [&](auto const& v, auto const& w) { ex.rectenna.load_ohms = parse_double(v, w); });
    re.with("settle_time_constant_s",
            [&](auto const& v, auto const& w) { ex.rectenna.settle_time_constant_s = parse_double(v, w); });

    // [schedule]
    Section const sc(sec("schedule"), "schedule", {"slot_us", "wpt_us", "adc", "adc_bits", "adc_full_scale_v"});
    sc.with("slot_us", [&](auto const& v, auto const& w) { cfg.schedule.slot = parse_micros(v, w); });
    sc.with("wpt_us", [&](auto const& v, auto const& w) { cfg.schedule.wpt = parse_micros(v, w); });
    sc.with("adc", [&](auto const& v, auto const& w) { cfg.adc.enabled = parse_bool(v, w); });
    sc.with("adc_bits", [&](auto const& v, auto const& w) { cfg.adc.bits = static_cast<int>(parse_uint(v, w)); });
    sc.with("adc_full_scale_v", [&](auto const& v, auto const& w) { cfg.adc.full_scale_v = parse_double(v, w); });

    // [link]
    Section const li(sec("link"), "link", {"delivery", "drop_probability", "latency_us"});
    li.with("delivery", [&](auto const& v, auto const&) {
        auto const d = lower(v);
        if (d == "ideal")
            cfg.link.delivery = Delivery::ideal;
        else if (d == "lossy")
            cfg.link.delivery = Delivery::lossy;
        else
            throw ValidationError("config [link] delivery must be ideal or lossy");
    });
    li.with("drop_probability", [&](auto const& v, auto const& w) { cfg.link.drop_probability = parse_double(v, w); });
    li.with("latency_us", [&](auto const& v, auto const& w) { cfg.link.latency = parse_micros(v, w); });

    // [experiment]
    Section const xp(sec("experiment"), "experiment",
                     {"antenna_sweep", "frequency_sweep", "strategies", "users", "user_extra_loss_db", "realizations",
                      "seed", "pipeline", "frames"});
    auto size_list = [](std::string const& v, std::string const& w) {
        std::vector<std::size_t> out;
        for (auto const& t : split_list(v))
            out.push_back(parse_uint(t, w));
        return out;
    };
    xp.with("antenna_sweep", [&](auto const& v, auto const& w) { ex.antenna_sweep = size_list(v, w); });
    xp.with("frequency_sweep", [&](auto const& v, auto const& w) { ex.frequency_sweep = size_list(v, w); });
    if (!xp.get("antenna_sweep"))
    {
        ex.antenna_sweep.clear();
        for (std::size_t m = 1; m <= ex.num_antennas; ++m)
            ex.antenna_sweep.push_back(m);
    }
    if (!xp.get("frequency_sweep") && ex.grid.size() != 15)
        ex.frequency_sweep = {1, ex.grid.size()};
    xp.with("strategies", [&](auto const& v, auto const&) {
        ex.strategies.clear();
        for (auto const& t : split_list(v))
            ex.strategies.push_back(parse_strategy(t));
    });
    xp.with("users", [&](auto const& v, auto const& w) { ex.users = parse_uint(v, w); });
    xp.with("user_extra_loss_db", [&](auto const& v, auto const& w) {
        ex.user_extra_loss_db.clear();
        for (auto const& t : split_list(v))
            ex.user_extra_loss_db.push_back(parse_double(t, w));
    });
    xp.with("realizations", [&](auto const& v, auto const& w) { ex.realizations = parse_uint(v, w); });
    xp.with("seed", [&](auto const& v, auto const& w) { ex.seed = parse_uint(v, w); });
    xp.with("pipeline", [&](auto const& v, auto const&) {
        auto const p = lower(v);
        if (p == "ideal")
            cfg.pipeline = Pipeline::ideal;
        else if (p == "protocol")
            cfg.pipeline = Pipeline::protocol;
        else
            throw ValidationError("config [experiment] pipeline must be ideal or protocol");
    });
    xp.with("frames", [&](auto const& v, auto const& w) { cfg.frames = parse_uint(v, w); });

    // [budget]
    Section const bu(sec("budget"), "budget",
                     {"train_power", "wpt_power", "soc_power", "radio_power", "radio_bitrate_bps", "bytes",
                      "tx_pa_supply_power", "tx_radio_power", "tx_soc_power"});
    auto& b = cfg.budget;
    cfg.schedule.training_slots = ex.num_antennas * ex.grid.size();
    b.schedule = cfg.schedule;
    bu.with("train_power", [&](auto const& v, auto const&) { b.train_power_w = parse_power(v); });
    bu.with("wpt_power", [&](auto const& v, auto const&) { b.wpt_power_w = parse_power(v); });
    bu.with("soc_power", [&](auto const& v, auto const&) { b.receiver.soc_power_w = parse_power(v); });
    bu.with("radio_power", [&](auto const& v, auto const&) { b.receiver.radio_power_w = parse_power(v); });
    bu.with("radio_bitrate_bps", [&](auto const& v, auto const& w) { b.receiver.radio_bitrate_bps = parse_double(v, w); });
    bu.with("bytes", [&](auto const& v, auto const& w) { b.receiver.bytes_sent = parse_uint(v, w); });
    bu.with("tx_pa_supply_power", [&](auto const& v, auto const&) { b.tx_pa_supply_w = parse_power(v); });
    bu.with("tx_radio_power", [&](auto const& v, auto const&) { b.tx_radio_w = parse_power(v); });
    bu.with("tx_soc_power", [&](auto const& v, auto const&) { b.tx_soc_w = parse_power(v); });

    cfg.validate();
    return cfg;
}

AppConfig load_config(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read config " + path.string());
    return parse_config(in, path.parent_path());
}

} // namespace wptdas
