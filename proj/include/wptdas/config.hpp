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

#include "wptdas/experiments.hpp"
#include "wptdas/protocol.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace wptdas
{

enum class Pipeline : std::uint8_t
{
    ideal,    // steady-state matrices, run_sweep
    protocol, // run_frame/run_tdma per realization
};

/// Everything a subcommand needs, with defaults equal to the reference setup.
struct AppConfig
{
    ExperimentConfig experiment;
    FrameSchedule schedule; // training_slots is derived from the candidate count
    ControlLinkModel link;
    AdcModel adc;
    BudgetInputs budget;
    Pipeline pipeline = Pipeline::ideal;
    std::size_t frames = 0; // tdma frames and protocol frames per realization; 0 means one per user

    /// Checks every section, including that the full candidate set fits the feedback word.
    void validate() const;
};

std::string describe(AppConfig const& cfg);
std::uint64_t config_hash(AppConfig const& cfg);

/*!
 * Reads the INI-style config. Sections: channel, rectenna, schedule, link,
 * experiment, budget. Unknown sections or keys are errors. Power values are dBm
 * when bare, or carry a W/mW/uW/nW/dBm suffix. Relative file paths resolve
 * against `base_dir`.
 */
AppConfig parse_config(std::istream& in, std::filesystem::path const& base_dir = {});
AppConfig load_config(std::filesystem::path const& path);

/// "36", "36dBm", "4 W", "3.9uW" -> watts.
double parse_power(std::string_view text);

} // namespace wptdas
