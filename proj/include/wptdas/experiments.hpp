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

#include "wptdas/channel.hpp"
#include "wptdas/protocol.hpp"
#include "wptdas/rectenna.hpp"
#include "wptdas/selection.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wptdas
{

struct ExperimentConfig
{
    TapProfile profile = builtin_profile("model-E-NLOS");
    FrequencyGrid grid = FrequencyGrid::uniform(2.4e9, 75e6, 15);
    std::size_t num_antennas = 4;
    std::vector<std::size_t> antenna_sweep{1, 2, 3, 4};
    std::vector<std::size_t> frequency_sweep{1, 3, 5, 15};
    std::vector<Strategy> strategies{Strategy::none, Strategy::frequency_only, Strategy::antenna_only,
                                     Strategy::joint};
    std::size_t users = 1;
    std::vector<double> user_extra_loss_db; // empty: every user at the shared budget
    std::size_t realizations = 300;
    std::uint64_t seed = 1;
    LinkBudget budget;
    RectennaConfig rectenna;

    void validate() const;
    double extra_loss_db(std::size_t user_index) const;
};

/// Canonical text form of every field that influences results.
std::string describe(ExperimentConfig const& cfg);
std::uint64_t config_hash(ExperimentConfig const& cfg);

/*!
 * Frequency labels used for an N-point sweep on an n_max-point grid. Sets are nested
 * for the 15-point grid: {f8}, {f4,f8,f12}, {f1,f4,f8,f12,f15}, {f1..f15}. Other sizes
 * use the middle point for N = 1, the whole grid for N = n_max, and evenly spaced
 * points (endpoints included) in between.
 */
std::vector<FrequencyId> nested_frequency_subset(std::size_t n, std::size_t n_max);

inline constexpr int kSumUser = 0;

struct CellResult
{
    std::size_t antennas;    // M
    std::size_t frequencies; // N
    Strategy strategy;
    int user;                // 1..K, or kSumUser for the K-user sum
    double avg_pdc_w = 0.0;
    double stderr_w = 0.0;
    double avg_prf_w = 0.0;  // RF power at the rectenna input for the same selections
    std::vector<double> samples{}; // per-realization dc power, realization order
};

struct ExperimentResult
{
    std::vector<CellResult> cells;
    std::uint64_t seed = 0;
    std::size_t realizations = 0;
    std::size_t users = 1;
    std::uint64_t config_hash = 0;

    CellResult const& find(std::size_t m, std::size_t n, Strategy s, int user = 1) const;
};

/// Idealized Monte Carlo pipeline, realizations in parallel. jobs <= 0 uses the OpenMP default.
ExperimentResult run_sweep(ExperimentConfig const& cfg, int jobs = 0);

/// Single-threaded reference for run_sweep that recomputes each cell from scratch.
ExperimentResult run_sweep_serial(ExperimentConfig const& cfg);

struct ProtocolExperimentConfig
{
    ExperimentConfig base;
    Micros slot{18'000};
    Micros wpt{2'920'000};
    ControlLinkModel link;
    AdcModel adc;
    std::size_t frames_per_realization = 0; // 0: one frame per user
    bool keep_logs = false;                 // logs of the joint strategy at the largest (M, N) cell
};

struct ProtocolExperimentResult
{
    ExperimentResult summary; // samples are mean WPT-phase dc power per realization
    std::vector<EventLog> logs;
};

/// Same sweep driven through run_tdma/run_frame: settling, ADC and feedback loss included.
ProtocolExperimentResult run_protocol_experiment(ProtocolExperimentConfig const& cfg, int jobs = 0);

/// `M,N,strategy,user,avg_pdc_watts,stderr_watts,realizations,seed` preceded by one `#` header line.
void write_results_csv(std::ostream& out, ExperimentResult const& result, std::string const& header);

struct BudgetInputs
{
    double train_power_w = 3.9e-6;
    double wpt_power_w = 20.4e-6;
    FrameSchedule schedule;
    ReceiverConsumption receiver{2.6e-6, 48e-3, 250e3, 5};
    double tx_pa_supply_w = 84.0;
    double tx_radio_w = 48e-3;
    double tx_soc_w = 2.6e-6;
};

struct BudgetReport
{
    EnergyBudget receiver;
    double tx_pa_supply_w;
    double tx_radio_w;
    double tx_soc_w;
    double tx_total_w;
};

BudgetReport power_budget_report(BudgetInputs const& in);
std::string format_budget_report(BudgetReport const& report);
void write_budget_csv(std::ostream& out, BudgetReport const& report, std::string const& header);

} // namespace wptdas
