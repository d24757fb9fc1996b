// Copyright 2026 The cvcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVCZ_ANALYSIS_H
#define CVCZ_ANALYSIS_H

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cvcz/protocol.h"

namespace cvcz {

constexpr size_t DEFAULT_OPTIMIZER_SLICES = 512;
constexpr size_t DEFAULT_FIGURE_SLICES = 2048;
constexpr size_t DEFAULT_SCAN_POINTS = 200;
constexpr double DEFAULT_KAPPA0_LO = 0.1;
constexpr double DEFAULT_KAPPA0_HI = 100.0;
constexpr double KAPPA0_TOLERANCE = 1e-3;

/// Squeezing in dB is 10 log10(e^{2s}).
double db_to_s(double db);
double s_to_db(double s);

enum class Spacing {
    linear,
    log,
};

enum class Branch {
    /// closed_form_fidelity at the effective coupling (requires kappa = 1).
    ideal_closed_form,
    /// Sliced simulation with r = eta = 0.
    ideal_simulated,
    /// Sliced simulation with the given losses.
    noisy_simulated,
};

struct SweepSpec {
    double kappa0_min = 0.0;
    double kappa0_max = 30.0;
    size_t count = 301;
    Spacing spacing = Spacing::linear;
    /// kappa0 of `gate` is ignored; the grid supplies it.
    GateParams gate;
    size_t slices = DEFAULT_OPTIMIZER_SLICES;
    Branch branch = Branch::ideal_closed_form;

    void validate() const;
    std::vector<double> grid() const;
};

struct SweepRow {
    double kappa0;
    double fidelity;
};

/// Fidelity of one grid point for the chosen branch.
double evaluate_branch(const SweepSpec &spec, double kappa0);

/// Rows ordered by kappa0. Grid points are evaluated concurrently with
/// OpenMP; each point is an independent pure call, so the result equals
/// sweep_serial bit for bit.
std::vector<SweepRow> sweep(const SweepSpec &spec);
std::vector<SweepRow> sweep_serial(const SweepSpec &spec);

struct OptimizationResult {
    double kappa0_opt;
    double fidelity_opt;
    size_t evaluations;
    std::pair<double, double> bracket;
    /// Set when the scan maximum sits on a bound (no interior optimum).
    bool monotone;
};

struct OptimizeOptions {
    double kappa0_lo = DEFAULT_KAPPA0_LO;
    double kappa0_hi = DEFAULT_KAPPA0_HI;
    size_t scan_points = DEFAULT_SCAN_POINTS;
    size_t slices = DEFAULT_OPTIMIZER_SLICES;
    double kappa = 1.0;
    double s_probe = 0.0;
};

/// Maximizes the noisy-simulated fidelity over kappa0.
///
/// A log-spaced scan locates the best grid point (ties go to the smaller
/// kappa0). If it is interior, golden-section search on the two neighbouring
/// grid cells narrows the bracket to KAPPA0_TOLERANCE; the refined point is
/// kept only if it is no worse than the best grid point.
OptimizationResult optimize_kappa0(double r, double eta, double s, const OptimizeOptions &opts = {});

/// A named table of numeric columns, as written to CSV.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct FigureOptions {
    /// Slices for plotted noisy curves.
    size_t figure_slices = DEFAULT_FIGURE_SLICES;
    /// Slices used inside the kappa0 optimizer.
    size_t optimizer_slices = DEFAULT_OPTIMIZER_SLICES;
};

/// Closed-form fidelity vs kappa0 in [0, 30] for 0, 3, 5 and 10 dB inputs.
Table fig2_table();
/// Noisy fidelity vs kappa0 at 5 dB for (r, eta) = (0.01, 0.01), (0.05, 0.05),
/// (0.1, 0.1).
Table fig3a_table(const FigureOptions &opts = {});
/// Optimized fidelity and optimal kappa0 vs eta in [0.01, 0.2] at 5 dB for
/// r = 0.005, 0.01, 0.02.
Table fig3b_table(const FigureOptions &opts = {});
std::vector<Table> figure_tables(const FigureOptions &opts = {});

}  // namespace cvcz

#endif
