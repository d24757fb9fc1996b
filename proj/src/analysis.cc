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

#include "cvcz/analysis.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cvcz/simulation.h"

namespace cvcz {

namespace {

std::vector<double> spaced(double lo, double hi, size_t count, Spacing spacing) {
    std::vector<double> out(count);
    for (size_t i = 0; i < count; i++) {
        double t = double(i) / double(count - 1);
        if (spacing == Spacing::log) {
            out[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
        } else {
            out[i] = lo + t * (hi - lo);
        }
    }
    // Pin the endpoints against rounding in exp/log.
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::string label(const char *prefix, double v) {
    std::ostringstream os;
    os << prefix << v;
    return os.str();
}

}  // namespace

double db_to_s(double db) {
    return db * std::numbers::ln10 / 20;
}

double s_to_db(double s) {
    return s * 20 / std::numbers::ln10;
}

void SweepSpec::validate() const {
    if (count < 2) {
        throw std::invalid_argument("sweep: count must be >= 2");
    }
    if (!std::isfinite(kappa0_min) || !std::isfinite(kappa0_max) || kappa0_min < 0 || kappa0_max <= kappa0_min) {
        throw std::invalid_argument("sweep: need 0 <= kappa0_min < kappa0_max");
    }
    if (spacing == Spacing::log && kappa0_min <= 0) {
        throw std::invalid_argument("sweep: log spacing needs kappa0_min > 0");
    }
    if (slices == 0) {
        throw std::invalid_argument("sweep: slices must be >= 1");
    }
    if (branch == Branch::ideal_closed_form && gate.kappa != 1.0) {
        throw std::invalid_argument("sweep: the closed-form branch holds only at kappa = 1");
    }
    gate.validate();
}

std::vector<double> SweepSpec::grid() const {
    validate();
    return spaced(kappa0_min, kappa0_max, count, spacing);
}

double evaluate_branch(const SweepSpec &spec, double kappa0) {
    GateParams params = spec.gate;
    params.kappa0 = kappa0;
    switch (spec.branch) {
        case Branch::ideal_closed_form:
            return closed_form_fidelity(effective_coupling(kappa0, params.s_probe), params.s_light);
        case Branch::ideal_simulated:
            params.r = 0;
            params.eta = 0;
            return noisy_gate_fidelity(params, spec.slices);
        case Branch::noisy_simulated:
            return noisy_gate_fidelity(params, spec.slices);
    }
    throw std::logic_error("evaluate_branch: unknown branch");
}

std::vector<SweepRow> sweep(const SweepSpec &spec) {
    std::vector<double> grid = spec.grid();
    std::vector<SweepRow> rows(grid.size());
    const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; i++) {
        rows[static_cast<size_t>(i)] = SweepRow{grid[static_cast<size_t>(i)], evaluate_branch(spec, grid[static_cast<size_t>(i)])};
    }
    return rows;
}

std::vector<SweepRow> sweep_serial(const SweepSpec &spec) {
    std::vector<double> grid = spec.grid();
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double k : grid) {
        rows.push_back(SweepRow{k, evaluate_branch(spec, k)});
    }
    return rows;
}

OptimizationResult optimize_kappa0(double r, double eta, double s, const OptimizeOptions &opts) {
    if (!(opts.kappa0_lo > 0 && opts.kappa0_hi > opts.kappa0_lo && std::isfinite(opts.kappa0_hi))) {
        throw std::invalid_argument("optimize_kappa0: bounds must satisfy 0 < lo < hi");
    }
    if (opts.scan_points < 3) {
        throw std::invalid_argument("optimize_kappa0: scan needs at least 3 points");
    }
    SweepSpec spec;
    spec.kappa0_min = opts.kappa0_lo;
    spec.kappa0_max = opts.kappa0_hi;
    spec.count = opts.scan_points;
    spec.spacing = Spacing::log;
    spec.slices = opts.slices;
    spec.branch = Branch::noisy_simulated;
    spec.gate.kappa = opts.kappa;
    spec.gate.r = r;
    spec.gate.eta = eta;
    spec.gate.s_light = s;
    spec.gate.s_probe = opts.s_probe;

    std::vector<SweepRow> scan = sweep(spec);
    size_t best = 0;
    for (size_t i = 1; i < scan.size(); i++) {
        if (scan[i].fidelity > scan[best].fidelity) {
            best = i;
        }
    }

    OptimizationResult result;
    result.evaluations = scan.size();
    result.kappa0_opt = scan[best].kappa0;
    result.fidelity_opt = scan[best].fidelity;
    if (best == 0 || best + 1 == scan.size()) {
        result.monotone = true;
        result.bracket = {opts.kappa0_lo, opts.kappa0_hi};
        return result;
    }
    result.monotone = false;
    result.bracket = {scan[best - 1].kappa0, scan[best + 1].kappa0};

    auto eval = [&](double k) {
        result.evaluations++;
        return evaluate_branch(spec, k);
    };
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = result.bracket.first;
    double b = result.bracket.second;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    double refined_k = fc >= fd ? c : d;
    double refined_f = std::max(fc, fd);
    while (b - a > KAPPA0_TOLERANCE) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
            if (fc > refined_f) {
                refined_f = fc;
                refined_k = c;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
            if (fd > refined_f) {
                refined_f = fd;
                refined_k = d;
            }
        }
    }
    if (refined_f >= result.fidelity_opt) {
        result.kappa0_opt = refined_k;
        result.fidelity_opt = refined_f;
    }
    return result;
}

Table fig2_table() {
    const double dbs[] = {0, 3, 5, 10};
    Table t;
    t.name = "fig2";
    t.columns.push_back("kappa0");
    for (double db : dbs) {
        t.columns.push_back(label("F_", db) + "dB");
    }
    std::vector<std::vector<SweepRow>> curves;
    for (double db : dbs) {
        SweepSpec spec;
        spec.kappa0_min = 0;
        spec.kappa0_max = 30;
        spec.count = 301;
        spec.gate.s_light = db_to_s(db);
        spec.branch = Branch::ideal_closed_form;
        curves.push_back(sweep(spec));
    }
    for (size_t i = 0; i < curves[0].size(); i++) {
        std::vector<double> row{curves[0][i].kappa0};
        for (const auto &c : curves) {
            row.push_back(c[i].fidelity);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig3a_table(const FigureOptions &opts) {
    const std::pair<double, double> losses[] = {{0.01, 0.01}, {0.05, 0.05}, {0.1, 0.1}};
    Table t;
    t.name = "fig3a";
    t.columns.push_back("kappa0");
    std::vector<std::vector<SweepRow>> curves;
    for (auto [r, eta] : losses) {
        t.columns.push_back(label("F_r", r) + label("_eta", eta));
        SweepSpec spec;
        spec.kappa0_min = 0;
        spec.kappa0_max = 40;
        spec.count = 161;
        spec.gate.s_light = db_to_s(5);
        spec.gate.r = r;
        spec.gate.eta = eta;
        spec.slices = opts.figure_slices;
        spec.branch = Branch::noisy_simulated;
        curves.push_back(sweep(spec));
    }
    for (size_t i = 0; i < curves[0].size(); i++) {
        std::vector<double> row{curves[0][i].kappa0};
        for (const auto &c : curves) {
            row.push_back(c[i].fidelity);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig3b_table(const FigureOptions &opts) {
    const double rs[] = {0.005, 0.01, 0.02};
    const size_t n_eta = 20;
    Table t;
    t.name = "fig3b";
    t.columns.push_back("eta");
    for (double r : rs) {
        t.columns.push_back(label("F_opt_r", r));
        t.columns.push_back(label("kappa0_opt_r", r));
    }
    t.rows.assign(n_eta, std::vector<double>(t.columns.size(), 0.0));
    OptimizeOptions o;
    o.slices = opts.optimizer_slices;
    for (size_t i = 0; i < n_eta; i++) {
        double eta = double(i + 1) / 100;
        t.rows[i][0] = eta;
        for (size_t j = 0; j < std::size(rs); j++) {
            OptimizationResult res = optimize_kappa0(rs[j], eta, db_to_s(5), o);
            GateParams p;
            p.kappa0 = res.kappa0_opt;
            p.s_light = db_to_s(5);
            p.r = rs[j];
            p.eta = eta;
            t.rows[i][1 + 2 * j] = noisy_gate_fidelity(p, opts.figure_slices);
            t.rows[i][2 + 2 * j] = res.kappa0_opt;
        }
    }
    return t;
}

std::vector<Table> figure_tables(const FigureOptions &opts) {
    return {fig2_table(), fig3a_table(opts), fig3b_table(opts)};
}

}  // namespace cvcz
