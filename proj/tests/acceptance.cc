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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. argv[1] is the path of the cvcz command-line tool.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvcz/analysis.h"
#include "cvcz/checks.h"
#include "cvcz/gaussian.h"
#include "cvcz/protocol.h"
#include "cvcz/simulation.h"
#include "oracles.h"

using namespace cvcz;

namespace {

const double S5DB = std::log(10.0) / 4;

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char *pattern, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
    return buf;
}

Outcome closed_form_reproduction() {
    double worst = 0;
    for (double k0 : {0.0, 1.0, 2.0, 5.0, 20.0}) {
        for (double s : {0.0, S5DB}) {
            GateParams p;
            p.kappa0 = k0;
            p.s_light = s;
            double pipeline = fidelity(target_state(s), ideal_gate_output(p));
            worst = std::max(worst, std::abs(pipeline - closed_form_fidelity(k0, s)));
        }
    }
    return {worst <= 1e-12, fmt("max |closed form - covariance pipeline| = %.3g (tol 1e-12)", worst)};
}

Outcome fidelity_oracle() {
    std::mt19937_64 rng(20261016);
    double worst = 0;
    for (int t = 0; t < 20; t++) {
        GaussianState a = oracle::random_pure_state(1, rng);
        GaussianState b = oracle::random_mixed_state(1, rng);
        worst = std::max(worst, std::abs(fidelity(a, b) / oracle::wigner_overlap(a, b) - 1));
    }
    for (int t = 0; t < 10; t++) {
        GaussianState a = oracle::random_pure_state(2, rng);
        GaussianState b = oracle::random_mixed_state(2, rng);
        worst = std::max(worst, std::abs(fidelity(a, b) / oracle::wigner_overlap(a, b) - 1));
    }
    return {worst <= 1e-6, fmt("max relative error vs Wigner quadrature = %.3g over 20+10 states (tol 1e-6)", worst)};
}

Outcome sliced_convergence() {
    // Increments below this are round-off, not a change in error.
    const double floor = 1e-12;
    bool ok = true;
    std::ostringstream detail;
    for (double k0 : {1.0, 5.0, 20.0}) {
        GateParams g;
        g.kappa0 = k0;
        g.s_light = S5DB;
        double ref = closed_form_fidelity(k0, S5DB);
        double prev = INFINITY;
        double last = 0;
        for (size_t K : {16, 64, 256, 1024}) {
            double err = std::abs(noisy_gate_fidelity(g, K) - ref);
            if (err > prev + floor) {
                ok = false;
            }
            prev = err;
            last = err;
        }
        ok = ok && last <= 1e-3;
        detail << "kappa0=" << k0 << " err(1024)=" << fmt("%.2g", last) << " ";
    }
    detail << "(tol 1e-3, non-increasing in K)";
    return {ok, detail.str()};
}

Outcome figure3a_optima() {
    struct Point {
        double loss, f, k0;
    };
    const Point points[] = {{0.01, 0.89, 19.90}, {0.05, 0.66, 8.78}, {0.1, 0.54, 6.12}};
    bool ok = true;
    std::ostringstream detail;
    for (const Point &p : points) {
        OptimizationResult res = optimize_kappa0(p.loss, p.loss, S5DB);
        bool f_ok = std::abs(res.fidelity_opt - p.f) <= 0.02;
        bool k_ok = std::abs(res.kappa0_opt - p.k0) <= 0.15 * p.k0;
        ok = ok && f_ok && k_ok && !res.monotone;
        detail << fmt("r=eta=%.2f: F=%.4f (want %.2f) kappa0=%.2f", p.loss, res.fidelity_opt, p.f, res.kappa0_opt)
               << fmt(" (want %.2f)", p.k0) << (f_ok && k_ok ? "; " : " [outside tolerance]; ");
    }
    detail << "(tol |dF|<=0.02, kappa0 +-15%)";
    return {ok, detail.str()};
}

Outcome figure3b_point() {
    OptimizationResult res = optimize_kappa0(0.005, 0.1, S5DB);
    GateParams p;
    p.kappa0 = res.kappa0_opt;
    p.s_light = S5DB;
    p.r = 0.005;
    p.eta = 0.1;
    double f = noisy_gate_fidelity(p, DEFAULT_FIGURE_SLICES);
    bool ok = std::abs(f - 0.71) <= 0.02 && std::abs(res.kappa0_opt - 6.05) <= 0.15 * 6.05;
    return {ok, fmt("F_opt=%.4f (want 0.71+-0.02) at kappa0=%.3f (want 6.05+-15%%)", f, res.kappa0_opt)};
}

Outcome noise_coefficients() {
    NoiseCoefficients e = analytic_epsilons(0, 0);
    bool ideal = e.eps1_minus == 1 && e.eps1_plus == 1 && e.eps2_minus == 0 && e.eps2_plus == 0;
    const double r = 0.01;
    const double eta = 0.01;
    SimConfig cfg;
    cfg.slices = DEFAULT_FIGURE_SLICES;
    cfg.gate.kappa0 = 19.9;
    cfg.gate.s_light = S5DB;
    cfg.gate.r = r;
    cfg.gate.eta = eta;
    CollectiveOutput out = simulate_collective(cfg);
    double coeff = collective_transfer(out, ModeFunction::symmetric(cfg.slices))(0, 3);
    double predicted = std::sqrt(1 - 3 * r) * std::sqrt(1 - r) * analytic_epsilons(r, eta).eps1_minus;
    double gap = std::abs(coeff - predicted) / predicted;
    return {ideal && gap <= 0.05, std::string("eps(0,0) = (1,1,0,0): ") + (ideal ? "yes" : "no") +
                                      fmt("; p_M -> x_L coefficient %.5f vs %.5f (gap %.2f%%, tol 5%%)", coeff,
                                          predicted, 100 * gap)};
}

Outcome property_suite() {
    bool ok = true;
    std::ostringstream detail;
    size_t n = 0;
    for (const CheckResult &c : run_property_checks()) {
        n++;
        if (!c.passed) {
            ok = false;
            detail << "failed: " << c.name << " (" << c.detail << "); ";
        }
    }
    double worst = 0;
    for (double k0 : {0.0, 1.0, 5.0, 20.0}) {
        for (double sp : {0.0, 0.5, S5DB}) {
            AtomicState a = prepare_sss(k0, optimal_feedback_gain(k0, sp), sp);
            worst = std::max(worst, std::abs(a.var_x * a.var_p - 1));
        }
    }
    ok = ok && worst <= 1e-12;
    detail << n << " property checks; max |var_x var_p - 1| = " << fmt("%.2g", worst);
    return {ok, detail.str()};
}

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism(const std::string &tool) {
    if (tool.empty()) {
        return {false, "no cvcz tool path given"};
    }
    auto base = std::filesystem::temp_directory_path() / "cvcz_acceptance";
    std::filesystem::remove_all(base);
    std::string outputs[2];
    for (int i = 0; i < 2; i++) {
        auto dir = base / std::to_string(i);
        std::filesystem::create_directories(dir);
        std::string cmd = "\"" + tool + "\" reproduce fig3a --out \"" + dir.string() + "\" > /dev/null";
        if (std::system(cmd.c_str()) != 0) {
            return {false, "cvcz reproduce fig3a failed"};
        }
        outputs[i] = slurp(dir / "fig3a.csv");
    }
    std::filesystem::remove_all(base);
    bool ok = !outputs[0].empty() && outputs[0] == outputs[1];
    return {ok, "two runs of `reproduce fig3a`: " + std::to_string(outputs[0].size()) + " bytes, " +
                    (ok ? "identical" : "different")};
}

}  // namespace

int main(int argc, char **argv) {
    std::string tool = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"closed-form reproduction", closed_form_reproduction},
        {"fidelity formula vs Wigner overlap", fidelity_oracle},
        {"sliced engine convergence", sliced_convergence},
        {"optimal fidelities with losses", figure3a_optima},
        {"optimum at r=0.005 eta=0.1", figure3b_point},
        {"noise coefficients", noise_coefficients},
        {"physics property suite", property_suite},
        {"determinism", [&] { return determinism(tool); }},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.passed ? 0 : 1;
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.detail << std::endl;
    }
    std::cout << criteria.size() - size_t(failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
