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

#include "cvcz/checks.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cvcz/analysis.h"
#include "cvcz/gaussian.h"
#include "cvcz/protocol.h"
#include "cvcz/simulation.h"

namespace cvcz {

namespace {

std::string fmt(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

CheckResult channels_completely_positive() {
    double worst = 1e300;
    size_t modes[] = {0, 2};
    for (double r : {0.0, 0.005, 0.05, 0.3, 1.0}) {
        worst = std::min(worst, complete_positivity_margin(loss_channel(modes, r, 3)));
    }
    for (double g : {0.0, 1.0, 3.0, -2.5}) {
        worst = std::min(worst, complete_positivity_margin(qnd_symplectic(g, 0, 1, 2)));
    }
    for (double eta : {0.0, 0.01, 0.1, 0.2}) {
        SimConfig cfg;
        cfg.slices = 8;
        cfg.gate.r = 0.05;
        cfg.gate.eta = eta;
        EventSchedule s(cfg);
        for (const LocalChannel *ch : {&s.loss_prototype(), &s.decay_prototype()}) {
            worst = std::min(worst, complete_positivity_margin(GaussianChannel(ch->X, ch->Y)));
        }
    }
    return {"channels_completely_positive", worst >= -PHYSICALITY_TOLERANCE, fmt("min margin %.3e", worst)};
}

CheckResult simulation_states_physical() {
    bool ok = true;
    size_t stages = 0;
    for (size_t K : {1, 16, 64}) {
        SimConfig cfg;
        cfg.slices = K;
        cfg.gate.kappa0 = 8;
        cfg.gate.s_light = db_to_s(5);
        cfg.gate.r = 0.05;
        cfg.gate.eta = 0.1;
        cfg.check_every_event = K <= 16;
        SimOutput out = sliced_simulation(cfg);
        for (const auto &st : out.diagnostics.stages) {
            ok = ok && st.physical;
            stages++;
        }
        ok = ok && out.diagnostics.unphysical_events == 0 && out.diagnostics.collective_physical;
        ok = ok && out.fidelity >= 0 && out.fidelity <= 1;
    }
    return {"simulation_states_physical", ok, std::to_string(stages) + " stage checks"};
}

CheckResult squeezed_spin_minimum_uncertainty() {
    double worst = 0;
    for (double k0 : {0.0, 1.0, 5.0, 20.0}) {
        for (double db : {0.0, 5.0, 8.5}) {
            AtomicState a = prepare_sss(k0, std::nullopt, db_to_s(db));
            worst = std::max(worst, std::abs(a.var_x * a.var_p - 1));
        }
    }
    return {"squeezed_spin_minimum_uncertainty", worst <= 1e-12, fmt("max |var_x var_p - 1| = %.3e", worst)};
}

CheckResult ideal_branch_matches_closed_form() {
    double worst = 0;
    for (double k0 : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        for (double s : {0.0, std::log(10.0) / 4}) {
            GateParams p;
            p.kappa0 = k0;
            p.s_light = s;
            double f = fidelity(target_state(s), ideal_gate_output(p));
            worst = std::max(worst, std::abs(f - closed_form_fidelity(k0, s)));
        }
    }
    return {"ideal_branch_matches_closed_form", worst <= 1e-12, fmt("max diff %.3e", worst)};
}

CheckResult closed_form_monotone() {
    bool ok = true;
    for (double s = -0.5; s <= 1.5; s += 0.25) {
        for (double k0 = 0; k0 <= 50; k0 += 0.5) {
            ok = ok && closed_form_fidelity(k0 + 0.5, s) > closed_form_fidelity(k0, s);
            ok = ok && closed_form_fidelity(k0, s + 0.25) < closed_form_fidelity(k0, s);
        }
    }
    return {"closed_form_monotone", ok, "grid kappa0 in [0, 50], s in [-0.5, 1.5]"};
}

CheckResult engines_agree() {
    SimConfig cfg;
    cfg.slices = 16;
    cfg.gate.kappa0 = 6;
    cfg.gate.s_light = db_to_s(5);
    cfg.gate.r = 0.02;
    cfg.gate.eta = 0.1;
    cfg.check_stages = false;
    SimOutput full = sliced_simulation(cfg);
    CollectiveOutput coll = simulate_collective(cfg);
    double diff = (full.collective_state.cov() - coll.state.cov()).cwiseAbs().maxCoeff();
    return {"full_and_collective_engines_agree", diff <= 1e-10, fmt("max cov diff %.3e", diff)};
}

CheckResult commutators_preserved() {
    double worst = 0;
    for (double r : {0.0, 0.01, 0.1}) {
        for (double eta : {0.0, 0.05, 0.2}) {
            SimConfig cfg;
            cfg.slices = 64;
            cfg.gate.kappa0 = 5;
            cfg.gate.r = r;
            cfg.gate.eta = eta;
            worst = std::max(worst, simulate_collective(cfg).commutator_residual);
        }
    }
    return {"output_commutators_preserved", worst <= 1e-9, fmt("max residual %.3e", worst)};
}

CheckResult momentum_preserved() {
    SimConfig cfg;
    cfg.slices = 128;
    cfg.gate.kappa0 = 5;
    cfg.gate.s_light = db_to_s(5);
    CollectiveOutput out = simulate_collective(cfg);
    Eigen::Matrix4d t = collective_transfer(out, ModeFunction::symmetric(cfg.slices));
    double dev = std::max(
        (t.row(1) - Eigen::RowVector4d(0, 1, 0, 0)).cwiseAbs().maxCoeff(),
        (t.row(3) - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff());
    double var_dev = std::max(
        std::abs(out.state.cov()(1, 1) - std::exp(2 * cfg.gate.s_light)),
        std::abs(out.state.cov()(3, 3) - std::exp(2 * cfg.gate.s_light)));
    return {"momentum_quadratures_unchanged", dev <= 1e-12 && var_dev <= 1e-9, fmt("max deviation %.3e", std::max(dev, var_dev))};
}

CheckResult db_round_trip() {
    double worst = 0;
    for (double db = -20; db <= 20; db += 0.5) {
        worst = std::max(worst, std::abs(s_to_db(db_to_s(db)) - db));
    }
    return {"db_round_trip", worst <= 1e-12, fmt("max error %.3e", worst)};
}

}  // namespace

std::vector<CheckResult> run_property_checks() {
    return {
        channels_completely_positive(),
        simulation_states_physical(),
        squeezed_spin_minimum_uncertainty(),
        ideal_branch_matches_closed_form(),
        closed_form_monotone(),
        engines_agree(),
        commutators_preserved(),
        momentum_preserved(),
        db_round_trip(),
    };
}

}  // namespace cvcz
