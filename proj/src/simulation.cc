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

#include "cvcz/simulation.h"

#include <cmath>
#include <stdexcept>

namespace cvcz {

namespace {

// Exact one-slice propagator I + A + A^2/2 (A^3 = 0) on (x_a, p_a, x_L,
// p_L, x_M, p_M) for H = c (sign p_L p_a + p_M x_a).
LocalMatrix slice_propagator(double coupling, double sign) {
    LocalMatrix A = LocalMatrix::Zero(6, 6);
    A(0, 3) = sign * coupling;  // dx_a = sign c p_L
    A(1, 5) = -coupling;        // dp_a = -c p_M
    A(2, 1) = sign * coupling;  // dx_L = sign c p_a
    A(4, 0) = coupling;         // dx_M = c x_a
    LocalMatrix A2 = A * A;
    return LocalMatrix::Identity(6, 6) + A + 0.5 * A2;
}

LocalChannel attenuation(size_t mode, double transmission) {
    LocalMatrix X = std::sqrt(transmission) * LocalMatrix::Identity(2, 2);
    LocalMatrix Y = (1 - transmission) * LocalMatrix::Identity(2, 2);
    return make_local_channel({mode}, X, Y);
}

void set_mode(LocalChannel &ch, size_t mode) {
    ch.quads[0] = 2 * mode;
    ch.quads[1] = 2 * mode + 1;
}

Eigen::VectorXd initial_diagonal(const SimConfig &cfg) {
    AtomicState atom = prepare_sss(cfg.gate.kappa0, std::nullopt, cfg.gate.s_probe).squeezed_in_x();
    size_t n = 1 + 2 * cfg.slices;
    Eigen::VectorXd diag(2 * n);
    diag[0] = atom.var_x;
    diag[1] = atom.var_p;
    double vx = std::exp(-2 * cfg.gate.s_light);
    double vp = std::exp(2 * cfg.gate.s_light);
    for (size_t m = 1; m < n; m++) {
        diag[2 * m] = vx;
        diag[2 * m + 1] = vp;
    }
    return diag;
}

// Rows extracting the f-collective quadratures (x_L, p_L, x_M, p_M).
Eigen::Matrix<double, 4, Eigen::Dynamic> collective_rows(size_t slices, const ModeFunction &f) {
    if (static_cast<size_t>(f.weights.size()) != slices) {
        throw std::invalid_argument("mode function length does not match the slice count");
    }
    Eigen::Matrix<double, 4, Eigen::Dynamic> rows = Eigen::Matrix<double, 4, Eigen::Dynamic>::Zero(4, 2 * (1 + 2 * slices));
    for (size_t k = 0; k < slices; k++) {
        double w = f.weights[static_cast<Eigen::Index>(k)];
        rows(0, 2 * l_mode(slices, k)) = w;
        rows(1, 2 * l_mode(slices, k) + 1) = w;
        rows(2, 2 * m_mode(slices, k)) = w;
        rows(3, 2 * m_mode(slices, k) + 1) = w;
    }
    return rows;
}

}  // namespace

ModeFunction ModeFunction::symmetric(size_t slices) {
    if (slices == 0) {
        throw std::invalid_argument("ModeFunction: need at least one slice");
    }
    return ModeFunction{ModeKind::symmetric, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(slices), 1 / std::sqrt(double(slices)))};
}

ModeFunction ModeFunction::antisymmetric(size_t slices) {
    if (slices < 2) {
        throw std::invalid_argument("ModeFunction: the antisymmetric mode needs at least two slices");
    }
    Eigen::VectorXd w(static_cast<Eigen::Index>(slices));
    for (size_t k = 0; k < slices; k++) {
        w[static_cast<Eigen::Index>(k)] = 1 - 2 * (k + 0.5) / double(slices);
    }
    w.normalize();
    return ModeFunction{ModeKind::antisymmetric, std::move(w)};
}

void SimConfig::validate() const {
    if (slices == 0) {
        throw std::invalid_argument("slices must be >= 1");
    }
    gate.validate();
}

const char *stage_name(Stage stage) {
    switch (stage) {
        case Stage::entry_loss:
            return "entry_loss";
        case Stage::first_pass:
            return "first_pass";
        case Stage::intermediate_loss:
            return "intermediate_loss";
        case Stage::second_pass:
            return "second_pass";
        case Stage::exit_loss:
            return "exit_loss";
    }
    return "unknown";
}

EventSchedule::EventSchedule(const SimConfig &cfg) : slices_(cfg.slices), order_(cfg.order) {
    cfg.validate();
    double coupling = cfg.gate.kappa / std::sqrt(double(slices_));
    pass1_ = slice_propagator(coupling, +1);
    pass2_ = slice_propagator(coupling, -1);
    loss_ = attenuation(1, 1 - cfg.gate.r);
    decay_ = attenuation(atom_mode(), std::exp(-cfg.gate.eta / double(slices_)));
}

// Layout, in units of K events:
//   [0, 2)   entry loss on every slice
//   [2, 4)   first pass: interaction k, then decay, for k = 1..K
//   [4, 8)   two intermediate crossings
//   [8, 10)  second pass
//   [10, 12) exit loss
Stage EventSchedule::stage_of(size_t index) const {
    size_t block = index / slices_;
    if (block < 2) {
        return Stage::entry_loss;
    }
    if (block < 4) {
        return Stage::first_pass;
    }
    if (block < 8) {
        return Stage::intermediate_loss;
    }
    if (block < 10) {
        return Stage::second_pass;
    }
    return Stage::exit_loss;
}

LocalChannel EventSchedule::at(size_t index) const {
    if (index >= size()) {
        throw std::out_of_range("EventSchedule::at: index out of range");
    }
    size_t K = slices_;
    Stage stage = stage_of(index);
    if (stage == Stage::entry_loss || stage == Stage::intermediate_loss || stage == Stage::exit_loss) {
        LocalChannel ch = loss_;
        set_mode(ch, 1 + index % (2 * K));
        return ch;
    }
    size_t j = index - (stage == Stage::first_pass ? 2 * K : 8 * K);
    if (j % 2 == 1) {
        return decay_;
    }
    size_t k = j / 2;
    if (stage == Stage::second_pass && order_ == SliceOrder::reversed) {
        k = K - 1 - k;
    }
    const LocalMatrix &prop = stage == Stage::first_pass ? pass1_ : pass2_;
    return make_local_channel({atom_mode(), l_mode(K, k), m_mode(K, k)}, prop, LocalMatrix::Zero(6, 6));
}

GaussianState initial_state(const SimConfig &cfg) {
    cfg.validate();
    Eigen::VectorXd diag = initial_diagonal(cfg);
    return GaussianState(Eigen::VectorXd::Zero(diag.size()), diag.asDiagonal());
}

GaussianState project_collective(const GaussianState &full, const ModeFunction &f) {
    if (full.n_modes() < 3 || full.n_modes() % 2 != 1) {
        throw std::invalid_argument("project_collective: expected an (atom, L..., M...) state");
    }
    size_t slices = (full.n_modes() - 1) / 2;
    auto rows = collective_rows(slices, f);
    Eigen::Matrix4d cov = rows * full.cov() * rows.transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    return GaussianState(rows * full.mean(), cov);
}

SimOutput sliced_simulation(const SimConfig &cfg) {
    EventSchedule schedule(cfg);
    GaussianState start = initial_state(cfg);
    Eigen::MatrixXd cov = start.cov();

    SimDiagnostics diag;
    diag.slices = cfg.slices;
    auto check_stage = [&](const std::string &name) {
        bool ok = is_physical(cov);
        diag.stages.push_back({name, ok});
        if (!ok) {
            throw std::logic_error("sliced_simulation: state became unphysical after stage " + name);
        }
    };
    if (cfg.check_stages) {
        check_stage("initial");
    }

    for (size_t i = 0; i < schedule.size(); i++) {
        LocalChannel ch = schedule.at(i);
        if (cfg.kernel == Kernel::parallel) {
            apply_local_parallel(cov, ch);
        } else {
            apply_local_serial(cov, ch);
        }
        if (cfg.check_every_event && !is_physical(cov)) {
            diag.unphysical_events++;
        }
        bool stage_done = i + 1 == schedule.size() || schedule.stage_of(i + 1) != schedule.stage_of(i);
        if (cfg.check_stages && stage_done) {
            check_stage(stage_name(schedule.stage_of(i)));
        }
    }

    diag.propagator_symplectic_residual = std::max(
        symplectic_residual(schedule.first_pass_propagator()), symplectic_residual(schedule.second_pass_propagator()));
    diag.channel_cp_margin = std::min(
        complete_positivity_margin(GaussianChannel(schedule.loss_prototype().X, schedule.loss_prototype().Y)),
        complete_positivity_margin(GaussianChannel(schedule.decay_prototype().X, schedule.decay_prototype().Y)));

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(cov.rows());
    GaussianState full(std::move(mean), std::move(cov));
    GaussianState collective = project_collective(full, ModeFunction::symmetric(cfg.slices));
    diag.collective_physical = is_physical(collective);
    double f = fidelity(target_state(cfg.gate.s_light), collective);
    return SimOutput{std::move(full), std::move(collective), f, std::move(diag)};
}

CollectiveOutput simulate_collective(const SimConfig &cfg) {
    EventSchedule schedule(cfg);
    auto rows = collective_rows(cfg.slices, ModeFunction::symmetric(cfg.slices));
    Eigen::Matrix4d noise = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d commutator = Eigen::Matrix4d::Zero();
    for (size_t i = schedule.size(); i-- > 0;) {
        apply_local_adjoint<4>(rows, noise, schedule.at(i), &commutator);
    }

    Eigen::VectorXd diag = initial_diagonal(cfg);
    Eigen::Matrix4d cov = rows * diag.asDiagonal() * rows.transpose() + noise;
    cov = 0.5 * (cov + cov.transpose()).eval();

    // Input commutators: rows Omega rows^T, Omega block diagonal per mode.
    Eigen::Matrix4d comm_in = Eigen::Matrix4d::Zero();
    for (Eigen::Index m = 0; m < rows.cols(); m += 2) {
        comm_in += rows.col(m) * rows.col(m + 1).transpose() - rows.col(m + 1) * rows.col(m).transpose();
    }
    Eigen::Matrix4d omega = symplectic_form(2);
    double residual = (comm_in + commutator - omega).cwiseAbs().maxCoeff();

    GaussianState state(Eigen::VectorXd::Zero(4), cov);
    double f = fidelity(target_state(cfg.gate.s_light), state);
    return CollectiveOutput{std::move(state), std::move(rows), noise, f, residual};
}

Eigen::Matrix4d collective_transfer(const CollectiveOutput &out, const ModeFunction &f) {
    size_t slices = static_cast<size_t>((out.transfer.cols() / 2 - 1) / 2);
    auto in_rows = collective_rows(slices, f);
    return out.transfer * in_rows.transpose();
}

double noisy_gate_fidelity(const GateParams &params, size_t slices, SliceOrder order) {
    SimConfig cfg;
    cfg.slices = slices;
    cfg.gate = params;
    cfg.order = order;
    return simulate_collective(cfg).fidelity;
}

}  // namespace cvcz
