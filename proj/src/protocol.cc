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

#include "cvcz/protocol.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvcz {

namespace {

void require_finite(double v, const char *name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

void require_kappa0(double kappa0) {
    require_finite(kappa0, "kappa0");
    if (kappa0 < 0) {
        throw std::invalid_argument("kappa0 must be >= 0");
    }
}

}  // namespace

void GateParams::validate() const {
    require_finite(kappa, "kappa");
    require_kappa0(kappa0);
    require_finite(s_light, "s_light");
    require_finite(s_probe, "s_probe");
    require_finite(r, "r");
    require_finite(eta, "eta");
    if (r < 0 || r >= 1.0 / 3.0) {
        throw std::invalid_argument("r must lie in [0, 1/3)");
    }
    if (eta < 0) {
        throw std::invalid_argument("eta must be >= 0");
    }
}

double PhysicalCoupling::kappa0() const {
    if (!(a > 0 && Jx > 0 && Sx > 0 && T > 0)) {
        throw std::invalid_argument("PhysicalCoupling: a, Jx, Sx and T must be positive");
    }
    return a * std::sqrt(Jx * Sx) * std::sqrt(T);
}

GaussianState AtomicState::state() const {
    Eigen::Vector2d mean(mean_x, mean_p);
    Eigen::Matrix2d cov = Eigen::Vector2d(var_x, var_p).asDiagonal();
    return GaussianState(mean, cov);
}

AtomicState AtomicState::squeezed_in_x() const {
    // x -> p, p -> -x
    return AtomicState{var_p, var_x, -mean_p, mean_x};
}

double optimal_feedback_gain(double kappa0, double s_probe) {
    require_kappa0(kappa0);
    return kappa0 / (kappa0 * kappa0 + std::exp(-2 * s_probe));
}

AtomicState prepare_sss(double kappa0, std::optional<double> gain, double s_probe) {
    require_kappa0(kappa0);
    require_finite(s_probe, "s_probe");
    double e2s = std::exp(2 * s_probe);
    AtomicState out;
    out.var_x = 1 + kappa0 * kappa0 * e2s;
    if (gain) {
        double g = *gain;
        require_finite(g, "gain");
        out.var_p = (1 - g * kappa0) * (1 - g * kappa0) + g * g / e2s;
    } else {
        out.var_p = 1 / out.var_x;
    }
    return out;
}

GaussianState ideal_gate_output(const GateParams &params) {
    params.validate();
    if (params.r != 0 || params.eta != 0) {
        throw std::invalid_argument("ideal_gate_output: requires r = eta = 0; use the noisy simulation");
    }
    AtomicState atom = prepare_sss(params.kappa0, std::nullopt, params.s_probe).squeezed_in_x();
    double k2 = params.kappa * params.kappa;
    // Inputs ordered (L, M, unit-variance atomic x noise).
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(4, 6);
    X(0, 0) = 1;
    X(0, 3) = k2;
    X(1, 1) = 1;
    X(2, 2) = 1;
    X(2, 1) = k2;
    X(2, 4) = 2 * params.kappa * std::sqrt(atom.var_x);
    X(3, 3) = 1;
    GaussianState in = tensor(squeezed_vacuum(params.s_light, 2), vacuum_state(1));
    return apply_channel(in, GaussianChannel(X, Eigen::MatrixXd::Zero(4, 4)));
}

double closed_form_fidelity(double kappa0, double s) {
    require_kappa0(kappa0);
    require_finite(s, "s");
    return 1 / std::sqrt(1 + 2 * std::exp(2 * s) / (1 + kappa0 * kappa0));
}

GaussianState target_state(double s) {
    return apply_channel(squeezed_vacuum(s, 2), qnd_symplectic(1.0, 0, 1, 2));
}

NoiseCoefficients analytic_epsilons(double r, double eta) {
    require_finite(r, "r");
    require_finite(eta, "eta");
    if (r < 0 || r >= 0.5) {
        throw std::invalid_argument("analytic_epsilons: r must lie in [0, 1/2)");
    }
    if (eta < 0) {
        throw std::invalid_argument("analytic_epsilons: eta must be >= 0");
    }
    double lo = 1 - 2 * r;
    double hi = 1 + 2 * r;
    double t = 1 - r;
    NoiseCoefficients eps;
    eps.eps1_minus = t * lo * (1 - eta / 2 + 2 * r / lo);
    eps.eps1_plus = t * hi * (1 - eta / 2 - 2 * r / hi);
    eps.eps2_minus = t * lo / std::sqrt(3.0) * (eta / 2 - 2 * r / lo);
    eps.eps2_plus = t * hi / std::sqrt(3.0) * (eta / 2 + 2 * r / hi);
    return eps;
}

double effective_coupling(double kappa0, double s_probe) {
    require_kappa0(kappa0);
    return std::exp(s_probe) * kappa0;
}

double effective_coupling_variance_scaled(double kappa0, double s_probe) {
    require_kappa0(kappa0);
    return std::exp(2 * s_probe) * kappa0;
}

}  // namespace cvcz
