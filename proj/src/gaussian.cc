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

#include "cvcz/gaussian.h"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cvcz {

namespace {

constexpr double SYMMETRY_TOLERANCE = 1e-10;

bool is_symmetric(const Eigen::MatrixXd &m) {
    if (m.rows() != m.cols()) {
        return false;
    }
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= SYMMETRY_TOLERANCE * scale;
}

Eigen::MatrixXcd with_symplectic_form(const Eigen::MatrixXd &cov) {
    Eigen::MatrixXcd h = cov.cast<std::complex<double>>();
    h += std::complex<double>(0, 1) * symplectic_form(static_cast<size_t>(cov.rows() / 2)).cast<std::complex<double>>();
    return h;
}

void check_modes(std::span<const size_t> modes, size_t n_modes, const char *what) {
    for (size_t m : modes) {
        if (m >= n_modes) {
            throw std::invalid_argument(
                std::string(what) + ": mode index " + std::to_string(m) + " out of range for " +
                std::to_string(n_modes) + " modes");
        }
    }
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0) {
        throw std::invalid_argument("GaussianState: mean must have positive even length");
    }
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
        throw std::invalid_argument("GaussianState: covariance shape does not match mean");
    }
    if (!is_symmetric(cov_)) {
        throw std::invalid_argument("GaussianState: covariance is not symmetric");
    }
}

GaussianChannel::GaussianChannel(Eigen::MatrixXd X, Eigen::MatrixXd Y) : X_(std::move(X)), Y_(std::move(Y)) {
    if (X_.rows() == 0 || X_.cols() == 0 || X_.rows() % 2 != 0 || X_.cols() % 2 != 0) {
        throw std::invalid_argument("GaussianChannel: X must have positive even dimensions");
    }
    if (Y_.rows() != X_.rows() || Y_.cols() != X_.rows()) {
        throw std::invalid_argument("GaussianChannel: Y must be square with the output dimension of X");
    }
    if (!is_symmetric(Y_)) {
        throw std::invalid_argument("GaussianChannel: Y is not symmetric");
    }
}

Eigen::MatrixXd symplectic_form(size_t n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (size_t k = 0; k < n_modes; k++) {
        omega(2 * k, 2 * k + 1) = 1;
        omega(2 * k + 1, 2 * k) = -1;
    }
    return omega;
}

GaussianState vacuum_state(size_t n_modes) {
    if (n_modes == 0) {
        throw std::invalid_argument("vacuum_state: need at least one mode");
    }
    return GaussianState(Eigen::VectorXd::Zero(2 * n_modes), Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState squeezed_vacuum(double s, size_t n_modes) {
    if (n_modes == 0) {
        throw std::invalid_argument("squeezed_vacuum: need at least one mode");
    }
    if (!std::isfinite(s)) {
        throw std::invalid_argument("squeezed_vacuum: squeezing parameter must be finite");
    }
    Eigen::VectorXd diag(2 * n_modes);
    for (size_t k = 0; k < n_modes; k++) {
        diag[2 * k] = std::exp(-2 * s);
        diag[2 * k + 1] = std::exp(2 * s);
    }
    return GaussianState(Eigen::VectorXd::Zero(2 * n_modes), diag.asDiagonal());
}

GaussianState tensor(const GaussianState &a, const GaussianState &b) {
    auto na = a.mean().size();
    auto nb = b.mean().size();
    Eigen::VectorXd mean(na + nb);
    mean << a.mean(), b.mean();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov();
    cov.bottomRightCorner(nb, nb) = b.cov();
    return GaussianState(std::move(mean), std::move(cov));
}

GaussianState apply_channel(const GaussianState &state, const GaussianChannel &ch) {
    if (ch.n_in() != state.n_modes()) {
        throw std::invalid_argument(
            "apply_channel: channel expects " + std::to_string(ch.n_in()) + " modes, state has " +
            std::to_string(state.n_modes()));
    }
    Eigen::MatrixXd cov = ch.X() * state.cov() * ch.X().transpose() + ch.Y();
    // Symmetrize away rounding so the result passes the constructor check.
    cov = 0.5 * (cov + cov.transpose()).eval();
    GaussianState out(ch.X() * state.mean(), std::move(cov));
    if (is_physical(state) && !is_physical(out)) {
        throw std::domain_error("apply_channel: output is unphysical; channel is not completely positive");
    }
    return out;
}

GaussianChannel identity_channel(size_t n_modes) {
    auto d = static_cast<Eigen::Index>(2 * n_modes);
    return GaussianChannel(Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Zero(d, d));
}

GaussianChannel compose(const GaussianChannel &first, const GaussianChannel &second) {
    if (second.n_in() != first.n_out()) {
        throw std::invalid_argument("compose: channel dimensions do not chain");
    }
    Eigen::MatrixXd X = second.X() * first.X();
    Eigen::MatrixXd Y = second.X() * first.Y() * second.X().transpose() + second.Y();
    Y = 0.5 * (Y + Y.transpose()).eval();
    return GaussianChannel(std::move(X), std::move(Y));
}

GaussianChannel loss_channel(std::span<const size_t> modes, double r, size_t n_modes) {
    if (!(r >= 0 && r <= 1)) {
        throw std::invalid_argument("loss_channel: reflection coefficient must lie in [0, 1]");
    }
    check_modes(modes, n_modes, "loss_channel");
    auto d = static_cast<Eigen::Index>(2 * n_modes);
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(d, d);
    double t = std::sqrt(1 - r);
    for (size_t m : modes) {
        for (size_t q = 2 * m; q < 2 * m + 2; q++) {
            X(q, q) = t;
            Y(q, q) = r;
        }
    }
    return GaussianChannel(std::move(X), std::move(Y));
}

GaussianChannel qnd_symplectic(double gain, size_t mode_i, size_t mode_j, size_t n_modes) {
    if (mode_i == mode_j) {
        throw std::invalid_argument("qnd_symplectic: the two modes must differ");
    }
    size_t modes[] = {mode_i, mode_j};
    check_modes(modes, n_modes, "qnd_symplectic");
    auto d = static_cast<Eigen::Index>(2 * n_modes);
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(d, d);
    X(2 * mode_i, 2 * mode_j + 1) = gain;
    X(2 * mode_j, 2 * mode_i + 1) = gain;
    return GaussianChannel(std::move(X), Eigen::MatrixXd::Zero(d, d));
}

GaussianState reduce(const GaussianState &state, std::span<const size_t> modes) {
    if (modes.empty()) {
        throw std::invalid_argument("reduce: empty mode subset");
    }
    check_modes(modes, state.n_modes(), "reduce");
    auto d = static_cast<Eigen::Index>(2 * modes.size());
    Eigen::VectorXd mean(d);
    Eigen::MatrixXd cov(d, d);
    for (size_t a = 0; a < 2 * modes.size(); a++) {
        size_t qa = 2 * modes[a / 2] + a % 2;
        mean[a] = state.mean()[qa];
        for (size_t b = 0; b < 2 * modes.size(); b++) {
            cov(a, b) = state.cov()(qa, 2 * modes[b / 2] + b % 2);
        }
    }
    return GaussianState(std::move(mean), std::move(cov));
}

double fidelity(const GaussianState &pure, const GaussianState &other) {
    if (pure.n_modes() != other.n_modes()) {
        throw std::invalid_argument("fidelity: states have different mode counts");
    }
    double det = pure.cov().determinant();
    if (std::abs(det - 1) > PURITY_TOLERANCE) {
        throw std::invalid_argument(
            "fidelity: first argument must be pure (det(cov) = " + std::to_string(det) + ")");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(pure.cov() + other.cov());
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("fidelity: cov + cov' is not positive definite");
    }
    double log_det = 2 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    Eigen::VectorXd diff = pure.mean() - other.mean();
    double quad = diff.dot(llt.solve(diff));
    double n = static_cast<double>(pure.n_modes());
    return std::exp(n * std::numbers::ln2 - 0.5 * log_det - quad);
}

double min_physical_eigenvalue(const Eigen::MatrixXd &cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(with_symplectic_form(cov), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_physical(const Eigen::MatrixXd &cov, double tol) {
    if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || cov.rows() == 0) {
        return false;
    }
    Eigen::MatrixXcd h = with_symplectic_form(cov);
    h.diagonal().array() += tol;
    Eigen::LLT<Eigen::MatrixXcd> llt(h);
    return llt.info() == Eigen::Success;
}

bool is_physical(const GaussianState &state, double tol) {
    return is_physical(state.cov(), tol);
}

double symplectic_residual(const Eigen::MatrixXd &X) {
    if (X.rows() != X.cols() || X.rows() % 2 != 0) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::MatrixXd omega = symplectic_form(static_cast<size_t>(X.rows() / 2));
    return (X * omega * X.transpose() - omega).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Eigen::MatrixXd &X, double tol) {
    return symplectic_residual(X) <= tol;
}

double complete_positivity_margin(const GaussianChannel &ch) {
    Eigen::MatrixXd omega_in = symplectic_form(ch.n_in());
    Eigen::MatrixXd omega_out = symplectic_form(ch.n_out());
    Eigen::MatrixXd antisym = omega_out - ch.X() * omega_in * ch.X().transpose();
    Eigen::MatrixXcd h = ch.Y().cast<std::complex<double>>() + std::complex<double>(0, 1) * antisym.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_completely_positive(const GaussianChannel &ch, double tol) {
    return complete_positivity_margin(ch) >= -tol;
}

}  // namespace cvcz
