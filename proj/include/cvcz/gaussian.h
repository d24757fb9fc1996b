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

#ifndef CVCZ_GAUSSIAN_H
#define CVCZ_GAUSSIAN_H

#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace cvcz {

/// Tolerance used by is_physical / is_symplectic / is_completely_positive.
constexpr double PHYSICALITY_TOLERANCE = 1e-9;
/// Allowed |det(cov) - 1| for the pure argument of fidelity().
constexpr double PURITY_TOLERANCE = 1e-6;

/// Gaussian state of N bosonic modes.
///
/// Quadratures are interleaved as (x_1, p_1, x_2, p_2, ...). The covariance
/// is normalized so that the vacuum has the identity matrix, i.e.
/// cov_ij = <{d_i, d_j}> with d = xi - <xi>. A quadrature variance of 1/2 in
/// hbar = 1 units is therefore 1.0 here.
///
/// Construction checks shapes and symmetry (1e-10) only. Physicality is a
/// separate question answered by is_physical(), so that unphysical matrices
/// can still be represented and rejected explicitly.
class GaussianState {
   public:
    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    size_t n_modes() const {
        return static_cast<size_t>(mean_.size() / 2);
    }
    const Eigen::VectorXd &mean() const {
        return mean_;
    }
    const Eigen::MatrixXd &cov() const {
        return cov_;
    }

   private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

/// Gaussian channel mean -> X mean, cov -> X cov X^T + Y.
///
/// X maps 2N input quadratures to 2N' output quadratures; Y is the added
/// noise in the same covariance convention as GaussianState.
class GaussianChannel {
   public:
    GaussianChannel(Eigen::MatrixXd X, Eigen::MatrixXd Y);

    size_t n_in() const {
        return static_cast<size_t>(X_.cols() / 2);
    }
    size_t n_out() const {
        return static_cast<size_t>(X_.rows() / 2);
    }
    const Eigen::MatrixXd &X() const {
        return X_;
    }
    const Eigen::MatrixXd &Y() const {
        return Y_;
    }

   private:
    Eigen::MatrixXd X_;
    Eigen::MatrixXd Y_;
};

/// Block-diagonal [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(size_t n_modes);

GaussianState vacuum_state(size_t n_modes);

/// Every mode squeezed in x: cov = diag(e^{-2s}, e^{2s}) per mode.
/// Negative s squeezes p instead.
GaussianState squeezed_vacuum(double s, size_t n_modes);

/// Product state a (x) b, with the modes of a first.
GaussianState tensor(const GaussianState &a, const GaussianState &b);

/// Applies ch to state.
///
/// Throws std::invalid_argument on a dimension mismatch, and
/// std::domain_error when a physical input is mapped to an unphysical output
/// (the channel cannot have been completely positive).
GaussianState apply_channel(const GaussianState &state, const GaussianChannel &ch);

GaussianChannel identity_channel(size_t n_modes);

/// Channel `second` applied after `first`.
GaussianChannel compose(const GaussianChannel &first, const GaussianChannel &second);

/// Beam-splitter admixture of vacuum with reflection r on the listed modes:
/// q -> sqrt(1 - r) q + sqrt(r) q_vac for both quadratures of each mode.
GaussianChannel loss_channel(std::span<const size_t> modes, double r, size_t n_modes);

/// QND coupling of modes i and j with the given gain:
/// x_i -> x_i + gain p_j, x_j -> x_j + gain p_i, momenta unchanged.
/// gain = 1 is the controlled-Z gate.
GaussianChannel qnd_symplectic(double gain, size_t mode_i, size_t mode_j, size_t n_modes);

/// Partial trace onto the listed modes, in the listed order.
GaussianState reduce(const GaussianState &state, std::span<const size_t> modes);

/// Overlap <psi| rho |psi> between a pure Gaussian state `pure` and an
/// arbitrary Gaussian state `other`:
///
///     F = 2^N / sqrt(det(g + g')) * exp(-(m - m')^T (g + g')^{-1} (m - m'))
///
/// Evaluated in log space through a Cholesky factorization of g + g'.
/// Throws std::invalid_argument when `pure` has |det - 1| > PURITY_TOLERANCE
/// or the mode counts differ.
double fidelity(const GaussianState &pure, const GaussianState &other);

/// Smallest eigenvalue of cov + i Omega.
double min_physical_eigenvalue(const Eigen::MatrixXd &cov);

/// cov + i Omega >= -tol, tested by a Cholesky factorization of
/// cov + i Omega + tol I (it succeeds iff every eigenvalue exceeds -tol).
/// This scales to the large states produced by the sliced simulation, where
/// a full eigendecomposition would dominate the run time.
bool is_physical(const GaussianState &state, double tol = PHYSICALITY_TOLERANCE);
bool is_physical(const Eigen::MatrixXd &cov, double tol = PHYSICALITY_TOLERANCE);

/// || X Omega X^T - Omega ||_max.
double symplectic_residual(const Eigen::MatrixXd &X);
bool is_symplectic(const Eigen::MatrixXd &X, double tol = PHYSICALITY_TOLERANCE);

/// Smallest eigenvalue of Y + i Omega_out - i X Omega_in X^T.
double complete_positivity_margin(const GaussianChannel &ch);
bool is_completely_positive(const GaussianChannel &ch, double tol = PHYSICALITY_TOLERANCE);

}  // namespace cvcz

#endif
