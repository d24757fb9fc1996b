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

#ifndef CVCZ_KERNELS_H
#define CVCZ_KERNELS_H

#include <array>
#include <cstddef>
#include <initializer_list>

#include <Eigen/Dense>

namespace cvcz {

/// Largest number of quadratures a LocalChannel may touch (three modes).
constexpr size_t MAX_LOCAL_QUADRATURES = 6;

using LocalMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, MAX_LOCAL_QUADRATURES, MAX_LOCAL_QUADRATURES>;

/// A Gaussian channel that acts as the identity outside a few quadratures.
///
/// `quads[0..size)` are distinct indices into the full quadrature vector; X
/// and Y are the size x size blocks acting on them.
struct LocalChannel {
    std::array<size_t, MAX_LOCAL_QUADRATURES> quads{};
    size_t size = 0;
    LocalMatrix X;
    LocalMatrix Y;
};

/// Both quadratures of each listed mode.
LocalChannel make_local_channel(std::initializer_list<size_t> modes, LocalMatrix X, LocalMatrix Y);

/// cov -> T cov T^T + Y where T is X embedded in the identity.
/// Serial reference kernel.
void apply_local_serial(Eigen::MatrixXd &cov, const LocalChannel &ch);

/// Same update as apply_local_serial, columns split across OpenMP threads.
/// Produces bit-identical results.
void apply_local_parallel(Eigen::MatrixXd &cov, const LocalChannel &ch);

/// Heisenberg-picture update for tracking a few output quadratures backwards
/// through a channel sequence. With rows = P X_n ... X_{k+1} and noise the
/// accumulated P (...) Y (...)^T, stepping over channel k gives
/// noise += rows_S Y rows_S^T and rows_S -> rows_S X, where rows_S are the
/// columns of rows on ch.quads.
///
/// When `commutator` is given it accumulates rows_S (Omega - X Omega X^T)
/// rows_S^T, the commutators carried by the channel's noise operators.
template <int R>
void apply_local_adjoint(
    Eigen::Matrix<double, R, Eigen::Dynamic> &rows,
    Eigen::Matrix<double, R, R> &noise,
    const LocalChannel &ch,
    Eigen::Matrix<double, R, R> *commutator = nullptr) {
    using Sub = Eigen::Matrix<double, R, Eigen::Dynamic, 0, R, MAX_LOCAL_QUADRATURES>;
    Sub sub(rows.rows(), ch.size);
    for (size_t b = 0; b < ch.size; b++) {
        sub.col(b) = rows.col(static_cast<Eigen::Index>(ch.quads[b]));
    }
    noise.noalias() += sub * ch.Y * sub.transpose();
    if (commutator != nullptr) {
        LocalMatrix omega = LocalMatrix::Zero(ch.size, ch.size);
        for (size_t b = 0; b + 1 < ch.size; b += 2) {
            omega(b, b + 1) = 1;
            omega(b + 1, b) = -1;
        }
        LocalMatrix defect = omega - ch.X * omega * ch.X.transpose();
        commutator->noalias() += sub * defect * sub.transpose();
    }
    Sub out = sub * ch.X;
    for (size_t b = 0; b < ch.size; b++) {
        rows.col(static_cast<Eigen::Index>(ch.quads[b])) = out.col(b);
    }
}

}  // namespace cvcz

#endif
