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

#ifndef CVCZ_PROTOCOL_H
#define CVCZ_PROTOCOL_H

#include <optional>

#include "cvcz/gaussian.h"

namespace cvcz {

/// Parameters of the double-pass controlled-Z protocol. All couplings are
/// dimensionless (coupling rate times square root of the pulse duration).
struct GateParams {
    /// Light-atom coupling during the gate; kappa = 1 gives unit QND gain.
    double kappa = 1.0;
    /// Coupling used for the QND-measurement spin squeezing.
    double kappa0 = 0.0;
    /// Squeezing parameter of every input light slice (x squeezed).
    double s_light = 0.0;
    /// Power reflection coefficient of each cell-wall crossing.
    double r = 0.0;
    /// Integrated atomic decay over one pass (decay rate eta / T).
    double eta = 0.0;
    /// Squeezing parameter of the probe used for spin squeezing.
    double s_probe = 0.0;

    /// Throws std::invalid_argument naming the offending field.
    /// Requires kappa0 >= 0, 0 <= r < 1/3, eta >= 0 and finite values.
    void validate() const;
};

/// Dimensional description of the squeezing coupling.
struct PhysicalCoupling {
    double a;   // coupling strength per atom-photon pair
    double Jx;  // macroscopic spin along x
    double Sx;  // macroscopic Stokes component along x
    double T;   // pulse duration in seconds

    /// a sqrt(Jx Sx) sqrt(T). Throws std::invalid_argument unless all fields
    /// are positive.
    double kappa0() const;
};

/// Single-mode atomic spin state (transverse spin components scaled to
/// canonical quadratures). Variances in the vacuum = 1 convention.
struct AtomicState {
    double var_x = 1.0;
    double var_p = 1.0;
    double mean_x = 0.0;
    double mean_p = 0.0;

    GaussianState state() const;
    /// The same state rotated by pi/2 so that the squeezed quadrature is x.
    AtomicState squeezed_in_x() const;
};

/// Feedback gain that minimizes the conditional p variance:
/// kappa0 / (kappa0^2 + e^{-2 s_probe}).
double optimal_feedback_gain(double kappa0, double s_probe = 0.0);

/// Spin squeezing by QND measurement and feedback.
///
/// The probe x quadrature picks up kappa0 p_a, is measured, and p_a is
/// displaced by -gain times the outcome, giving
///     var_p = (1 - gain kappa0)^2 + gain^2 e^{-2 s_probe},
///     var_x = 1 + kappa0^2 e^{2 s_probe}.
/// With the optimal gain var_p = 1 / (1 + e^{2 s_probe} kappa0^2) and the
/// state has minimum uncertainty. Outcomes are absorbed by the feedback so the
/// mean stays zero.
AtomicState prepare_sss(double kappa0, std::optional<double> gain = std::nullopt, double s_probe = 0.0);

/// Two-mode (L, M) state after the lossless double pass:
///     x_L -> x_L + kappa^2 p_M
///     x_M -> x_M + kappa^2 p_L + 2 kappa sqrt(var) x_vac
/// with L and M in squeezed vacuum s_light and var the squeezed atomic
/// variance. Throws std::invalid_argument if r or eta is nonzero.
GaussianState ideal_gate_output(const GateParams &params);

/// 1 / sqrt(1 + 2 e^{2s} / (1 + kappa0^2)), the kappa = 1 gate fidelity.
double closed_form_fidelity(double kappa0, double s);

/// Ideal controlled-Z image of two x-squeezed vacua.
GaussianState target_state(double s);

struct NoiseCoefficients {
    double eps1_minus;
    double eps1_plus;
    double eps2_minus;
    double eps2_plus;
};

/// First-order output coefficients of the lossy double pass:
///     eps1(+-) = (1 - r)(1 +- 2r)(1 - eta/2 -+ 2r / (1 +- 2r))
///     eps2(+-) = (1 - r)(1 +- 2r) / sqrt(3) (eta/2 +- 2r / (1 +- 2r))
/// Requires 0 <= r < 1/2 and eta >= 0.
NoiseCoefficients analytic_epsilons(double r, double eta);

/// e^{s_probe} kappa0: the coupling a coherent probe would need to reach the
/// squeezing obtained with a squeezed probe.
double effective_coupling(double kappa0, double s_probe);

/// e^{2 s_probe} kappa0. The alternative conversion that maps
/// kappa0 = 1.4 at 8.5 dB to roughly 10.
double effective_coupling_variance_scaled(double kappa0, double s_probe);

}  // namespace cvcz

#endif
