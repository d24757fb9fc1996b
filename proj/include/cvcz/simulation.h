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

#ifndef CVCZ_SIMULATION_H
#define CVCZ_SIMULATION_H

#include <cstddef>
#include <string>
#include <vector>

#include "cvcz/gaussian.h"
#include "cvcz/kernels.h"
#include "cvcz/protocol.h"

namespace cvcz {

// Time-sliced simulation of the double-pass gate.
//
// Each light pulse is cut into K slices, every slice an independent squeezed
// vacuum mode. The full state has 1 + 2K modes ordered
//     atom, L_1 .. L_K, M_1 .. M_K.
// Slice k meets the atom during its own time window; the interaction over
// one window is the exact propagator of a nilpotent generator, and atomic
// decay is applied after each window. Wall crossings are beam-splitter
// losses with reflection r on every light slice.

enum class SliceOrder {
    /// Slice 1 re-enters the cell first on the second pass.
    preserved,
    /// Slice K re-enters first.
    reversed,
};

enum class Kernel {
    serial,
    parallel,
};

enum class ModeKind {
    symmetric,
    antisymmetric,
};

/// Unit-norm temporal weights over the K slices of one beam.
struct ModeFunction {
    ModeKind kind;
    Eigen::VectorXd weights;

    /// Flat profile 1/sqrt(K).
    static ModeFunction symmetric(size_t slices);
    /// Normalized samples of 1 - 2t/T at the slice midpoints. Needs K >= 2.
    static ModeFunction antisymmetric(size_t slices);
};

struct SimConfig {
    size_t slices = 512;
    GateParams gate;
    SliceOrder order = SliceOrder::preserved;
    Kernel kernel = Kernel::parallel;
    /// Test physicality after every stage of the schedule.
    bool check_stages = true;
    /// Test physicality after every single event (only sensible for small K).
    bool check_every_event = false;

    void validate() const;
};

enum class Stage {
    entry_loss,
    first_pass,
    intermediate_loss,
    second_pass,
    exit_loss,
};

const char *stage_name(Stage stage);

/// The ordered list of local channels making up one run of the gate.
///
/// Events are generated on demand from their index so that schedules for
/// large K cost no memory.
class EventSchedule {
   public:
    explicit EventSchedule(const SimConfig &cfg);

    size_t size() const {
        return 12 * slices_;
    }
    size_t slices() const {
        return slices_;
    }
    size_t n_modes() const {
        return 1 + 2 * slices_;
    }
    Stage stage_of(size_t index) const;
    LocalChannel at(size_t index) const;

    /// Slice propagators for the two passes (atom, L_k, M_k quadrature order).
    const LocalMatrix &first_pass_propagator() const {
        return pass1_;
    }
    const LocalMatrix &second_pass_propagator() const {
        return pass2_;
    }
    const LocalChannel &loss_prototype() const {
        return loss_;
    }
    const LocalChannel &decay_prototype() const {
        return decay_;
    }

   private:
    size_t slices_;
    SliceOrder order_;
    LocalMatrix pass1_;
    LocalMatrix pass2_;
    LocalChannel loss_;
    LocalChannel decay_;
};

/// Mode index helpers for the (atom, L..., M...) layout.
constexpr size_t atom_mode() {
    return 0;
}
constexpr size_t l_mode(size_t slices, size_t k) {
    (void)slices;
    return 1 + k;
}
constexpr size_t m_mode(size_t slices, size_t k) {
    return 1 + slices + k;
}

/// Initial (1 + 2K)-mode state: x-squeezed atom from prepare_sss and
/// squeezed-vacuum light slices.
GaussianState initial_state(const SimConfig &cfg);

/// The two collective modes (L_f, M_f) of a full sliced state.
///
/// Equivalent to an orthogonal change of basis on each beam's slices that puts
/// f first, followed by reduce().
GaussianState project_collective(const GaussianState &full, const ModeFunction &f);

struct StageCheck {
    std::string stage;
    bool physical;
};

struct SimDiagnostics {
    size_t slices = 0;
    std::vector<StageCheck> stages;
    /// Number of events after which the state failed the physicality test
    /// (only counted when check_every_event is set).
    size_t unphysical_events = 0;
    /// max ||S Omega S^T - Omega|| over the two slice propagators.
    double propagator_symplectic_residual = 0;
    /// min eigenvalue of Y + i Omega - i X Omega X^T over loss and decay.
    double channel_cp_margin = 0;
    bool collective_physical = false;
};

struct SimOutput {
    GaussianState full_state;
    GaussianState collective_state;
    double fidelity;
    SimDiagnostics diagnostics;
};

/// Schroedinger-picture run on the full covariance matrix.
///
/// Memory is quadratic in K (about 134 MB at K = 1024); use
/// simulate_collective for large K. Throws std::logic_error if a stage
/// produces an unphysical state.
SimOutput sliced_simulation(const SimConfig &cfg);

/// Heisenberg-picture run tracking only the symmetric collective outputs.
///
/// transfer holds the output quadratures (x_L, p_L, x_M, p_M of the symmetric
/// modes) as linear combinations of all input quadratures, and noise the
/// covariance contributed by the loss and decay vacua. Linear in K in both
/// time and memory.
struct CollectiveOutput {
    GaussianState state;
    Eigen::Matrix<double, 4, Eigen::Dynamic> transfer;
    Eigen::Matrix4d noise;
    double fidelity;
    /// max |[q_a, q_b] - i Omega_ab| over the four output quadratures,
    /// including the commutators carried by the noise operators.
    double commutator_residual;
};

CollectiveOutput simulate_collective(const SimConfig &cfg);

/// Input-to-output map restricted to the collective input modes f:
/// rows (x_L, p_L, x_M, p_M) of the symmetric outputs, columns
/// (x_L, p_L, x_M, p_M) of the f-mode inputs.
Eigen::Matrix4d collective_transfer(const CollectiveOutput &out, const ModeFunction &f);

/// Gate fidelity against target_state(s_light) for the given parameters.
double noisy_gate_fidelity(const GateParams &params, size_t slices, SliceOrder order = SliceOrder::preserved);

}  // namespace cvcz

#endif
