#pragma once

#include <string>

#include "qorder/qubit.h"

namespace qorder {

enum class MeasureKind { L1, RelativeEntropy, Geometric, Tsallis };

/// Identifies one coherence measure; alpha is only meaningful for Tsallis.
struct Measure {
    MeasureKind kind = MeasureKind::L1;
    double alpha = 0;

    static Measure l1() {
        return {MeasureKind::L1, 0};
    }
    static Measure relative_entropy() {
        return {MeasureKind::RelativeEntropy, 0};
    }
    static Measure geometric() {
        return {MeasureKind::Geometric, 0};
    }
    /// Throws Error(DomainError) unless alpha is in (0,1) or (1,2].
    static Measure tsallis(double alpha);

    /// "l1", "relative-entropy", "geometric", "tsallis(0.75)".
    std::string name() const;

    friend bool operator==(const Measure &, const Measure &) = default;
};

/// Sum of off-diagonal magnitudes; 2|rho01| for a qubit.
double c_l1(const DensityMatrix &rho);

/// S(rho_diag) - S(rho) in bits.
double c_r(const DensityMatrix &rho);

struct GeometricResult {
    double value = 0;
    /// q of the closest incoherent state diag(q, 1-q).
    double maximizer = 0;
    double max_fidelity = 0;
    int refinement_iterations = 0;
};

/// 1 - max_q F(rho, diag(q, 1-q)). The maximum is located by a coarse q-grid
/// (step 1e-3) followed by golden-section refinement of the best bracket to
/// width 1e-10; throws Error(OptimizerFailure) if that takes over 200 steps.
GeometricResult geometric_coherence(const DensityMatrix &rho);
double c_g(const DensityMatrix &rho);

/// Tsallis relative alpha-entropy of coherence, (r^alpha - 1)/(alpha - 1) with
/// r = sum_i <i|rho^alpha|i>^(1/alpha).
double c_alpha(const DensityMatrix &rho, double alpha);

double coherence(const Measure &m, const DensityMatrix &rho);

}  // namespace qorder
