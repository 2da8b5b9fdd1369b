#include "qorder/measures.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qorder {

namespace {

constexpr double kGridStep = 1e-3;
constexpr double kBracketWidth = 1e-10;
constexpr int kMaxRefinements = 200;

double fidelity_with_diagonal(const DensityMatrix &rho, double det_rho, double q) {
    // Closed qubit form against sigma = diag(q, 1-q).
    double overlap = rho.p0() * q + rho.p1() * (1 - q);
    return overlap + 2 * std::sqrt(det_rho * q * (1 - q));
}

}  // namespace

Measure Measure::tsallis(double alpha) {
    if (!valid_power_exponent(alpha)) {
        std::ostringstream ss;
        ss << "Tsallis alpha=" << alpha << " must lie in (0,1) or (1,2]";
        throw Error(ErrorKind::DomainError, ss.str());
    }
    return {MeasureKind::Tsallis, alpha};
}

std::string Measure::name() const {
    switch (kind) {
        case MeasureKind::L1:
            return "l1";
        case MeasureKind::RelativeEntropy:
            return "relative-entropy";
        case MeasureKind::Geometric:
            return "geometric";
        case MeasureKind::Tsallis: {
            std::ostringstream ss;
            ss << "tsallis(" << alpha << ")";
            return ss.str();
        }
    }
    return "unknown";
}

double c_l1(const DensityMatrix &rho) {
    return 2 * std::abs(rho.coherence());
}

double c_r(const DensityMatrix &rho) {
    double value = binary_entropy(rho.p0()) - von_neumann_entropy(rho);
    return std::max(value, 0.0);
}

GeometricResult geometric_coherence(const DensityMatrix &rho) {
    double det_rho = std::max(rho.matrix().det().real(), 0.0);
    auto f = [&](double q) { return fidelity_with_diagonal(rho, det_rho, q); };

    const int steps = static_cast<int>(std::lround(1 / kGridStep));
    int best = 0;
    double best_value = f(0);
    for (int i = 1; i <= steps; i++) {
        double v = f(static_cast<double>(i) / steps);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    double best_q = static_cast<double>(best) / steps;

    double lo = static_cast<double>(std::max(best - 1, 0)) / steps;
    double hi = static_cast<double>(std::min(best + 1, steps)) / steps;
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    int iterations = 0;
    while (hi - lo > kBracketWidth) {
        if (++iterations > kMaxRefinements) {
            throw Error(ErrorKind::OptimizerFailure, "geometric coherence refinement did not converge");
        }
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    for (double q : {lo, hi, 0.5 * (lo + hi), x1, x2}) {
        double v = f(q);
        if (v > best_value) {
            best_value = v;
            best_q = q;
        }
    }
    best_value = std::min(best_value, 1.0);

    GeometricResult out;
    out.value = std::max(1 - best_value, 0.0);
    out.maximizer = best_q;
    out.max_fidelity = best_value;
    out.refinement_iterations = iterations;
    return out;
}

double c_g(const DensityMatrix &rho) {
    return geometric_coherence(rho).value;
}

double c_alpha(const DensityMatrix &rho, double alpha) {
    Mat2 powered = matrix_power(rho, alpha);
    double r = 0;
    for (int i = 0; i < 2; i++) {
        double diag = std::max(powered(i, i).real(), 0.0);
        r += std::pow(diag, 1 / alpha);
    }
    return std::max((std::pow(r, alpha) - 1) / (alpha - 1), 0.0);
}

double coherence(const Measure &m, const DensityMatrix &rho) {
    switch (m.kind) {
        case MeasureKind::L1:
            return c_l1(rho);
        case MeasureKind::RelativeEntropy:
            return c_r(rho);
        case MeasureKind::Geometric:
            return c_g(rho);
        case MeasureKind::Tsallis:
            return c_alpha(rho, m.alpha);
    }
    throw Error(ErrorKind::UnsupportedMeasure, "unknown measure");
}

}  // namespace qorder
