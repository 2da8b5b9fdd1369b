#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "qorder/channels.h"
#include "qorder/measures.h"
#include "qorder/qubit.h"

namespace qorder {

inline constexpr double kTieTolerance = 1e-9;
inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kSlopeTolerance = 1e-8;

/// Discretization of the state space (t, n_z, azimuth of (n_x, n_y)) and of p.
struct GridSpec {
    std::vector<double> t_values;
    std::vector<double> nz_values;
    std::vector<double> azimuth_values;
    std::vector<double> p_values;

    /// t in {0.05..0.95}, n_z in {-0.95..0.95} (step 0.05), azimuth in {0, pi/6, .., 2pi},
    /// p in {0.1..0.9}.
    static GridSpec default_grid();
    /// Throws Error(DomainError) on empty lists or out-of-range values.
    void validate() const;
    size_t state_count() const {
        return t_values.size() * nz_values.size() * azimuth_values.size();
    }
};

/// start, start + step, ..., stop (inclusive); values snapped to 1e-12.
std::vector<double> linspace_step(double start, double stop, double step);

struct GridPoint {
    double t = 0;
    double nz = 0;
    double azimuth = 0;

    BlochState state() const {
        return BlochState::from_angles(t, nz, azimuth);
    }
};

enum class Constraint { FixedT, FixedNz, None };
const char *constraint_name(Constraint c);

/// Sign of m(rho1) - m(rho2); gaps within tol count as ties (0).
int ordering_sign(const Measure &m, const DensityMatrix &rho1, const DensityMatrix &rho2, double tol);
int ordering_sign(double value1, double value2, double tol);

/// Pair of states whose coherence ordering strictly flips under a channel:
/// before[0] > before[1] + tol and after[0] < after[1] - tol.
struct ReversalWitness {
    BlochState s1;
    BlochState s2;
    std::array<double, 2> before{};
    std::array<double, 2> after{};
};

struct OrderingReport {
    MarkovianKind channel = MarkovianKind::AmplitudeDamping;
    double p = 0;
    Measure measure;
    Constraint constraint = Constraint::None;
    size_t pairs_checked = 0;
    /// Total number of strict reversals found.
    size_t reversal_count = 0;
    /// The first max_witnesses reversals in enumeration order.
    std::vector<ReversalWitness> reversals;
    double tie_tolerance = kTieTolerance;
};

/// Compares the ordering of every constrained state pair on the grid before and
/// after the channel. FixedT pairs share t (n_z and azimuth free); FixedNz pairs
/// share n_z (t and azimuth free); None pairs are unrestricted.
/// Pairs are enumerated group by group (ascending t or n_z index), and within a
/// group by flattened (t, n_z, azimuth) index, so the report is deterministic.
OrderingReport check_preservation(
    MarkovianKind kind,
    double p,
    const Measure &m,
    const GridSpec &grid,
    Constraint constraint,
    double tie_tolerance = kTieTolerance,
    size_t max_witnesses = std::numeric_limits<size_t>::max());

/// First reversal in the same enumeration order as check_preservation.
std::optional<ReversalWitness> find_reversal(
    MarkovianKind kind, double p, const Measure &m, const GridSpec &grid, Constraint constraint, double tol = kTieTolerance);

/// Recomputes both sides from the Kraus map and the measure definitions and checks
/// the witness inequalities.
bool validate_witness(const KrausChannel &channel, const Measure &m, const ReversalWitness &w, double tol);
bool validate_witness(MarkovianKind kind, double p, const Measure &m, const ReversalWitness &w, double tol);

enum class Axis { T, Nz, Nx };
enum class Trend { NonDecreasing, NonIncreasing };
const char *axis_name(Axis axis);

/// Increasing in t, decreasing in n_z, increasing in n_x.
Trend claimed_trend(Axis axis);

/// Closed-form partial derivative of the post-channel coherence, where one is known:
///   phase damping:  C_r along t and n_z, Tsallis along t;
///   depolarizing:   C_r along t and n_z, Tsallis along t;
///   bit flip p=1/2: L1, C_r, Tsallis along n_x (valid for n_x > 0).
/// Moving along n_x keeps n_z fixed and adjusts n_y (same sign) to stay normalized.
std::optional<double> analytic_derivative(MarkovianKind kind, double p, const Measure &m, Axis axis, const GridPoint &at);

struct MonotonicityReport {
    MarkovianKind channel = MarkovianKind::AmplitudeDamping;
    Measure measure;
    double p = 0;
    Axis axis = Axis::T;
    Trend claimed = Trend::NonDecreasing;
    double step = kFiniteDifferenceStep;
    double slope_tolerance = kSlopeTolerance;
    /// Interior points where the claimed trend applies (n_z >= 0 for Nz, n_x >= 0 for Nx).
    size_t points_checked = 0;
    /// min over checked points of slope * (+1 increasing / -1 decreasing).
    double min_signed_slope = std::numeric_limits<double>::infinity();
    std::vector<GridPoint> violations;
    /// Interior points compared against analytic_derivative.
    size_t analytic_points = 0;
    /// max |fd - analytic| / max(1e-6, 1e-4 |analytic|); <= 1 means agreement.
    double worst_analytic_ratio = 0;
    std::vector<GridPoint> analytic_mismatches;
};

/// Central finite differences of the post-channel coherence (Kraus route) along
/// one axis at every interior grid point.
MonotonicityReport monotonicity_scan(
    MarkovianKind kind,
    double p,
    const Measure &m,
    Axis axis,
    const GridSpec &grid,
    double step = kFiniteDifferenceStep,
    double slope_tolerance = kSlopeTolerance);

struct SurfacePoint {
    double t = 0;
    double nz = 0;
    double value = 0;
};

struct Surface {
    MarkovianKind channel = MarkovianKind::AmplitudeDamping;
    double p = 0;
    Measure measure;
    double azimuth = 0;
    size_t t_count = 0;
    size_t nz_count = 0;
    /// t outer, n_z inner.
    std::vector<SurfacePoint> rows;

    const SurfacePoint &at(size_t ti, size_t zi) const {
        return rows[ti * nz_count + zi];
    }
};

/// Post-channel coherence over grid.t_values x grid.nz_values at a fixed azimuth
/// (default 0, i.e. n_y = 0).
Surface figure_surface(MarkovianKind kind, double p, const Measure &m, const GridSpec &grid, double azimuth = 0);

struct SurfaceTrend {
    /// Largest drop between t-neighbours at fixed n_z (0 if non-decreasing).
    double max_decrease_in_t = 0;
    /// Largest rise between n_z-neighbours at fixed t (0 if non-increasing).
    double max_increase_in_nz = 0;
};
SurfaceTrend surface_trend(const Surface &surface);

struct NcSearchSpec {
    NcFamily family = NcFamily::Phi2;
    /// Values tried for each of theta, phi, xi (and eta for Phi1).
    std::vector<double> angles;
    /// States paired up in the search.
    GridSpec states;

    /// Angles {0, pi/8, .., pi/2}; t in {0.3, 0.6, 0.9}, n_z in {0, 0.5}, azimuth in {0, pi/6, .., 11pi/6}.
    static NcSearchSpec default_spec(NcFamily family);
};

struct NcWitness {
    NcParams params;
    ReversalWitness witness;
};

struct NcSearchResult {
    size_t channels_tried = 0;
    size_t pairs_checked = 0;
    std::optional<NcWitness> found;
};

/// Searches incoherent members of the family (is_incoherent == true) for a
/// strict reversal of the L1 ordering. Deterministic: parameters in
/// lexicographic (theta, phi, xi, eta) order, then state pairs.
NcSearchResult nc_reversal_search(const NcSearchSpec &spec, double tol = kTieTolerance);

}  // namespace qorder
