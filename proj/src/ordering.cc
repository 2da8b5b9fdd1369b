#include "qorder/ordering.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.h"

namespace qorder {

namespace {

struct Evaluated {
    std::vector<BlochState> states;
    std::vector<double> before;
    std::vector<double> after;
};

std::vector<GridPoint> grid_points(const GridSpec &g) {
    std::vector<GridPoint> out;
    out.reserve(g.state_count());
    for (double t : g.t_values) {
        for (double nz : g.nz_values) {
            for (double az : g.azimuth_values) {
                out.push_back({t, nz, az});
            }
        }
    }
    return out;
}

Evaluated evaluate(const KrausChannel &channel, const Measure &m, const std::vector<GridPoint> &points) {
    std::vector<std::optional<BlochState>> states(points.size());
    Evaluated ev;
    ev.before.resize(points.size());
    ev.after.resize(points.size());
    detail::parallel_for(points.size(), [&](size_t i) {
        BlochState s = points[i].state();
        DensityMatrix rho = bloch_to_matrix(s);
        ev.before[i] = coherence(m, rho);
        ev.after[i] = coherence(m, apply_channel(channel, rho));
        states[i] = s;
    });
    ev.states.reserve(points.size());
    for (auto &s : states) {
        ev.states.push_back(*s);
    }
    return ev;
}

/// Flattened state indices of each constraint group, in enumeration order.
std::vector<std::vector<size_t>> constraint_groups(const GridSpec &g, Constraint c) {
    size_t nt = g.t_values.size(), nz = g.nz_values.size(), na = g.azimuth_values.size();
    auto flat = [&](size_t ti, size_t zi, size_t ai) { return (ti * nz + zi) * na + ai; };
    std::vector<std::vector<size_t>> groups;
    switch (c) {
        case Constraint::FixedT:
            for (size_t ti = 0; ti < nt; ti++) {
                auto &grp = groups.emplace_back();
                for (size_t zi = 0; zi < nz; zi++) {
                    for (size_t ai = 0; ai < na; ai++) {
                        grp.push_back(flat(ti, zi, ai));
                    }
                }
            }
            break;
        case Constraint::FixedNz:
            for (size_t zi = 0; zi < nz; zi++) {
                auto &grp = groups.emplace_back();
                for (size_t ti = 0; ti < nt; ti++) {
                    for (size_t ai = 0; ai < na; ai++) {
                        grp.push_back(flat(ti, zi, ai));
                    }
                }
            }
            break;
        case Constraint::None: {
            auto &grp = groups.emplace_back();
            for (size_t i = 0; i < nt * nz * na; i++) {
                grp.push_back(i);
            }
            break;
        }
    }
    return groups;
}

ReversalWitness make_witness(const Evaluated &ev, size_t i, size_t j) {
    if (ev.before[i] < ev.before[j]) {
        std::swap(i, j);
    }
    return ReversalWitness{ev.states[i], ev.states[j], {ev.before[i], ev.before[j]}, {ev.after[i], ev.after[j]}};
}

struct GroupScan {
    size_t pairs = 0;
    size_t reversals = 0;
    std::vector<ReversalWitness> witnesses;
};

GroupScan scan_group(const Evaluated &ev, const std::vector<size_t> &members, double tol, size_t max_witnesses) {
    GroupScan out;
    for (size_t a = 0; a < members.size(); a++) {
        size_t i = members[a];
        for (size_t b = a + 1; b < members.size(); b++) {
            size_t j = members[b];
            out.pairs++;
            int sb = ordering_sign(ev.before[i], ev.before[j], tol);
            int sa = ordering_sign(ev.after[i], ev.after[j], tol);
            if (sb * sa < 0) {
                out.reversals++;
                if (out.witnesses.size() < max_witnesses) {
                    out.witnesses.push_back(make_witness(ev, i, j));
                }
            }
        }
    }
    return out;
}

double log2_ratio(double num, double den) {
    return std::log2(num / den);
}

/// State at `at` with n_x moved to `nx`, keeping t, n_z and the sign of n_y.
BlochState with_nx(const GridPoint &at, double nx) {
    double ny0 = std::sqrt(std::max(0.0, 1 - at.nz * at.nz)) * std::sin(at.azimuth);
    double ny = std::sqrt(std::max(0.0, 1 - at.nz * at.nz - nx * nx));
    return BlochState::make(at.t, {nx, ny0 < 0 ? -ny : ny, at.nz});
}

double nx_of(const GridPoint &at) {
    return std::sqrt(std::max(0.0, 1 - at.nz * at.nz)) * std::cos(at.azimuth);
}

double ny_of(const GridPoint &at) {
    return std::sqrt(std::max(0.0, 1 - at.nz * at.nz)) * std::sin(at.azimuth);
}

/// d r / d t times alpha/(alpha-1) r^(alpha-1), for r = X^(1/a) + Y^(1/a) with
/// X = L^a w + (1-L)^a (1-w), Y = (1-L)^a w + L^a (1-w), dL/dt = rate.
double tsallis_t_derivative(double lambda, double w, double rate, double alpha) {
    double up = std::pow(lambda, alpha), down = std::pow(1 - lambda, alpha);
    double up1 = std::pow(lambda, alpha - 1), down1 = std::pow(1 - lambda, alpha - 1);
    double x = up * w + down * (1 - w);
    double y = down * w + up * (1 - w);
    double r = std::pow(x, 1 / alpha) + std::pow(y, 1 / alpha);
    double dr = rate * (std::pow(x, 1 / alpha - 1) * (up1 * w - down1 * (1 - w)) +
                        std::pow(y, 1 / alpha - 1) * (up1 * (1 - w) - down1 * w));
    return alpha / (alpha - 1) * std::pow(r, alpha - 1) * dr;
}

}  // namespace

std::vector<double> linspace_step(double start, double stop, double step) {
    if (!(step > 0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
        throw Error(ErrorKind::DomainError, "invalid value range");
    }
    auto count = static_cast<size_t>(std::llround((stop - start) / step)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (size_t i = 0; i < count; i++) {
        double v = start + static_cast<double>(i) * step;
        out.push_back(std::round(v * 1e12) / 1e12);
    }
    return out;
}

GridSpec GridSpec::default_grid() {
    GridSpec g;
    g.t_values = linspace_step(0.05, 0.95, 0.05);
    g.nz_values = linspace_step(-0.95, 0.95, 0.05);
    for (int k = 0; k <= 12; k++) {
        g.azimuth_values.push_back(k * std::numbers::pi / 6);
    }
    g.p_values = linspace_step(0.1, 0.9, 0.1);
    return g;
}

void GridSpec::validate() const {
    auto check = [](const std::vector<double> &v, double lo, double hi, const char *what) {
        if (v.empty()) {
            throw Error(ErrorKind::DomainError, std::string("grid list '") + what + "' is empty");
        }
        for (double x : v) {
            if (!std::isfinite(x) || x < lo || x > hi) {
                throw Error(ErrorKind::DomainError, std::string("grid list '") + what + "' has a value out of range");
            }
        }
    };
    check(t_values, 0, 1, "t");
    check(nz_values, -1, 1, "n_z");
    check(azimuth_values, -std::numeric_limits<double>::max(), std::numeric_limits<double>::max(), "azimuth");
    check(p_values, 0, 1, "p");
}

const char *constraint_name(Constraint c) {
    switch (c) {
        case Constraint::FixedT:
            return "fixed-t";
        case Constraint::FixedNz:
            return "fixed-nz";
        case Constraint::None:
            return "none";
    }
    return "unknown";
}

int ordering_sign(double value1, double value2, double tol) {
    double gap = value1 - value2;
    if (gap > tol) {
        return 1;
    }
    if (gap < -tol) {
        return -1;
    }
    return 0;
}

int ordering_sign(const Measure &m, const DensityMatrix &rho1, const DensityMatrix &rho2, double tol) {
    return ordering_sign(coherence(m, rho1), coherence(m, rho2), tol);
}

OrderingReport check_preservation(
    MarkovianKind kind,
    double p,
    const Measure &m,
    const GridSpec &grid,
    Constraint constraint,
    double tie_tolerance,
    size_t max_witnesses) {
    grid.validate();
    KrausChannel channel = make_markovian(kind, p);
    Evaluated ev = evaluate(channel, m, grid_points(grid));
    auto groups = constraint_groups(grid, constraint);

    std::vector<GroupScan> scans(groups.size());
    detail::parallel_for(groups.size(), [&](size_t g) {
        scans[g] = scan_group(ev, groups[g], tie_tolerance, max_witnesses);
    });

    OrderingReport report;
    report.channel = kind;
    report.p = p;
    report.measure = m;
    report.constraint = constraint;
    report.tie_tolerance = tie_tolerance;
    for (auto &scan : scans) {
        report.pairs_checked += scan.pairs;
        report.reversal_count += scan.reversals;
        for (auto &w : scan.witnesses) {
            if (report.reversals.size() >= max_witnesses) {
                break;
            }
            report.reversals.push_back(std::move(w));
        }
    }
    return report;
}

std::optional<ReversalWitness> find_reversal(
    MarkovianKind kind, double p, const Measure &m, const GridSpec &grid, Constraint constraint, double tol) {
    auto report = check_preservation(kind, p, m, grid, constraint, tol, 1);
    if (report.reversals.empty()) {
        return std::nullopt;
    }
    return report.reversals.front();
}

bool validate_witness(const KrausChannel &channel, const Measure &m, const ReversalWitness &w, double tol) {
    DensityMatrix rho1 = bloch_to_matrix(w.s1);
    DensityMatrix rho2 = bloch_to_matrix(w.s2);
    return ordering_sign(m, rho1, rho2, tol) > 0 &&
           ordering_sign(m, apply_channel(channel, rho1), apply_channel(channel, rho2), tol) < 0;
}

bool validate_witness(MarkovianKind kind, double p, const Measure &m, const ReversalWitness &w, double tol) {
    return validate_witness(make_markovian(kind, p), m, w, tol);
}

const char *axis_name(Axis axis) {
    switch (axis) {
        case Axis::T:
            return "t";
        case Axis::Nz:
            return "nz";
        case Axis::Nx:
            return "nx";
    }
    return "unknown";
}

Trend claimed_trend(Axis axis) {
    return axis == Axis::Nz ? Trend::NonIncreasing : Trend::NonDecreasing;
}

std::optional<double> analytic_derivative(MarkovianKind kind, double p, const Measure &m, Axis axis, const GridPoint &at) {
    double t = at.t;
    double nz = at.nz;
    bool tsallis = m.kind == MeasureKind::Tsallis;
    bool relative = m.kind == MeasureKind::RelativeEntropy;

    if (kind == MarkovianKind::PhaseDamping) {
        double a = 1 + (p * p - 1) * (1 - nz * nz);
        if (!(a > 0)) {
            return std::nullopt;
        }
        double root = std::sqrt(a);
        if (relative && axis == Axis::T) {
            return nz / 2 * log2_ratio(1 - t * nz, 1 + t * nz) + root / 2 * log2_ratio(1 + t * root, 1 - t * root);
        }
        if (relative && axis == Axis::Nz) {
            return t / 2 * log2_ratio(1 - t * nz, 1 + t * nz) -
                   (p * p - 1) * nz * t / (2 * root) * log2_ratio(1 + t * root, 1 - t * root);
        }
        if (tsallis && axis == Axis::T) {
            double c = (root + nz) * (root + nz);
            double d = p * p * (1 - nz * nz);
            if (!(c + d > 0)) {
                return std::nullopt;
            }
            return tsallis_t_derivative((1 + t * root) / 2, c / (c + d), root / 2, m.alpha);
        }
        return std::nullopt;
    }

    if (kind == MarkovianKind::Depolarizing) {
        double q = 1 - p;
        if (relative && axis == Axis::Nz) {
            return t * q / 2 * log2_ratio(1 - t * nz * q, 1 + t * nz * q);
        }
        if (relative && axis == Axis::T) {
            return q * nz / 2 * log2_ratio(1 - t * nz * q, 1 + t * nz * q) + q / 2 * log2_ratio(1 + t * q, 1 - t * q);
        }
        if (tsallis && axis == Axis::T) {
            return tsallis_t_derivative((1 + t * q) / 2, (1 + nz) / 2, q / 2, m.alpha);
        }
        return std::nullopt;
    }

    if (kind == MarkovianKind::BitFlip && p == 0.5 && axis == Axis::Nx) {
        double nx = nx_of(at);
        if (!(nx > 0)) {
            return std::nullopt;
        }
        double x = t * nx;
        switch (m.kind) {
            case MeasureKind::L1:
                return t;
            case MeasureKind::RelativeEntropy:
                return t / 2 * log2_ratio(1 + x, 1 - x);
            case MeasureKind::Tsallis: {
                double alpha = m.alpha;
                double hi = (1 + x) / 2, lo = (1 - x) / 2;
                double inner = 0.5 * std::pow(hi, alpha) + 0.5 * std::pow(lo, alpha);
                double r = 2 * std::pow(inner, 1 / alpha);
                return alpha * t / (2 * (alpha - 1)) * std::pow(r, alpha - 1) * std::pow(inner, 1 / alpha - 1) *
                       (std::pow(hi, alpha - 1) - std::pow(lo, alpha - 1));
            }
            default:
                return std::nullopt;
        }
    }
    return std::nullopt;
}

MonotonicityReport monotonicity_scan(
    MarkovianKind kind, double p, const Measure &m, Axis axis, const GridSpec &grid, double step, double slope_tolerance) {
    grid.validate();
    if (!(step > 0)) {
        throw Error(ErrorKind::DomainError, "finite-difference step must be positive");
    }
    KrausChannel channel = make_markovian(kind, p);
    auto points = grid_points(grid);
    auto value = [&](const BlochState &s) { return coherence(m, apply_channel(channel, bloch_to_matrix(s))); };

    struct PointResult {
        bool interior = false;
        bool in_claim = false;
        double slope = 0;
        std::optional<double> analytic;
    };
    std::vector<PointResult> results(points.size());

    detail::parallel_for(points.size(), [&](size_t i) {
        const GridPoint &at = points[i];
        PointResult &r = results[i];
        switch (axis) {
            case Axis::T:
                if (at.t - step < 0 || at.t + step > 1) {
                    return;
                }
                r.in_claim = true;
                r.slope = (value(BlochState::from_angles(at.t + step, at.nz, at.azimuth)) -
                           value(BlochState::from_angles(at.t - step, at.nz, at.azimuth))) /
                          (2 * step);
                break;
            case Axis::Nz:
                if (std::abs(at.nz) + step > 1) {
                    return;
                }
                r.in_claim = at.nz >= 0;
                r.slope = (value(BlochState::from_angles(at.t, at.nz + step, at.azimuth)) -
                           value(BlochState::from_angles(at.t, at.nz - step, at.azimuth))) /
                          (2 * step);
                break;
            case Axis::Nx: {
                double nx = nx_of(at);
                double ny = ny_of(at);
                double reach = std::abs(nx) + step;
                if (std::abs(ny) <= 1e-12 || reach * reach + at.nz * at.nz >= 1) {
                    return;
                }
                r.in_claim = nx >= -1e-12;
                r.slope = (value(with_nx(at, nx + step)) - value(with_nx(at, nx - step))) / (2 * step);
                if (nx - step <= 0) {
                    r.interior = true;
                    return;
                }
                break;
            }
        }
        r.interior = true;
        r.analytic = analytic_derivative(kind, p, m, axis, at);
    });

    MonotonicityReport report;
    report.channel = kind;
    report.measure = m;
    report.p = p;
    report.axis = axis;
    report.claimed = claimed_trend(axis);
    report.step = step;
    report.slope_tolerance = slope_tolerance;
    double direction = report.claimed == Trend::NonDecreasing ? 1 : -1;
    for (size_t i = 0; i < points.size(); i++) {
        const PointResult &r = results[i];
        if (!r.interior) {
            continue;
        }
        if (r.in_claim) {
            report.points_checked++;
            double signed_slope = direction * r.slope;
            report.min_signed_slope = std::min(report.min_signed_slope, signed_slope);
            if (signed_slope < -slope_tolerance) {
                report.violations.push_back(points[i]);
            }
        }
        if (r.analytic) {
            report.analytic_points++;
            double allowed = std::max(1e-6, 1e-4 * std::abs(*r.analytic));
            double ratio = std::abs(r.slope - *r.analytic) / allowed;
            report.worst_analytic_ratio = std::max(report.worst_analytic_ratio, ratio);
            if (ratio > 1) {
                report.analytic_mismatches.push_back(points[i]);
            }
        }
    }
    return report;
}

Surface figure_surface(MarkovianKind kind, double p, const Measure &m, const GridSpec &grid, double azimuth) {
    if (grid.t_values.empty() || grid.nz_values.empty()) {
        throw Error(ErrorKind::DomainError, "surface grid needs t and n_z values");
    }
    KrausChannel channel = make_markovian(kind, p);
    Surface s;
    s.channel = kind;
    s.p = p;
    s.measure = m;
    s.azimuth = azimuth;
    s.t_count = grid.t_values.size();
    s.nz_count = grid.nz_values.size();
    s.rows.resize(s.t_count * s.nz_count);
    detail::parallel_for(s.rows.size(), [&](size_t i) {
        double t = grid.t_values[i / s.nz_count];
        double nz = grid.nz_values[i % s.nz_count];
        DensityMatrix out = apply_channel(channel, bloch_to_matrix(BlochState::from_angles(t, nz, azimuth)));
        s.rows[i] = {t, nz, coherence(m, out)};
    });
    return s;
}

SurfaceTrend surface_trend(const Surface &surface) {
    SurfaceTrend trend;
    for (size_t ti = 0; ti < surface.t_count; ti++) {
        for (size_t zi = 0; zi < surface.nz_count; zi++) {
            if (ti + 1 < surface.t_count) {
                trend.max_decrease_in_t =
                    std::max(trend.max_decrease_in_t, surface.at(ti, zi).value - surface.at(ti + 1, zi).value);
            }
            if (zi + 1 < surface.nz_count) {
                trend.max_increase_in_nz =
                    std::max(trend.max_increase_in_nz, surface.at(ti, zi + 1).value - surface.at(ti, zi).value);
            }
        }
    }
    return trend;
}

NcSearchSpec NcSearchSpec::default_spec(NcFamily family) {
    NcSearchSpec spec;
    spec.family = family;
    for (int k = 0; k <= 4; k++) {
        spec.angles.push_back(k * std::numbers::pi / 8);
    }
    spec.states.t_values = {0.3, 0.6, 0.9};
    spec.states.nz_values = {0, 0.5};
    for (int k = 0; k < 12; k++) {
        spec.states.azimuth_values.push_back(k * std::numbers::pi / 6);
    }
    spec.states.p_values = {0};
    return spec;
}

NcSearchResult nc_reversal_search(const NcSearchSpec &spec, double tol) {
    if (spec.angles.empty()) {
        throw Error(ErrorKind::DomainError, "NC search needs at least one angle");
    }
    spec.states.validate();
    auto points = grid_points(spec.states);
    std::vector<BlochState> states;
    std::vector<DensityMatrix> inputs;
    std::vector<double> before;
    for (const auto &pt : points) {
        states.push_back(pt.state());
        inputs.push_back(bloch_to_matrix(states.back()));
        before.push_back(c_l1(inputs.back()));
    }

    std::vector<NcParams> candidates;
    const auto &a = spec.angles;
    std::vector<double> etas = spec.family == NcFamily::Phi1 ? a : std::vector<double>{0};
    for (double theta : a) {
        for (double phi : a) {
            for (double xi : a) {
                for (double eta : etas) {
                    candidates.push_back({spec.family, theta, phi, xi, eta});
                }
            }
        }
    }

    NcSearchResult result;
    std::vector<double> after(points.size());
    for (const auto &params : candidates) {
        KrausChannel channel = make_nc(params);
        if (!is_incoherent(channel)) {
            continue;
        }
        result.channels_tried++;
        for (size_t i = 0; i < points.size(); i++) {
            after[i] = c_l1(apply_channel(channel, inputs[i]));
        }
        for (size_t i = 0; i < points.size(); i++) {
            for (size_t j = i + 1; j < points.size(); j++) {
                result.pairs_checked++;
                int sb = ordering_sign(before[i], before[j], tol);
                int sa = ordering_sign(after[i], after[j], tol);
                if (sb * sa < 0) {
                    size_t hi = sb > 0 ? i : j;
                    size_t lo = sb > 0 ? j : i;
                    result.found = NcWitness{
                        params, ReversalWitness{states[hi], states[lo], {before[hi], before[lo]}, {after[hi], after[lo]}}};
                    return result;
                }
            }
        }
    }
    return result;
}

}  // namespace qorder
