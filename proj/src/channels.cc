#include "qorder/channels.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qorder {

namespace {

constexpr double kCompletenessTolerance = 1e-12;
constexpr double kIncoherenceTolerance = 1e-12;

void require_probability(double p) {
    if (!(p >= 0 && p <= 1)) {
        std::ostringstream ss;
        ss << "channel parameter p=" << p << " outside [0,1]";
        throw Error(ErrorKind::DomainError, ss.str());
    }
}

double transverse(const BlochState &s) {
    const auto &n = s.n();
    return std::sqrt(std::max(0.0, 1 - n.z * n.z));
}

/// Tsallis coherence of a qubit with eigenvalues (lambda, 1-lambda) whose larger
/// eigenvector has |<0|v>|^2 = weight.
double tsallis_from_spectrum(double lambda, double weight, double alpha) {
    double up = std::pow(std::max(lambda, 0.0), alpha);
    double down = std::pow(std::max(1 - lambda, 0.0), alpha);
    double r = std::pow(up * weight + down * (1 - weight), 1 / alpha) +
               std::pow(up * (1 - weight) + down * weight, 1 / alpha);
    return std::max((std::pow(r, alpha) - 1) / (alpha - 1), 0.0);
}

double tsallis_from_ratio(double lambda, double num, double other, double alpha) {
    double total = num + other;
    if (total <= 0) {
        // Output is diagonal: r = lambda + (1 - lambda) = 1.
        return 0;
    }
    return tsallis_from_spectrum(lambda, num / total, alpha);
}

double entropy_gap(double diag, double lambda) {
    return std::max(binary_entropy(diag) - binary_entropy(lambda), 0.0);
}

void require_closed_form_measure(const Measure &m) {
    if (m.kind == MeasureKind::Geometric) {
        throw Error(ErrorKind::UnsupportedMeasure, "no closed form for the geometric measure");
    }
    if (m.kind == MeasureKind::Tsallis && !valid_power_exponent(m.alpha)) {
        throw Error(ErrorKind::DomainError, "Tsallis alpha must lie in (0,1) or (1,2]");
    }
}

}  // namespace

const char *kind_name(MarkovianKind kind) {
    switch (kind) {
        case MarkovianKind::AmplitudeDamping:
            return "amplitude-damping";
        case MarkovianKind::PhaseDamping:
            return "phase-damping";
        case MarkovianKind::Depolarizing:
            return "depolarizing";
        case MarkovianKind::BitFlip:
            return "bit-flip";
    }
    return "unknown";
}

double completeness_error(const std::vector<Mat2> &operators) {
    Mat2 sum;
    for (const auto &k : operators) {
        sum = sum + k.adjoint() * k;
    }
    return sum.max_abs_diff(Mat2::identity());
}

KrausChannel KrausChannel::make(std::vector<Mat2> operators, std::string label) {
    if (operators.empty()) {
        throw Error(ErrorKind::InvalidChannel, "channel has no Kraus operators");
    }
    double err = qorder::completeness_error(operators);
    if (!(err <= kCompletenessTolerance)) {
        std::ostringstream ss;
        ss << "Kraus operators of '" << label << "' violate completeness by " << err;
        throw Error(ErrorKind::InvalidChannel, ss.str());
    }
    return KrausChannel(std::move(operators), std::move(label));
}

double KrausChannel::completeness_error() const {
    return qorder::completeness_error(ops_);
}

KrausChannel make_markovian(MarkovianKind kind, double p) {
    require_probability(p);
    std::ostringstream label;
    label << kind_name(kind) << "(p=" << p << ")";
    switch (kind) {
        case MarkovianKind::AmplitudeDamping:
            return KrausChannel::make(
                {Mat2::from(1, 0, 0, std::sqrt(1 - p)), Mat2::from(0, std::sqrt(p), 0, 0)}, label.str());
        case MarkovianKind::PhaseDamping:
            return KrausChannel::make(
                {std::sqrt(p) * Mat2::identity(), Mat2::from(std::sqrt(1 - p), 0, 0, 0),
                 Mat2::from(0, 0, 0, std::sqrt(1 - p))},
                label.str());
        case MarkovianKind::Depolarizing: {
            double w = std::sqrt(p / 4);
            return KrausChannel::make(
                {std::sqrt(1 - 3 * p / 4) * Mat2::identity(), w * pauli::x(), w * pauli::y(), w * pauli::z()},
                label.str());
        }
        case MarkovianKind::BitFlip:
            return KrausChannel::make({std::sqrt(p) * Mat2::identity(), std::sqrt(1 - p) * pauli::x()}, label.str());
    }
    throw Error(ErrorKind::DomainError, "unknown channel kind");
}

KrausChannel make_nc(const NcParams &q) {
    double ct = std::cos(q.theta), st = std::sin(q.theta);
    double cp = std::cos(q.phi), sp = std::sin(q.phi);
    Complex exi = std::polar(1.0, q.xi);
    std::ostringstream label;
    if (q.family == NcFamily::Phi1) {
        Complex eeta = std::polar(1.0, q.eta);
        label << "phi1(theta=" << q.theta << ",phi=" << q.phi << ",xi=" << q.xi << ",eta=" << q.eta << ")";
        Mat2 e1 = Mat2::from(eeta * (ct * cp), 0, -st * sp, exi * cp);
        Mat2 e2 = Mat2::from(st * cp, exi * sp, std::conj(eeta) * (ct * sp), 0);
        return KrausChannel::make({e1, e2}, label.str());
    }
    label << "phi2(theta=" << q.theta << ",phi=" << q.phi << ",xi=" << q.xi << ")";
    Mat2 e1 = Mat2::from(ct, 0, 0, exi * cp);
    Mat2 e2 = Mat2::from(0, sp, exi * st, 0);
    return KrausChannel::make({e1, e2}, label.str());
}

DensityMatrix apply_channel(const KrausChannel &channel, const DensityMatrix &rho) {
    Mat2 out;
    for (const auto &k : channel.operators()) {
        out = out + k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix::make(out);
}

bool is_incoherent(const KrausChannel &channel) {
    for (const auto &k : channel.operators()) {
        for (int col = 0; col < 2; col++) {
            // K|i><i|K^dag = (K e_i)(K e_i)^dag; its off-diagonal is K0i conj(K1i).
            if (std::abs(k(0, col) * std::conj(k(1, col))) > kIncoherenceTolerance) {
                return false;
            }
        }
    }
    return true;
}

ChannelAux markovian_aux(MarkovianKind kind, double p, const BlochState &s) {
    require_probability(p);
    double t = s.t();
    const Vec3 &n = s.n();
    switch (kind) {
        case MarkovianKind::AmplitudeDamping: {
            double kz = p + (1 - p) * n.z * t;
            AmplitudeDampingAux aux;
            aux.t_prime = std::sqrt((1 - p) * t * t * (1 - n.z * n.z) + kz * kz);
            if (aux.t_prime > 0) {
                aux.nx_prime = std::sqrt(1 - p) * n.x * t / aux.t_prime;
                aux.ny_prime = std::sqrt(1 - p) * n.y * t / aux.t_prime;
                aux.nz_prime = kz / aux.t_prime;
            } else {
                aux.nz_prime = 1;
            }
            return aux;
        }
        case MarkovianKind::PhaseDamping: {
            PhaseDampingAux aux;
            aux.A = std::max(0.0, 1 + (p * p - 1) * (1 - n.z * n.z));
            double root = std::sqrt(aux.A);
            aux.B = (1 + t * root) / 2;
            aux.C = (root + n.z) * (root + n.z);
            aux.D = p * p * (1 - n.z * n.z);
            return aux;
        }
        case MarkovianKind::Depolarizing:
            return DepolarizingAux{(1 + t * (1 - p)) / 2, (1 + n.z) / 2};
        case MarkovianKind::BitFlip: {
            double s2 = 2 * p - 1;
            BitFlipAux aux;
            aux.G = std::max(0.0, 1 + 4 * (p * p - p) * (1 - n.x * n.x));
            double root = std::sqrt(aux.G);
            aux.H = (1 + t * root) / 2;
            aux.M = n.x * n.x + s2 * s2 * n.y * n.y;
            aux.N = (root - s2 * n.z) * (root - s2 * n.z);
            return aux;
        }
    }
    throw Error(ErrorKind::DomainError, "unknown channel kind");
}

DensityMatrix closed_form_output(MarkovianKind kind, double p, const BlochState &s) {
    require_probability(p);
    double t = s.t();
    const Vec3 &n = s.n();
    Complex tilt(n.x, -n.y);
    switch (kind) {
        case MarkovianKind::AmplitudeDamping: {
            Complex off = std::sqrt(1 - p) * t * tilt / 2.0;
            return DensityMatrix::make(Mat2::from((1 + t * n.z) / 2 + p * (1 - t * n.z) / 2, off, std::conj(off),
                                                  (1 - p) * (1 - t * n.z) / 2));
        }
        case MarkovianKind::PhaseDamping: {
            Complex off = t * p * tilt / 2.0;
            return DensityMatrix::make(Mat2::from((1 + t * n.z) / 2, off, std::conj(off), (1 - t * n.z) / 2));
        }
        case MarkovianKind::Depolarizing: {
            Complex off = (1 - p) * tilt * t / 2.0;
            return DensityMatrix::make(
                Mat2::from((1 + t * n.z * (1 - p)) / 2, off, std::conj(off), (1 - t * n.z * (1 - p)) / 2));
        }
        case MarkovianKind::BitFlip: {
            Complex off = Complex(t * n.x, -t * n.y * (2 * p - 1)) / 2.0;
            return DensityMatrix::make(
                Mat2::from((1 + t * n.z * (2 * p - 1)) / 2, off, std::conj(off), (1 - t * n.z * (2 * p - 1)) / 2));
        }
    }
    throw Error(ErrorKind::DomainError, "unknown channel kind");
}

ClosedFormCoherence closed_form_coherence(MarkovianKind kind, double p, const BlochState &s, const Measure &m) {
    require_closed_form_measure(m);
    ClosedFormCoherence out;
    out.aux = markovian_aux(kind, p, s);
    double t = s.t();
    const Vec3 &n = s.n();

    switch (kind) {
        case MarkovianKind::AmplitudeDamping: {
            const auto &aux = std::get<AmplitudeDampingAux>(out.aux);
            double lambda = (1 + aux.t_prime) / 2;
            switch (m.kind) {
                case MeasureKind::L1:
                    out.value = std::sqrt(1 - p) * t * transverse(s);
                    break;
                case MeasureKind::RelativeEntropy:
                    // t' nz' is the output z-component p + (1-p) nz t.
                    out.value = entropy_gap((1 + p + (1 - p) * n.z * t) / 2, lambda);
                    break;
                default:
                    out.value = tsallis_from_spectrum(lambda, (1 + aux.nz_prime) / 2, m.alpha);
            }
            break;
        }
        case MarkovianKind::PhaseDamping: {
            const auto &aux = std::get<PhaseDampingAux>(out.aux);
            switch (m.kind) {
                case MeasureKind::L1:
                    out.value = p * t * transverse(s);
                    break;
                case MeasureKind::RelativeEntropy:
                    out.value = entropy_gap((1 + t * n.z) / 2, aux.B);
                    break;
                default:
                    out.value = tsallis_from_ratio(aux.B, aux.C, aux.D, m.alpha);
            }
            break;
        }
        case MarkovianKind::Depolarizing: {
            const auto &aux = std::get<DepolarizingAux>(out.aux);
            switch (m.kind) {
                case MeasureKind::L1:
                    out.value = (1 - p) * t * transverse(s);
                    break;
                case MeasureKind::RelativeEntropy:
                    out.value = entropy_gap((1 + t * n.z * (1 - p)) / 2, aux.E);
                    break;
                default:
                    out.value = tsallis_from_spectrum(aux.E, aux.F, m.alpha);
            }
            break;
        }
        case MarkovianKind::BitFlip: {
            const auto &aux = std::get<BitFlipAux>(out.aux);
            double s2 = 2 * p - 1;
            switch (m.kind) {
                case MeasureKind::L1:
                    out.value = std::sqrt(t * t * n.x * n.x + s2 * s2 * t * t * n.y * n.y);
                    break;
                case MeasureKind::RelativeEntropy:
                    out.value = entropy_gap((1 + t * n.z * s2) / 2, aux.H);
                    break;
                default:
                    out.value = tsallis_from_ratio(aux.H, aux.M, aux.N, m.alpha);
            }
            break;
        }
    }
    return out;
}

double bit_flip_half_coherence(const BlochState &s, const Measure &m) {
    require_closed_form_measure(m);
    double x = s.t() * std::abs(s.n().x);
    switch (m.kind) {
        case MeasureKind::L1:
            return x;
        case MeasureKind::RelativeEntropy:
            return std::max(1 - binary_entropy((1 + x) / 2), 0.0);
        default: {
            double a = m.alpha;
            double inner = 0.5 * std::pow((1 + x) / 2, a) + 0.5 * std::pow((1 - x) / 2, a);
            double r = 2 * std::pow(inner, 1 / a);
            return std::max((std::pow(r, a) - 1) / (a - 1), 0.0);
        }
    }
}

NcAux nc_output_entries(const NcParams &q, const BlochState &s) {
    double t = s.t();
    const Vec3 &n = s.n();
    NcAux aux;
    aux.family = q.family;
    aux.a = (1 + t * n.z) / 2;
    aux.b = Complex(t * n.x, -t * n.y) / 2.0;
    aux.beta = std::arg(aux.b);

    double ct = std::cos(q.theta), st = std::sin(q.theta);
    double cp = std::cos(q.phi), sp = std::sin(q.phi);
    Complex exi = std::polar(1.0, q.xi);
    Complex bc = std::conj(aux.b);
    if (q.family == NcFamily::Phi1) {
        Complex eeta = std::polar(1.0, q.eta);
        aux.diag = aux.a * cp * cp + (bc * exi + aux.b * std::conj(exi)).real() * st * sp * cp + (1 - aux.a) * sp * sp;
        aux.off = aux.b * eeta * std::conj(exi) * ct * cp * cp + bc * exi * eeta * ct * sp * sp;
    } else {
        aux.diag = aux.a * ct * ct + (1 - aux.a) * sp * sp;
        aux.off = std::conj(exi) * (aux.b * ct * cp + bc * st * sp);
    }
    return aux;
}

double nc_l1_formula(const NcParams &q, const BlochState &s) {
    NcAux aux = nc_output_entries(q, s);
    double mag = std::abs(aux.b);
    if (q.family == NcFamily::Phi1) {
        double gamma = aux.beta - q.xi;
        double c2 = std::cos(q.phi) * std::cos(q.phi);
        double s2 = std::sin(q.phi) * std::sin(q.phi);
        return 2 * mag * std::abs(std::cos(q.theta)) * std::abs(std::polar(c2, gamma) + std::polar(s2, -gamma));
    }
    double cb = std::cos(aux.beta), sb = std::sin(aux.beta);
    double cm = std::cos(q.theta - q.phi), cpl = std::cos(q.theta + q.phi);
    return 2 * mag * std::sqrt(cb * cb * cm * cm + sb * sb * cpl * cpl);
}

}  // namespace qorder
