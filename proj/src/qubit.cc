#include "qorder/qubit.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qorder {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidState:
            return "invalid-state";
        case ErrorKind::InvalidMatrix:
            return "invalid-matrix";
        case ErrorKind::DomainError:
            return "domain-error";
        case ErrorKind::OptimizerFailure:
            return "optimizer-failure";
        case ErrorKind::InvalidChannel:
            return "invalid-channel";
        case ErrorKind::UnsupportedMeasure:
            return "unsupported-measure";
    }
    return "unknown";
}

double Vec3::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

Mat2 Mat2::identity() {
    return from(1, 0, 0, 1);
}

Mat2 Mat2::from(Complex m00, Complex m01, Complex m10, Complex m11) {
    Mat2 r;
    r.m = {m00, m01, m10, m11};
    return r;
}

Mat2 Mat2::adjoint() const {
    return from(std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3]));
}

Complex Mat2::trace() const {
    return m[0] + m[3];
}

Complex Mat2::det() const {
    return m[0] * m[3] - m[1] * m[2];
}

double Mat2::max_abs_diff(const Mat2 &other) const {
    double worst = 0;
    for (size_t i = 0; i < 4; i++) {
        worst = std::max(worst, std::abs(m[i] - other.m[i]));
    }
    return worst;
}

Mat2 operator+(const Mat2 &a, const Mat2 &b) {
    Mat2 r;
    for (size_t i = 0; i < 4; i++) {
        r.m[i] = a.m[i] + b.m[i];
    }
    return r;
}

Mat2 operator-(const Mat2 &a, const Mat2 &b) {
    Mat2 r;
    for (size_t i = 0; i < 4; i++) {
        r.m[i] = a.m[i] - b.m[i];
    }
    return r;
}

Mat2 operator*(const Mat2 &a, const Mat2 &b) {
    return Mat2::from(
        a.m[0] * b.m[0] + a.m[1] * b.m[2],
        a.m[0] * b.m[1] + a.m[1] * b.m[3],
        a.m[2] * b.m[0] + a.m[3] * b.m[2],
        a.m[2] * b.m[1] + a.m[3] * b.m[3]);
}

Mat2 operator*(Complex s, const Mat2 &a) {
    Mat2 r;
    for (size_t i = 0; i < 4; i++) {
        r.m[i] = s * a.m[i];
    }
    return r;
}

namespace pauli {
Mat2 x() {
    return Mat2::from(0, 1, 1, 0);
}
Mat2 y() {
    return Mat2::from(0, Complex(0, -1), Complex(0, 1), 0);
}
Mat2 z() {
    return Mat2::from(1, 0, 0, -1);
}
}  // namespace pauli

BlochState BlochState::make(double t, Vec3 n) {
    if (!std::isfinite(t) || t < -kStateTolerance || t > 1 + kStateTolerance) {
        std::ostringstream ss;
        ss << "Bloch radius t=" << t << " outside [0,1]";
        throw Error(ErrorKind::InvalidState, ss.str());
    }
    t = std::clamp(t, 0.0, 1.0);
    double len = n.norm();
    if (!std::isfinite(len) || std::abs(len - 1) > kStateTolerance) {
        if (t == 0) {
            return BlochState(0, {0, 0, 1});
        }
        std::ostringstream ss;
        ss << "Bloch direction has norm " << len << ", expected 1";
        throw Error(ErrorKind::InvalidState, ss.str());
    }
    if (t == 0) {
        return BlochState(0, {0, 0, 1});
    }
    return BlochState(t, {n.x / len, n.y / len, n.z / len});
}

BlochState BlochState::from_angles(double t, double nz, double azimuth) {
    if (!(nz >= -1 - kStateTolerance && nz <= 1 + kStateTolerance)) {
        throw Error(ErrorKind::InvalidState, "n_z outside [-1,1]");
    }
    nz = std::clamp(nz, -1.0, 1.0);
    double transverse = std::sqrt(1 - nz * nz);
    return make(t, {transverse * std::cos(azimuth), transverse * std::sin(azimuth), nz});
}

BlochState BlochState::from_vector(Vec3 k) {
    double t = k.norm();
    if (!std::isfinite(t) || t > 1 + kStateTolerance) {
        throw Error(ErrorKind::InvalidState, "Bloch vector longer than 1");
    }
    if (t == 0) {
        return BlochState(0, {0, 0, 1});
    }
    return BlochState(std::min(t, 1.0), {k.x / t, k.y / t, k.z / t});
}

DensityMatrix DensityMatrix::make(const Mat2 &e) {
    auto fail = [](const char *why) {
        throw Error(ErrorKind::InvalidMatrix, std::string("not a density matrix: ") + why);
    };
    for (const auto &v : e.m) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            fail("non-finite entry");
        }
    }
    if (std::abs(e(0, 0).imag()) > kStateTolerance || std::abs(e(1, 1).imag()) > kStateTolerance ||
        std::abs(e(1, 0) - std::conj(e(0, 1))) > kStateTolerance) {
        fail("not Hermitian");
    }
    double p0 = e(0, 0).real();
    double p1 = e(1, 1).real();
    if (std::abs(p0 + p1 - 1) > kStateTolerance) {
        fail("trace differs from 1");
    }
    Complex off = 0.5 * (e(0, 1) + std::conj(e(1, 0)));
    if (p0 < -kStateTolerance || p1 < -kStateTolerance || p0 * p1 - std::norm(off) < -kStateTolerance) {
        fail("not positive semidefinite");
    }
    return DensityMatrix(Mat2::from(p0, off, std::conj(off), p1));
}

Mat2 SpectralDecomposition::reconstruct() const {
    Mat2 r;
    for (size_t k = 0; k < 2; k++) {
        const auto &v = eigenvectors[k];
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                r(i, j) += eigenvalues[k] * v[i] * std::conj(v[j]);
            }
        }
    }
    return r;
}

DensityMatrix bloch_to_matrix(const BlochState &s) {
    Vec3 k = s.k();
    return DensityMatrix::make(Mat2::from(
        (1 + k.z) / 2, Complex(k.x, -k.y) / 2.0, Complex(k.x, k.y) / 2.0, (1 - k.z) / 2));
}

BlochState matrix_to_bloch(const DensityMatrix &rho) {
    Complex off = rho.coherence();
    Vec3 k{2 * off.real(), -2 * off.imag(), rho.p0() - rho.p1()};
    // PSD guarantees |k| <= 1 up to the validation slack.
    double t = k.norm();
    if (t > 1) {
        k = {k.x / t, k.y / t, k.z / t};
    }
    return BlochState::from_vector(k);
}

SpectralDecomposition eigendecompose_hermitian(const Mat2 &h) {
    double a = h(0, 0).real();
    double d = h(1, 1).real();
    Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    double center = (a + d) / 2;
    // h = center*I + (k . sigma)/2
    Vec3 k{2 * b.real(), -2 * b.imag(), a - d};
    double radius = k.norm();

    SpectralDecomposition out;
    out.eigenvalues = {center + radius / 2, center - radius / 2};
    if (radius == 0) {
        out.eigenvectors = {{{Complex(1), Complex(0)}, {Complex(0), Complex(1)}}};
        return out;
    }
    double nx = k.x / radius;
    double ny = k.y / radius;
    double nz = k.z / radius;
    // +1 eigenvector of n.sigma; pick the form whose normalizer stays away from zero.
    std::array<Complex, 2> up;
    if (nz >= 0) {
        double s = std::sqrt(2 * (1 + nz));
        up = {Complex(1 + nz) / s, Complex(nx, ny) / s};
    } else {
        double s = std::sqrt(2 * (1 - nz));
        up = {Complex(nx, -ny) / s, Complex(1 - nz) / s};
    }
    std::array<Complex, 2> down{-std::conj(up[1]), std::conj(up[0])};
    out.eigenvectors = {up, down};
    return out;
}

SpectralDecomposition eigendecompose(const DensityMatrix &rho) {
    auto out = eigendecompose_hermitian(rho.matrix());
    for (auto &lambda : out.eigenvalues) {
        if (lambda < 0) {
            lambda = 0;
        }
    }
    return out;
}

bool valid_power_exponent(double alpha) {
    return std::isfinite(alpha) && alpha > 0 && alpha <= 2 && alpha != 1;
}

Mat2 matrix_power(const DensityMatrix &rho, double alpha) {
    if (!valid_power_exponent(alpha)) {
        throw Error(ErrorKind::DomainError, "matrix power exponent must lie in (0,1) or (1,2]");
    }
    auto spectral = eigendecompose(rho);
    for (auto &lambda : spectral.eigenvalues) {
        lambda = lambda > 0 ? std::pow(lambda, alpha) : 0.0;
    }
    return spectral.reconstruct();
}

double binary_entropy(double x) {
    if (!(x >= -kStateTolerance && x <= 1 + kStateTolerance)) {
        throw Error(ErrorKind::DomainError, "binary entropy argument outside [0,1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    double h = 0;
    if (x > 0) {
        h -= x * std::log2(x);
    }
    if (x < 1) {
        h -= (1 - x) * std::log2(1 - x);
    }
    return h;
}

double von_neumann_entropy(const DensityMatrix &rho) {
    auto spectral = eigendecompose(rho);
    double s = 0;
    for (double lambda : spectral.eigenvalues) {
        if (lambda > 0) {
            s -= lambda * std::log2(lambda);
        }
    }
    return std::max(s, 0.0);
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    double overlap = (rho.matrix() * sigma.matrix()).trace().real();
    double det_rho = std::max(rho.matrix().det().real(), 0.0);
    double det_sigma = std::max(sigma.matrix().det().real(), 0.0);
    return std::clamp(overlap + 2 * std::sqrt(det_rho * det_sigma), 0.0, 1.0);
}

}  // namespace qorder
