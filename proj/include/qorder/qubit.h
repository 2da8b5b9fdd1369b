#pragma once

#include <array>
#include <complex>

#include "qorder/error.h"

namespace qorder {

using Complex = std::complex<double>;

inline constexpr double kStateTolerance = 1e-12;

struct Vec3 {
    double x = 0;
    double y = 0;
    double z = 0;

    double norm() const;
};

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<Complex, 4> m{};

    Complex &operator()(int row, int col) {
        return m[2 * row + col];
    }
    const Complex &operator()(int row, int col) const {
        return m[2 * row + col];
    }

    static Mat2 identity();
    static Mat2 from(Complex m00, Complex m01, Complex m10, Complex m11);

    Mat2 adjoint() const;
    Complex trace() const;
    Complex det() const;
    double max_abs_diff(const Mat2 &other) const;

    friend Mat2 operator+(const Mat2 &a, const Mat2 &b);
    friend Mat2 operator-(const Mat2 &a, const Mat2 &b);
    friend Mat2 operator*(const Mat2 &a, const Mat2 &b);
    friend Mat2 operator*(Complex s, const Mat2 &a);
};

namespace pauli {
Mat2 x();
Mat2 y();
Mat2 z();
}  // namespace pauli

/// Single-qubit state in Bloch form: radius t in [0,1] and unit direction n.
/// At t = 0 the direction is pinned to (0,0,1).
class BlochState {
   public:
    /// Throws Error(InvalidState) if t is outside [0,1] or |n| != 1 beyond 1e-12.
    static BlochState make(double t, Vec3 n);
    /// n = (sqrt(1-nz^2) cos(azimuth), sqrt(1-nz^2) sin(azimuth), nz).
    static BlochState from_angles(double t, double nz, double azimuth);
    /// Bloch vector k = t n, any length <= 1.
    static BlochState from_vector(Vec3 k);

    double t() const {
        return t_;
    }
    const Vec3 &n() const {
        return n_;
    }
    Vec3 k() const {
        return {t_ * n_.x, t_ * n_.y, t_ * n_.z};
    }

   private:
    BlochState(double t, Vec3 n) : t_(t), n_(n) {
    }
    double t_;
    Vec3 n_;
};

/// Hermitian, unit-trace, positive semidefinite 2x2 matrix.
class DensityMatrix {
   public:
    /// Throws Error(InvalidMatrix) when any invariant fails beyond 1e-12.
    /// Accepted input is re-hermitized so rho10 == conj(rho01) exactly.
    static DensityMatrix make(const Mat2 &entries);

    const Mat2 &matrix() const {
        return m_;
    }
    double p0() const {
        return m_(0, 0).real();
    }
    double p1() const {
        return m_(1, 1).real();
    }
    Complex coherence() const {
        return m_(0, 1);
    }

   private:
    explicit DensityMatrix(const Mat2 &m) : m_(m) {
    }
    Mat2 m_;
};

struct SpectralDecomposition {
    /// eigenvalues[0] >= eigenvalues[1].
    std::array<double, 2> eigenvalues{};
    std::array<std::array<Complex, 2>, 2> eigenvectors{};

    Mat2 reconstruct() const;
};

DensityMatrix bloch_to_matrix(const BlochState &s);
BlochState matrix_to_bloch(const DensityMatrix &rho);

/// Closed-form eigensystem of a Hermitian 2x2 matrix (no trace or sign requirements).
SpectralDecomposition eigendecompose_hermitian(const Mat2 &h);
/// Eigenvalues of a density matrix are (1 +- t)/2; values in [-1e-12, 0) are clamped to 0.
SpectralDecomposition eigendecompose(const DensityMatrix &rho);

/// rho^alpha through the spectral decomposition, with 0^alpha = 0.
/// alpha must lie in (0,1) or (1,2].
Mat2 matrix_power(const DensityMatrix &rho, double alpha);
bool valid_power_exponent(double alpha);

/// h(x) = -x log2 x - (1-x) log2 (1-x). Inputs within 1e-12 outside [0,1] are clamped.
double binary_entropy(double x);
double von_neumann_entropy(const DensityMatrix &rho);

/// Uhlmann fidelity (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2, via the qubit identity
/// F = Tr(rho sigma) + 2 sqrt(det rho det sigma).
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

}  // namespace qorder
