#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qorder/measures.h"
#include "qorder/qubit.h"

namespace qorder {

enum class MarkovianKind { AmplitudeDamping, PhaseDamping, Depolarizing, BitFlip };

/// "amplitude-damping", "phase-damping", "depolarizing", "bit-flip".
const char *kind_name(MarkovianKind kind);

enum class NcFamily { Phi1, Phi2 };

/// Parameters of the two rank-2 non-coherence-generating qubit families.
/// eta is ignored by Phi2.
struct NcParams {
    NcFamily family = NcFamily::Phi2;
    double theta = 0;
    double phi = 0;
    double xi = 0;
    double eta = 0;
};

/// A CPTP map given by its Kraus operators.
class KrausChannel {
   public:
    /// Throws Error(InvalidChannel) unless sum K^dag K == I within 1e-12.
    static KrausChannel make(std::vector<Mat2> operators, std::string label);

    const std::vector<Mat2> &operators() const {
        return ops_;
    }
    const std::string &label() const {
        return label_;
    }
    /// Largest entry of |sum K^dag K - I|.
    double completeness_error() const;

   private:
    KrausChannel(std::vector<Mat2> ops, std::string label) : ops_(std::move(ops)), label_(std::move(label)) {
    }
    std::vector<Mat2> ops_;
    std::string label_;
};

double completeness_error(const std::vector<Mat2> &operators);

/// Kraus sets. Amplitude damping and depolarizing are the identity at p = 0;
/// phase damping and bit flip are the identity at p = 1.
///   amplitude damping: K0 = |0><0| + sqrt(1-p)|1><1|, K1 = sqrt(p)|0><1|
///   phase damping:     K0 = sqrt(p) I, K1 = sqrt(1-p)|0><0|, K2 = sqrt(1-p)|1><1|
///   depolarizing:      sqrt(1-3p/4) I, sqrt(p/4) sigma_{x,y,z}  (rho -> p I/2 + (1-p) rho)
///   bit flip:          K0 = sqrt(p) I, K1 = sqrt(1-p) sigma_x
/// Throws Error(DomainError) for p outside [0,1].
KrausChannel make_markovian(MarkovianKind kind, double p);

KrausChannel make_nc(const NcParams &params);

/// sum_n K_n rho K_n^dag.
DensityMatrix apply_channel(const KrausChannel &channel, const DensityMatrix &rho);

/// True iff every K_n maps each basis projector |i><i| to a diagonal matrix
/// (off-diagonal magnitude <= 1e-12).
bool is_incoherent(const KrausChannel &channel);

struct AmplitudeDampingAux {
    double t_prime = 0;
    double nx_prime = 0;
    double ny_prime = 0;
    double nz_prime = 0;
};

struct PhaseDampingAux {
    double A = 0;  // squared output radius over t^2: 1 + (p^2-1)(1-nz^2)
    double B = 0;  // (1 + t sqrt(A))/2
    double C = 0;  // (sqrt(A) + nz)^2
    double D = 0;  // p^2 (1 - nz^2)
};

struct DepolarizingAux {
    double E = 0;  // (1 + t(1-p))/2
    double F = 0;  // (1 + nz)/2
};

struct BitFlipAux {
    double G = 0;  // 1 + 4(p^2-p)(1-nx^2), the squared output radius over t^2
    double H = 0;  // (1 + t sqrt(G))/2
    double M = 0;  // nx^2 + (2p-1)^2 ny^2
    double N = 0;  // (sqrt(G) - (2p-1) nz)^2
};

struct NcAux {
    NcFamily family = NcFamily::Phi2;
    double a = 0;     // input rho00 = (1 + t nz)/2
    Complex b;        // input rho01 = t(nx - i ny)/2
    double beta = 0;  // arg b
    double diag = 0;  // output rho00 (A for Phi1, C for Phi2)
    Complex off;      // output rho01 (B for Phi1, D for Phi2)
};

using ChannelAux = std::variant<AmplitudeDampingAux, PhaseDampingAux, DepolarizingAux, BitFlipAux, NcAux>;

/// Closed-form intermediates for a Markovian channel acting on s.
ChannelAux markovian_aux(MarkovianKind kind, double p, const BlochState &s);

/// Post-channel density matrix written out entrywise from the Bloch parameters.
DensityMatrix closed_form_output(MarkovianKind kind, double p, const BlochState &s);

struct ClosedFormCoherence {
    double value = 0;
    ChannelAux aux;
};

/// Post-channel coherence from the closed-form expressions, without forming the
/// output matrix. L1, relative entropy and Tsallis are supported; the geometric
/// measure throws Error(UnsupportedMeasure).
///
/// Several commonly quoted versions of these expressions carry slips that the
/// Kraus map does not reproduce; the forms used here are the Kraus-consistent ones:
///   amplitude damping L1 is sqrt(1-p) t sqrt(1-nz^2), not (1-p) t sqrt(1-nz^2);
///   phase damping / depolarizing L1 use sqrt(1-nz^2), not sqrt(1-nz);
///   phase damping A is 1 + (p^2-1)(1-nz^2), not 1 + (p^2-1)(1-nz)^2;
///   bit flip G is 1 + 4(p^2-p)(1-nx^2) without a square root, with H = (1 + t sqrt(G))/2.
ClosedFormCoherence closed_form_coherence(MarkovianKind kind, double p, const BlochState &s, const Measure &m);

/// Bit flip at p = 1/2 collapses onto t*nx: L1 = t|nx|, C_r = 1 - h((1 + t|nx|)/2),
/// r = 2 [ ((1+t nx)/2)^alpha / 2 + ((1-t nx)/2)^alpha / 2 ]^(1/alpha).
double bit_flip_half_coherence(const BlochState &s, const Measure &m);

/// Output entries of Phi1 / Phi2 written in terms of a, b and the channel angles.
NcAux nc_output_entries(const NcParams &params, const BlochState &s);

/// L1 coherence of the NC channel output from the angle formulas:
///   Phi1: 2|B|, with |B| = |b| |cos theta| |e^{i(beta-xi)} cos^2 phi + e^{-i(beta-xi)} sin^2 phi|
///   Phi2: 2|b| sqrt(cos^2 beta cos^2(theta-phi) + sin^2 beta cos^2(theta+phi))
double nc_l1_formula(const NcParams &params, const BlochState &s);

}  // namespace qorder
