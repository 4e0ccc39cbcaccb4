#pragma once

#include "ellkit/interval.hpp"
#include "ellkit/morphism.hpp"
#include "ellkit/mwlattice.hpp"

#include <map>

namespace ellkit {

/// c(dim, E, eta) lookup: declared constants keyed by (dim, eta), with an
/// optional default. These are conjectural inputs, never derived here.
struct BogomolovTable {
    std::map<std::pair<long, Rat>, Rat> entries;
    std::optional<Rat> fallback;

    Rat lookup(long dim, const Rat& eta) const;
};

/// Declared invariants of a scenario: curve/ambient data plus the constants
/// the height machinery cannot produce (they enter as configuration, each
/// with a provenance note).
struct CurveParams {
    long g = 2, s = 0;
    Int deg_c = 1;
    Rat K0, K1, K2, K3;
    Rat vojta_c1;
    BogomolovTable bogomolov_c;
    Rat c_double_prime;
    Rat min_p_norm, max_p_norm;  // directed-rounded norms of the p family
    Rat c_p, eps_p;              // sqrt(c2) rounded down, and eps0, for p
    std::map<std::string, std::string> provenance;

    void validate() const;
};

struct AnnotatedValue {
    RatInterval value;
    std::string formula;
};

struct EffectiveBounds {
    long n = 0;
    AnnotatedValue eta0, m, eps1_C_eta, eps2_C_eta, eps_bogomolov, eps4;
    AnnotatedValue M, M_prime, delta1, delta, K4;
    AnnotatedValue eps2_vojta, eps1_remark, eps2_prime_remark, effective_eps, cardinality_cap;
};

/// c * deg^(-1/(2 cod) - eta), enclosed.
RatInterval bogomolov_eps(const Int& deg, long cod, const Rat& eta, const Rat& c, unsigned bits = 48);

struct EssentialMinBounds {
    Int a0;
    RatInterval eps1_bound;  // eps1(C,eta) / a^(1+2 eta)
    RatInterval eps2_bound;  // eps2(C,eta) * a0^(1/(g-1) - 8(g+s)(g-1) eta)
    RatInterval eps1_C_eta, eps2_C_eta;
};
EssentialMinBounds essential_min_lower_bounds(const CurveParams& p, const Rat& eta, const Int& a, long g);

struct ShrinkingRadiusParams {
    long n;
    RatInterval delta1;
    Int M_prime;
    RatInterval delta;
};
/// n = 2(g+s)-3, delta1 = min(eps4, eps2)/(g+s)^2,
/// M' = max(2, ceil(K2/delta1)^2)^n, delta = delta1 M'^(-1-1/(2n)).
ShrinkingRadiusParams shrinking_radius_params(const CurveParams& p, const RatInterval& eps4, const RatInterval& eps2);

/// M = max(2, ceil(K/eps)^2)^n.
Int height_cutoff(const Rat& K, const Rat& eps, long n);

struct FinitenessThresholds {
    Rat eta0;
    RatInterval m;
    RatInterval eps4;
    RatInterval eps1_C_eta0, eps2_C_eta0, eps_C;
};
/// eta0 = 1/(16 (g+s) (g-1)^2); m and eps4 from the declared constants, with
/// eps(C) evaluated at eta0. eps1_input is the working eps_1 radius.
FinitenessThresholds finiteness_thresholds(const CurveParams& p, const Rat& eta_choice, const Rat& eps1_input);

/// K4 = (g+s) max(1, g (K3+eps) / (c_p min||p_i||)).
Rat projection_K4(const CurveParams& p, const Rat& eps);

struct VojtaEpsSuite {
    Rat eps1_remark;        // 1/(2^g c1)
    Rat eps2_vojta;         // min(eps_p, eps0'), eps0' = c_p min||p|| / (96 (s+1) c1)
    Rat eps2_prime_remark;  // min(1, c_p^2) min||p||^2 / (2^8 g (s+1)^2 max||p|| c1)
};
VojtaEpsSuite vojta_eps_suite(const CurveParams& p);

struct DegreeBounds {
    Int deg_phi_c;  // 6 g a^2 deg C
    Int deg_d;      // 12 g^2 a0^(2(g-2)) a^(2(g-1)) deg C
};
DegreeBounds degree_bounds(long g, const Int& a, const Int& a0, const Int& deg_c);

struct HelpingCurveMatrices {
    Int a0;
    QMat Phi, A, A0, L;  // g x g rational matrices
    bool identity_verified = false;  // Phi == [a0 a] A0^-1 L A^-1, checked exactly
};
/// Isogeny matrices attached to a rank-2 Gauss-reduced phi = (a I_2 | L).
HelpingCurveMatrices helping_curve_matrices(const GaussReducedForm& phi, std::size_t g, long n);

struct CardinalityBound {
    Rat theta_c;  // c'' (deg C)^g
    Rat cap;      // (3g)^(2g+1) M^(2g+3) Theta(C)
};
CardinalityBound cardinality_bound(const CurveParams& p, const Int& M);

struct EffectiveRadiusParams {
    RatInterval delta1;
    Int M;
    RatInterval eps;
};
/// Effective radius with s = 0 surrogates (n = 2g-3, eta0 at s = 0); eps_c
/// overrides the internally computed eps(C) when supplied.
EffectiveRadiusParams effective_radius_params(const CurveParams& p, std::optional<RatInterval> eps_c_override = {});

/// The full pipeline at eta = eta0.
EffectiveBounds compute_bounds(const CurveParams& p);

/// Fills min/max p norms, c_p and eps_p from a lattice model (directed
/// rounding: mins down, maxes up, c_p down).
void fill_ret_constants(CurveParams& p, const MWModel& model, const std::vector<std::size_t>& p_indices);

}  // namespace ellkit
