#pragma once

#include "ellkit/interval.hpp"
#include "ellkit/morphism.hpp"
#include "ellkit/qmat.hpp"

namespace ellkit {

/// Finite-rank lattice model of a Mordell-Weil group: generators with a
/// positive-definite rational Gram matrix of the height pairing, and a
/// designated saturated sub-span Gamma_0. Points are rational coefficient
/// vectors (divisible model). For an order ring the real structure doubles
/// each generator by the tau action; coordinates interleave as
/// (c_0, tau c_0, c_1, tau c_1, ...).
struct MWModel {
    EndRing ring;
    std::size_t s_amb = 0;
    QMat gram;                        // s_amb x s_amb, symmetric PD
    std::vector<std::size_t> gamma0;  // generator indices spanning Gamma_0
    std::vector<std::string> names;   // optional generator labels

    std::size_t real_dim() const { return ring.is_order() ? 2 * s_amb : s_amb; }

    /// Gram of the real structure: G itself over Z, G (x) T for orders with
    /// T = [1, -u/2; -u/2, v] the norm form of 1, tau.
    QMat real_gram() const;

    void validate() const;
};

struct LatticePoint {
    std::vector<Rat> coords;  // length = model.real_dim()

    static LatticePoint zero(const MWModel& m) { return {std::vector<Rat>(m.real_dim(), Rat(0))}; }
    static LatticePoint generator(const MWModel& m, std::size_t index);
};

Rat norm_sq(const MWModel& m, const LatticePoint& p);
LatticePoint add(const LatticePoint& a, const LatticePoint& b);
LatticePoint sub(const LatticePoint& a, const LatticePoint& b);
LatticePoint scale(const LatticePoint& a, const Rat& s);
/// Multiplication by a ring element (the tau action for orders).
LatticePoint ring_act(const MWModel& m, const RingElem& e, const LatticePoint& p);
bool supported_on_gamma0(const MWModel& m, const LatticePoint& p);

/// A point of E^g over the model: one coordinate vector per factor.
struct PowerPoint {
    std::vector<LatticePoint> factors;

    static PowerPoint zero(const MWModel& m, std::size_t g);
};

Rat norm_sq_sum(const MWModel& m, const PowerPoint& x);
Rat norm_sq_max(const MWModel& m, const PowerPoint& x);
PowerPoint add(const PowerPoint& a, const PowerPoint& b);
PowerPoint sub(const PowerPoint& a, const PowerPoint& b);
PowerPoint scale(const PowerPoint& a, const Rat& s);
PowerPoint apply_morphism(const MWModel& m, const Morphism& phi, const PowerPoint& x);

/// Certified minimal eigenvalue of D^(-1/2) G D^(-1/2): `value` is an exact
/// eigenvalue when `exact`, otherwise a certified lower bound within
/// 2^-tol_bits of the initial diagonal scale. Certification is by exact
/// sign checks on G - c D (definite / semidefinite).
struct LambdaMinBound {
    Rat value;
    bool exact = false;
};
LambdaMinBound certified_lambda_min(const QMat& G, const QMat& D, unsigned tol_bits = 40);

struct PerturbationConstants {
    Rat c1;    // certified lower bound of the normalized minimal eigenvalue
    Rat c2;    // c1 / 2
    Rat eps0;  // c1/(8s) * min||p_i||^2 / max||p_i||, rounded down
    bool c1_exact = false;
};

/// Effective constant of the angle estimate: c1 * sum |b_i|^2 ||p_i||^2 is a
/// certified lower bound of ||sum b_i p_i||^2 over ring coefficients.
PerturbationConstants c1_constant(const MWModel& m, const std::vector<std::size_t>& p_indices);

struct PerturbedBoundCheck {
    bool preconditions_ok = true;
    std::string violation;
    bool holds = false;
    Rat lhs, rhs, margin;
};

/// Exact evaluation of the perturbed lower bound
///   c2 sum |b_i|^2 ||p_i||^2  <=  || sum b_i (p_i - xi_i) - b zeta ||^2.
PerturbedBoundCheck check_perturbed_bound(const MWModel& m, const std::vector<std::size_t>& p_indices,
                   const std::vector<RingElem>& b, const RingElem& b_extra,
                   const std::vector<LatticePoint>& xi, const LatticePoint& zeta);

struct QuasiOrthBasis {
    QMat coeffs;     // rank x s_amb rational coefficients over the ambient generators
    Int n0;          // integer scaling >= 2K
    QMat new_gram;   // exact Gram of the produced basis
    Rat lambda_min;  // exact normalized minimal eigenvalue of new_gram (>= 1/9)
};

/// Maximal free set of the Gamma_0 span with ||gamma_i|| >= K and the
/// normalized Gram eigenvalue bound >= 1/9, built by exact Gram-Schmidt
/// directions with approximate unit scaling and an integer blow-up.
QuasiOrthBasis quasi_orthonormal_basis(const MWModel& m, const Rat& K);

struct MinNormResult {
    PowerPoint xi;
    Rat norm_sq;                 // sum form
    std::optional<PowerPoint> y;  // Gamma_0 part when the coset variant ran
};

/// Exact least-squares: minimize the sum-form norm of xi subject to
/// phi(xi) = target; with allow_gamma0_coset, subject to
/// phi(xi) = target - phi(y) for some y in the Gamma_0 span of E^g.
MinNormResult min_norm_preimage(const MWModel& m, const Morphism& phi, const PowerPoint& target,
                                bool allow_gamma0_coset = false);

/// x lies in B_phi + O_eps (optionally + Gamma_0^g): the minimal preimage
/// perturbation has sum-form norm at most eps.
bool membership(const MWModel& m, const Morphism& phi, const PowerPoint& x, const Rat& eps,
                bool allow_gamma0_coset = false);

}  // namespace ellkit
