#pragma once

#include "ellkit/morphism.hpp"

namespace ellkit {

struct DirichletResult {
    Int f;
    std::vector<Int> f_vec;
};

/// Simultaneous approximation: smallest f with 1 <= f < Q^n and
/// |alpha_i f - f_i| <= 1/Q for all i, with the nearest integers f_i.
/// Exhaustive and exact; existence is guaranteed by the box principle.
DirichletResult dirichlet_approx(const std::vector<Rat>& alpha, const Int& Q);

/// Exact-rational witness that psi/f approximates phi/a within the advertised
/// bound. `lhs` is the squared max entry of |psi/f - phi/a|; `rhs` is the
/// rational bound 1/(Qf)^2 from the construction, which implies the
/// advertised squared bound Q^-1 f^(-2-1/n) whenever f <= Q^n.
struct ApproxCertificate {
    Int Q;
    std::size_t n = 0;
    Int f;
    Morphism phi;  // (a I_r | L), the approximated morphism
    RingElem a;
    Morphism psi;  // (f I_r | L')
    Rat lhs;
    Rat rhs;
    bool passthrough = false;  // a <= Q^n, psi = phi
};

/// Checks every certificate invariant from scratch: psi Gauss-reduced,
/// f <= Q^n, lhs recomputed and <= rhs, and the advertised inequality
/// lhs <= Q^-1 f^(-2-1/n) verified exactly by n-th powers.
bool verify_approx_certificate(const ApproxCertificate& c, std::string* why = nullptr);

/// Approximates a Gauss-reduced integer morphism by one of height <= Q^n,
/// n = r*g - r^2 + 1. Internal claims (f_1 = f, |f_i| <= f, psi
/// Gauss-reduced) are asserted; their failure would be an implementation bug.
ApproxCertificate approx_gauss_reduced(const GaussReducedForm& phi, const Int& Q);

}  // namespace ellkit
