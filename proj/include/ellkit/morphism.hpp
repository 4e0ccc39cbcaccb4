#pragma once

#include "ellkit/endring.hpp"
#include "ellkit/qmat.hpp"

namespace ellkit {

/// A morphism E^g -> E^r as an r x g matrix over End(E), r <= g.
struct Morphism {
    EndRing ring;
    std::size_t r = 0, g = 0;
    std::vector<RingElem> entries;  // row-major, r*g

    Morphism() = default;
    // r <= g is required by the reduction machinery, not by the container;
    // trailing blocks like phi' are r x s with s possibly below r.
    Morphism(EndRing R, std::size_t r_, std::size_t g_)
        : ring(std::move(R)), r(r_), g(g_), entries(r_ * g_) {
        if (r_ == 0 || g_ == 0) throw std::invalid_argument("Morphism: empty shape");
    }

    RingElem& at(std::size_t i, std::size_t j) { return entries[i * g + j]; }
    const RingElem& at(std::size_t i, std::size_t j) const { return entries[i * g + j]; }

    bool is_zero() const;
    bool operator==(const Morphism& o) const;

    /// Rank over the fraction field of End(E).
    std::size_t rank() const;

    /// Q-matrix of the regular representation (2r x 2g for orders, r x g for Z).
    QMat real_rep() const;
};

/// H(phi) = max |entry|; exact squared value plus a float convenience.
struct Height {
    Int h_sq;
    double approx;
};
Height height(const Morphism& phi);

struct GaussDiagnosis {
    bool ok = false;
    std::string reason;                   // first violated condition when !ok
    RingElem pivot;                       // a, when a pivot structure exists
    std::vector<std::size_t> pivot_cols;  // column serving each row
};

/// Checks the three Gauss-reduced conditions: pivot submatrix a*I_r (a > 0
/// over Z), H(phi) = |a|, and unit content.
GaussDiagnosis is_gauss_reduced(const Morphism& phi);

struct GaussReducedForm {
    Morphism phi;                    // (a I_r | L) in sigma-applied column order
    RingElem a;                      // pivot
    std::vector<std::size_t> sigma;  // sigma[k] = original column at position k
    std::vector<RingElem> delta;     // r x r transform, row-major
    RingElem N;                      // removed content
    bool content_partial = false;

    /// phi with columns restored to the original order.
    Morphism phi_in_original_order() const;
};

/// Gauss reduction through the maximal r x r minor; delta is the adjugate of
/// the selected submatrix and delta * psi = N * (phi o sigma) exactly.
GaussReducedForm gauss_reduce(const Morphism& psi);

/// Wraps an already Gauss-reduced morphism in the identity certificate,
/// permuting its pivot columns to the front.
GaussReducedForm as_reduced_form(const Morphism& phi);

/// Exact check of the certificate identity above.
bool check_reduction_certificate(const Morphism& psi, const GaussReducedForm& form);

enum class MorphismClass { Special, QuasiSpecial, GaussReduced, None };

struct Classification {
    MorphismClass label = MorphismClass::None;
    RingElem N;
    std::optional<Morphism> phi;        // Gauss-reduced first-block factor
    std::optional<Morphism> phi_prime;  // trailing s columns
};

/// Classifies an r x (g+s) morphism; both formulations of the "special"
/// definition are evaluated and must agree.
Classification classify(const Morphism& phi_tilde, std::size_t g, std::size_t s);

/// Splits entries x + y*tau into (phi1 | phi2) over Z, doubling the columns.
Morphism cm_flatten(const Morphism& phi);

/// All Gauss-reduced integer morphisms with H <= M, each exactly once, in a
/// deterministic (entry-lexicographic) order.
std::vector<Morphism> enumerate_gauss_reduced(std::size_t g, std::size_t r, const Int& M);

// Exact linear algebra over the ring.
RingElem ring_det(const EndRing& R, const std::vector<RingElem>& m, std::size_t n);
std::vector<RingElem> ring_adjugate(const EndRing& R, const std::vector<RingElem>& m, std::size_t n);

std::string to_string(const Morphism& m);

}  // namespace ellkit
