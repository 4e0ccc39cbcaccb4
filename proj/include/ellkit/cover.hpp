#pragma once

#include "ellkit/constants.hpp"
#include "ellkit/dirichlet.hpp"
#include "ellkit/mwlattice.hpp"

#include <map>
#include <variant>

namespace ellkit {

/// Everything here works in the pivot-first column order of the reduced
/// morphism: phi = (a I_r | L), points listed in the same coordinate order.
/// Ball radii on power points use the per-factor maximum norm.

struct CoverCertificate {
    Morphism input_phi;
    RingElem a;
    Morphism output_psi;
    PowerPoint x, y_prime, xi_prime;
    Rat claimed_radius;  // rational lower enclosure of g eps / f^(1+1/(2n))
    std::size_t n = 0;
    Int M;
    Rat eps, K1;
    Int Q, f;
    bool passthrough = false;
    std::map<std::string, std::string> preconditions;  // "verified" / "assumed"
};

/// Rational lower enclosure of eps / M^(1+1/(2n)).
Rat shrunk_radius_lower(const Rat& eps, const Int& M, std::size_t n, unsigned bits = 48);

/// Replays the bounded-height cover construction: given x within
/// B_phi + Gamma_0^g + O_(eps/M^(1+1/(2n))) and ||x|| <= K1, produces psi of
/// height <= M = Q^n annihilating x - y' - xi' with the shrunk radius bound.
CoverCertificate simulate_cover(const MWModel& m, const GaussReducedForm& phi, const PowerPoint& x,
                                 const Rat& eps, const Rat& K1, const Int& Q);

bool verify_cover_certificate(const MWModel& m, const CoverCertificate& c, std::string* why = nullptr);

struct SpecialInjection {
    Morphism tphi;  // special morphism on g+s columns
    std::size_t g_cols = 0, s_cols = 0;
    Int n_removed;  // content divided out of (N phi | phi G)
    Int N;
    std::vector<Int> G;  // g x s integer matrix, row-major
    PowerPoint image;    // (x, gamma) on g+s factors
    PowerPoint xi;       // original perturbation, embedded as (xi, 0)
    std::map<std::string, std::string> preconditions;
};

/// The injection x -> (x, gamma): from phi(x + y + xi) = 0 with [N] y = G gamma
/// builds the special morphism (1/n)(N phi | phi G) annihilating (x,gamma)+(xi,0).
SpecialInjection special_injection(const MWModel& m, const GaussReducedForm& phi,
                                   const PowerPoint& x, const Int& N, const std::vector<Int>& G,
                                   const PowerPoint& xi, const QuasiOrthBasis& gamma);

bool verify_special_injection(const MWModel& m, const SpecialInjection& c, std::string* why = nullptr);

struct QuasiSpecialReduction {
    Morphism input;  // the reduced r x (g+s) morphism
    std::size_t g_cols = 0, s_cols = 0;
    Morphism tphi;  // (N phi | phi'), quasi-special
    RingElem N;
    Morphism phi;
    std::optional<Morphism> phi_prime;
    std::vector<RingElem> delta;  // first-block pivot transform
    RingElem n1;                  // full-matrix content removed
};

/// First-block Gauss reduction with the N1/n1 content split; quasi-special
/// output, idempotent on quasi-special input.
QuasiSpecialReduction quasi_special_reduce(const Morphism& psi_tilde, std::size_t g, std::size_t s);

/// tphi = (N phi | phi G) without content removal; annihilates (x, gamma) + (xi, 0).
Morphism embed_with_basis(const MWModel& m, const Morphism& phi, const PowerPoint& x, const Int& N,
                       const std::vector<Int>& G, const PowerPoint& xi,
                       const QuasiOrthBasis& gamma);

struct ProjectionCertificate {
    Morphism tphi;
    RingElem N;
    Morphism phi;
    PowerPoint x;      // first g coordinates of the weak-transverse point
    PowerPoint y;      // division-group part, supported on the p indices
    PowerPoint zeta;   // small part, ||zeta|| <= eps K4
    Rat eps, K4;
    std::map<std::string, std::string> preconditions;
};

/// Reverse embedding replay: from tphi((x,p)+(xi,xi')) = 0 constructs y and
/// zeta with N phi(x + y + zeta) = 0 and the K4 radius bound.
ProjectionCertificate project_to_transverse(const MWModel& m, const QuasiSpecialReduction& tphi,
                                  const std::vector<std::size_t>& p_indices, const PowerPoint& x,
                                  const PowerPoint& xi_full, const Rat& eps, const Rat& K4);

bool verify_projection(const MWModel& m, const ProjectionCertificate& c, std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Planted-witness scenario runner (deterministic from the seed).

struct ScenarioConfig {
    std::string kind = "cover";  // cover | special | quasi_special | projection
    MWModel model;
    std::size_t g = 3, r = 2;
    std::size_t trials = 10;
    unsigned long long seed = 1;
    Int pivot_max = 1000;
    std::optional<Rat> eps;       // per-kind default when absent
    std::optional<Morphism> phi;  // pin the reduced morphism instead of drawing one
};

using ScenarioCertificate =
    std::variant<CoverCertificate, SpecialInjection, QuasiSpecialReduction, ProjectionCertificate>;

std::vector<ScenarioCertificate> run_scenario(const ScenarioConfig& cfg);

/// Random Gauss-reduced (a I_r | L) with 1 <= a <= pivot_max and unit content,
/// wrapped in the identity reduction certificate.
GaussReducedForm random_reduced_form(Rng& rng, const EndRing& R, std::size_t r, std::size_t g,
                                     const Int& pivot_max);

}  // namespace ellkit
