#pragma once

#include "ellkit/interval.hpp"
#include "ellkit/mwlattice.hpp"

namespace ellkit {

/// Long Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// over Q, used exactly as given (no minimal-model reduction).
struct WeierstrassCurve {
    Rat a1, a2, a3, a4, a6;
    /// Optional override of the naive-vs-canonical height difference bound;
    /// when absent a Silverman-style bound from j and the discriminant is used.
    std::optional<Rat> height_diff_bound;

    Rat b2() const { return a1 * a1 + 4 * a2; }
    Rat b4() const { return 2 * a4 + a1 * a3; }
    Rat b6() const { return a3 * a3 + 4 * a6; }
    Rat b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    Rat c4() const { return b2() * b2() - 24 * b4(); }
    Rat discriminant() const;
    void validate() const;
};

struct RatPoint {
    bool infinity = true;
    Rat x, y;

    static RatPoint at_infinity() { return {}; }
    static RatPoint affine(Rat x, Rat y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const RatPoint& o) const {
        if (infinity != o.infinity) return false;
        return infinity || (x == o.x && y == o.y);
    }
};

bool on_curve(const WeierstrassCurve& E, const RatPoint& P);

RatPoint negate(const WeierstrassCurve& E, const RatPoint& P);
RatPoint add(const WeierstrassCurve& E, const RatPoint& P, const RatPoint& Q);
RatPoint dbl(const WeierstrassCurve& E, const RatPoint& P);
RatPoint scalar_mul(const WeierstrassCurve& E, const Int& k, const RatPoint& P);

/// Uniform bound B with |h_hat(P) - (1/2) h_x(P)| <= B on the curve; rounded
/// upward. The default derives from the heights of j and the discriminant.
Rat height_difference_bound(const WeierstrassCurve& E);

/// Canonical height enclosure of width <= precision, normalized so that the
/// generator (0,0) of y^2 + y = x^3 - x has height ~0.0511114. Doubling-limit
/// method: (1/2) h_x(2^N P) / 4^N with the difference-bound tail.
RatInterval canonical_height(const WeierstrassCurve& E, const RatPoint& P, const Rat& precision);

/// True when the height enclosure collapses near zero and a small multiple
/// of P is the identity (torsion over Q has order at most 12).
bool is_torsion(const WeierstrassCurve& E, const RatPoint& P);

struct GramResult {
    std::vector<std::vector<RatInterval>> gram;  // pairing enclosures
    QMat midpoint;                               // exported to MWModel
    Rat max_radius;                              // interval radius metadata
};

/// Height-pairing Gram matrix via polarization <P,Q> = (h(P+Q)-h(P)-h(Q))/2.
GramResult height_pairing_gram(const WeierstrassCurve& E, const std::vector<RatPoint>& points,
                               const Rat& precision);

/// Model over the midpoint Gram; all generators span Gamma_0.
MWModel model_from_gram(const GramResult& gr, const std::vector<std::string>& names);

}  // namespace ellkit
