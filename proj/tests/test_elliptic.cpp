#include "ellkit/elliptic.hpp"

#include <doctest.h>

using namespace ellkit;

namespace {

// y^2 + y = x^3 - x   (conductor 37, rank 1, generator (0,0))
WeierstrassCurve curve_37() {
    WeierstrassCurve e;
    e.a3 = 1;
    e.a4 = -1;
    return e;
}

// y^2 + y = x^3 + x^2 - 2x   (conductor 389, rank 2)
WeierstrassCurve curve_389() {
    WeierstrassCurve e;
    e.a2 = 1;
    e.a3 = 1;
    e.a4 = -2;
    return e;
}

bool contains_approx(const RatInterval& v, double target) {
    return to_double(v.lo) <= target && target <= to_double(v.hi);
}

}  // namespace

TEST_CASE("discriminant and validation") {
    CHECK(curve_37().discriminant() == 37);
    WeierstrassCurve singular;  // y^2 = x^3
    CHECK_THROWS_AS(singular.validate(), std::invalid_argument);
    CHECK_NOTHROW(curve_389().validate());
}

TEST_CASE("group law basics") {
    WeierstrassCurve e = curve_37();
    RatPoint p = RatPoint::affine(rat(0), rat(0));
    RatPoint q = RatPoint::affine(rat(1), rat(0));
    REQUIRE(on_curve(e, p));
    REQUIRE(on_curve(e, q));

    CHECK(add(e, p, RatPoint::at_infinity()) == p);
    CHECK(add(e, p, negate(e, p)) == RatPoint::at_infinity());
    CHECK(add(e, p, q) == RatPoint::affine(rat(-1), rat(-1)));
    CHECK(on_curve(e, add(e, p, q)));
    CHECK(on_curve(e, dbl(e, p)));
}

TEST_CASE("group law: commutative and associative on generated points") {
    WeierstrassCurve e = curve_389();
    RatPoint p0 = RatPoint::affine(rat(0), rat(0));
    RatPoint p1 = RatPoint::affine(rat(1), rat(0));
    REQUIRE(on_curve(e, p0));
    REQUIRE(on_curve(e, p1));
    std::vector<RatPoint> pts;
    for (long i = -2; i <= 2; ++i)
        for (long j = -1; j <= 1; ++j)
            pts.push_back(add(e, scalar_mul(e, Int(i), p0), scalar_mul(e, Int(j), p1)));
    for (std::size_t a = 0; a < pts.size(); a += 3)
        for (std::size_t b = 1; b < pts.size(); b += 4) {
            CHECK(add(e, pts[a], pts[b]) == add(e, pts[b], pts[a]));
            std::size_t c = (a + b) % pts.size();
            CHECK(add(e, add(e, pts[a], pts[b]), pts[c]) ==
                  add(e, pts[a], add(e, pts[b], pts[c])));
        }
}

TEST_CASE("scalar multiplication agrees with iterated addition") {
    WeierstrassCurve e = curve_37();
    RatPoint p = RatPoint::affine(rat(0), rat(0));
    RatPoint acc = RatPoint::at_infinity();
    for (long k = 1; k <= 9; ++k) {
        acc = add(e, acc, p);
        CHECK(scalar_mul(e, Int(k), p) == acc);
        CHECK(on_curve(e, acc));
    }
    CHECK(scalar_mul(e, Int(-3), p) == negate(e, scalar_mul(e, Int(3), p)));
}

TEST_CASE("canonical height of the rank-one generator on 37a") {
    WeierstrassCurve e = curve_37();
    RatPoint p = RatPoint::affine(rat(0), rat(0));
    Rat prec = rat(1, 1000000);
    RatInterval h = canonical_height(e, p, prec);
    CHECK(h.width() <= prec);
    // reference digits fixed by an independent doubling-limit run
    CHECK(contains_approx(h, 0.0511114082));
}

TEST_CASE("quadraticity and the parallelogram law within enclosures") {
    WeierstrassCurve e = curve_37();
    RatPoint p = RatPoint::affine(rat(0), rat(0));
    Rat prec = rat(1, 10000);
    RatInterval hp = canonical_height(e, p, prec);
    for (long k = 2; k <= 5; ++k) {
        RatInterval hk = canonical_height(e, scalar_mul(e, Int(k), p), prec);
        RatInterval scaled = hp * Rat(k * k);
        CHECK(hk.lo <= scaled.hi);
        CHECK(scaled.lo <= hk.hi);  // the intervals intersect
    }

    WeierstrassCurve e2 = curve_389();
    RatPoint a = RatPoint::affine(rat(0), rat(0));
    RatPoint b = RatPoint::affine(rat(1), rat(0));
    RatInterval lhs = canonical_height(e2, add(e2, a, b), prec) +
                      canonical_height(e2, add(e2, a, negate(e2, b)), prec);
    RatInterval rhs = (canonical_height(e2, a, prec) + canonical_height(e2, b, prec)) * Rat(2);
    CHECK(lhs.lo <= rhs.hi);
    CHECK(rhs.lo <= lhs.hi);
}

TEST_CASE("torsion points collapse to height zero") {
    // y^2 = x^3 + 1 has the 2-torsion point (-1, 0)
    WeierstrassCurve e;
    e.a6 = 1;
    e.validate();
    RatPoint t = RatPoint::affine(rat(-1), rat(0));
    REQUIRE(on_curve(e, t));
    CHECK(is_torsion(e, t));
    RatInterval h = canonical_height(e, t, rat(1, 1000));
    CHECK(h.lo == 0);
    CHECK(h.hi <= rat(1, 1000));
    CHECK_FALSE(is_torsion(curve_37(), RatPoint::affine(rat(0), rat(0))));
}

TEST_CASE("height pairing gram: degenerate shapes") {
    WeierstrassCurve e = curve_37();
    RatPoint p = RatPoint::affine(rat(0), rat(0));
    Rat prec = rat(1, 1000);

    GramResult one = height_pairing_gram(e, {p}, prec);
    CHECK(one.midpoint.rows() == 1);
    CHECK(contains_approx(one.gram[0][0], 0.0511114));

    GramResult pm = height_pairing_gram(e, {p, negate(e, p)}, prec);
    // bilinearity forces [[h, -h], [-h, h]]: midpoints are exactly opposite
    CHECK(pm.midpoint.at(0, 1) == -pm.midpoint.at(0, 0));
    CHECK(pm.midpoint.at(1, 0) == pm.midpoint.at(0, 1));
    CHECK(pm.midpoint.determinant() == 0);
}

TEST_CASE("height pairing gram: independent points give a PD midpoint") {
    WeierstrassCurve e = curve_389();
    RatPoint a = RatPoint::affine(rat(0), rat(0));
    RatPoint b = RatPoint::affine(rat(1), rat(0));
    GramResult gr = height_pairing_gram(e, {a, b}, rat(1, 100000));
    CHECK(gr.midpoint.is_positive_definite());
    // the interval determinant stays away from zero: independence is visible
    RatInterval det_int = gr.gram[0][0] * gr.gram[1][1] - gr.gram[0][1] * gr.gram[1][0];
    CHECK(det_int.lo > 0);
    MWModel m = model_from_gram(gr, {"P", "Q"});
    CHECK(m.s_amb == 2);
    CHECK(m.gamma0.size() == 2);
}

TEST_CASE("height difference bound can be overridden per curve") {
    WeierstrassCurve e = curve_37();
    Rat def = height_difference_bound(e);
    CHECK(def > 0);
    e.height_diff_bound = rat(5);
    CHECK(height_difference_bound(e) == 5);
}
