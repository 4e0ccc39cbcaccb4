#include "ellkit/interval.hpp"

#include <doctest.h>

using namespace ellkit;

TEST_CASE("rational string round trips") {
    CHECK(to_string(rat_from_string("3/4")) == "3/4");
    CHECK(to_string(rat_from_string("-6/8")) == "-3/4");
    CHECK(to_string(rat_from_string("7")) == "7");
    CHECK(rat_from_string("10/2") == Rat(5));
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
}

TEST_CASE("integer roots") {
    CHECK(isqrt_floor(Int(10)) == 3);
    CHECK(isqrt_floor(Int(9)) == 3);
    CHECK(iroot_floor(Int(1000000), 6) == 10);
    CHECK(iroot_floor(Int(999999), 6) == 9);
    CHECK(floor_sqrt_rat(rat(10, 9)) == 1);
}

TEST_CASE("sqrt enclosures bracket the root") {
    Rat q = rat(2);
    Rat lo = sqrt_lower(q), hi = sqrt_upper(q);
    CHECK(lo * lo <= q);
    CHECK(hi * hi >= q);
    CHECK(hi - lo < rat(1, 1000000));
    CHECK(sqrt_lower(rat(9, 4)) == rat(3, 2));
    CHECK(sqrt_upper(rat(9, 4)) == rat(3, 2));
}

TEST_CASE("floor and ceil of rationals") {
    CHECK(floor_rat(rat(-7, 2)) == -4);
    CHECK(ceil_rat(rat(-7, 2)) == -3);
    CHECK(ceil_rat(rat(10, 5)) == 2);
}

TEST_CASE("interval arithmetic stays exact on field ops") {
    RatInterval a(rat(1, 3), rat(1, 2));
    RatInterval b(rat(-2), rat(3));
    RatInterval p = a * b;
    CHECK(p.lo == rat(-1));
    CHECK(p.hi == rat(3, 2));
    CHECK((a + b).lo == rat(1, 3) - 2);
    CHECK_THROWS_AS(a / b, std::domain_error);
}

TEST_CASE("root enclosures: exact on perfect powers, nested otherwise") {
    CHECK(root_enclosure(rat(16), 4).is_point());
    CHECK(root_enclosure(rat(16), 4).lo == 2);
    RatInterval coarse = root_enclosure(rat(2), 3, 20);
    RatInterval fine = root_enclosure(rat(2), 3, 60);
    CHECK(coarse.contains(fine));
    CHECK(fine.width() < coarse.width());
    CHECK(coarse.lo * coarse.lo * coarse.lo <= 2);
    CHECK(coarse.hi * coarse.hi * coarse.hi >= 2);
}

TEST_CASE("rational-exponent powers") {
    CHECK(pow_interval(rat(16), rat(-1, 4)).lo == rat(1, 2));
    CHECK(pow_interval(rat(16), rat(-1, 4)).is_point());
    CHECK(pow_interval(rat(10), rat(0)).lo == 1);
    RatInterval v = pow_interval(rat(5), rat(-3, 5), 48);
    // 5^(-3/5) ~ 0.38073
    CHECK(v.lo > rat(38, 100));
    CHECK(v.hi < rat(39, 100));
    CHECK(v.width() / v.lo < pow_rat(rat(1, 2), 40));
}

TEST_CASE("rng determinism") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform(-5, 5) == b.uniform(-5, 5));
}
