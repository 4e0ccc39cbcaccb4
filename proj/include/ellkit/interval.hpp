#pragma once

#include "ellkit/numeric.hpp"

namespace ellkit {

/// Closed rational interval [lo, hi]. Field operations on rational endpoints
/// are exact; rounding only enters through irrational roots, where endpoints
/// are directed dyadic enclosures. An interval with lo == hi is an exact value.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    explicit RatInterval(const Rat& v) : lo(v), hi(v) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("RatInterval: lo > hi");
    }

    static RatInterval exact(const Rat& v) { return RatInterval(v); }

    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }

    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RatInterval operator-() const { return {-hi, -lo}; }

    RatInterval operator*(const RatInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rat mn = a, mx = a;
        for (const Rat& v : {b, c, d}) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        return {mn, mx};
    }

    RatInterval operator/(const RatInterval& o) const {
        if (o.lo <= 0 && o.hi >= 0) throw std::domain_error("RatInterval: division by interval containing 0");
        return *this * RatInterval(Rat(1) / o.hi, Rat(1) / o.lo);
    }

    RatInterval operator*(const Rat& q) const { return *this * RatInterval(q); }
    RatInterval operator/(const Rat& q) const { return *this / RatInterval(q); }
    RatInterval operator+(const Rat& q) const { return {lo + q, hi + q}; }

    // Three-valued comparisons: true / false / nullopt (undecided at this width).
    std::optional<bool> le(const RatInterval& o) const {
        if (hi <= o.lo) return true;
        if (lo > o.hi) return false;
        return std::nullopt;
    }
    std::optional<bool> lt(const RatInterval& o) const {
        if (hi < o.lo) return true;
        if (lo >= o.hi) return false;
        return std::nullopt;
    }
};

RatInterval interval_min(const RatInterval& a, const RatInterval& b);
RatInterval interval_max(const RatInterval& a, const RatInterval& b);

/// Enclosure of s^(1/k) for rational s > 0; dyadic endpoints, nested in `bits`.
RatInterval root_enclosure(const Rat& s, unsigned long k, unsigned bits = 48);

/// Enclosure of base^(p/q); base must be > 0 (as an interval, lo > 0) unless
/// the exponent is a nonnegative integer. Exact whenever the power is rational.
RatInterval pow_interval(const RatInterval& base, const Rat& exponent, unsigned bits = 48);

inline RatInterval pow_interval(const Rat& base, const Rat& exponent, unsigned bits = 48) {
    return pow_interval(RatInterval(base), exponent, bits);
}

}  // namespace ellkit
