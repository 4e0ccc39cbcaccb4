#include "ellkit/interval.hpp"

namespace ellkit {

RatInterval interval_min(const RatInterval& a, const RatInterval& b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

RatInterval interval_max(const RatInterval& a, const RatInterval& b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

RatInterval root_enclosure(const Rat& s, unsigned long k, unsigned bits) {
    if (s < 0) throw std::domain_error("root_enclosure: negative radicand");
    if (s == 0) return RatInterval(Rat(0));
    if (k == 1) return RatInterval(s);
    // s^(1/k) ~ floor((num * den^(k-1) * 2^(k*bits))^(1/k)) / (den * 2^bits).
    // The dyadic denominator makes enclosures nested as `bits` grows.
    Int scale = pow_int(Int(2), bits);
    Int shifted = s.get_num() * pow_int(s.get_den(), k - 1) * pow_int(scale, k);
    Int r = iroot_floor(shifted, k);
    Int den = s.get_den() * scale;
    Rat lo = make_rat(r, den);
    if (pow_int(r, k) == shifted) return RatInterval(lo);  // exact k-th power
    return {lo, make_rat(r + 1, den)};
}

RatInterval pow_interval(const RatInterval& base, const Rat& exponent, unsigned bits) {
    const Int& p = exponent.get_num();
    const Int& q = exponent.get_den();
    if (!p.fits_slong_p() || !q.fits_ulong_p())
        throw std::invalid_argument("pow_interval: exponent out of range");
    long pn = p.get_si();
    unsigned long qn = q.get_ui();

    if (base.lo < 0) throw std::domain_error("pow_interval: negative base");
    if (base.lo == 0) {
        if (pn <= 0 && !(pn == 0 && qn == 1))
            throw std::domain_error("pow_interval: zero base with nonpositive exponent");
    }

    // |pn|-th power first (monotone on nonnegative bases), then q-th root.
    auto int_pow = [](const RatInterval& b, unsigned long e) {
        if (e == 0) return RatInterval(Rat(1));
        return RatInterval(pow_rat(b.lo, static_cast<long>(e)), pow_rat(b.hi, static_cast<long>(e)));
    };

    bool invert = pn < 0;
    unsigned long pabs = static_cast<unsigned long>(invert ? -pn : pn);
    RatInterval powered = int_pow(base, pabs);
    RatInterval rooted = qn == 1 ? powered
                                 : RatInterval(root_enclosure(powered.lo, qn, bits).lo,
                                               root_enclosure(powered.hi, qn, bits).hi);
    if (!invert) return rooted;
    if (rooted.lo <= 0) throw std::domain_error("pow_interval: inverting interval touching 0");
    return {Rat(1) / rooted.hi, Rat(1) / rooted.lo};
}

}  // namespace ellkit
