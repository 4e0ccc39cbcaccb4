#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellkit {

using Int = mpz_class;
using Rat = mpq_class;

// Parsing / formatting. Rationals travel as "p/q" strings (or "p" when
// the denominator is 1), integers as plain decimal strings.
Int int_from_string(const std::string& s);
Rat rat_from_string(const std::string& s);
std::string to_string(const Int& z);
std::string to_string(const Rat& q);

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

// floor(sqrt(n)), n >= 0
Int isqrt_floor(const Int& n);

// floor(n^(1/k)), n >= 0, k >= 1
Int iroot_floor(const Int& n, unsigned long k);

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, long e);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

// floor(sqrt(q)) over the rationals, exact on integers underneath
inline Int floor_sqrt_rat(const Rat& q) {
    if (q < 0) throw std::domain_error("floor_sqrt_rat: negative");
    // floor(sqrt(a/b)) = floor(sqrt(a*b)) / b  evaluated in integers
    return isqrt_floor(q.get_num() * q.get_den()) / q.get_den();
}

// Dyadic enclosures of sqrt(q): lower <= sqrt(q) <= upper, gap <= 2^-bits scaled.
Rat sqrt_lower(const Rat& q, unsigned bits = 48);
Rat sqrt_upper(const Rat& q, unsigned bits = 48);

double to_double(const Rat& q);

// Deterministic 64-bit generator (splitmix64), identical across platforms.
class Rng {
public:
    explicit Rng(unsigned long long seed) : state_(seed) {}

    unsigned long long next() {
        unsigned long long z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi] inclusive
    long uniform(long lo, long hi) {
        if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
        unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1ULL;
        return lo + static_cast<long>(next() % span);
    }

    Rat uniform_rat(long lo_num, long hi_num, long den) {
        return make_rat(Int(uniform(lo_num, hi_num)), Int(den));
    }

private:
    unsigned long long state_;
};

}  // namespace ellkit
