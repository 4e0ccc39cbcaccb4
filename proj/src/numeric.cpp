#include "ellkit/numeric.hpp"

namespace ellkit {

Int int_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("int_from_string: empty");
    Int z;
    if (z.set_str(s, 10) != 0) throw std::invalid_argument("int_from_string: bad integer '" + s + "'");
    return z;
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_from_string: empty");
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(int_from_string(s));
    Int num = int_from_string(s.substr(0, slash));
    Int den = int_from_string(s.substr(slash + 1));
    return make_rat(num, den);
}

std::string to_string(const Int& z) { return z.get_str(); }

std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt_floor: negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Int iroot_floor(const Int& n, unsigned long k) {
    if (n < 0) throw std::domain_error("iroot_floor: negative");
    if (k == 0) throw std::invalid_argument("iroot_floor: k = 0");
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw std::domain_error("pow_rat: 0 to negative power");
        return Rat(1) / pow_rat(base, -e);
    }
    Rat r = make_rat(pow_int(base.get_num(), static_cast<unsigned long>(e)),
                     pow_int(base.get_den(), static_cast<unsigned long>(e)));
    return r;
}

Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Int ceil_rat(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Rat sqrt_lower(const Rat& q, unsigned bits) {
    if (q < 0) throw std::domain_error("sqrt_lower: negative");
    if (q == 0) return Rat(0);
    // sqrt(a/b) >= floor(sqrt(a*b*4^bits)) / (b*2^bits)
    Int scale = pow_int(Int(2), bits);
    Int num = q.get_num() * q.get_den() * scale * scale;
    return make_rat(isqrt_floor(num), q.get_den() * scale);
}

Rat sqrt_upper(const Rat& q, unsigned bits) {
    if (q < 0) throw std::domain_error("sqrt_upper: negative");
    if (q == 0) return Rat(0);
    Int scale = pow_int(Int(2), bits);
    Int num = q.get_num() * q.get_den() * scale * scale;
    Int r = isqrt_floor(num);
    if (r * r != num) r += 1;
    return make_rat(r, q.get_den() * scale);
}

double to_double(const Rat& q) { return q.get_d(); }

}  // namespace ellkit
