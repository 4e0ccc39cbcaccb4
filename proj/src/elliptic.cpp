#include "ellkit/elliptic.hpp"

#include <mpfr.h>

namespace ellkit {

Rat WeierstrassCurve::discriminant() const {
    Rat B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

void WeierstrassCurve::validate() const {
    if (discriminant() == 0) throw std::invalid_argument("WeierstrassCurve: singular (disc = 0)");
    if (height_diff_bound && *height_diff_bound <= 0)
        throw std::invalid_argument("WeierstrassCurve: height_diff_bound must be positive");
}

bool on_curve(const WeierstrassCurve& E, const RatPoint& P) {
    if (P.infinity) return true;
    Rat lhs = P.y * P.y + E.a1 * P.x * P.y + E.a3 * P.y;
    Rat rhs = P.x * P.x * P.x + E.a2 * P.x * P.x + E.a4 * P.x + E.a6;
    return lhs == rhs;
}

RatPoint negate(const WeierstrassCurve& E, const RatPoint& P) {
    if (P.infinity) return P;
    return RatPoint::affine(P.x, -P.y - E.a1 * P.x - E.a3);
}

RatPoint add(const WeierstrassCurve& E, const RatPoint& P, const RatPoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    if (P.x == Q.x) {
        if (Q == negate(E, P)) return RatPoint::at_infinity();
        return dbl(E, P);
    }
    Rat lambda = (Q.y - P.y) / (Q.x - P.x);
    Rat nu = P.y - lambda * P.x;
    Rat x3 = lambda * lambda + E.a1 * lambda - E.a2 - P.x - Q.x;
    Rat y3 = -(lambda + E.a1) * x3 - nu - E.a3;
    return RatPoint::affine(x3, y3);
}

RatPoint dbl(const WeierstrassCurve& E, const RatPoint& P) {
    if (P.infinity) return P;
    Rat denom = 2 * P.y + E.a1 * P.x + E.a3;
    if (denom == 0) return RatPoint::at_infinity();  // 2-torsion
    Rat lambda = (3 * P.x * P.x + 2 * E.a2 * P.x + E.a4 - E.a1 * P.y) / denom;
    Rat nu = P.y - lambda * P.x;
    Rat x3 = lambda * lambda + E.a1 * lambda - E.a2 - 2 * P.x;
    Rat y3 = -(lambda + E.a1) * x3 - nu - E.a3;
    return RatPoint::affine(x3, y3);
}

RatPoint scalar_mul(const WeierstrassCurve& E, const Int& k, const RatPoint& P) {
    if (k == 0 || P.infinity) return RatPoint::at_infinity();
    Int n = k;
    RatPoint base = P;
    if (n < 0) {
        n = -n;
        base = negate(E, P);
    }
    RatPoint acc = RatPoint::at_infinity();
    for (long bit = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        acc = dbl(E, acc);
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) acc = add(E, acc, base);
    }
    return acc;
}

namespace {

// log of a positive rational, enclosed by directed MPFR rounding; MPFR values
// are dyadic rationals, so the conversion back is exact.
RatInterval log_enclosure(const Rat& q, mpfr_prec_t prec = 128) {
    if (q <= 0) throw std::domain_error("log_enclosure: nonpositive");
    mpfr_t v, r;
    mpfr_init2(v, prec);
    mpfr_init2(r, prec);
    auto one_side = [&](mpfr_rnd_t rnd) {
        mpfr_set_q(v, q.get_mpq_t(), rnd);
        mpfr_log(r, v, rnd);
        mpz_class mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), r);
        Rat out(mant);
        if (e >= 0)
            out *= Rat(pow_int(Int(2), static_cast<unsigned long>(e)));
        else
            out /= Rat(pow_int(Int(2), static_cast<unsigned long>(-e)));
        return out;
    };
    Rat lo = one_side(MPFR_RNDD);
    Rat hi = one_side(MPFR_RNDU);
    mpfr_clear(v);
    mpfr_clear(r);
    return {lo, hi};
}

// naive x-height: log max(|num x|, den x); h(infinity) = 0
RatInterval naive_x_height(const RatPoint& P) {
    if (P.infinity) return RatInterval(Rat(0));
    Int num = P.x.get_num();
    if (num < 0) num = -num;
    Int den = P.x.get_den();
    Int m = std::max(num, den);
    if (m <= 1) return RatInterval(Rat(0));
    return log_enclosure(Rat(m));
}

Rat rat_height_log_upper(const Rat& q) {
    Int num = q.get_num();
    if (num < 0) num = -num;
    Int m = std::max(num, q.get_den());
    if (m <= 1) return Rat(0);
    return log_enclosure(Rat(m)).hi;
}

}  // namespace

Rat height_difference_bound(const WeierstrassCurve& E) {
    if (E.height_diff_bound) return *E.height_diff_bound;
    // The height here is the full x-coordinate doubling limit, twice the
    // halved convention the classical difference bounds are stated for:
    // |h_hat - h_x| <= h(j)/6 + h(disc)/6 + 2.2, rounded upward.
    Rat disc = E.discriminant();
    Rat c4 = E.c4();
    Rat j = c4 * c4 * c4 / disc;
    Rat hj = rat_height_log_upper(j);
    Rat hd = rat_height_log_upper(disc);
    return hj / 6 + hd / 6 + Rat(22, 10);
}

RatInterval canonical_height(const WeierstrassCurve& E, const RatPoint& P, const Rat& precision) {
    if (precision <= 0) throw std::invalid_argument("canonical_height: precision must be positive");
    if (!on_curve(E, P)) throw std::invalid_argument("canonical_height: point not on curve");
    if (P.infinity) return RatInterval(Rat(0));

    Rat B = height_difference_bound(E);
    // |h_hat(P) - h_x(2^N P)/4^N| <= B/4^N; drive the tail just under half
    // the precision so the log-enclosure slack stays inside the budget
    unsigned N = 0;
    Rat tail = B;
    Rat half_prec = precision * Rat(7, 16);
    const unsigned cap = 64;
    while (tail > half_prec) {
        tail /= 4;
        ++N;
        if (N > cap) throw std::domain_error("canonical_height: iteration cap exceeded");
    }

    RatPoint Q = P;
    Int four_n = 1;
    for (unsigned i = 0; i < N; ++i) {
        Q = dbl(E, Q);
        four_n *= 4;
        if (Q.infinity) return RatInterval(Rat(0));  // hit torsion exactly
    }
    RatInterval hx = naive_x_height(Q);
    Rat lo = (hx.lo - B) / Rat(four_n);
    Rat hi = (hx.hi + B) / Rat(four_n);
    if (lo < 0) lo = 0;  // canonical height is nonnegative
    return {lo, hi};
}

bool is_torsion(const WeierstrassCurve& E, const RatPoint& P) {
    if (P.infinity) return true;
    // Mazur: rational torsion has order at most 12
    for (long k = 1; k <= 12; ++k)
        if (scalar_mul(E, Int(k), P).infinity) return true;
    return false;
}

GramResult height_pairing_gram(const WeierstrassCurve& E, const std::vector<RatPoint>& points,
                               const Rat& precision) {
    std::size_t n = points.size();
    GramResult out;
    out.gram.assign(n, std::vector<RatInterval>(n));
    out.midpoint = QMat(n, n);
    out.max_radius = 0;

    std::vector<RatInterval> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = canonical_height(E, points[i], precision);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            RatInterval val = i == j
                                  ? diag[i]
                                  : (canonical_height(E, add(E, points[i], points[j]), precision) -
                                     diag[i] - diag[j]) /
                                        RatInterval(Rat(2));
            out.gram[i][j] = val;
            out.gram[j][i] = val;
            out.midpoint.at(i, j) = val.mid();
            out.midpoint.at(j, i) = val.mid();
            Rat rad = val.width() / 2;
            out.max_radius = std::max(out.max_radius, rad);
        }
    return out;
}

MWModel model_from_gram(const GramResult& gr, const std::vector<std::string>& names) {
    MWModel m;
    m.ring = EndRing::integers();
    m.s_amb = gr.midpoint.rows();
    m.gram = gr.midpoint;
    m.names = names;
    for (std::size_t i = 0; i < m.s_amb; ++i) m.gamma0.push_back(i);
    m.validate();
    return m;
}

}  // namespace ellkit
