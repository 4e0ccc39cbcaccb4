#include "ellkit/endring.hpp"

#include <cmath>

namespace ellkit {

EndRing EndRing::order(Int u, Int v) {
    EndRing R;
    R.kind = Kind::Order;
    R.u = std::move(u);
    R.v = std::move(v);
    if (R.discriminant() >= 0)
        throw std::invalid_argument("EndRing::order: u^2 - 4v must be negative");
    return R;
}

bool EndRing::is_principal() const {
    if (kind == Kind::Integers) return true;
    // Imaginary quadratic orders of class number one, by discriminant.
    static const long principal[] = {-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163};
    Int d = discriminant();
    for (long p : principal)
        if (d == p) return true;
    return false;
}

RingElem add(const EndRing&, const RingElem& a, const RingElem& b) { return {a.x + b.x, a.y + b.y}; }
RingElem sub(const EndRing&, const RingElem& a, const RingElem& b) { return {a.x - b.x, a.y - b.y}; }
RingElem neg(const EndRing&, const RingElem& a) { return {-a.x, -a.y}; }

RingElem mul(const EndRing& R, const RingElem& a, const RingElem& b) {
    // (x1 + y1 t)(x2 + y2 t) with t^2 = -u t - v
    Int cross = a.x * b.y + a.y * b.x;
    Int yy = a.y * b.y;
    return {a.x * b.x - R.v * yy, cross - R.u * yy};
}

RingElem conj(const EndRing& R, const RingElem& a) { return {a.x - R.u * a.y, -a.y}; }

Int norm_sq(const EndRing& R, const RingElem& a) {
    return a.x * a.x - R.u * a.x * a.y + R.v * a.y * a.y;
}

double abs_approx(const EndRing& R, const RingElem& a) {
    return std::sqrt(norm_sq(R, a).get_d());
}

std::optional<RingElem> divide_exact(const EndRing& R, const RingElem& a, const RingElem& b) {
    if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
    // a/b = a * conj(b) / |b|^2
    RingElem num = mul(R, a, conj(R, b));
    Int n = norm_sq(R, b);
    if (num.x % n != 0 || num.y % n != 0) return std::nullopt;
    return RingElem{num.x / n, num.y / n};
}

bool divides(const EndRing& R, const RingElem& d, const RingElem& a) {
    return divide_exact(R, a, d).has_value();
}

bool is_unit(const EndRing& R, const RingElem& a) { return norm_sq(R, a) == 1; }

std::vector<RingElem> units(const EndRing& R) {
    if (!R.is_order()) return {RingElem{1}, RingElem{-1}};
    std::vector<RingElem> out;
    // The norm form is positive definite, so unit coordinates are tiny.
    long bound = 2 + std::labs(R.u.get_si());
    for (long x = -bound; x <= bound; ++x)
        for (long y = -bound; y <= bound; ++y) {
            RingElem e{Int(x), Int(y)};
            if (norm_sq(R, e) == 1) out.push_back(e);
        }
    return out;
}

Content content(const EndRing& R, const std::vector<RingElem>& entries) {
    bool all_zero = true;
    for (const auto& e : entries)
        if (!e.is_zero()) all_zero = false;
    if (entries.empty() || all_zero) throw std::invalid_argument("content: zero matrix");

    Int g = 0;
    for (const auto& e : entries) {
        g = gcd(g, e.x);
        g = gcd(g, e.y);
    }
    if (g < 0) g = -g;

    Content c;
    c.value = RingElem{g, 0};
    if (!R.is_order()) return c;

    c.partial = !R.is_principal();
    RingElem tau{Int(0), Int(1)};
    bool tau_divides_all = true;
    for (const auto& e : entries) {
        RingElem q{e.x / g, e.y / g};
        if (!divides(R, tau, q)) {
            tau_divides_all = false;
            break;
        }
    }
    if (tau_divides_all) c.value = mul(R, c.value, tau);
    return c;
}

std::string to_string(const RingElem& a) {
    if (a.y == 0) return a.x.get_str();
    return a.x.get_str() + (a.y > 0 ? "+" : "") + a.y.get_str() + "t";
}

}  // namespace ellkit
