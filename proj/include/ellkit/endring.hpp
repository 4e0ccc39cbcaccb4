#pragma once

#include "ellkit/numeric.hpp"

namespace ellkit {

/// End(E): either Z, or the imaginary quadratic order Z + tau*Z with
/// tau^2 + u*tau + v = 0 and u^2 - 4v < 0 (positive definite norm form).
struct EndRing {
    enum class Kind { Integers, Order };
    Kind kind = Kind::Integers;
    Int u = 0, v = 0;

    static EndRing integers() { return EndRing{}; }
    static EndRing order(Int u, Int v);

    bool is_order() const { return kind == Kind::Order; }
    Int discriminant() const { return u * u - 4 * v; }

    /// True when the discriminant is in the classical class-number-one list;
    /// content computations in other orders carry a "partial" flag.
    bool is_principal() const;

    bool operator==(const EndRing& o) const {
        if (kind != o.kind) return false;
        return kind == Kind::Integers || (u == o.u && v == o.v);
    }
};

/// x + y*tau in the ring (y = 0 always for the Integers kind).
struct RingElem {
    Int x = 0, y = 0;

    RingElem() = default;
    RingElem(Int x_, Int y_ = 0) : x(std::move(x_)), y(std::move(y_)) {}

    bool is_zero() const { return x == 0 && y == 0; }
    bool operator==(const RingElem& o) const { return x == o.x && y == o.y; }
    bool operator!=(const RingElem& o) const { return !(*this == o); }
};

RingElem add(const EndRing& R, const RingElem& a, const RingElem& b);
RingElem sub(const EndRing& R, const RingElem& a, const RingElem& b);
RingElem mul(const EndRing& R, const RingElem& a, const RingElem& b);
RingElem neg(const EndRing& R, const RingElem& a);
/// x + y*tau  ->  (x - u*y) - y*tau
RingElem conj(const EndRing& R, const RingElem& a);

/// |a|^2 = x^2 - u*x*y + v*y^2, exact and nonnegative.
Int norm_sq(const EndRing& R, const RingElem& a);
double abs_approx(const EndRing& R, const RingElem& a);

/// Exact division; nullopt when b does not divide a in the ring.
std::optional<RingElem> divide_exact(const EndRing& R, const RingElem& a, const RingElem& b);

bool divides(const EndRing& R, const RingElem& d, const RingElem& a);
bool is_unit(const EndRing& R, const RingElem& a);

/// All units: {+-1}; {+-1, +-tau} when u=0, v=1; six when disc = -3.
std::vector<RingElem> units(const EndRing& R);

struct Content {
    RingElem value;   // N, or N*tau when the tau division succeeded
    bool partial = false;  // set when the order is outside the principal list
};

/// Largest rational integer N dividing every entry componentwise; for orders,
/// additionally one division by tau when every quotient entry allows it.
Content content(const EndRing& R, const std::vector<RingElem>& entries);

std::string to_string(const RingElem& a);

}  // namespace ellkit
