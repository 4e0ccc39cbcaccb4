#include "ellkit/dirichlet.hpp"

namespace ellkit {

namespace {

Int nearest_int(const Rat& q) {
    // floor(q + 1/2); ties resolve upward, deterministically
    return floor_rat(q + Rat(1, 2));
}

}  // namespace

DirichletResult dirichlet_approx(const std::vector<Rat>& alpha, const Int& Q) {
    if (Q < 2) throw std::invalid_argument("dirichlet_approx: Q >= 2 required");
    if (alpha.empty()) throw std::invalid_argument("dirichlet_approx: empty input");
    if (!Q.fits_ulong_p()) throw std::invalid_argument("dirichlet_approx: Q too large");
    Int bound = pow_int(Q, static_cast<unsigned long>(alpha.size()));
    Rat tol = make_rat(Int(1), Q);

    for (Int f = 1; f < bound; ++f) {
        std::vector<Int> fv(alpha.size());
        bool ok = true;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            Rat target = alpha[i] * Rat(f);
            fv[i] = nearest_int(target);
            Rat err = target - Rat(fv[i]);
            if (err < 0) err = -err;
            if (err > tol) {
                ok = false;
                break;
            }
        }
        if (ok) return {f, std::move(fv)};
    }
    // Unreachable for correct inputs; the box principle guarantees a hit.
    throw std::logic_error("dirichlet_approx: no approximation below Q^n");
}

ApproxCertificate approx_gauss_reduced(const GaussReducedForm& form, const Int& Q) {
    const Morphism& phi = form.phi;
    if (phi.ring.is_order())
        throw std::invalid_argument("approx_gauss_reduced: integer morphisms only (flatten C.M. first)");
    if (form.a.x < 1) throw std::invalid_argument("approx_gauss_reduced: pivot must be >= 1");
    if (Q < 2) throw std::invalid_argument("approx_gauss_reduced: Q >= 2 required");

    const std::size_t r = phi.r, g = phi.g;
    const std::size_t n = r * g - r * r + 1;
    const Int& a = form.a.x;
    Int qn = pow_int(Q, static_cast<unsigned long>(n));

    ApproxCertificate cert;
    cert.Q = Q;
    cert.n = n;
    cert.phi = phi;
    cert.a = form.a;

    if (a <= qn) {
        cert.f = a;
        cert.psi = phi;
        cert.lhs = 0;
        cert.rhs = Rat(1) / Rat(Q * a * Q * a);
        cert.passthrough = true;
        return cert;
    }

    // alpha = (1, L entries / a), row by row
    std::vector<Rat> alpha;
    alpha.reserve(n);
    alpha.push_back(Rat(1));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = r; j < g; ++j) alpha.push_back(make_rat(phi.at(i, j).x, a));
    if (alpha.size() != n) throw std::logic_error("approx_gauss_reduced: alpha size");

    DirichletResult dr = dirichlet_approx(alpha, Q);
    Int f = dr.f;
    std::vector<Int> fv = dr.f_vec;

    Int common = f;
    for (const Int& v : fv) common = gcd(common, v);
    if (common < 0) common = -common;
    if (common > 1) {
        f /= common;
        for (Int& v : fv) v /= common;
    }

    if (fv[0] != f) throw std::logic_error("approx_gauss_reduced: f_1 != f");
    for (const Int& v : fv) {
        Int av = v < 0 ? Int(-v) : v;
        if (av > f) throw std::logic_error("approx_gauss_reduced: |f_i| > f");
    }

    Morphism psi(phi.ring, r, g);
    for (std::size_t i = 0; i < r; ++i) psi.at(i, i) = RingElem{f};
    std::size_t k = 1;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = r; j < g; ++j) psi.at(i, j) = RingElem{fv[k++]};
    if (!is_gauss_reduced(psi).ok) throw std::logic_error("approx_gauss_reduced: psi not Gauss-reduced");

    Rat lhs(0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            Rat diff = make_rat(psi.at(i, j).x, f) - make_rat(phi.at(i, j).x, a);
            Rat d2 = diff * diff;
            if (d2 > lhs) lhs = d2;
        }

    cert.f = f;
    cert.psi = psi;
    cert.lhs = lhs;
    cert.rhs = Rat(1) / Rat(Q * f * Q * f);
    return cert;
}

bool verify_approx_certificate(const ApproxCertificate& c, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (c.Q < 2) return fail("Q < 2");
    if (c.f < 1) return fail("f < 1");
    if (c.n == 0) return fail("n = 0");
    std::size_t n_expected = c.phi.r * c.phi.g - c.phi.r * c.phi.r + 1;
    if (c.n != n_expected) return fail("n mismatch");
    if (c.f > pow_int(c.Q, static_cast<unsigned long>(c.n))) return fail("f > Q^n");
    if (!is_gauss_reduced(c.psi).ok) return fail("psi not Gauss-reduced");
    if (c.psi.r != c.phi.r || c.psi.g != c.phi.g) return fail("shape mismatch");
    if (c.a.x < 1 || c.a.y != 0) return fail("bad pivot");
    if (c.psi.at(0, 0).x != c.f) return fail("psi pivot != f");

    Rat lhs(0);
    for (std::size_t i = 0; i < c.phi.r; ++i)
        for (std::size_t j = 0; j < c.phi.g; ++j) {
            Rat diff = make_rat(c.psi.at(i, j).x, c.f) - make_rat(c.phi.at(i, j).x, c.a.x);
            Rat d2 = diff * diff;
            if (d2 > lhs) lhs = d2;
        }
    if (lhs != c.lhs) return fail("lhs mismatch");
    if (c.rhs != Rat(1) / Rat(c.Q * c.f * c.Q * c.f)) return fail("rhs mismatch");
    if (!(c.lhs <= c.rhs)) return fail("lhs > rhs");

    // advertised squared bound: lhs <= Q^-1 f^(-2-1/n), exact via n-th powers
    Rat lhs_pow = pow_rat(c.lhs, static_cast<long>(c.n));
    Rat bound = Rat(1) / (Rat(pow_int(c.Q, static_cast<unsigned long>(c.n))) *
                          Rat(pow_int(c.f, 2 * static_cast<unsigned long>(c.n) + 1)));
    if (!(lhs_pow <= bound)) return fail("advertised bound fails");
    return true;
}

}  // namespace ellkit
