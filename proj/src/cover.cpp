#include "ellkit/cover.hpp"

namespace ellkit {

namespace {

PowerPoint embed_tail_zeros(const MWModel& m, const PowerPoint& head, std::size_t total) {
    PowerPoint out = PowerPoint::zero(m, total);
    for (std::size_t i = 0; i < head.factors.size(); ++i) out.factors[i] = head.factors[i];
    return out;
}

// largest dyadic-grid rational t with t^2 * nsq <= cap^2
Rat scale_into_ball(const Rat& cap, const Rat& nsq) {
    if (nsq == 0) return Rat(0);
    return sqrt_lower(cap * cap / nsq, 40);
}

}  // namespace

Rat shrunk_radius_lower(const Rat& eps, const Int& M, std::size_t n, unsigned bits) {
    RatInterval root = root_enclosure(Rat(M), 2 * static_cast<unsigned long>(n), bits);
    return eps / (Rat(M) * root.hi);
}

CoverCertificate simulate_cover(const MWModel& m, const GaussReducedForm& form, const PowerPoint& x,
                                 const Rat& eps, const Rat& K1, const Int& Q) {
    const Morphism& phi = form.phi;
    if (phi.ring.is_order()) throw std::invalid_argument("simulate_cover: integer ring required");
    if (phi.r < 2) throw std::invalid_argument("simulate_cover: rank >= 2 required");
    if (eps <= 0 || K1 <= 0) throw std::invalid_argument("simulate_cover: eps, K1 > 0");
    const std::size_t r = phi.r, g = phi.g;
    const std::size_t n = r * g - r * r + 1;
    Int M = pow_int(Q, static_cast<unsigned long>(n));

    CoverCertificate cert;
    cert.input_phi = phi;
    cert.a = form.a;
    cert.n = n;
    cert.M = M;
    cert.eps = eps;
    cert.K1 = K1;
    cert.Q = Q;

    if (norm_sq_max(m, x) <= K1 * K1)
        cert.preconditions["norm_x_le_K1"] = "verified";
    else
        throw std::invalid_argument("simulate_cover: ||x|| > K1");
    if (Q >= 2 && Rat(Q) >= (K1 / eps) * (K1 / eps))
        cert.preconditions["Q_ge_K1_over_eps_sq"] = "verified";
    else
        throw std::invalid_argument("simulate_cover: Q below max(2, ceil(K1/eps)^2)");
    cert.preconditions["eps_le_eps1_surrogate"] = "assumed";

    Rat inner_radius = shrunk_radius_lower(eps, M, n);
    MinNormResult dec = min_norm_preimage(m, phi, apply_morphism(m, phi, x), true);
    if (dec.norm_sq > inner_radius * inner_radius)
        throw std::invalid_argument("simulate_cover: x outside B_phi + Gamma_0^g + O_radius");
    cert.preconditions["membership"] = "verified";
    PowerPoint xi = dec.xi;
    PowerPoint y = *dec.y;

    if (form.a.x <= M) {
        cert.passthrough = true;
        cert.output_psi = phi;
        cert.f = form.a.x;
        cert.x = x;
        cert.y_prime = y;
        cert.xi_prime = xi;
    } else {
        ApproxCertificate ap = approx_gauss_reduced(form, Q);
        const Morphism& psi = ap.psi;
        const Int& f = ap.f;
        const Int& a = form.a.x;

        // [a] y'' = phi(y);  y' = (y'', 0)
        PowerPoint phi_y = apply_morphism(m, phi, y);
        PowerPoint y_head = scale(phi_y, Rat(1) / Rat(a));
        for (const auto& fac : y_head.factors)
            if (!supported_on_gamma0(m, fac))
                throw std::logic_error("simulate_cover: y'' escaped the Gamma_0 span");
        PowerPoint y_prime = embed_tail_zeros(m, y_head, g);

        // [f] xi'' = psi(x - y');  xi' = (xi'', 0)
        PowerPoint psi_rem = apply_morphism(m, psi, sub(x, y_prime));
        PowerPoint xi_head = scale(psi_rem, Rat(1) / Rat(f));
        PowerPoint xi_prime = embed_tail_zeros(m, xi_head, g);

        cert.output_psi = psi;
        cert.f = f;
        cert.x = x;
        cert.y_prime = y_prime;
        cert.xi_prime = xi_prime;
    }

    PowerPoint resid = apply_morphism(m, cert.output_psi, sub(sub(cert.x, cert.y_prime), cert.xi_prime));
    if (norm_sq_sum(m, resid) != 0) throw std::logic_error("simulate_cover: annihilation failed");

    RatInterval froot = root_enclosure(Rat(cert.f), 2 * static_cast<unsigned long>(n));
    cert.claimed_radius = Rat(static_cast<long>(g)) * eps / (Rat(cert.f) * froot.hi);
    if (norm_sq_max(m, cert.xi_prime) > cert.claimed_radius * cert.claimed_radius)
        throw std::logic_error("simulate_cover: radius bound violated with verified preconditions");
    return cert;
}

bool verify_cover_certificate(const MWModel& m, const CoverCertificate& c, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const std::size_t r = c.input_phi.r, g = c.input_phi.g;
    if (c.n != r * g - r * r + 1) return fail("n mismatch");
    if (c.M != pow_int(c.Q, static_cast<unsigned long>(c.n))) return fail("M != Q^n");
    if (!is_gauss_reduced(c.input_phi).ok) return fail("phi not Gauss-reduced");
    if (c.input_phi.at(0, 0) != c.a) return fail("phi pivot != a");
    if (c.passthrough && (!(c.output_psi == c.input_phi) || c.f != c.a.x))
        return fail("pass-through certificate does not repeat phi");
    if (!is_gauss_reduced(c.output_psi).ok) return fail("psi not Gauss-reduced");
    Height h = height(c.output_psi);
    if (h.h_sq > c.M * c.M) return fail("H(psi) > M");
    if (c.output_psi.at(0, 0).x != c.f) return fail("psi pivot != f");

    PowerPoint resid = apply_morphism(m, c.output_psi, sub(sub(c.x, c.y_prime), c.xi_prime));
    if (norm_sq_sum(m, resid) != 0) return fail("psi(x - y' - xi') != 0");
    for (const auto& fac : c.y_prime.factors)
        if (!supported_on_gamma0(m, fac)) return fail("y' not in the Gamma_0 span");

    if (norm_sq_max(m, c.xi_prime) > c.claimed_radius * c.claimed_radius)
        return fail("||xi'|| exceeds the claimed radius");

    // claimed_radius <= g eps / f^(1+1/(2n)), exactly via n-th powers of squares
    Rat lhs = pow_rat(c.claimed_radius * c.claimed_radius, static_cast<long>(c.n)) *
              Rat(pow_int(c.f, 2 * static_cast<unsigned long>(c.n) + 1));
    Rat ge = Rat(static_cast<long>(g)) * c.eps;
    Rat rhs = pow_rat(ge * ge, static_cast<long>(c.n));
    if (!(lhs <= rhs)) return fail("claimed radius exceeds g eps / f^(1+1/(2n))");
    return true;
}

SpecialInjection special_injection(const MWModel& m, const GaussReducedForm& form,
                                   const PowerPoint& x, const Int& N, const std::vector<Int>& G,
                                   const PowerPoint& xi, const QuasiOrthBasis& gamma) {
    const Morphism& phi = form.phi;
    if (phi.ring.is_order()) throw std::invalid_argument("special_injection: integer ring required");
    if (N < 1) throw std::invalid_argument("special_injection: N >= 1 required");
    const std::size_t r = phi.r, g = phi.g;
    const std::size_t s = gamma.coeffs.rows();
    if (G.size() != g * s) throw std::invalid_argument("special_injection: G must be g x s");

    std::vector<LatticePoint> gam(s, LatticePoint::zero(m));
    for (std::size_t l = 0; l < s; ++l)
        for (std::size_t c = 0; c < m.s_amb; ++c) {
            Rat coeff = gamma.coeffs.at(l, c);
            if (coeff == 0) continue;
            gam[l].coords[m.ring.is_order() ? 2 * c : c] += coeff;
        }

    // y = (1/N) G gamma
    PowerPoint y = PowerPoint::zero(m, g);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t l = 0; l < s; ++l) {
            if (G[j * s + l] == 0) continue;
            y.factors[j] = add(y.factors[j], scale(gam[l], make_rat(G[j * s + l], N)));
        }

    PowerPoint resid = apply_morphism(m, phi, add(add(x, y), xi));
    if (norm_sq_sum(m, resid) != 0)
        throw std::invalid_argument("special_injection: phi(x + y + xi) != 0");

    Morphism traw(phi.ring, r, g + s);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < g; ++j) traw.at(i, j) = RingElem{N * phi.at(i, j).x};
        for (std::size_t l = 0; l < s; ++l) {
            Int acc = 0;
            for (std::size_t j = 0; j < g; ++j) acc += phi.at(i, j).x * G[j * s + l];
            traw.at(i, g + l) = RingElem{acc};
        }
    }
    Content cont = content(traw.ring, traw.entries);
    SpecialInjection out;
    out.g_cols = g;
    out.s_cols = s;
    out.n_removed = cont.value.x;
    out.N = N;
    out.G = G;
    out.tphi = Morphism(phi.ring, r, g + s);
    for (std::size_t i = 0; i < r * (g + s); ++i) {
        auto q = divide_exact(traw.ring, traw.entries[i], cont.value);
        if (!q) throw std::logic_error("special_injection: content division failed");
        out.tphi.entries[i] = *q;
    }

    Classification cls = classify(out.tphi, g, s);
    if (cls.label != MorphismClass::Special)
        throw std::logic_error("special_injection: output not special (preconditions breached?)");

    out.image = PowerPoint::zero(m, g + s);
    for (std::size_t j = 0; j < g; ++j) out.image.factors[j] = x.factors[j];
    for (std::size_t l = 0; l < s; ++l) out.image.factors[g + l] = gam[l];
    out.xi = embed_tail_zeros(m, xi, g + s);

    PowerPoint tres = apply_morphism(m, out.tphi, add(out.image, out.xi));
    if (norm_sq_sum(m, tres) != 0) throw std::logic_error("special_injection: annihilation failed");
    return out;
}

bool verify_special_injection(const MWModel& m, const SpecialInjection& c, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (c.N < 1) return fail("N < 1");
    if (c.G.empty()) return fail("missing G");
    std::size_t gs = c.tphi.g;
    if (c.image.factors.size() != gs || c.xi.factors.size() != gs) return fail("shape mismatch");
    std::size_t g = c.g_cols, s = c.s_cols;
    if (g + s != gs || g * s != c.G.size()) return fail("G size inconsistent with g + s");
    Classification cls = classify(c.tphi, g, s);
    if (cls.label != MorphismClass::Special) return fail("tphi not special");
    // N * tail block = first block * G, scale-free restatement of
    // n tphi = (N phi | phi G)
    const EndRing& R = c.tphi.ring;
    for (std::size_t i = 0; i < c.tphi.r; ++i)
        for (std::size_t l = 0; l < s; ++l) {
            Int acc = 0;
            for (std::size_t j = 0; j < g; ++j) acc += c.tphi.at(i, j).x * c.G[j * s + l];
            if (mul(R, RingElem{c.N}, c.tphi.at(i, g + l)) != RingElem{acc})
                return fail("tail block disagrees with (first block) G / N");
        }
    PowerPoint tres = apply_morphism(m, c.tphi, add(c.image, c.xi));
    if (norm_sq_sum(m, tres) != 0) return fail("tphi((x,gamma)+(xi,0)) != 0");
    return true;
}

namespace {

// Pivot transform on the first block: identity when a height-matching pivot
// structure already exists, otherwise the adjugate of the maximal minor.
std::vector<RingElem> first_block_delta(const Morphism& psi) {
    const EndRing& R = psi.ring;
    const std::size_t r = psi.r, g = psi.g;
    GaussDiagnosis d = is_gauss_reduced(psi);
    if (d.ok || d.reason == "nontrivial content") {
        std::vector<RingElem> delta(r * r);
        for (std::size_t i = 0; i < r; ++i) delta[i * r + i] = RingElem{1};
        return delta;
    }
    std::vector<std::size_t> cols(r), best_cols;
    Int best_norm = -1;
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    while (true) {
        std::vector<RingElem> sub(r * r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) sub[i * r + j] = psi.at(i, cols[j]);
        Int nsq = norm_sq(R, ring_det(R, sub, r));
        if (nsq > best_norm) {
            best_norm = nsq;
            best_cols = cols;
        }
        std::size_t k = r;
        bool advanced = false;
        while (k > 0) {
            --k;
            if (cols[k] + (r - k) < g) {
                ++cols[k];
                for (std::size_t j = k + 1; j < r; ++j) cols[j] = cols[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    if (best_norm <= 0) throw std::domain_error("quasi_special_reduce: first block rank deficient");
    std::vector<RingElem> sub(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub[i * r + j] = psi.at(i, best_cols[j]);
    return ring_adjugate(R, sub, r);
}

}  // namespace

QuasiSpecialReduction quasi_special_reduce(const Morphism& psi_tilde, std::size_t g, std::size_t s) {
    if (psi_tilde.g != g + s) throw std::invalid_argument("quasi_special_reduce: expected g+s columns");
    const EndRing& R = psi_tilde.ring;
    const std::size_t r = psi_tilde.r;

    Morphism first(R, r, g);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < g; ++j) first.at(i, j) = psi_tilde.at(i, j);
    if (first.rank() != r) throw std::domain_error("quasi_special_reduce: first block rank deficient");

    std::vector<RingElem> delta = first_block_delta(first);

    Morphism dfull(R, r, g + s);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < g + s; ++j) {
            RingElem acc{0};
            for (std::size_t k = 0; k < r; ++k)
                acc = add(R, acc, mul(R, delta[i * r + k], psi_tilde.at(k, j)));
            dfull.at(i, j) = acc;
        }

    std::vector<RingElem> block1, block2;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < g + s; ++j)
            (j < g ? block1 : block2).push_back(dfull.at(i, j));

    Content N1 = content(R, block1);
    Content n1 = content(R, dfull.entries);
    auto Nq = divide_exact(R, N1.value, n1.value);
    if (!Nq) throw std::logic_error("quasi_special_reduce: n1 does not divide N1");

    QuasiSpecialReduction out;
    out.input = psi_tilde;
    out.g_cols = g;
    out.s_cols = s;
    out.delta = delta;
    out.n1 = n1.value;
    out.N = *Nq;
    out.phi = Morphism(R, r, g);
    for (std::size_t i = 0; i < r * g; ++i) {
        auto q = divide_exact(R, block1[i], N1.value);
        if (!q) throw std::logic_error("quasi_special_reduce: N1 division failed");
        out.phi.entries[i] = *q;
    }
    if (s > 0) {
        out.phi_prime = Morphism(R, r, s);
        for (std::size_t i = 0; i < r * s; ++i) {
            auto q = divide_exact(R, block2[i], n1.value);
            if (!q) throw std::logic_error("quasi_special_reduce: n1 division failed");
            out.phi_prime->entries[i] = *q;
        }
    }

    // unit normalization of the first block; the whole transform is scaled so
    // N keeps its sign convention (positive over Z)
    if (!is_gauss_reduced(out.phi).ok) {
        for (const RingElem& w : units(R)) {
            Morphism cand = out.phi;
            for (auto& e : cand.entries) e = mul(R, w, e);
            if (is_gauss_reduced(cand).ok) {
                out.phi = cand;
                if (out.phi_prime)
                    for (auto& e : out.phi_prime->entries) e = mul(R, w, e);
                for (auto& e : out.delta) e = mul(R, w, e);
                break;
            }
        }
    }
    if (!is_gauss_reduced(out.phi).ok)
        throw std::logic_error("quasi_special_reduce: first block did not reduce");

    out.tphi = Morphism(R, r, g + s);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < g; ++j) out.tphi.at(i, j) = mul(R, out.N, out.phi.at(i, j));
        for (std::size_t j = 0; j < s; ++j) out.tphi.at(i, g + j) = out.phi_prime->at(i, j);
    }
    Classification cls = classify(out.tphi, g, s);
    if (cls.label != MorphismClass::QuasiSpecial && cls.label != MorphismClass::Special)
        throw std::logic_error("quasi_special_reduce: output not quasi-special");
    return out;
}

Morphism embed_with_basis(const MWModel& m, const Morphism& phi, const PowerPoint& x, const Int& N,
                       const std::vector<Int>& G, const PowerPoint& xi,
                       const QuasiOrthBasis& gamma) {
    const std::size_t r = phi.r, g = phi.g, s = gamma.coeffs.rows();
    if (G.size() != g * s) throw std::invalid_argument("embed_with_basis: G must be g x s");
    Morphism traw(phi.ring, r, g + s);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < g; ++j) traw.at(i, j) = RingElem{N * phi.at(i, j).x};
        for (std::size_t l = 0; l < s; ++l) {
            Int acc = 0;
            for (std::size_t j = 0; j < g; ++j) acc += phi.at(i, j).x * G[j * s + l];
            traw.at(i, g + l) = RingElem{acc};
        }
    }
    PowerPoint image = PowerPoint::zero(m, g + s);
    for (std::size_t j = 0; j < g; ++j) image.factors[j] = x.factors[j];
    for (std::size_t l = 0; l < s; ++l)
        for (std::size_t c = 0; c < m.s_amb; ++c) {
            Rat coeff = gamma.coeffs.at(l, c);
            if (coeff == 0) continue;
            image.factors[g + l].coords[m.ring.is_order() ? 2 * c : c] += coeff;
        }
    PowerPoint xi_emb = embed_tail_zeros(m, xi, g + s);
    PowerPoint res = apply_morphism(m, traw, add(image, xi_emb));
    if (norm_sq_sum(m, res) != 0) throw std::invalid_argument("embed_with_basis: annihilation failed");
    return traw;
}

ProjectionCertificate project_to_transverse(const MWModel& m, const QuasiSpecialReduction& red,
                                  const std::vector<std::size_t>& p_indices, const PowerPoint& x,
                                  const PowerPoint& xi_full, const Rat& eps, const Rat& K4) {
    const Morphism& phi = red.phi;
    const std::size_t r = phi.r, g = phi.g;
    const std::size_t s = red.phi_prime ? red.phi_prime->g : 0;
    if (p_indices.size() != s) throw std::invalid_argument("project_to_transverse: p family size mismatch");
    if (xi_full.factors.size() != g + s)
        throw std::invalid_argument("project_to_transverse: xi must have g+s factors");

    ProjectionCertificate cert;
    cert.tphi = red.tphi;
    cert.N = red.N;
    cert.phi = phi;
    cert.eps = eps;
    cert.K4 = K4;

    if (norm_sq_max(m, xi_full) <= eps * eps)
        cert.preconditions["norm_xi_le_eps"] = "verified";
    else
        throw std::invalid_argument("project_to_transverse: ||(xi, xi')|| > eps");
    cert.preconditions["eps_le_min_eps_p_eps3"] = "assumed";

    PowerPoint xp = PowerPoint::zero(m, g + s);
    for (std::size_t j = 0; j < g; ++j) xp.factors[j] = x.factors[j];
    for (std::size_t l = 0; l < s; ++l)
        xp.factors[g + l] = LatticePoint::generator(m, p_indices[l]);
    PowerPoint res = apply_morphism(m, red.tphi, add(xp, xi_full));
    if (norm_sq_sum(m, res) != 0)
        throw std::invalid_argument("project_to_transverse: tphi((x,p)+(xi,xi')) != 0");

    const Int Na = red.N.x * phi.at(0, 0).x;
    PowerPoint y_head = PowerPoint::zero(m, r);
    if (s > 0) {
        PowerPoint p_pt = PowerPoint::zero(m, s);
        for (std::size_t l = 0; l < s; ++l)
            p_pt.factors[l] = LatticePoint::generator(m, p_indices[l]);
        y_head = scale(apply_morphism(m, *red.phi_prime, p_pt), Rat(1) / Rat(Na));
    }
    cert.y = embed_tail_zeros(m, y_head, g);
    std::vector<bool> in_p(m.s_amb, false);
    for (std::size_t i : p_indices) in_p[i] = true;
    for (const auto& fac : cert.y.factors)
        for (std::size_t c = 0; c < m.s_amb; ++c) {
            if (in_p[c]) continue;
            std::size_t slot = m.ring.is_order() ? 2 * c : c;
            bool zero = fac.coords[slot] == 0 &&
                        (!m.ring.is_order() || fac.coords[slot + 1] == 0);
            if (!zero) throw std::logic_error("project_to_transverse: y escaped the division group of p");
        }

    PowerPoint zeta_head = scale(apply_morphism(m, red.tphi, xi_full), Rat(1) / Rat(Na));
    cert.zeta = embed_tail_zeros(m, zeta_head, g);

    cert.x = x;
    PowerPoint combined = add(add(x, cert.y), cert.zeta);
    if (norm_sq_sum(m, apply_morphism(m, phi, combined)) != 0)
        throw std::logic_error("project_to_transverse: N phi(x + y + zeta) != 0");

    if (norm_sq_max(m, cert.zeta) > (eps * K4) * (eps * K4))
        throw std::logic_error("project_to_transverse: ||zeta|| exceeds eps K4 with verified preconditions");
    return cert;
}

bool verify_projection(const MWModel& m, const ProjectionCertificate& c, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    PowerPoint combined = add(add(c.x, c.y), c.zeta);
    if (norm_sq_sum(m, apply_morphism(m, c.phi, combined)) != 0) return fail("phi(x+y+zeta) != 0");
    if (norm_sq_max(m, c.zeta) > (c.eps * c.K4) * (c.eps * c.K4)) return fail("||zeta|| > eps K4");
    std::size_t g = c.phi.g;
    if (c.tphi.g <= g) return fail("shape mismatch");
    if (!is_gauss_reduced(c.phi).ok) return fail("phi not Gauss-reduced");
    const EndRing& R = c.tphi.ring;
    for (std::size_t i = 0; i < c.tphi.r; ++i)
        for (std::size_t col = 0; col < g; ++col)
            if (c.tphi.at(i, col) != mul(R, c.N, c.phi.at(i, col)))
                return fail("first block of tphi is not N phi");
    Classification cls = classify(c.tphi, g, c.tphi.g - g);
    if (cls.label != MorphismClass::QuasiSpecial && cls.label != MorphismClass::Special)
        return fail("tphi not quasi-special");
    return true;
}

GaussReducedForm random_reduced_form(Rng& rng, const EndRing& R, std::size_t r, std::size_t g,
                                     const Int& pivot_max) {
    if (R.is_order()) throw std::invalid_argument("random_reduced_form: integer ring only");
    if (!pivot_max.fits_slong_p()) throw std::invalid_argument("random_reduced_form: pivot_max too big");
    long pm = pivot_max.get_si();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        // at full rank the identity block is the whole matrix, so unit
        // content forces a = 1
        long a = r == g ? 1 : rng.uniform(1, pm);
        Morphism phi(R, r, g);
        for (std::size_t i = 0; i < r; ++i) phi.at(i, i) = RingElem{Int(a)};
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = r; j < g; ++j) phi.at(i, j) = RingElem{Int(rng.uniform(-a, a))};
        Int gc = 0;
        for (const auto& e : phi.entries) gc = gcd(gc, e.x);
        if (gc < 0) gc = -gc;
        if (gc != 1) continue;
        GaussReducedForm form;
        form.phi = phi;
        form.a = RingElem{Int(a)};
        form.sigma.resize(g);
        for (std::size_t k = 0; k < g; ++k) form.sigma[k] = k;
        form.delta.assign(r * r, RingElem{0});
        for (std::size_t i = 0; i < r; ++i) form.delta[i * r + i] = RingElem{1};
        form.N = RingElem{1};
        if (!is_gauss_reduced(form.phi).ok) continue;
        return form;
    }
    throw std::logic_error("random_reduced_form: could not draw a unit-content morphism");
}

namespace {

LatticePoint random_point(Rng& rng, const MWModel& m, long lo, long hi, long den) {
    LatticePoint p = LatticePoint::zero(m);
    for (auto& c : p.coords) c = rng.uniform_rat(lo, hi, den);
    return p;
}

PowerPoint scaled_random_ball_point(Rng& rng, const MWModel& m, std::size_t g, const Rat& cap) {
    PowerPoint xi = PowerPoint::zero(m, g);
    for (auto& f : xi.factors) f = random_point(rng, m, -9, 9, 7);
    Rat nsq = norm_sq_sum(m, xi);
    if (nsq == 0) return xi;
    Rat t = scale_into_ball(cap, nsq);
    if (rng.uniform(0, 1) == 0) t = t * Rat(rng.uniform(1, 99), 100);
    return scale(xi, t);
}

// kernel point of (a I_r | L): (-L w / a, w), with w supported on Gamma_0 so
// the point stays representable over the saturated span
PowerPoint random_kernel_point(Rng& rng, const MWModel& m, const GaussReducedForm& form,
                               bool gamma0_only) {
    const Morphism& phi = form.phi;
    std::size_t r = phi.r, g = phi.g;
    PowerPoint k = PowerPoint::zero(m, g);
    if (r == g) return k;
    for (std::size_t j = r; j < g; ++j) {
        LatticePoint w = LatticePoint::zero(m);
        if (gamma0_only) {
            for (std::size_t i : m.gamma0)
                w.coords[m.ring.is_order() ? 2 * i : i] = Rat(rng.uniform(-3, 3));
        } else {
            w = random_point(rng, m, -3, 3, 1);
        }
        k.factors[j] = w;
    }
    for (std::size_t i = 0; i < r; ++i) {
        LatticePoint acc = LatticePoint::zero(m);
        for (std::size_t j = r; j < g; ++j)
            acc = add(acc, ring_act(m, phi.at(i, j), k.factors[j]));
        k.factors[i] = scale(acc, Rat(-1) / Rat(form.a.x));
    }
    return k;
}

}  // namespace

std::vector<ScenarioCertificate> run_scenario(const ScenarioConfig& cfg) {
    cfg.model.validate();
    if (cfg.model.ring.is_order())
        throw std::invalid_argument("run_scenario: flatten C.M. models before simulating");
    if (cfg.r < 2 || cfg.r > cfg.g) throw std::invalid_argument("run_scenario: need 2 <= r <= g");
    Rng rng(cfg.seed);
    std::vector<ScenarioCertificate> out;
    const MWModel& m = cfg.model;
    EndRing R = EndRing::integers();

    std::size_t produced = 0, guard = 0;
    while (produced < cfg.trials) {
        if (++guard > 50 * cfg.trials + 100)
            throw std::logic_error("run_scenario: generator failed to produce witnesses");

        if (cfg.kind == "cover") {
            GaussReducedForm form = cfg.phi ? as_reduced_form(*cfg.phi)
                                            : random_reduced_form(rng, R, cfg.r, cfg.g, cfg.pivot_max);
            if (form.phi.r != cfg.r || form.phi.g != cfg.g)
                throw std::invalid_argument("run_scenario: pinned morphism shape mismatch");
            PowerPoint kappa = random_kernel_point(rng, m, form, false);
            PowerPoint y = PowerPoint::zero(m, cfg.g);
            for (auto& f : y.factors) {
                f = LatticePoint::zero(m);
                for (std::size_t i : m.gamma0)
                    f.coords[m.ring.is_order() ? 2 * i : i] = Rat(rng.uniform(-4, 4));
            }
            PowerPoint partial = add(kappa, y);
            Rat K1 = Rat(ceil_rat(sqrt_upper(norm_sq_max(m, partial)))) + 1;
            // eps = K1 makes Q = 2 and exercises the approximation branch on
            // large pivots; smaller eps exercises the pass-through branch
            Rat eps = produced % 2 == 0 ? K1 : K1 / Rat(static_cast<long>(3 + produced % 5));
            if (cfg.eps) eps = *cfg.eps;
            Int Qc = ceil_rat(K1 / eps);
            Int Q = std::max(Int(2), Int(Qc * Qc));
            std::size_t n = cfg.r * cfg.g - cfg.r * cfg.r + 1;
            Int M = pow_int(Q, static_cast<unsigned long>(n));
            Rat radius = shrunk_radius_lower(eps, M, n);
            Rat cap = std::min(radius, Rat(1));  // keep ||x|| <= K1 by construction
            PowerPoint xi = scaled_random_ball_point(rng, m, cfg.g, cap);
            PowerPoint x = add(partial, xi);
            out.push_back(simulate_cover(m, form, x, eps, K1, Q));
            ++produced;
        } else if (cfg.kind == "special") {
            // requires the Gamma_0 span to be the whole model so planted
            // witnesses stay representable over the quasi-orthonormal basis
            if (m.gamma0.size() != m.s_amb)
                throw std::invalid_argument("run_scenario: special trials need gamma0 = all generators");
            GaussReducedForm form = random_reduced_form(rng, R, cfg.r, cfg.g, cfg.pivot_max);
            Rat K1(10);
            QuasiOrthBasis gamma =
                quasi_orthonormal_basis(m, Rat(3 * static_cast<long>(cfg.g)) * K1);
            std::size_t s = gamma.coeffs.rows();
            Rat eps = cfg.eps ? *cfg.eps : K1 / Rat(static_cast<long>(cfg.g) + 1);

            PowerPoint x = PowerPoint::zero(m, cfg.g);
            for (auto& f : x.factors) f = random_point(rng, m, -2, 2, 3);
            Rat xcap = K1 / 2;
            Rat xn = norm_sq_max(m, x);
            if (xn > xcap * xcap) x = scale(x, scale_into_ball(xcap, xn));
            PowerPoint xi = scaled_random_ball_point(rng, m, cfg.g, eps);

            // y: head = -phi(x+xi)/a on the first r slots, plus Gamma_0 kernel noise
            PowerPoint w = scale(apply_morphism(m, form.phi, add(x, xi)), Rat(-1) / Rat(form.a.x));
            PowerPoint y = embed_tail_zeros(m, w, cfg.g);
            y = add(y, random_kernel_point(rng, m, form, true));

            // integer representation [N] y = G gamma
            std::size_t t_dim = m.gamma0.size();
            QMat gmat(t_dim, t_dim);
            for (std::size_t l = 0; l < s; ++l)
                for (std::size_t k2 = 0; k2 < t_dim; ++k2)
                    gmat.at(k2, l) = gamma.coeffs.at(l, m.gamma0[k2]);
            std::vector<std::vector<Rat>> coef(cfg.g);
            for (std::size_t j = 0; j < cfg.g; ++j) {
                std::vector<Rat> rhs(t_dim, Rat(0));
                for (std::size_t k2 = 0; k2 < t_dim; ++k2)
                    rhs[k2] = y.factors[j].coords[m.ring.is_order() ? 2 * m.gamma0[k2]
                                                                    : m.gamma0[k2]];
                coef[j] = solve_linear(gmat, rhs);
            }
            Int N = 1;
            for (std::size_t j = 0; j < cfg.g; ++j)
                for (std::size_t l = 0; l < s; ++l) N = lcm(N, coef[j][l].get_den());
            std::vector<Int> G(cfg.g * s, 0);
            for (std::size_t j = 0; j < cfg.g; ++j)
                for (std::size_t l = 0; l < s; ++l) {
                    Rat scaled = coef[j][l] * Rat(N);
                    G[j * s + l] = scaled.get_num();
                }
            out.push_back(special_injection(m, form, x, N, G, xi, gamma));
            ++produced;
        } else if (cfg.kind == "quasi_special") {
            std::size_t s = std::max<std::size_t>(1, m.gamma0.size());
            Morphism psi(R, cfg.r, cfg.g + s);
            for (auto& e : psi.entries) e = RingElem{Int(rng.uniform(-6, 6))};
            Morphism first(R, cfg.r, cfg.g);
            for (std::size_t i = 0; i < cfg.r; ++i)
                for (std::size_t j = 0; j < cfg.g; ++j) first.at(i, j) = psi.at(i, j);
            if (first.rank() != cfg.r || psi.is_zero()) continue;
            out.push_back(quasi_special_reduce(psi, cfg.g, s));
            ++produced;
        } else if (cfg.kind == "projection") {
            std::vector<std::size_t> p_idx = m.gamma0;
            std::size_t s = p_idx.size();
            if (s == 0) throw std::invalid_argument("run_scenario: projection trials need a p family");
            GaussReducedForm form = random_reduced_form(rng, R, cfg.r, cfg.g, Int(6));
            Morphism tphi_raw(R, cfg.r, cfg.g + s);
            Int N(rng.uniform(1, 3));
            for (std::size_t i = 0; i < cfg.r; ++i) {
                for (std::size_t j = 0; j < cfg.g; ++j)
                    tphi_raw.at(i, j) = RingElem{N * form.phi.at(i, j).x};
                for (std::size_t l = 0; l < s; ++l)
                    tphi_raw.at(i, cfg.g + l) = RingElem{Int(rng.uniform(-5, 5))};
            }
            QuasiSpecialReduction red;
            try {
                red = quasi_special_reduce(tphi_raw, cfg.g, s);
            } catch (const std::exception&) {
                continue;
            }
            PerturbationConstants rc = c1_constant(m, p_idx);
            Rat eps = cfg.eps ? std::min(*cfg.eps, rc.eps0) : rc.eps0;
            PowerPoint xi_full = scaled_random_ball_point(rng, m, cfg.g + s, eps);
            PowerPoint p_pt = PowerPoint::zero(m, s);
            for (std::size_t l = 0; l < s; ++l)
                p_pt.factors[l] = LatticePoint::generator(m, p_idx[l]);
            PowerPoint rhs = red.phi_prime ? apply_morphism(m, *red.phi_prime, p_pt)
                                           : PowerPoint::zero(m, cfg.r);
            PowerPoint txi = apply_morphism(m, red.tphi, xi_full);
            PowerPoint target = scale(add(rhs, txi), Rat(-1));
            MinNormResult mn = min_norm_preimage(m, red.phi, scale(target, Rat(1) / Rat(red.N.x)));
            PowerPoint x = mn.xi;

            Rat k3_nsq = norm_sq_max(m, x);
            for (std::size_t l = 0; l < s; ++l)
                k3_nsq = std::max(k3_nsq, m.gram.at(p_idx[l], p_idx[l]));
            Rat K3 = Rat(ceil_rat(sqrt_upper(k3_nsq))) + 1;
            CurveParams cp;
            cp.g = static_cast<long>(cfg.g);
            cp.s = static_cast<long>(s);
            cp.K3 = K3;
            cp.vojta_c1 = 1;
            cp.c_double_prime = 1;
            fill_ret_constants(cp, m, p_idx);
            Rat K4 = projection_K4(cp, eps);
            out.push_back(project_to_transverse(m, red, p_idx, x, xi_full, eps, K4));
            ++produced;
        } else {
            throw std::invalid_argument("run_scenario: unknown kind '" + cfg.kind + "'");
        }
    }
    return out;
}

}  // namespace ellkit
