#include "ellkit/mwlattice.hpp"

namespace ellkit {

QMat MWModel::real_gram() const {
    if (!ring.is_order()) return gram;
    Rat t01 = Rat(-ring.u) / 2;
    Rat t11 = Rat(ring.v);
    QMat g2(2 * s_amb, 2 * s_amb);
    for (std::size_t i = 0; i < s_amb; ++i)
        for (std::size_t j = 0; j < s_amb; ++j) {
            const Rat& gij = gram.at(i, j);
            g2.at(2 * i, 2 * j) = gij;
            g2.at(2 * i, 2 * j + 1) = t01 * gij;
            g2.at(2 * i + 1, 2 * j) = t01 * gij;
            g2.at(2 * i + 1, 2 * j + 1) = t11 * gij;
        }
    return g2;
}

void MWModel::validate() const {
    if (gram.rows() != s_amb || gram.cols() != s_amb)
        throw std::invalid_argument("MWModel: gram shape mismatch");
    if (!gram.is_symmetric()) throw std::invalid_argument("MWModel: gram not symmetric");
    if (!gram.is_positive_definite()) throw std::invalid_argument("MWModel: gram not positive definite");
    for (std::size_t i : gamma0)
        if (i >= s_amb) throw std::invalid_argument("MWModel: gamma0 index out of range");
}

LatticePoint LatticePoint::generator(const MWModel& m, std::size_t index) {
    if (index >= m.s_amb) throw std::invalid_argument("LatticePoint::generator: index");
    LatticePoint p = zero(m);
    p.coords[m.ring.is_order() ? 2 * index : index] = 1;
    return p;
}

Rat norm_sq(const MWModel& m, const LatticePoint& p) {
    if (p.coords.size() != m.real_dim()) throw std::invalid_argument("norm_sq: dimension mismatch");
    QMat G = m.real_gram();
    std::vector<Rat> gv = G.apply(p.coords);
    Rat acc(0);
    for (std::size_t i = 0; i < gv.size(); ++i) acc += p.coords[i] * gv[i];
    return acc;
}

LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
    if (a.coords.size() != b.coords.size()) throw std::invalid_argument("add: dimension mismatch");
    LatticePoint r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return r;
}

LatticePoint sub(const LatticePoint& a, const LatticePoint& b) {
    if (a.coords.size() != b.coords.size()) throw std::invalid_argument("sub: dimension mismatch");
    LatticePoint r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
    return r;
}

LatticePoint scale(const LatticePoint& a, const Rat& s) {
    LatticePoint r = a;
    for (auto& c : r.coords) c *= s;
    return r;
}

LatticePoint ring_act(const MWModel& m, const RingElem& e, const LatticePoint& p) {
    if (!m.ring.is_order()) return scale(p, Rat(e.x));
    // per generator pair, multiply by [x, -v*y; y, x - u*y]
    LatticePoint r = LatticePoint::zero(m);
    Rat x(e.x), y(e.y), v(m.ring.v), xu(e.x - m.ring.u * e.y);
    for (std::size_t c = 0; c < m.s_amb; ++c) {
        const Rat& c0 = p.coords[2 * c];
        const Rat& c1 = p.coords[2 * c + 1];
        r.coords[2 * c] = x * c0 - v * y * c1;
        r.coords[2 * c + 1] = y * c0 + xu * c1;
    }
    return r;
}

bool supported_on_gamma0(const MWModel& m, const LatticePoint& p) {
    std::vector<bool> in(m.s_amb, false);
    for (std::size_t i : m.gamma0) in[i] = true;
    for (std::size_t c = 0; c < m.s_amb; ++c) {
        if (in[c]) continue;
        if (m.ring.is_order()) {
            if (p.coords[2 * c] != 0 || p.coords[2 * c + 1] != 0) return false;
        } else if (p.coords[c] != 0) {
            return false;
        }
    }
    return true;
}

PowerPoint PowerPoint::zero(const MWModel& m, std::size_t g) {
    PowerPoint x;
    x.factors.assign(g, LatticePoint::zero(m));
    return x;
}

Rat norm_sq_sum(const MWModel& m, const PowerPoint& x) {
    Rat acc(0);
    for (const auto& f : x.factors) acc += norm_sq(m, f);
    return acc;
}

Rat norm_sq_max(const MWModel& m, const PowerPoint& x) {
    Rat best(0);
    for (const auto& f : x.factors) best = std::max(best, norm_sq(m, f));
    return best;
}

PowerPoint add(const PowerPoint& a, const PowerPoint& b) {
    if (a.factors.size() != b.factors.size()) throw std::invalid_argument("add: factor mismatch");
    PowerPoint r = a;
    for (std::size_t i = 0; i < r.factors.size(); ++i) r.factors[i] = add(r.factors[i], b.factors[i]);
    return r;
}

PowerPoint sub(const PowerPoint& a, const PowerPoint& b) {
    if (a.factors.size() != b.factors.size()) throw std::invalid_argument("sub: factor mismatch");
    PowerPoint r = a;
    for (std::size_t i = 0; i < r.factors.size(); ++i) r.factors[i] = sub(r.factors[i], b.factors[i]);
    return r;
}

PowerPoint scale(const PowerPoint& a, const Rat& s) {
    PowerPoint r = a;
    for (auto& f : r.factors) f = scale(f, s);
    return r;
}

PowerPoint apply_morphism(const MWModel& m, const Morphism& phi, const PowerPoint& x) {
    if (x.factors.size() != phi.g) throw std::invalid_argument("apply_morphism: factor mismatch");
    PowerPoint out = PowerPoint::zero(m, phi.r);
    for (std::size_t i = 0; i < phi.r; ++i)
        for (std::size_t j = 0; j < phi.g; ++j) {
            if (phi.at(i, j).is_zero()) continue;
            out.factors[i] = add(out.factors[i], ring_act(m, phi.at(i, j), x.factors[j]));
        }
    return out;
}

namespace {

// Simplest rational strictly inside (a, b); classical continued-fraction walk.
Rat simplest_in_open(const Rat& a, const Rat& b) {
    if (!(a < b)) throw std::invalid_argument("simplest_in_open: empty interval");
    if (a < 0 && b > 0) return Rat(0);
    if (b <= 0) return -simplest_in_open(-b, -a);
    // 0 <= a < b
    Int fa = floor_rat(a);
    if (Rat(fa + 1) < b) return Rat(fa + 1);  // floor(a)+1 > a always
    if (a == Rat(fa)) {
        // (fa, b) with b - fa <= 1: simplest is fa + 1/n for the least n > 1/(b-fa)
        Rat rb = b - Rat(fa);
        Int n = floor_rat(Rat(1) / rb) + 1;
        return Rat(fa) + make_rat(Int(1), n);
    }
    Rat ra = a - Rat(fa), rb = b - Rat(fa);  // 0 < ra < rb <= 1
    Rat inner = simplest_in_open(Rat(1) / rb, Rat(1) / ra);
    return Rat(fa) + Rat(1) / inner;
}

}  // namespace

LambdaMinBound certified_lambda_min(const QMat& G, const QMat& D, unsigned tol_bits) {
    std::size_t n = G.rows();
    if (D.rows() != n || D.cols() != n || G.cols() != n)
        throw std::invalid_argument("certified_lambda_min: shape mismatch");
    if (!G.is_positive_definite()) throw std::domain_error("certified_lambda_min: G not PD");

    auto shifted = [&](const Rat& c) { return G - D * c; };
    auto pd_at = [&](const Rat& c) { return shifted(c).is_positive_definite(); };
    auto psd_at = [&](const Rat& c) { return shifted(c).is_positive_semidefinite(); };

    // Upper seed: the smallest diagonal ratio (>= lambda_min).
    Rat hi;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (D.at(i, i) <= 0) throw std::domain_error("certified_lambda_min: D diagonal not positive");
        Rat ratio = G.at(i, i) / D.at(i, i);
        if (first || ratio < hi) {
            hi = ratio;
            first = false;
        }
    }
    if (psd_at(hi)) return {hi, true};  // the diagonal bound is attained

    Rat lo(0);
    Rat tol = hi / pow_rat(Rat(2), static_cast<long>(tol_bits));
    bool use_simplest = false;
    while (hi - lo > tol) {
        // dyadic halving guarantees progress; the simplest-rational probe
        // snaps onto an exact rational eigenvalue when there is one
        Rat mid = use_simplest ? simplest_in_open(lo, hi) : (lo + hi) / 2;
        use_simplest = !use_simplest;
        if (pd_at(mid)) {
            lo = mid;
        } else if (psd_at(mid)) {
            return {mid, true};  // semidefinite but not definite: exact eigenvalue
        } else {
            hi = mid;
        }
    }
    return {lo, false};
}

namespace {

// Selected real Gram and norm-form weight matrix for a generator family.
void selected_structures(const MWModel& m, const std::vector<std::size_t>& p_indices, QMat& G_out,
                         QMat& D_out) {
    std::size_t t = p_indices.size();
    if (t == 0) throw std::invalid_argument("empty generator family");
    for (std::size_t i : p_indices)
        if (i >= m.s_amb) throw std::invalid_argument("generator index out of range");
    if (!m.ring.is_order()) {
        G_out = QMat(t, t);
        D_out = QMat(t, t);
        for (std::size_t i = 0; i < t; ++i) {
            for (std::size_t j = 0; j < t; ++j) G_out.at(i, j) = m.gram.at(p_indices[i], p_indices[j]);
            D_out.at(i, i) = m.gram.at(p_indices[i], p_indices[i]);
        }
        return;
    }
    Rat t01 = Rat(-m.ring.u) / 2, t11 = Rat(m.ring.v);
    G_out = QMat(2 * t, 2 * t);
    D_out = QMat(2 * t, 2 * t);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < t; ++j) {
            Rat gij = m.gram.at(p_indices[i], p_indices[j]);
            G_out.at(2 * i, 2 * j) = gij;
            G_out.at(2 * i, 2 * j + 1) = t01 * gij;
            G_out.at(2 * i + 1, 2 * j) = t01 * gij;
            G_out.at(2 * i + 1, 2 * j + 1) = t11 * gij;
        }
        Rat w = m.gram.at(p_indices[i], p_indices[i]);
        D_out.at(2 * i, 2 * i) = w;
        D_out.at(2 * i, 2 * i + 1) = t01 * w;
        D_out.at(2 * i + 1, 2 * i) = t01 * w;
        D_out.at(2 * i + 1, 2 * i + 1) = t11 * w;
    }
}

}  // namespace

PerturbationConstants c1_constant(const MWModel& m, const std::vector<std::size_t>& p_indices) {
    QMat G, D;
    selected_structures(m, p_indices, G, D);
    if (G.determinant() == 0) throw std::domain_error("c1_constant: dependent family");

    LambdaMinBound lm = certified_lambda_min(G, D);
    PerturbationConstants rc;
    rc.c1 = lm.value;
    rc.c1_exact = lm.exact;
    rc.c2 = rc.c1 / 2;

    Rat min_nsq, max_nsq;
    for (std::size_t k = 0; k < p_indices.size(); ++k) {
        Rat nsq = m.gram.at(p_indices[k], p_indices[k]);
        if (k == 0) {
            min_nsq = nsq;
            max_nsq = nsq;
        } else {
            min_nsq = std::min(min_nsq, nsq);
            max_nsq = std::max(max_nsq, nsq);
        }
    }
    // eps0 = c1/(8s) * min||p||^2 / max||p||; max||p|| is irrational, use an
    // upper enclosure of the square root so eps0 rounds downward (safe side).
    Rat max_norm_up = sqrt_upper(max_nsq, 48);
    rc.eps0 = rc.c1 * min_nsq / (Rat(8) * Rat(static_cast<long>(p_indices.size())) * max_norm_up);
    return rc;
}

PerturbedBoundCheck check_perturbed_bound(const MWModel& m, const std::vector<std::size_t>& p_indices,
                   const std::vector<RingElem>& b, const RingElem& b_extra,
                   const std::vector<LatticePoint>& xi, const LatticePoint& zeta) {
    if (b.size() != p_indices.size() || xi.size() != p_indices.size())
        throw std::invalid_argument("check_perturbed_bound: size mismatch");
    PerturbationConstants rc = c1_constant(m, p_indices);
    PerturbedBoundCheck out;

    Rat eps0_sq = rc.eps0 * rc.eps0;
    for (const auto& x : xi)
        if (norm_sq(m, x) > eps0_sq) {
            out.preconditions_ok = false;
            out.violation = "||xi_i|| exceeds eps0";
        }
    if (norm_sq(m, zeta) > eps0_sq) {
        out.preconditions_ok = false;
        out.violation = "||zeta|| exceeds eps0";
    }
    Int max_b_nsq = 0;
    for (const auto& bi : b) max_b_nsq = std::max(max_b_nsq, norm_sq(m.ring, bi));
    if (norm_sq(m.ring, b_extra) > max_b_nsq) {
        out.preconditions_ok = false;
        out.violation = "|b| exceeds max |b_i|";
    }

    LatticePoint w = LatticePoint::zero(m);
    Rat lhs(0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        LatticePoint pi = LatticePoint::generator(m, p_indices[i]);
        w = add(w, ring_act(m, b[i], sub(pi, xi[i])));
        lhs += Rat(norm_sq(m.ring, b[i])) * m.gram.at(p_indices[i], p_indices[i]);
    }
    w = sub(w, ring_act(m, b_extra, zeta));

    out.lhs = rc.c2 * lhs;
    out.rhs = norm_sq(m, w);
    out.holds = out.lhs <= out.rhs;
    out.margin = out.rhs - out.lhs;
    return out;
}

QuasiOrthBasis quasi_orthonormal_basis(const MWModel& m, const Rat& K) {
    if (m.gamma0.empty()) throw std::domain_error("quasi_orthonormal_basis: empty Gamma_0 span");
    std::size_t t = m.gamma0.size();
    QMat G0(t, t);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) G0.at(i, j) = m.gram.at(m.gamma0[i], m.gamma0[j]);
    if (!G0.is_positive_definite())
        throw std::domain_error("quasi_orthonormal_basis: degenerate span");

    // Exact Gram-Schmidt directions over Q; the divisible model makes every
    // rational combination a model point, so only the unit scaling needs an
    // approximate square root. Scaling keeps exact orthogonality.
    QMat dirs(t, t);  // rows: direction coefficients over the Gamma_0 generators
    std::vector<Rat> dir_nsq(t);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < t; ++j) dirs.at(i, j) = (i == j) ? Rat(1) : Rat(0);
        for (std::size_t k = 0; k < i; ++k) {
            // <e_i, d_k> / <d_k, d_k>
            Rat num(0);
            for (std::size_t j = 0; j < t; ++j) num += dirs.at(k, j) * G0.at(i, j);
            Rat f = num / dir_nsq[k];
            for (std::size_t j = 0; j < t; ++j) dirs.at(i, j) -= f * dirs.at(k, j);
        }
        Rat nsq(0);
        for (std::size_t a = 0; a < t; ++a)
            for (std::size_t bcol = 0; bcol < t; ++bcol)
                nsq += dirs.at(i, a) * G0.at(a, bcol) * dirs.at(i, bcol);
        if (nsq <= 0) throw std::logic_error("quasi_orthonormal_basis: lost definiteness");
        dir_nsq[i] = nsq;
    }
    for (std::size_t i = 0; i < t; ++i) {
        // 1/||d_i|| from below keeps ||gamma'_i|| <= 1
        Rat inv_norm = sqrt_lower(Rat(1) / dir_nsq[i], 32);
        for (std::size_t j = 0; j < t; ++j) dirs.at(i, j) *= inv_norm;
    }

    Int n0 = std::max(Int(1), ceil_rat(2 * K));
    QuasiOrthBasis out;
    out.n0 = n0;
    out.coeffs = QMat(t, m.s_amb);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) out.coeffs.at(i, m.gamma0[j]) = dirs.at(i, j) * Rat(n0);

    // Exact verification of the construction contract.
    out.new_gram = QMat(t, t);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            Rat acc(0);
            for (std::size_t a = 0; a < t; ++a)
                for (std::size_t bcol = 0; bcol < t; ++bcol)
                    acc += dirs.at(i, a) * G0.at(a, bcol) * dirs.at(j, bcol);
            out.new_gram.at(i, j) = acc * Rat(n0) * Rat(n0);
        }
    QMat Dnew(t, t);
    for (std::size_t i = 0; i < t; ++i) {
        Rat nn = out.new_gram.at(i, i);
        if (nn < K * K) throw std::logic_error("quasi_orthonormal_basis: min-norm contract failed");
        Rat unit_nsq = nn / (Rat(n0) * Rat(n0));
        if (unit_nsq < Rat(1, 4) || unit_nsq > Rat(9, 4))
            throw std::logic_error("quasi_orthonormal_basis: scaling drifted out of [1/2, 3/2]");
        Dnew.at(i, i) = nn;
    }
    LambdaMinBound lm = certified_lambda_min(out.new_gram, Dnew);
    out.lambda_min = lm.value;
    if (out.lambda_min < Rat(1, 9))
        throw std::logic_error("quasi_orthonormal_basis: eigenvalue contract failed");
    return out;
}

MinNormResult min_norm_preimage(const MWModel& m, const Morphism& phi, const PowerPoint& target,
                                bool allow_gamma0_coset) {
    if (phi.rank() != phi.r) throw std::domain_error("min_norm_preimage: phi not surjective");
    if (target.factors.size() != phi.r) throw std::invalid_argument("min_norm_preimage: target shape");
    const std::size_t d = m.real_dim();
    const std::size_t g = phi.g, r = phi.r;
    const bool order = m.ring.is_order();

    // Unknown xi: g factors x d coordinates. Constraint blocks are the regular
    // representation of the entries acting per generator pair.
    auto block = [&](const RingElem& e, std::size_t bi, std::size_t bj) -> Rat {
        if (!order) return bi == bj ? Rat(e.x) : Rat(0);  // unused branch; scalars handled below
        if (bi == 0 && bj == 0) return Rat(e.x);
        if (bi == 0 && bj == 1) return Rat(-m.ring.v * e.y);
        if (bi == 1 && bj == 0) return Rat(e.y);
        return Rat(e.x - m.ring.u * e.y);
    };

    std::size_t extra = 0;
    std::size_t per_factor_gamma0 = m.gamma0.size() * (order ? 2 : 1);
    if (allow_gamma0_coset) extra = g * per_factor_gamma0;

    QMat C(r * d, g * d + extra);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            const RingElem& e = phi.at(i, j);
            if (e.is_zero()) continue;
            if (!order) {
                for (std::size_t c = 0; c < d; ++c) C.at(i * d + c, j * d + c) = Rat(e.x);
            } else {
                for (std::size_t c = 0; c < m.s_amb; ++c)
                    for (std::size_t bi = 0; bi < 2; ++bi)
                        for (std::size_t bj = 0; bj < 2; ++bj)
                            C.at(i * d + 2 * c + bi, j * d + 2 * c + bj) = block(e, bi, bj);
            }
        }
    if (allow_gamma0_coset) {
        // Columns for y: same morphism action restricted to Gamma_0 coordinates.
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < g; ++j) {
                const RingElem& e = phi.at(i, j);
                if (e.is_zero()) continue;
                for (std::size_t k = 0; k < m.gamma0.size(); ++k) {
                    std::size_t gen = m.gamma0[k];
                    if (!order) {
                        C.at(i * d + gen, g * d + j * per_factor_gamma0 + k) = Rat(e.x);
                    } else {
                        for (std::size_t bi = 0; bi < 2; ++bi)
                            for (std::size_t bj = 0; bj < 2; ++bj)
                                C.at(i * d + 2 * gen + bi,
                                     g * d + j * per_factor_gamma0 + 2 * k + bj) = block(e, bi, bj);
                    }
                }
            }
    }

    QMat Greal = m.real_gram();
    QMat Gfull(g * d + extra, g * d + extra);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) Gfull.at(j * d + a, j * d + b) = Greal.at(a, b);

    std::vector<Rat> rhs(r * d, Rat(0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < d; ++c) rhs[i * d + c] = target.factors[i].coords[c];

    std::vector<Rat> sol = constrained_min_norm(Gfull, C, rhs);

    MinNormResult res;
    res.xi = PowerPoint::zero(m, g);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t c = 0; c < d; ++c) res.xi.factors[j].coords[c] = sol[j * d + c];
    res.norm_sq = norm_sq_sum(m, res.xi);
    if (allow_gamma0_coset) {
        PowerPoint y = PowerPoint::zero(m, g);
        for (std::size_t j = 0; j < g; ++j)
            for (std::size_t k = 0; k < m.gamma0.size(); ++k) {
                std::size_t gen = m.gamma0[k];
                if (!order) {
                    y.factors[j].coords[gen] = sol[g * d + j * per_factor_gamma0 + k];
                } else {
                    y.factors[j].coords[2 * gen] = sol[g * d + j * per_factor_gamma0 + 2 * k];
                    y.factors[j].coords[2 * gen + 1] = sol[g * d + j * per_factor_gamma0 + 2 * k + 1];
                }
            }
        res.y = std::move(y);
    }
    return res;
}

bool membership(const MWModel& m, const Morphism& phi, const PowerPoint& x, const Rat& eps,
                bool allow_gamma0_coset) {
    PowerPoint img = apply_morphism(m, phi, x);
    MinNormResult r = min_norm_preimage(m, phi, img, allow_gamma0_coset);
    return r.norm_sq <= eps * eps;
}

}  // namespace ellkit
