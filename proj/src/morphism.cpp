#include "ellkit/morphism.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace ellkit {

bool Morphism::is_zero() const {
    for (const auto& e : entries)
        if (!e.is_zero()) return false;
    return true;
}

bool Morphism::operator==(const Morphism& o) const {
    return ring == o.ring && r == o.r && g == o.g && entries == o.entries;
}

QMat Morphism::real_rep() const {
    if (!ring.is_order()) {
        QMat m(r, g);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < g; ++j) m.at(i, j) = Rat(at(i, j).x);
        return m;
    }
    // entry e = x + y*tau acts on column coordinates (1, tau) as
    // [x, -v*y; y, x - u*y]
    QMat m(2 * r, 2 * g);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            const RingElem& e = at(i, j);
            m.at(2 * i, 2 * j) = Rat(e.x);
            m.at(2 * i, 2 * j + 1) = Rat(-ring.v * e.y);
            m.at(2 * i + 1, 2 * j) = Rat(e.y);
            m.at(2 * i + 1, 2 * j + 1) = Rat(e.x - ring.u * e.y);
        }
    return m;
}

std::size_t Morphism::rank() const {
    std::size_t rk = real_rep().rank();
    return ring.is_order() ? rk / 2 : rk;
}

Height height(const Morphism& phi) {
    Int best = 0;
    for (const auto& e : phi.entries) best = std::max(best, norm_sq(phi.ring, e));
    return Height{best, std::sqrt(best.get_d())};
}

RingElem ring_det(const EndRing& R, const std::vector<RingElem>& m_in, std::size_t n) {
    if (n == 0) return RingElem{1};
    // Bareiss fraction-free elimination; exact division in the domain.
    std::vector<RingElem> m = m_in;
    auto at = [&](std::size_t i, std::size_t j) -> RingElem& { return m[i * n + j]; };
    RingElem prev{1};
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && at(piv, k).is_zero()) ++piv;
        if (piv == n) return RingElem{0};
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(at(piv, j), at(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                RingElem num = sub(R, mul(R, at(k, k), at(i, j)), mul(R, at(i, k), at(k, j)));
                auto q = divide_exact(R, num, prev);
                if (!q) throw std::logic_error("ring_det: inexact Bareiss division");
                at(i, j) = *q;
            }
        prev = at(k, k);
    }
    RingElem d = at(n - 1, n - 1);
    return negate ? RingElem{-d.x, -d.y} : d;
}

std::vector<RingElem> ring_adjugate(const EndRing& R, const std::vector<RingElem>& m, std::size_t n) {
    std::vector<RingElem> adj(n * n);
    if (n == 1) {
        adj[0] = RingElem{1};
        return adj;
    }
    std::vector<RingElem> minor((n - 1) * (n - 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t mi = 0;
            for (std::size_t a = 0; a < n; ++a) {
                if (a == i) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    if (b == j) continue;
                    minor[mi++] = m[a * n + b];
                }
            }
            RingElem c = ring_det(R, minor, n - 1);
            if ((i + j) % 2 == 1) c = RingElem{-c.x, -c.y};
            adj[j * n + i] = c;  // transpose of the cofactor matrix
        }
    return adj;
}

namespace {

struct ElemKey {
    Int x, y;
    bool operator<(const ElemKey& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

// For each value a appearing as the unique nonzero of some column, the rows
// covered and the smallest covering column per row.
struct PivotScan {
    std::map<ElemKey, std::map<std::size_t, std::size_t>> cover;  // value -> row -> col
};

PivotScan scan_pivots(const Morphism& phi) {
    PivotScan s;
    for (std::size_t c = 0; c < phi.g; ++c) {
        std::size_t nz = 0, row = 0;
        for (std::size_t i = 0; i < phi.r; ++i)
            if (!phi.at(i, c).is_zero()) {
                ++nz;
                row = i;
            }
        if (nz != 1) continue;
        const RingElem& e = phi.at(row, c);
        if (!phi.ring.is_order() && e.x <= 0) continue;  // over Z the pivot is positive
        auto& rows = s.cover[ElemKey{e.x, e.y}];
        if (!rows.count(row)) rows[row] = c;
    }
    return s;
}

RingElem canonical_unit_multiplier(const EndRing& R, const RingElem& a) {
    // Canonical representative of the unit orbit: upper half plane, positive
    // real part preferred (sign normalization a > 0 over Z).
    RingElem best_w{1};
    bool have = false;
    Int best_re2, best_y;
    for (const RingElem& w : units(R)) {
        RingElem b = mul(R, w, a);
        bool admissible = (b.y > 0) || (b.y == 0 && b.x > 0);
        if (!admissible) continue;
        Int re2 = 2 * b.x - R.u * b.y;
        if (!have || re2 > best_re2 || (re2 == best_re2 && b.y < best_y)) {
            have = true;
            best_w = w;
            best_re2 = re2;
            best_y = b.y;
        }
    }
    if (!have) throw std::logic_error("canonical_unit_multiplier: no admissible unit");
    return best_w;
}

std::vector<RingElem> mat_mul(const EndRing& R, const std::vector<RingElem>& A, std::size_t ar,
                              std::size_t ac, const std::vector<RingElem>& B, std::size_t bc) {
    std::vector<RingElem> C(ar * bc);
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < bc; ++j) {
            RingElem acc{0};
            for (std::size_t k = 0; k < ac; ++k)
                acc = add(R, acc, mul(R, A[i * ac + k], B[k * bc + j]));
            C[i * bc + j] = acc;
        }
    return C;
}

}  // namespace

GaussDiagnosis is_gauss_reduced(const Morphism& phi) {
    GaussDiagnosis d;
    if (phi.is_zero()) {
        d.reason = "zero morphism";
        return d;
    }
    Height H = height(phi);
    PivotScan scan = scan_pivots(phi);

    std::vector<ElemKey> full_cover;
    for (const auto& [val, rows] : scan.cover)
        if (rows.size() == phi.r) full_cover.push_back(val);
    if (full_cover.empty()) {
        d.reason = "no pivot submatrix a*I_r";
        return d;
    }

    // content is diagnosed before the height condition: a matrix with a
    // common factor reports the factor, not the inflated height
    Content c = content(phi.ring, phi.entries);
    if (!is_unit(phi.ring, c.value)) {
        ElemKey best = full_cover.front();
        d.pivot = RingElem{best.x, best.y};
        d.reason = "nontrivial content";
        return d;
    }

    std::optional<ElemKey> good;
    for (const auto& val : full_cover) {
        RingElem e{val.x, val.y};
        if (norm_sq(phi.ring, e) == H.h_sq) {
            good = val;
            break;
        }
    }
    if (!good) {
        ElemKey best = full_cover.front();
        d.pivot = RingElem{best.x, best.y};
        for (const auto& [row, col] : scan.cover[best]) {
            (void)row;
            d.pivot_cols.push_back(col);
        }
        d.reason = "height exceeds pivot";
        return d;
    }

    d.pivot = RingElem{good->x, good->y};
    d.pivot_cols.assign(phi.r, 0);
    for (const auto& [row, col] : scan.cover[*good]) d.pivot_cols[row] = col;
    d.ok = true;
    return d;
}

Morphism GaussReducedForm::phi_in_original_order() const {
    Morphism m(phi.ring, phi.r, phi.g);
    for (std::size_t k = 0; k < phi.g; ++k)
        for (std::size_t i = 0; i < phi.r; ++i) m.at(i, sigma[k]) = phi.at(i, k);
    return m;
}

GaussReducedForm gauss_reduce(const Morphism& psi) {
    const EndRing& R = psi.ring;
    const std::size_t r = psi.r, g = psi.g;
    if (psi.rank() != r) throw std::domain_error("gauss_reduce: rank deficient input");

    // Maximal |det| over r-subsets of columns, first-found in lexicographic order.
    std::vector<std::size_t> cols(r), best_cols;
    Int best_norm = -1;
    RingElem best_det;
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    while (true) {
        std::vector<RingElem> sub(r * r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) sub[i * r + j] = psi.at(i, cols[j]);
        RingElem det = ring_det(R, sub, r);
        Int nsq = norm_sq(R, det);
        if (nsq > best_norm) {
            best_norm = nsq;
            best_det = det;
            best_cols = cols;
        }
        // next lexicographic combination
        std::size_t k = r;
        while (k > 0) {
            --k;
            if (cols[k] + (r - k) < g) {
                ++cols[k];
                for (std::size_t j = k + 1; j < r; ++j) cols[j] = cols[j - 1] + 1;
                break;
            }
            if (k == 0) {
                k = r + 1;
                break;
            }
        }
        if (k == r + 1 || r == 0) break;
    }
    if (best_norm <= 0) throw std::logic_error("gauss_reduce: no invertible submatrix");

    std::vector<RingElem> sub(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub[i * r + j] = psi.at(i, best_cols[j]);
    std::vector<RingElem> delta = ring_adjugate(R, sub, r);
    std::vector<RingElem> reduced = mat_mul(R, delta, r, r, psi.entries, g);

    Content c = content(R, reduced);
    GaussReducedForm form;
    form.content_partial = c.partial;
    form.N = c.value;

    std::vector<RingElem> divided(r * g);
    for (std::size_t i = 0; i < r * g; ++i) {
        auto q = divide_exact(R, reduced[i], c.value);
        if (!q) throw std::logic_error("gauss_reduce: content does not divide");
        divided[i] = *q;
    }

    form.sigma = best_cols;
    std::vector<bool> used(g, false);
    for (std::size_t c2 : best_cols) used[c2] = true;
    for (std::size_t j = 0; j < g; ++j)
        if (!used[j]) form.sigma.push_back(j);

    form.phi = Morphism(R, r, g);
    for (std::size_t k = 0; k < g; ++k)
        for (std::size_t i = 0; i < r; ++i) form.phi.at(i, k) = divided[i * g + form.sigma[k]];

    form.a = form.phi.at(0, 0);
    RingElem w = canonical_unit_multiplier(R, form.a);
    if (!(w.x == 1 && w.y == 0)) {
        for (auto& e : form.phi.entries) e = mul(R, w, e);
        for (auto& e : delta) e = mul(R, w, e);
        form.a = mul(R, w, form.a);
    }
    form.delta = std::move(delta);
    return form;
}

GaussReducedForm as_reduced_form(const Morphism& phi) {
    GaussDiagnosis d = is_gauss_reduced(phi);
    if (!d.ok) throw std::invalid_argument("as_reduced_form: not Gauss-reduced (" + d.reason + ")");
    GaussReducedForm form;
    form.a = d.pivot;
    form.N = RingElem{1};
    form.sigma = d.pivot_cols;
    std::vector<bool> used(phi.g, false);
    for (std::size_t c : d.pivot_cols) used[c] = true;
    for (std::size_t j = 0; j < phi.g; ++j)
        if (!used[j]) form.sigma.push_back(j);
    form.phi = Morphism(phi.ring, phi.r, phi.g);
    for (std::size_t k = 0; k < phi.g; ++k)
        for (std::size_t i = 0; i < phi.r; ++i) form.phi.at(i, k) = phi.at(i, form.sigma[k]);
    form.delta.assign(phi.r * phi.r, RingElem{0});
    for (std::size_t i = 0; i < phi.r; ++i) form.delta[i * phi.r + i] = RingElem{1};
    return form;
}

bool check_reduction_certificate(const Morphism& psi, const GaussReducedForm& form) {
    const EndRing& R = psi.ring;
    if (form.sigma.size() != psi.g) return false;
    std::vector<bool> seen(psi.g, false);
    for (std::size_t c : form.sigma) {
        if (c >= psi.g || seen[c]) return false;
        seen[c] = true;
    }
    if (!is_gauss_reduced(form.phi).ok) return false;
    std::vector<RingElem> lhs = mat_mul(R, form.delta, psi.r, psi.r, psi.entries, psi.g);
    Morphism restored = form.phi_in_original_order();
    for (std::size_t i = 0; i < psi.r * psi.g; ++i)
        if (lhs[i] != mul(R, form.N, restored.entries[i])) return false;
    return true;
}

Classification classify(const Morphism& phi_tilde, std::size_t g, std::size_t s) {
    if (phi_tilde.g != g + s) throw std::invalid_argument("classify: expected g+s columns");
    const EndRing& R = phi_tilde.ring;
    const std::size_t r = phi_tilde.r;

    Classification out;
    GaussDiagnosis whole = is_gauss_reduced(phi_tilde);

    // Quasi-special: first block N*phi with phi Gauss-reduced, unit content overall.
    bool first_block_zero = true;
    Morphism A(R, r, g);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            A.at(i, j) = phi_tilde.at(i, j);
            if (!A.at(i, j).is_zero()) first_block_zero = false;
        }
    std::optional<Morphism> B;
    if (s > 0) {
        B.emplace(R, r, s);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < s; ++j) B->at(i, j) = phi_tilde.at(i, g + j);
    }

    // over Z the decomposition factor N is positive (the Remark's sign
    // convention); over an order N is determined up to units
    bool quasi = false;
    RingElem phi_pivot;
    if (!first_block_zero) {
        Content nc = content(R, A.entries);
        std::vector<RingElem> unit_choices =
            R.is_order() ? units(R) : std::vector<RingElem>{RingElem{1}};
        for (const RingElem& w : unit_choices) {
            Morphism cand(R, r, g);
            bool exact = true;
            for (std::size_t i = 0; i < r * g && exact; ++i) {
                auto q = divide_exact(R, A.entries[i], nc.value);
                if (!q) {
                    exact = false;
                    break;
                }
                cand.entries[i] = mul(R, w, *q);
            }
            if (!exact) break;
            GaussDiagnosis diag = is_gauss_reduced(cand);
            if (diag.ok) {
                auto winv = divide_exact(R, RingElem{1}, w);
                out.N = mul(R, nc.value, *winv);
                out.phi = cand;
                phi_pivot = diag.pivot;
                quasi = true;
                break;
            }
        }
        if (quasi) {
            Content full = content(R, phi_tilde.entries);
            if (!is_unit(R, full.value)) quasi = false;
        }
    }

    bool special_first = false;
    if (quasi) {
        Height Ht = height(phi_tilde);
        Int na = norm_sq(R, out.N) * norm_sq(R, phi_pivot);
        special_first = (Ht.h_sq == na);
    }

    // Second formulation: Gauss-reduced overall, with the height pivot block
    // living inside the first g columns.
    bool special_second = false;
    if (whole.ok) {
        Height Ht = height(phi_tilde);
        Morphism head = A;
        if (!head.is_zero()) {
            PivotScan scan = scan_pivots(head);
            for (const auto& [val, rows] : scan.cover) {
                RingElem e{val.x, val.y};
                if (rows.size() == r && norm_sq(R, e) == Ht.h_sq) {
                    special_second = true;
                    break;
                }
            }
        }
    }
    if (special_first != special_second)
        throw std::logic_error("classify: the two formulations of 'special' disagree");

    if (special_first)
        out.label = MorphismClass::Special;
    else if (quasi)
        out.label = MorphismClass::QuasiSpecial;
    else if (whole.ok)
        out.label = MorphismClass::GaussReduced;
    else
        out.label = MorphismClass::None;

    if (quasi && s > 0) out.phi_prime = *B;
    if (!quasi) {
        out.phi.reset();
        out.phi_prime.reset();
    }
    return out;
}

Morphism cm_flatten(const Morphism& phi) {
    if (!phi.ring.is_order()) throw std::invalid_argument("cm_flatten: ring must be an order");
    Morphism out(EndRing::integers(), phi.r, 2 * phi.g);
    for (std::size_t i = 0; i < phi.r; ++i)
        for (std::size_t j = 0; j < phi.g; ++j) {
            out.at(i, j) = RingElem{phi.at(i, j).x, 0};
            out.at(i, phi.g + j) = RingElem{phi.at(i, j).y, 0};
        }
    return out;
}

namespace {

struct MorphLess {
    bool operator()(const Morphism& a, const Morphism& b) const {
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            if (a.entries[i].x != b.entries[i].x) return a.entries[i].x < b.entries[i].x;
            if (a.entries[i].y != b.entries[i].y) return a.entries[i].y < b.entries[i].y;
        }
        return false;
    }
};

}  // namespace

std::vector<Morphism> enumerate_gauss_reduced(std::size_t g, std::size_t r, const Int& M) {
    if (r == 0 || g == 0 || r > g) throw std::invalid_argument("enumerate_gauss_reduced: bad shape");
    if (M < 1) throw std::invalid_argument("enumerate_gauss_reduced: M >= 1 required");
    if (!M.fits_slong_p()) throw std::invalid_argument("enumerate_gauss_reduced: M too large");
    const long m = M.get_si();
    EndRing R = EndRing::integers();

    std::set<Morphism, MorphLess> seen;
    std::vector<std::size_t> pivot_col(r);
    std::vector<bool> taken(g, false);

    for (long a = 1; a <= m; ++a) {
        // fill non-pivot cells of a fixed pivot placement with values in [-a, a]
        auto emit_fills = [&]() {
            Morphism base(R, r, g);
            std::vector<std::size_t> free_cells;
            for (std::size_t i = 0; i < r; ++i) base.at(i, pivot_col[i]) = RingElem{Int(a)};
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < g; ++j)
                    if (!taken[j]) free_cells.push_back(i * g + j);
            std::vector<long> fill(free_cells.size(), -a);
            while (true) {
                Morphism cand = base;
                for (std::size_t t = 0; t < free_cells.size(); ++t)
                    cand.entries[free_cells[t]] = RingElem{Int(fill[t])};
                Int gc = 0;
                for (const auto& e : cand.entries) gc = gcd(gc, e.x);
                if (gc < 0) gc = -gc;
                if (gc == 1) seen.insert(cand);
                std::size_t t = 0;
                while (t < fill.size() && fill[t] == a) {
                    fill[t] = -a;
                    ++t;
                }
                if (t == fill.size()) break;
                ++fill[t];
            }
        };
        // injections rows -> distinct columns
        auto place = [&](auto&& self, std::size_t row) -> void {
            if (row == r) {
                emit_fills();
                return;
            }
            for (std::size_t c = 0; c < g; ++c) {
                if (taken[c]) continue;
                taken[c] = true;
                pivot_col[row] = c;
                self(self, row + 1);
                taken[c] = false;
            }
        };
        place(place, 0);
    }

    std::vector<Morphism> out(seen.begin(), seen.end());
    return out;
}

std::string to_string(const Morphism& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.r; ++i) {
        s += i ? ";[" : "[";
        for (std::size_t j = 0; j < m.g; ++j) {
            if (j) s += ",";
            s += to_string(m.at(i, j));
        }
        s += "]";
    }
    s += "]";
    return s;
}

}  // namespace ellkit
