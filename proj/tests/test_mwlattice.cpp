#include "ellkit/mwlattice.hpp"

#include <doctest.h>

using namespace ellkit;

namespace {

MWModel identity_model(std::size_t n) {
    MWModel m;
    m.ring = EndRing::integers();
    m.s_amb = n;
    m.gram = QMat::identity(n);
    for (std::size_t i = 0; i < n; ++i) m.gamma0.push_back(i);
    m.validate();
    return m;
}

MWModel model_from(std::initializer_list<std::initializer_list<long>> rows, long den = 1) {
    MWModel m;
    m.ring = EndRing::integers();
    m.s_amb = rows.size();
    m.gram = QMat(m.s_amb, m.s_amb);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row) m.gram.at(i, j++) = rat(v, den);
        ++i;
    }
    for (std::size_t k = 0; k < m.s_amb; ++k) m.gamma0.push_back(k);
    m.validate();
    return m;
}

QMat random_pd_gram(Rng& rng, std::size_t n) {
    while (true) {
        QMat R(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) R.at(i, j) = rat(rng.uniform(-4, 4), 1 + rng.uniform(0, 3));
        QMat G = R.transpose() * R;
        for (std::size_t i = 0; i < n; ++i) G.at(i, i) += rat(1, 7);
        if (G.is_positive_definite()) return G;
    }
}

}  // namespace

TEST_CASE("model validation") {
    CHECK_NOTHROW(identity_model(3));
    MWModel bad;
    bad.ring = EndRing::integers();
    bad.s_amb = 2;
    bad.gram = QMat(2, 2);
    bad.gram.at(0, 0) = 1;
    bad.gram.at(1, 1) = -1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("norm_sq on points") {
    MWModel m = identity_model(2);
    LatticePoint p{{rat(3), rat(4)}};
    CHECK(norm_sq(m, p) == 25);
    CHECK(norm_sq(m, LatticePoint::zero(m)) == 0);

    MWModel m2 = model_from({{2, 1}, {1, 2}});
    LatticePoint q{{rat(1), rat(-1)}};
    CHECK(norm_sq(m2, q) == 2);
}

TEST_CASE("tau-doubled real structure for an order model") {
    MWModel m;
    m.ring = EndRing::order(-1, 1);  // |tau|^2 = 1, Re tau = 1/2
    m.s_amb = 1;
    m.gram = QMat(1, 1);
    m.gram.at(0, 0) = rat(3);
    m.gamma0 = {0};
    m.validate();
    // || (x + y tau) p ||^2 = |x + y tau|^2 ||p||^2
    LatticePoint p = LatticePoint::generator(m, 0);
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y) {
            LatticePoint q = ring_act(m, RingElem{Int(x), Int(y)}, p);
            CHECK(norm_sq(m, q) == Rat(norm_sq(m.ring, RingElem{Int(x), Int(y)})) * rat(3));
        }
}

TEST_CASE("certified lambda_min: exact rational eigenvalues snap") {
    QMat G = QMat::identity(2);
    G.at(0, 1) = rat(9, 10);
    G.at(1, 0) = rat(9, 10);
    QMat D = QMat::identity(2);
    LambdaMinBound lm = certified_lambda_min(G, D);
    CHECK(lm.exact);
    CHECK(lm.value == rat(1, 10));
}

TEST_CASE("c1_constant: worked examples") {
    MWModel ortho = identity_model(1);
    PerturbationConstants c = c1_constant(ortho, {0});
    CHECK(c.c1 == 1);
    CHECK(c.c2 == rat(1, 2));
    CHECK(c.eps0 == rat(1, 8));

    MWModel single = model_from({{5}});
    CHECK(c1_constant(single, {0}).c1 == 1);

    MWModel two = model_from({{10, 9}, {9, 10}}, 10);
    PerturbationConstants c2 = c1_constant(two, {0, 1});
    CHECK(c2.c1 == rat(1, 10));
    CHECK(c2.c2 == rat(1, 20));
}

TEST_CASE("c1 certificate holds for random ring coefficients") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 2 + trial % 3;
        MWModel m;
        m.ring = EndRing::integers();
        m.s_amb = n;
        m.gram = random_pd_gram(rng, n);
        for (std::size_t i = 0; i < n; ++i) m.gamma0.push_back(i);
        m.validate();
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
        PerturbationConstants rc = c1_constant(m, idx);
        for (int k = 0; k < 1000; ++k) {
            std::vector<RingElem> b(n);
            LatticePoint combo = LatticePoint::zero(m);
            Rat rhs_scale(0);
            for (std::size_t i = 0; i < n; ++i) {
                b[i] = RingElem{Int(rng.uniform(-20, 20))};
                combo = add(combo, ring_act(m, b[i], LatticePoint::generator(m, i)));
                rhs_scale += Rat(norm_sq(m.ring, b[i])) * m.gram.at(i, i);
            }
            CHECK(rc.c1 * rhs_scale <= norm_sq(m, combo));
        }
    }
}

TEST_CASE("c1 certificate on an order model") {
    MWModel m;
    m.ring = EndRing::order(0, 1);
    m.s_amb = 2;
    m.gram = QMat(2, 2);
    m.gram.at(0, 0) = rat(2);
    m.gram.at(1, 1) = rat(3);
    m.gram.at(0, 1) = rat(1);
    m.gram.at(1, 0) = rat(1);
    m.gamma0 = {0, 1};
    m.validate();
    PerturbationConstants rc = c1_constant(m, {0, 1});
    CHECK(rc.c1 > 0);
    Rng rng(9);
    for (int k = 0; k < 200; ++k) {
        std::vector<RingElem> b{RingElem{Int(rng.uniform(-9, 9)), Int(rng.uniform(-9, 9))},
                                RingElem{Int(rng.uniform(-9, 9)), Int(rng.uniform(-9, 9))}};
        LatticePoint combo = LatticePoint::zero(m);
        Rat scale_sum(0);
        for (std::size_t i = 0; i < 2; ++i) {
            combo = add(combo, ring_act(m, b[i], LatticePoint::generator(m, i)));
            scale_sum += Rat(norm_sq(m.ring, b[i])) * m.gram.at(i, i);
        }
        CHECK(rc.c1 * scale_sum <= norm_sq(m, combo));
    }
}

TEST_CASE("check_perturbed_bound: degenerate and randomized cases") {
    MWModel m = model_from({{3, 1}, {1, 4}});
    std::vector<std::size_t> idx{0, 1};

    // b = 0: both sides vanish
    PerturbedBoundCheck zero = check_perturbed_bound(m, idx, {RingElem{0}, RingElem{0}}, RingElem{0},
                              {LatticePoint::zero(m), LatticePoint::zero(m)}, LatticePoint::zero(m));
    CHECK(zero.holds);
    CHECK(zero.margin == 0);

    // xi = zeta = 0 reduces to the unperturbed bound with the halved constant
    Rng rng(23);
    for (int k = 0; k < 50; ++k) {
        std::vector<RingElem> b{RingElem{Int(rng.uniform(-8, 8))}, RingElem{Int(rng.uniform(-8, 8))}};
        PerturbedBoundCheck rc = check_perturbed_bound(m, idx, b, RingElem{0},
                                {LatticePoint::zero(m), LatticePoint::zero(m)}, LatticePoint::zero(m));
        CHECK(rc.preconditions_ok);
        CHECK(rc.holds);
    }

    // precondition violations are reported, not computed around
    LatticePoint big{{rat(10), rat(10)}};
    PerturbedBoundCheck viol = check_perturbed_bound(m, idx, {RingElem{1}, RingElem{1}}, RingElem{1}, {big, big}, big);
    CHECK_FALSE(viol.preconditions_ok);
}

TEST_CASE("quasi-orthonormal basis: identity fixed point and K scaling") {
    MWModel m = identity_model(3);
    QuasiOrthBasis b = quasi_orthonormal_basis(m, rat(1));
    CHECK(b.n0 == 2);
    CHECK(b.lambda_min >= rat(1, 9));
    CHECK(b.coeffs == QMat::identity(3) * rat(2));

    MWModel single = model_from({{7}});
    QuasiOrthBasis s = quasi_orthonormal_basis(single, rat(5));
    CHECK(s.lambda_min == 1);
    CHECK(s.new_gram.at(0, 0) >= rat(25));
}

TEST_CASE("quasi-orthonormal basis: random PD grams") {
    Rng rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t n = 2 + trial % 4;
        MWModel m;
        m.ring = EndRing::integers();
        m.s_amb = n;
        m.gram = random_pd_gram(rng, n);
        for (std::size_t i = 0; i < n; ++i) m.gamma0.push_back(i);
        m.validate();
        QuasiOrthBasis b = quasi_orthonormal_basis(m, rat(10));
        CHECK(b.lambda_min >= rat(1, 9));
        for (std::size_t i = 0; i < n; ++i) CHECK(b.new_gram.at(i, i) >= 100);
        // new_gram really is the Gram of coeffs over the model
        QMat check = b.coeffs * m.gram * b.coeffs.transpose();
        CHECK(check == b.new_gram);
    }
}

TEST_CASE("min_norm_preimage: hand-checkable cases") {
    MWModel m = identity_model(2);
    Morphism phi(EndRing::integers(), 1, 2);
    phi.at(0, 0) = RingElem{2};

    // target 0 -> xi = 0
    MinNormResult zero = min_norm_preimage(m, phi, PowerPoint::zero(m, 1));
    CHECK(zero.norm_sq == 0);

    // phi = (2, 0), target = 2 x_1: normal equations give xi = (x_1, 0)
    PowerPoint target = PowerPoint::zero(m, 1);
    target.factors[0].coords[0] = 2;
    MinNormResult r = min_norm_preimage(m, phi, target);
    CHECK(r.xi.factors[0].coords[0] == 1);
    CHECK(r.xi.factors[1].coords[0] == 0);
    CHECK(r.norm_sq == 1);
}

TEST_CASE("min_norm_preimage: optimality against sampled feasible points") {
    Rng rng(13);
    MWModel m = model_from({{2, 1}, {1, 3}});
    Morphism phi(EndRing::integers(), 2, 3);
    long cells[] = {3, 0, -1, 0, 3, 2};
    for (std::size_t i = 0; i < 6; ++i) phi.entries[i] = RingElem{Int(cells[i])};
    PowerPoint x = PowerPoint::zero(m, 3);
    for (auto& f : x.factors)
        for (auto& c : f.coords) c = rat(rng.uniform(-5, 5), 3);
    PowerPoint target = apply_morphism(m, phi, x);
    MinNormResult best = min_norm_preimage(m, phi, target);

    // feasibility of the returned point
    PowerPoint image = apply_morphism(m, phi, best.xi);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t c = 0; c < 2; ++c)
            CHECK(image.factors[i].coords[c] == target.factors[i].coords[c]);

    // Gram-orthogonality of the minimizer to the kernel: (a I | L) kernel is
    // spanned by (-L w / a, w)
    for (int k = 0; k < 20; ++k) {
        PowerPoint ker = PowerPoint::zero(m, 3);
        LatticePoint w{{rat(rng.uniform(-3, 3)), rat(rng.uniform(-3, 3))}};
        ker.factors[2] = w;
        for (std::size_t i = 0; i < 2; ++i)
            ker.factors[i] = scale(ring_act(m, phi.at(i, 2), w), rat(-1, 3));
        // <xi, ker> under the sum form
        Rat inner(0);
        for (std::size_t j = 0; j < 3; ++j) {
            std::vector<Rat> gk = m.gram.apply(ker.factors[j].coords);
            for (std::size_t c = 0; c < 2; ++c) inner += best.xi.factors[j].coords[c] * gk[c];
        }
        CHECK(inner == 0);
        CHECK(norm_sq_sum(m, add(best.xi, ker)) >= best.norm_sq);
    }
}

TEST_CASE("membership radius inflates by at most g under a reduced morphism") {
    Rng rng(29);
    MWModel m = identity_model(2);
    Morphism phi(EndRing::integers(), 2, 4);
    long cells[] = {4, 0, 1, -3, 0, 4, 2, 2};
    for (std::size_t i = 0; i < 8; ++i) phi.entries[i] = RingElem{Int(cells[i])};
    REQUIRE(is_gauss_reduced(phi).ok);
    for (int t = 0; t < 25; ++t) {
        PowerPoint xi = PowerPoint::zero(m, 4);
        for (auto& f : xi.factors)
            for (auto& c : f.coords) c = rat(rng.uniform(-9, 9), 11);
        Rat eps_sq = norm_sq_sum(m, xi);
        MinNormResult r = min_norm_preimage(m, phi, apply_morphism(m, phi, xi));
        CHECK(r.norm_sq <= rat(16) * eps_sq);  // (g eps)^2 with g = 4
        CHECK(r.norm_sq <= eps_sq);            // xi itself is feasible
    }
}

TEST_CASE("order-ring quasi-orthonormal basis and least squares") {
    MWModel m;
    m.ring = EndRing::order(0, 1);
    m.s_amb = 2;
    m.gram = QMat(2, 2);
    m.gram.at(0, 0) = rat(2);
    m.gram.at(1, 1) = rat(5);
    m.gram.at(0, 1) = rat(1);
    m.gram.at(1, 0) = rat(1);
    m.gamma0 = {0, 1};
    m.validate();

    QuasiOrthBasis b = quasi_orthonormal_basis(m, rat(3));
    CHECK(b.lambda_min >= rat(1, 9));
    // the 1/9 bound over ring coefficients, exactly
    Rng rng(41);
    std::vector<LatticePoint> gam(2, LatticePoint::zero(m));
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t c = 0; c < 2; ++c) gam[l].coords[2 * c] = b.coeffs.at(l, c);
    for (int k = 0; k < 300; ++k) {
        LatticePoint combo = LatticePoint::zero(m);
        Rat rhs(0);
        for (std::size_t l = 0; l < 2; ++l) {
            RingElem bl{Int(rng.uniform(-6, 6)), Int(rng.uniform(-6, 6))};
            combo = add(combo, ring_act(m, bl, gam[l]));
            rhs += Rat(norm_sq(m.ring, bl)) * norm_sq(m, gam[l]);
        }
        CHECK(rat(1, 9) * rhs <= norm_sq(m, combo));
    }

    // exact least squares through the tau-doubled representation
    Morphism phi(m.ring, 1, 2);
    phi.at(0, 0) = RingElem{1, 1};  // 1 + tau
    phi.at(0, 1) = RingElem{2, 0};
    PowerPoint x = PowerPoint::zero(m, 2);
    x.factors[0].coords[1] = rat(1, 3);
    x.factors[1].coords[2] = rat(-2, 7);
    PowerPoint target = apply_morphism(m, phi, x);
    MinNormResult r = min_norm_preimage(m, phi, target);
    PowerPoint image = apply_morphism(m, phi, r.xi);
    for (std::size_t c = 0; c < 4; ++c)
        CHECK(image.factors[0].coords[c] == target.factors[0].coords[c]);
    CHECK(r.norm_sq <= norm_sq_sum(m, x));
}

TEST_CASE("gamma0 coset variant") {
    MWModel m = identity_model(3);
    m.gamma0 = {0};  // only the first generator spans Gamma_0
    Morphism phi(EndRing::integers(), 2, 3);
    long cells[] = {2, 0, 1, 0, 2, -1};
    for (std::size_t i = 0; i < 6; ++i) phi.entries[i] = RingElem{Int(cells[i])};

    // x = y + xi with y on the Gamma_0 generator: the coset solve finds a
    // perturbation no larger than xi
    PowerPoint y = PowerPoint::zero(m, 3);
    y.factors[0].coords[0] = rat(7, 2);
    y.factors[1].coords[0] = rat(-3);
    PowerPoint xi = PowerPoint::zero(m, 3);
    xi.factors[2].coords[1] = rat(1, 5);
    PowerPoint x = add(y, xi);
    MinNormResult r = min_norm_preimage(m, phi, apply_morphism(m, phi, x), true);
    REQUIRE(r.y.has_value());
    CHECK(r.norm_sq <= norm_sq_sum(m, xi));
    for (const auto& fac : r.y->factors) CHECK(supported_on_gamma0(m, fac));
    CHECK(membership(m, phi, x, rat(1, 2), true));
}
