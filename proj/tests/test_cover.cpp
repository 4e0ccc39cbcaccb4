#include "ellkit/cover.hpp"

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

Morphism make_z(std::size_t r, std::size_t g, std::initializer_list<long> cells) {
    Morphism m(EndRing::integers(), r, g);
    std::size_t k = 0;
    for (long v : cells) m.entries[k++] = RingElem{Int(v)};
    return m;
}

}  // namespace

TEST_CASE("simulate_cover: pass-through branch") {
    MWModel m = identity_model(2);
    GaussReducedForm form = as_reduced_form(make_z(2, 3, {2, 0, -1, 0, 2, 1}));
    // plant x = kernel + gamma0 + small ball
    PowerPoint kappa = PowerPoint::zero(m, 3);
    kappa.factors[2].coords[0] = 2;  // w
    kappa.factors[0] = scale(ring_act(m, form.phi.at(0, 2), kappa.factors[2]), rat(-1, 2));
    kappa.factors[1] = scale(ring_act(m, form.phi.at(1, 2), kappa.factors[2]), rat(-1, 2));
    PowerPoint y = PowerPoint::zero(m, 3);
    y.factors[1].coords[1] = 3;
    Rat eps = rat(1, 2);
    Rat K1 = rat(6);
    Int Q(144);  // (K1/eps)^2
    std::size_t n = 2 * 3 - 4 + 1;
    Rat radius = shrunk_radius_lower(eps, pow_int(Q, n), n);
    PowerPoint xi = PowerPoint::zero(m, 3);
    xi.factors[0].coords[1] = radius / 2;
    PowerPoint x = add(add(kappa, y), xi);

    CoverCertificate cert = simulate_cover(m, form, x, eps, K1, Q);
    CHECK(cert.passthrough);
    CHECK(cert.f == 2);
    std::string why;
    CHECK_MESSAGE(verify_cover_certificate(m, cert, &why), why);
}

TEST_CASE("simulate_cover: approximation branch with a large pivot") {
    MWModel m = identity_model(2);
    Morphism phi(EndRing::integers(), 2, 3);
    long cells[] = {100003, 0, 70001, 0, 100003, 29999};
    for (std::size_t i = 0; i < 6; ++i) phi.entries[i] = RingElem{Int(cells[i])};
    GaussReducedForm form = as_reduced_form(phi);

    PowerPoint kappa = PowerPoint::zero(m, 3);
    kappa.factors[2].coords[0] = 1;
    kappa.factors[0] = scale(ring_act(m, phi.at(0, 2), kappa.factors[2]), rat(-1, 100003));
    kappa.factors[1] = scale(ring_act(m, phi.at(1, 2), kappa.factors[2]), rat(-1, 100003));
    PowerPoint y = PowerPoint::zero(m, 3);
    y.factors[0].coords[0] = 1;

    Rat K1 = rat(3);
    Rat eps = K1;  // Q = 2, M = 32 << pivot
    Int Q(2);
    std::size_t n = 3;
    Rat radius = shrunk_radius_lower(eps, pow_int(Q, n), n);
    PowerPoint xi = PowerPoint::zero(m, 3);
    xi.factors[1].coords[1] = radius * rat(9, 10);
    PowerPoint x = add(add(kappa, y), xi);

    CoverCertificate cert = simulate_cover(m, form, x, eps, K1, Q);
    CHECK_FALSE(cert.passthrough);
    CHECK(cert.f <= 32);
    CHECK(is_gauss_reduced(cert.output_psi).ok);
    std::string why;
    CHECK_MESSAGE(verify_cover_certificate(m, cert, &why), why);
    CHECK(norm_sq_max(m, cert.xi_prime) <= cert.claimed_radius * cert.claimed_radius);

    // x exactly on B_phi + Gamma_0 (xi = 0): the certified perturbation is
    // the approximation-error term alone
    PowerPoint x0 = add(kappa, y);
    CoverCertificate exact_cert = simulate_cover(m, form, x0, eps, K1, Q);
    CHECK_FALSE(exact_cert.passthrough);
    CHECK_MESSAGE(verify_cover_certificate(m, exact_cert, &why), why);
}

TEST_CASE("simulate_cover rejects precondition breaches loudly") {
    MWModel m = identity_model(2);
    GaussReducedForm form = as_reduced_form(make_z(2, 3, {2, 0, -1, 0, 2, 1}));
    PowerPoint far = PowerPoint::zero(m, 3);
    far.factors[0].coords[0] = 100;
    CHECK_THROWS_AS(simulate_cover(m, form, far, rat(1, 2), rat(1), Int(4)),
                    std::invalid_argument);
}

TEST_CASE("special_injection: y = 0 gives (phi | 0)") {
    MWModel m = identity_model(2);
    GaussReducedForm form = as_reduced_form(make_z(2, 3, {2, 0, -1, 0, 2, 1}));
    QuasiOrthBasis gamma = quasi_orthonormal_basis(m, rat(60));  // 3 g K1 with K1 = 10
    std::size_t s = gamma.coeffs.rows();

    PowerPoint kappa = PowerPoint::zero(m, 3);
    kappa.factors[2].coords[1] = 2;
    kappa.factors[0] = scale(ring_act(m, form.phi.at(0, 2), kappa.factors[2]), rat(-1, 2));
    kappa.factors[1] = scale(ring_act(m, form.phi.at(1, 2), kappa.factors[2]), rat(-1, 2));
    PowerPoint xi = PowerPoint::zero(m, 3);
    PowerPoint x = kappa;  // phi(x + 0 + 0) = 0

    std::vector<Int> G(3 * s, 0);
    SpecialInjection inj = special_injection(m, form, x, Int(1), G, xi, gamma);
    CHECK(inj.tphi.g == 3 + s);
    Classification cls = classify(inj.tphi, 3, s);
    CHECK(cls.label == MorphismClass::Special);
    std::string why;
    CHECK_MESSAGE(verify_special_injection(m, inj, &why), why);
}

TEST_CASE("quasi_special_reduce: content split fixture") {
    // (2I_2 | 0 | 3e_1): N1 = 2, n1 = 1, phi = (I_2|0), phi' = 3e_1
    Morphism psi = make_z(2, 4, {2, 0, 0, 3, 0, 2, 0, 0});
    QuasiSpecialReduction red = quasi_special_reduce(psi, 3, 1);
    CHECK(red.N == RingElem{2, 0});
    CHECK(red.n1 == RingElem{1, 0});
    CHECK(red.phi == make_z(2, 3, {1, 0, 0, 0, 1, 0}));
    REQUIRE(red.phi_prime.has_value());
    CHECK(*red.phi_prime == make_z(2, 1, {3, 0}));
    CHECK(red.tphi == psi);

    // idempotence on quasi-special input
    QuasiSpecialReduction again = quasi_special_reduce(red.tphi, 3, 1);
    CHECK(again.tphi == red.tphi);
    CHECK(again.N == red.N);
}

TEST_CASE("quasi_special_reduce: (psi | 0) reduces the first block") {
    Morphism psi = make_z(2, 4, {1, 0, 2, 0, 0, 1, 1, 0});
    QuasiSpecialReduction red = quasi_special_reduce(psi, 3, 1);
    GaussReducedForm direct = gauss_reduce(make_z(2, 3, {1, 0, 2, 0, 1, 1}));
    // same pivot value as the plain reduction (columns stay in place here)
    CHECK(is_gauss_reduced(red.phi).pivot == direct.a);
    REQUIRE(red.phi_prime.has_value());
    CHECK(red.phi_prime->is_zero());
    Classification cls = classify(red.tphi, 3, 1);
    CHECK((cls.label == MorphismClass::QuasiSpecial || cls.label == MorphismClass::Special));
}

TEST_CASE("quasi_special_reduce rejects a rank-deficient first block") {
    Morphism psi = make_z(2, 4, {1, 2, 2, 1, 2, 4, 4, 5});
    CHECK_THROWS_AS(quasi_special_reduce(psi, 3, 1), std::domain_error);
}

TEST_CASE("embed_with_basis composes with quasi_special_reduce") {
    MWModel m = identity_model(2);
    GaussReducedForm form = as_reduced_form(make_z(2, 3, {2, 0, -1, 0, 2, 1}));
    QuasiOrthBasis gamma = quasi_orthonormal_basis(m, rat(10));
    std::size_t s = gamma.coeffs.rows();

    // x + y + xi in ker phi with [N] y = G gamma
    std::vector<Int> G(3 * s, 0);
    G[0 * s + 0] = 1;
    Int N(2);
    PowerPoint y = PowerPoint::zero(m, 3);
    for (std::size_t c = 0; c < m.s_amb; ++c)
        y.factors[0].coords[c] += gamma.coeffs.at(0, c) / Rat(N);
    PowerPoint xi = PowerPoint::zero(m, 3);
    xi.factors[1].coords[0] = rat(1, 7);
    // x := (solve phi x = -phi(y + xi)) via the exact least squares
    PowerPoint target = scale(apply_morphism(m, form.phi, add(y, xi)), Rat(-1));
    PowerPoint x = min_norm_preimage(m, form.phi, target).xi;

    Morphism traw = embed_with_basis(m, form.phi, x, N, G, xi, gamma);
    CHECK(traw.g == 3 + s);
    QuasiSpecialReduction red = quasi_special_reduce(traw, 3, s);
    // the reduced morphism annihilates the image point too
    PowerPoint image = PowerPoint::zero(m, 3 + s);
    for (std::size_t j = 0; j < 3; ++j) image.factors[j] = x.factors[j];
    for (std::size_t l = 0; l < s; ++l)
        for (std::size_t c = 0; c < m.s_amb; ++c)
            image.factors[3 + l].coords[c] += gamma.coeffs.at(l, c);
    PowerPoint xi_emb = PowerPoint::zero(m, 3 + s);
    xi_emb.factors[1] = xi.factors[1];
    CHECK(norm_sq_sum(m, apply_morphism(m, red.tphi, add(image, xi_emb))) == 0);
}

TEST_CASE("scenario runner: deterministic and verifiable") {
    MWModel m = identity_model(2);
    ScenarioConfig cfg;
    cfg.kind = "cover";
    cfg.model = m;
    cfg.g = 3;
    cfg.r = 2;
    cfg.trials = 6;
    cfg.seed = 99;
    cfg.pivot_max = Int(100000);
    std::vector<ScenarioCertificate> a = run_scenario(cfg);
    std::vector<ScenarioCertificate> b = run_scenario(cfg);
    REQUIRE(a.size() == 6);
    bool saw_approx = false, saw_pass = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& ca = std::get<CoverCertificate>(a[i]);
        const auto& cb = std::get<CoverCertificate>(b[i]);
        CHECK(ca.f == cb.f);
        CHECK(ca.output_psi == cb.output_psi);
        std::string why;
        CHECK_MESSAGE(verify_cover_certificate(m, ca, &why), why);
        (ca.passthrough ? saw_pass : saw_approx) = true;
    }
    CHECK(saw_approx);
    CHECK(saw_pass);
}

TEST_CASE("scenario runner: special and quasi_special kinds") {
    MWModel m = identity_model(2);
    ScenarioConfig cfg;
    cfg.model = m;
    cfg.g = 3;
    cfg.r = 2;
    cfg.trials = 4;
    cfg.seed = 5;
    cfg.pivot_max = Int(50);

    cfg.kind = "special";
    for (const auto& c : run_scenario(cfg)) {
        std::string why;
        CHECK_MESSAGE(verify_special_injection(m, std::get<SpecialInjection>(c), &why), why);
    }

    cfg.kind = "quasi_special";
    for (const auto& c : run_scenario(cfg)) {
        const auto& q = std::get<QuasiSpecialReduction>(c);
        Classification cls = classify(q.tphi, q.g_cols, q.s_cols);
        CHECK((cls.label == MorphismClass::QuasiSpecial || cls.label == MorphismClass::Special));
    }

    cfg.kind = "projection";
    for (const auto& c : run_scenario(cfg)) {
        std::string why;
        CHECK_MESSAGE(verify_projection(m, std::get<ProjectionCertificate>(c), &why), why);
    }
}
