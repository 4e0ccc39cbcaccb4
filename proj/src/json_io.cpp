#include "ellkit/json_io.hpp"

namespace ellkit {

Json to_json(const Rat& q) { return to_string(q); }

Json to_json(const RatInterval& v) {
    if (v.is_point()) return to_string(v.lo);
    return Json{{"lo", to_string(v.lo)}, {"hi", to_string(v.hi)}};
}

Json to_json(const EndRing& r) {
    if (!r.is_order()) return Json{{"kind", "integers"}};
    return Json{{"kind", "order"}, {"u", to_string(r.u)}, {"v", to_string(r.v)}};
}

Json to_json(const RingElem& e) { return Json::array({to_string(e.x), to_string(e.y)}); }

Json to_json(const Morphism& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.r; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.g; ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return Json{{"r", m.r}, {"g", m.g}, {"ring", to_json(m.ring)}, {"entries", rows}};
}

Json to_json(const GaussReducedForm& f, const Morphism& input) {
    Json delta = Json::array();
    for (std::size_t i = 0; i < f.phi.r; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < f.phi.r; ++j) row.push_back(to_json(f.delta[i * f.phi.r + j]));
        delta.push_back(row);
    }
    return Json{{"type", "gauss_reduced_form"},
                {"input", to_json(input)},
                {"phi", to_json(f.phi)},
                {"a", to_json(f.a)},
                {"sigma", f.sigma},
                {"delta", delta},
                {"N", to_json(f.N)},
                {"content_partial", f.content_partial}};
}

Json to_json(const ApproxCertificate& c) {
    return Json{{"type", "approx_certificate"},
                {"Q", to_string(c.Q)},
                {"n", c.n},
                {"f", to_string(c.f)},
                {"phi", to_json(c.phi)},
                {"a", to_json(c.a)},
                {"psi", to_json(c.psi)},
                {"lhs", to_json(c.lhs)},
                {"rhs", to_json(c.rhs)},
                {"passthrough", c.passthrough}};
}

Json to_json(const MWModel& m) {
    Json gram = Json::array();
    for (std::size_t i = 0; i < m.s_amb; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.s_amb; ++j) row.push_back(to_string(m.gram.at(i, j)));
        gram.push_back(row);
    }
    Json names = Json::array();
    for (const auto& n : m.names) names.push_back(n);
    return Json{{"type", "mw_model"},
                {"ring", to_json(m.ring)},
                {"generators", names.empty() ? Json(m.s_amb) : names},
                {"gram", gram},
                {"gamma0", m.gamma0}};
}

Json to_json(const LatticePoint& p) {
    Json arr = Json::array();
    for (const auto& c : p.coords) arr.push_back(to_string(c));
    return arr;
}

Json to_json(const PowerPoint& p) {
    Json arr = Json::array();
    for (const auto& f : p.factors) arr.push_back(to_json(f));
    return arr;
}

Json to_json(const CoverCertificate& c) {
    return Json{{"type", "cover_certificate"},
                {"phi", to_json(c.input_phi)},
                {"a", to_json(c.a)},
                {"psi", to_json(c.output_psi)},
                {"x", to_json(c.x)},
                {"y_prime", to_json(c.y_prime)},
                {"xi_prime", to_json(c.xi_prime)},
                {"claimed_radius", to_json(c.claimed_radius)},
                {"n", c.n},
                {"M", to_string(c.M)},
                {"eps", to_json(c.eps)},
                {"K1", to_json(c.K1)},
                {"Q", to_string(c.Q)},
                {"f", to_string(c.f)},
                {"passthrough", c.passthrough},
                {"preconditions", c.preconditions}};
}

Json to_json(const SpecialInjection& c) {
    Json g = Json::array();
    for (const auto& v : c.G) g.push_back(to_string(v));
    return Json{{"type", "special_injection"},
                {"tphi", to_json(c.tphi)},
                {"g", c.g_cols},
                {"s", c.s_cols},
                {"n_removed", to_string(c.n_removed)},
                {"N", to_string(c.N)},
                {"G", g},
                {"image", to_json(c.image)},
                {"xi", to_json(c.xi)},
                {"preconditions", c.preconditions}};
}

Json to_json(const QuasiSpecialReduction& c) {
    Json delta = Json::array();
    std::size_t r = c.phi.r;
    for (std::size_t i = 0; i < r; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < r; ++j) row.push_back(to_json(c.delta[i * r + j]));
        delta.push_back(row);
    }
    Json out{{"type", "quasi_special_reduction"},
             {"input", to_json(c.input)},
             {"g", c.g_cols},
             {"s", c.s_cols},
             {"tphi", to_json(c.tphi)},
             {"N", to_json(c.N)},
             {"phi", to_json(c.phi)},
             {"delta", delta},
             {"n1", to_json(c.n1)}};
    if (c.phi_prime) out["phi_prime"] = to_json(*c.phi_prime);
    return out;
}

Json to_json(const ProjectionCertificate& c) {
    return Json{{"type", "projection_certificate"},
                {"tphi", to_json(c.tphi)},
                {"N", to_json(c.N)},
                {"phi", to_json(c.phi)},
                {"x", to_json(c.x)},
                {"y", to_json(c.y)},
                {"zeta", to_json(c.zeta)},
                {"eps", to_json(c.eps)},
                {"K4", to_json(c.K4)},
                {"preconditions", c.preconditions}};
}

Json to_json(const CurveParams& p) {
    Json bc{{"entries", Json::array()}};
    for (const auto& [key, val] : p.bogomolov_c.entries)
        bc["entries"].push_back(
            Json{{"dim", key.first}, {"eta", to_string(key.second)}, {"c", to_string(val)}});
    if (p.bogomolov_c.fallback) bc["default"] = to_string(*p.bogomolov_c.fallback);
    return Json{{"type", "curve_params"},
                {"g", p.g},
                {"s", p.s},
                {"deg_c", to_string(p.deg_c)},
                {"K0", to_string(p.K0)},
                {"K1", to_string(p.K1)},
                {"K2", to_string(p.K2)},
                {"K3", to_string(p.K3)},
                {"vojta_c1", to_string(p.vojta_c1)},
                {"bogomolov_c", bc},
                {"c_double_prime", to_string(p.c_double_prime)},
                {"min_p_norm", to_string(p.min_p_norm)},
                {"max_p_norm", to_string(p.max_p_norm)},
                {"c_p", to_string(p.c_p)},
                {"eps_p", to_string(p.eps_p)},
                {"provenance", p.provenance}};
}

namespace {

Json annotated(const AnnotatedValue& v) {
    return Json{{"value", to_json(v.value)}, {"formula", v.formula}};
}

}  // namespace

Json to_json(const EffectiveBounds& b) {
    return Json{{"type", "effective_bounds"},
                {"n", b.n},
                {"eta0", annotated(b.eta0)},
                {"m", annotated(b.m)},
                {"eps1_C_eta", annotated(b.eps1_C_eta)},
                {"eps2_C_eta", annotated(b.eps2_C_eta)},
                {"eps_bogomolov", annotated(b.eps_bogomolov)},
                {"eps4", annotated(b.eps4)},
                {"M", annotated(b.M)},
                {"M_prime", annotated(b.M_prime)},
                {"delta1", annotated(b.delta1)},
                {"delta", annotated(b.delta)},
                {"K4", annotated(b.K4)},
                {"eps2_vojta", annotated(b.eps2_vojta)},
                {"eps1_remark", annotated(b.eps1_remark)},
                {"eps2_prime_remark", annotated(b.eps2_prime_remark)},
                {"effective_eps", annotated(b.effective_eps)},
                {"cardinality_cap", annotated(b.cardinality_cap)}};
}

Json to_json(const WeierstrassCurve& e) {
    Json out{{"a1", to_string(e.a1)},
             {"a2", to_string(e.a2)},
             {"a3", to_string(e.a3)},
             {"a4", to_string(e.a4)},
             {"a6", to_string(e.a6)}};
    if (e.height_diff_bound) out["height_diff_bound"] = to_string(*e.height_diff_bound);
    return out;
}

Json to_json(const RatPoint& p) {
    if (p.infinity) return Json{{"infinity", true}};
    return Json{{"x", to_string(p.x)}, {"y", to_string(p.y)}};
}

Json gram_to_json(const GramResult& g, const std::vector<std::string>& names) {
    Json gram = Json::array();
    std::size_t n = g.gram.size();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(to_json(g.gram[i][j]));
        gram.push_back(row);
    }
    MWModel model = model_from_gram(g, names);
    return Json{{"type", "height_gram"},
                {"gram", gram},
                {"max_radius", to_string(g.max_radius)},
                {"model", to_json(model)}};
}

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    throw std::invalid_argument("expected a rational as \"p/q\" string");
}

RatInterval interval_from_json(const Json& j) {
    if (j.is_object()) return {rat_from_json(j.at("lo")), rat_from_json(j.at("hi"))};
    return RatInterval(rat_from_json(j));
}

EndRing ring_from_json(const Json& j) {
    if (j.contains("kind") && j.at("kind") == "integers") return EndRing::integers();
    if (j.contains("u") && j.contains("v"))
        return EndRing::order(int_from_string(j.at("u").is_string()
                                                  ? j.at("u").get<std::string>()
                                                  : std::to_string(j.at("u").get<long long>())),
                              int_from_string(j.at("v").is_string()
                                                  ? j.at("v").get<std::string>()
                                                  : std::to_string(j.at("v").get<long long>())));
    return EndRing::integers();
}

namespace {

Int int_from_json(const Json& j) {
    if (j.is_string()) return int_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    throw std::invalid_argument("expected an integer (decimal string)");
}

}  // namespace

RingElem elem_from_json(const Json& j) {
    if (j.is_array() && j.size() == 2) return RingElem{int_from_json(j[0]), int_from_json(j[1])};
    if (j.is_string() || j.is_number_integer()) return RingElem{int_from_json(j), 0};
    // standalone form {"ring": {...}, "x": ..., "y": ...}
    if (j.is_object() && j.contains("x"))
        return RingElem{int_from_json(j.at("x")),
                        j.contains("y") ? int_from_json(j.at("y")) : Int(0)};
    throw std::invalid_argument("expected a ring element as [x, y]");
}

Morphism morphism_from_json(const Json& j) {
    EndRing ring = ring_from_json(j.at("ring"));
    std::size_t r = j.at("r").get<std::size_t>();
    std::size_t g = j.at("g").get<std::size_t>();
    Morphism m(ring, r, g);
    const Json& rows = j.at("entries");
    if (rows.size() != r) throw std::invalid_argument("morphism: row count mismatch");
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != g) throw std::invalid_argument("morphism: column count mismatch");
        for (std::size_t c = 0; c < g; ++c) m.at(i, c) = elem_from_json(rows[i][c]);
    }
    return m;
}

MWModel model_from_json(const Json& j) {
    MWModel m;
    m.ring = ring_from_json(j.at("ring"));
    const Json& gram = j.at("gram");
    m.s_amb = gram.size();
    m.gram = QMat(m.s_amb, m.s_amb);
    for (std::size_t i = 0; i < m.s_amb; ++i)
        for (std::size_t c = 0; c < m.s_amb; ++c) m.gram.at(i, c) = rat_from_json(gram[i][c]);
    if (j.contains("gamma0")) m.gamma0 = j.at("gamma0").get<std::vector<std::size_t>>();
    if (j.contains("generators") && j.at("generators").is_array())
        m.names = j.at("generators").get<std::vector<std::string>>();
    m.validate();
    return m;
}

LatticePoint point_from_json(const Json& j, const MWModel& m) {
    LatticePoint p = LatticePoint::zero(m);
    if (j.size() != p.coords.size()) throw std::invalid_argument("point: coordinate count mismatch");
    for (std::size_t i = 0; i < p.coords.size(); ++i) p.coords[i] = rat_from_json(j[i]);
    return p;
}

PowerPoint power_point_from_json(const Json& j, const MWModel& m) {
    PowerPoint p;
    for (const auto& f : j) p.factors.push_back(point_from_json(f, m));
    return p;
}

CurveParams params_from_json(const Json& j) {
    CurveParams p;
    p.g = j.at("g").get<long>();
    p.s = j.value("s", 0L);
    p.deg_c = int_from_json(j.value("deg_c", Json("1")));
    auto opt = [&](const char* key, Rat def) { return j.contains(key) ? rat_from_json(j.at(key)) : def; };
    p.K0 = opt("K0", Rat(1));
    p.K1 = opt("K1", Rat(1));
    p.K2 = opt("K2", Rat(1));
    p.K3 = opt("K3", Rat(1));
    p.vojta_c1 = opt("vojta_c1", Rat(1));
    p.c_double_prime = opt("c_double_prime", Rat(1));
    p.min_p_norm = opt("min_p_norm", Rat(1));
    p.max_p_norm = opt("max_p_norm", Rat(1));
    p.c_p = opt("c_p", Rat(1));
    p.eps_p = opt("eps_p", Rat(1, 8));
    if (j.contains("bogomolov_c")) {
        const Json& bc = j.at("bogomolov_c");
        if (bc.contains("default")) p.bogomolov_c.fallback = rat_from_json(bc.at("default"));
        if (bc.contains("entries"))
            for (const auto& e : bc.at("entries"))
                p.bogomolov_c.entries[{e.at("dim").get<long>(), rat_from_json(e.at("eta"))}] =
                    rat_from_json(e.at("c"));
    } else {
        p.bogomolov_c.fallback = Rat(1);
    }
    if (j.contains("provenance"))
        p.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
    p.validate();
    return p;
}

WeierstrassCurve curve_from_json(const Json& j) {
    WeierstrassCurve e;
    e.a1 = rat_from_json(j.value("a1", Json("0")));
    e.a2 = rat_from_json(j.value("a2", Json("0")));
    e.a3 = rat_from_json(j.value("a3", Json("0")));
    e.a4 = rat_from_json(j.value("a4", Json("0")));
    e.a6 = rat_from_json(j.value("a6", Json("0")));
    if (j.contains("height_diff_bound")) e.height_diff_bound = rat_from_json(j.at("height_diff_bound"));
    e.validate();
    return e;
}

RatPoint rat_point_from_json(const Json& j) {
    if (j.contains("infinity") && j.at("infinity").get<bool>()) return RatPoint::at_infinity();
    return RatPoint::affine(rat_from_json(j.at("x")), rat_from_json(j.at("y")));
}

ApproxCertificate approx_certificate_from_json(const Json& j) {
    ApproxCertificate c;
    c.Q = int_from_json(j.at("Q"));
    c.n = j.at("n").get<std::size_t>();
    c.f = int_from_json(j.at("f"));
    c.phi = morphism_from_json(j.at("phi"));
    c.a = elem_from_json(j.at("a"));
    c.psi = morphism_from_json(j.at("psi"));
    c.lhs = rat_from_json(j.at("lhs"));
    c.rhs = rat_from_json(j.at("rhs"));
    c.passthrough = j.value("passthrough", false);
    return c;
}

CoverCertificate cover_certificate_from_json(const Json& j, const MWModel& m) {
    CoverCertificate c;
    c.input_phi = morphism_from_json(j.at("phi"));
    c.a = elem_from_json(j.at("a"));
    c.output_psi = morphism_from_json(j.at("psi"));
    c.x = power_point_from_json(j.at("x"), m);
    c.y_prime = power_point_from_json(j.at("y_prime"), m);
    c.xi_prime = power_point_from_json(j.at("xi_prime"), m);
    c.claimed_radius = rat_from_json(j.at("claimed_radius"));
    c.n = j.at("n").get<std::size_t>();
    c.M = int_from_json(j.at("M"));
    c.eps = rat_from_json(j.at("eps"));
    c.K1 = rat_from_json(j.at("K1"));
    c.Q = int_from_json(j.at("Q"));
    c.f = int_from_json(j.at("f"));
    c.passthrough = j.value("passthrough", false);
    if (j.contains("preconditions"))
        c.preconditions = j.at("preconditions").get<std::map<std::string, std::string>>();
    return c;
}

SpecialInjection special_injection_from_json(const Json& j, const MWModel& m) {
    SpecialInjection c;
    c.tphi = morphism_from_json(j.at("tphi"));
    c.g_cols = j.at("g").get<std::size_t>();
    c.s_cols = j.at("s").get<std::size_t>();
    c.n_removed = int_from_json(j.at("n_removed"));
    c.N = int_from_json(j.at("N"));
    for (const auto& v : j.at("G")) c.G.push_back(int_from_json(v));
    c.image = power_point_from_json(j.at("image"), m);
    c.xi = power_point_from_json(j.at("xi"), m);
    return c;
}

ProjectionCertificate projection_from_json(const Json& j, const MWModel& m) {
    ProjectionCertificate c;
    c.tphi = morphism_from_json(j.at("tphi"));
    c.N = elem_from_json(j.at("N"));
    c.phi = morphism_from_json(j.at("phi"));
    c.x = power_point_from_json(j.at("x"), m);
    c.y = power_point_from_json(j.at("y"), m);
    c.zeta = power_point_from_json(j.at("zeta"), m);
    c.eps = rat_from_json(j.at("eps"));
    c.K4 = rat_from_json(j.at("K4"));
    return c;
}

namespace {

VerifyReport verify_reduction_json(const Json& j) {
    VerifyReport rep;
    rep.type = "gauss_reduced_form";
    Morphism input = morphism_from_json(j.at("input"));
    GaussReducedForm f;
    f.phi = morphism_from_json(j.at("phi"));
    f.a = elem_from_json(j.at("a"));
    f.sigma = j.at("sigma").get<std::vector<std::size_t>>();
    f.N = elem_from_json(j.at("N"));
    const Json& delta = j.at("delta");
    for (std::size_t i = 0; i < delta.size(); ++i)
        for (std::size_t c = 0; c < delta[i].size(); ++c) f.delta.push_back(elem_from_json(delta[i][c]));
    if (f.phi.at(0, 0) != f.a) {
        rep.message = "pivot mismatch";
        return rep;
    }
    if (!check_reduction_certificate(input, f)) {
        rep.message = "certificate identity delta psi = N (phi o sigma) fails";
        return rep;
    }
    // pivot maximality: |a| = max |r x r minor| / |N| by exhaustive minors
    const EndRing& R = input.ring;
    std::size_t r = input.r, g = input.g;
    Int best = 0;
    std::vector<std::size_t> cols(r);
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    while (true) {
        std::vector<RingElem> sub(r * r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t c = 0; c < r; ++c) sub[i * r + c] = input.at(i, cols[c]);
        best = std::max(best, norm_sq(R, ring_det(R, sub, r)));
        std::size_t k = r;
        bool advanced = false;
        while (k > 0) {
            --k;
            if (cols[k] + (r - k) < g) {
                ++cols[k];
                for (std::size_t c = k + 1; c < r; ++c) cols[c] = cols[c - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    if (norm_sq(R, f.a) * norm_sq(R, f.N) != best) {
        rep.message = "pivot is not the maximal minor divided by N";
        return rep;
    }
    rep.ok = true;
    return rep;
}

VerifyReport verify_quasi_special_json(const Json& j) {
    VerifyReport rep;
    rep.type = "quasi_special_reduction";
    Morphism input = morphism_from_json(j.at("input"));
    std::size_t g = j.at("g").get<std::size_t>();
    std::size_t s = j.at("s").get<std::size_t>();
    Morphism tphi = morphism_from_json(j.at("tphi"));
    RingElem n1 = elem_from_json(j.at("n1"));
    const Json& delta_j = j.at("delta");
    std::size_t r = input.r;
    std::vector<RingElem> delta;
    for (std::size_t i = 0; i < delta_j.size(); ++i)
        for (std::size_t c = 0; c < delta_j[i].size(); ++c)
            delta.push_back(elem_from_json(delta_j[i][c]));
    const EndRing& R = input.ring;
    // delta * input = n1 * tphi
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < g + s; ++c) {
            RingElem acc{0};
            for (std::size_t k = 0; k < r; ++k)
                acc = add(R, acc, mul(R, delta[i * r + k], input.at(k, c)));
            if (acc != mul(R, n1, tphi.at(i, c))) {
                rep.message = "identity delta psi = n1 tphi fails";
                return rep;
            }
        }
    Classification cls = classify(tphi, g, s);
    if (cls.label != MorphismClass::QuasiSpecial && cls.label != MorphismClass::Special) {
        rep.message = "tphi not quasi-special";
        return rep;
    }
    // decomposition fields replay: tphi = (N phi | phi'), phi Gauss-reduced
    Morphism phi = morphism_from_json(j.at("phi"));
    RingElem N = elem_from_json(j.at("N"));
    if (!is_gauss_reduced(phi).ok) {
        rep.message = "phi not Gauss-reduced";
        return rep;
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < g; ++c)
            if (tphi.at(i, c) != mul(R, N, phi.at(i, c))) {
                rep.message = "first block of tphi is not N phi";
                return rep;
            }
    if (j.contains("phi_prime")) {
        Morphism pp = morphism_from_json(j.at("phi_prime"));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t c = 0; c < s; ++c)
                if (tphi.at(i, g + c) != pp.at(i, c)) {
                    rep.message = "tail block of tphi is not phi'";
                    return rep;
                }
    }
    rep.ok = true;
    return rep;
}

VerifyReport verify_enumeration_json(const Json& j) {
    VerifyReport rep;
    rep.type = "enumeration";
    std::size_t g = j.at("g").get<std::size_t>();
    std::size_t r = j.at("r").get<std::size_t>();
    Int M = int_from_string(j.at("M").get<std::string>());
    std::vector<Morphism> expected = enumerate_gauss_reduced(g, r, M);
    const Json& items = j.at("items");
    if (j.at("count").get<std::size_t>() != expected.size() || items.size() != expected.size()) {
        rep.message = "count mismatch";
        return rep;
    }
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (!(morphism_from_json(items[i]) == expected[i])) {
            rep.message = "item " + std::to_string(i) + " differs from the deterministic stream";
            return rep;
        }
    rep.ok = true;
    return rep;
}

VerifyReport verify_bounds_json(const Json& j) {
    VerifyReport rep;
    rep.type = "effective_bounds";
    CurveParams p = params_from_json(j.at("params"));
    EffectiveBounds fresh = compute_bounds(p);
    Json expected = to_json(fresh);
    expected["params"] = to_json(p);
    Json got = j;
    if (expected != got) {
        rep.message = "bounds do not replay from the embedded parameters";
        return rep;
    }
    rep.ok = true;
    return rep;
}

VerifyReport verify_model_json(const Json& j) {
    VerifyReport rep;
    rep.type = "mw_model";
    try {
        model_from_json(j);
        rep.ok = true;
    } catch (const std::exception& e) {
        rep.message = e.what();
    }
    return rep;
}

}  // namespace

VerifyReport verify_json(const Json& j, std::optional<MWModel>& model) {
    VerifyReport rep;
    if (!j.contains("type")) {
        rep.message = "missing type";
        return rep;
    }
    std::string type = j.at("type").get<std::string>();
    rep.type = type;
    try {
        if (type == "context") {
            if (j.contains("model")) model = model_from_json(j.at("model"));
            rep.ok = true;
            return rep;
        }
        if (type == "mw_model") return verify_model_json(j);
        if (type == "approx_certificate") {
            ApproxCertificate c = approx_certificate_from_json(j);
            std::string why;
            rep.ok = verify_approx_certificate(c, &why);
            rep.message = why;
            return rep;
        }
        if (type == "gauss_reduced_form") return verify_reduction_json(j);
        if (type == "quasi_special_reduction") return verify_quasi_special_json(j);
        if (type == "enumeration") return verify_enumeration_json(j);
        if (type == "effective_bounds") return verify_bounds_json(j);
        if (type == "height_gram") {
            rep = verify_model_json(j.at("model"));
            rep.type = "height_gram";
            return rep;
        }
        if (type == "cover_certificate" || type == "special_injection" ||
            type == "projection_certificate") {
            if (!model) {
                rep.message = "certificate requires a model context";
                return rep;
            }
            std::string why;
            if (type == "cover_certificate") {
                CoverCertificate c = cover_certificate_from_json(j, *model);
                rep.ok = verify_cover_certificate(*model, c, &why);
            } else if (type == "special_injection") {
                SpecialInjection c = special_injection_from_json(j, *model);
                rep.ok = verify_special_injection(*model, c, &why);
            } else {
                ProjectionCertificate c = projection_from_json(j, *model);
                rep.ok = verify_projection(*model, c, &why);
            }
            rep.message = why;
            return rep;
        }
        rep.message = "unknown certificate type";
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.message = e.what();
    }
    return rep;
}

}  // namespace ellkit
