#include "ellkit/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ellkit;

// Rationals and big integers cross the boundary as strings ("p/q", decimal);
// structured data as JSON strings. Exactness survives the trip.

namespace {

std::string dump(const Json& j) { return j.dump(); }

Morphism parse_morphism(const std::string& s) { return morphism_from_json(Json::parse(s)); }
MWModel parse_model(const std::string& s) { return model_from_json(Json::parse(s)); }

}  // namespace

PYBIND11_MODULE(ellkit, m) {
    m.doc() = "exact toolkit for morphisms of elliptic curve powers and height lattices";

    py::class_<EndRing>(m, "EndRing")
        .def_static("integers", &EndRing::integers)
        .def_static(
            "order", [](long u, long v) { return EndRing::order(Int(u), Int(v)); }, py::arg("u"),
            py::arg("v"))
        .def("is_order", &EndRing::is_order)
        .def("discriminant", [](const EndRing& r) { return to_string(r.discriminant()); });

    py::class_<RingElem>(m, "RingElem")
        .def(py::init([](const std::string& x, const std::string& y) {
                 return RingElem{int_from_string(x), int_from_string(y)};
             }),
             py::arg("x"), py::arg("y") = "0")
        .def_property_readonly("x", [](const RingElem& e) { return to_string(e.x); })
        .def_property_readonly("y", [](const RingElem& e) { return to_string(e.y); })
        .def("__repr__", [](const RingElem& e) { return to_string(e); });

    m.def("ring_add",
          [](const EndRing& R, const RingElem& a, const RingElem& b) { return add(R, a, b); });
    m.def("ring_mul",
          [](const EndRing& R, const RingElem& a, const RingElem& b) { return mul(R, a, b); });
    m.def("ring_sub",
          [](const EndRing& R, const RingElem& a, const RingElem& b) { return sub(R, a, b); });
    m.def("ring_neg", [](const EndRing& R, const RingElem& a) { return neg(R, a); });
    m.def("ring_conj", [](const EndRing& R, const RingElem& a) { return conj(R, a); });
    m.def("norm_sq", [](const EndRing& R, const RingElem& a) { return to_string(norm_sq(R, a)); });

    py::class_<Morphism>(m, "Morphism")
        .def_static("from_json", &parse_morphism)
        .def("to_json", [](const Morphism& mm) { return dump(to_json(mm)); })
        .def_property_readonly("r", [](const Morphism& mm) { return mm.r; })
        .def_property_readonly("g", [](const Morphism& mm) { return mm.g; })
        .def("rank", &Morphism::rank)
        .def("__repr__", [](const Morphism& mm) { return to_string(mm); });

    m.def("height_sq", [](const Morphism& mm) { return to_string(height(mm).h_sq); });
    m.def("is_gauss_reduced", [](const Morphism& mm) {
        GaussDiagnosis d = is_gauss_reduced(mm);
        return py::make_tuple(d.ok, d.reason);
    });
    m.def("gauss_reduce", [](const Morphism& mm) { return dump(to_json(gauss_reduce(mm), mm)); });
    m.def("classify", [](const Morphism& mm, std::size_t g, std::size_t s) -> std::string {
        switch (classify(mm, g, s).label) {
            case MorphismClass::Special:
                return "special";
            case MorphismClass::QuasiSpecial:
                return "quasi-special";
            case MorphismClass::GaussReduced:
                return "gauss-reduced";
            default:
                return "none";
        }
    });
    m.def("cm_flatten", &cm_flatten);
    m.def("enumerate_gauss_reduced", [](std::size_t g, std::size_t r, const std::string& M) {
        std::vector<std::string> out;
        for (const auto& mm : enumerate_gauss_reduced(g, r, int_from_string(M)))
            out.push_back(dump(to_json(mm)));
        return out;
    });

    m.def("dirichlet_approx", [](const std::vector<std::string>& alpha, const std::string& Q) {
        std::vector<Rat> a;
        for (const auto& s : alpha) a.push_back(rat_from_string(s));
        DirichletResult r = dirichlet_approx(a, int_from_string(Q));
        std::vector<std::string> fv;
        for (const auto& v : r.f_vec) fv.push_back(to_string(v));
        return py::make_tuple(to_string(r.f), fv);
    });
    m.def("approx_gauss_reduced", [](const Morphism& phi, const std::string& Q) {
        return dump(to_json(approx_gauss_reduced(gauss_reduce(phi), int_from_string(Q))));
    });

    py::class_<MWModel>(m, "MWModel")
        .def_static("from_json", &parse_model)
        .def("to_json", [](const MWModel& mm) { return dump(to_json(mm)); })
        .def_property_readonly("rank", [](const MWModel& mm) { return mm.s_amb; });

    m.def("c1_constant", [](const MWModel& mm, const std::vector<std::size_t>& idx) {
        PerturbationConstants rc = c1_constant(mm, idx);
        return py::make_tuple(to_string(rc.c1), to_string(rc.c2), to_string(rc.eps0));
    });
    m.def("quasi_orthonormal_basis", [](const MWModel& mm, const std::string& K) {
        QuasiOrthBasis b = quasi_orthonormal_basis(mm, rat_from_string(K));
        return py::make_tuple(to_string(b.n0), to_string(b.lambda_min));
    });

    m.def("canonical_height", [](const std::string& curve_json, const std::string& point_json,
                                 const std::string& prec) {
        WeierstrassCurve e = curve_from_json(Json::parse(curve_json));
        RatPoint p = rat_point_from_json(Json::parse(point_json));
        RatInterval h = canonical_height(e, p, rat_from_string(prec));
        return py::make_tuple(to_string(h.lo), to_string(h.hi));
    });
    m.def("height_pairing_gram", [](const std::string& curve_json, const std::string& points_json,
                                    const std::string& prec) {
        WeierstrassCurve e = curve_from_json(Json::parse(curve_json));
        std::vector<RatPoint> pts;
        for (const auto& pj : Json::parse(points_json)) pts.push_back(rat_point_from_json(pj));
        GramResult g = height_pairing_gram(e, pts, rat_from_string(prec));
        return dump(gram_to_json(g, {}));
    });

    m.def("compute_bounds", [](const std::string& params_json) {
        CurveParams p = params_from_json(Json::parse(params_json));
        Json out = to_json(compute_bounds(p));
        out["params"] = to_json(p);
        return dump(out);
    });

    m.def("run_scenario", [](const std::string& scenario_json) {
        Json sj = Json::parse(scenario_json);
        ScenarioConfig cfg;
        cfg.kind = sj.value("kind", std::string("cover"));
        cfg.model = model_from_json(sj.at("model"));
        cfg.g = sj.value("g", 3);
        cfg.r = sj.value("r", 2);
        cfg.trials = sj.value("trials", 10);
        cfg.seed = sj.value("seed", 1ULL);
        if (sj.contains("pivot_max"))
            cfg.pivot_max = int_from_string(sj.at("pivot_max").get<std::string>());
        std::vector<std::string> lines;
        lines.push_back(dump(Json{{"type", "context"}, {"model", to_json(cfg.model)}}));
        for (const auto& c : run_scenario(cfg)) {
            if (std::holds_alternative<CoverCertificate>(c))
                lines.push_back(dump(to_json(std::get<CoverCertificate>(c))));
            else if (std::holds_alternative<SpecialInjection>(c))
                lines.push_back(dump(to_json(std::get<SpecialInjection>(c))));
            else if (std::holds_alternative<ProjectionCertificate>(c))
                lines.push_back(dump(to_json(std::get<ProjectionCertificate>(c))));
            else
                lines.push_back(dump(to_json(std::get<QuasiSpecialReduction>(c))));
        }
        return lines;
    });

    m.def("verify", [](const std::string& object_json) {
        std::optional<MWModel> ctx;
        VerifyReport rep = verify_json(Json::parse(object_json), ctx);
        return py::make_tuple(rep.ok, rep.type, rep.message);
    });
    m.def("verify_stream", [](const std::vector<std::string>& lines) {
        std::optional<MWModel> ctx;
        bool all_ok = true;
        std::vector<py::tuple> reports;
        for (const auto& line : lines) {
            VerifyReport rep = verify_json(Json::parse(line), ctx);
            if (rep.type == "context") continue;
            all_ok = all_ok && rep.ok;
            reports.push_back(py::make_tuple(rep.ok, rep.type, rep.message));
        }
        return py::make_tuple(all_ok, reports);
    });
}
