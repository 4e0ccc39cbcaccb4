#include "ellkit/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using ellkit::Json;

Json read_json_input(const std::string& path) {
    if (path.empty() || path == "-") {
        Json j;
        std::cin >> j;
        return j;
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    Json j;
    in >> j;
    return j;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::vector<std::string> lines;
    std::istream* in = &std::cin;
    std::ifstream file;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open input file: " + path);
        in = &file;
    }
    std::string line;
    while (std::getline(*in, line)) {
        bool blank = line.find_first_not_of(" \t\r\n") == std::string::npos;
        if (!blank) lines.push_back(line);
    }
    return lines;
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << j.dump(2) << "\n";
}

void emit_lines(const std::vector<Json>& lines, const std::string& out_path) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
        out = &file;
    }
    for (const auto& j : lines) *out << j.dump() << "\n";
}

int fail_input(const std::string& msg) {
    std::cerr << Json{{"error", msg}}.dump() << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace ellkit;
    CLI::App app{"exact toolkit for morphisms of elliptic curve powers and height lattices"};
    app.require_subcommand(1);

    std::string in_path, out_path, params_path, model_path, scenario_path;
    unsigned long long seed = 1;
    std::string precision = "1/1000000";

    app.add_option("--seed", seed, "deterministic seed for randomized subcommands");
    app.add_option("--precision", precision, "target enclosure width as p/q");

    auto* cmd_reduce = app.add_subcommand("reduce", "Gauss-reduce a morphism, emit the certificate");
    cmd_reduce->add_option("--in", in_path, "morphism JSON (default stdin)");
    cmd_reduce->add_option("--out", out_path, "output path (default stdout)");

    std::string q_str = "2";
    auto* cmd_approx = app.add_subcommand("approx", "Dirichlet-approximate a Gauss-reduced morphism");
    cmd_approx->add_option("--in", in_path, "morphism JSON (default stdin)");
    cmd_approx->add_option("--Q", q_str, "approximation parameter Q >= 2");
    cmd_approx->add_option("--out", out_path, "output path");

    std::size_t en_g = 2, en_r = 1;
    std::string en_M = "1";
    auto* cmd_enum = app.add_subcommand("enumerate", "list Gauss-reduced morphisms of height <= M");
    cmd_enum->add_option("--g", en_g, "columns");
    cmd_enum->add_option("--r", en_r, "rows");
    cmd_enum->add_option("--M", en_M, "height bound");
    cmd_enum->add_option("--out", out_path, "output path");

    auto* cmd_bounds = app.add_subcommand("bounds", "compute the effective bound report");
    cmd_bounds->add_option("--params", params_path, "curve parameters JSON");
    cmd_bounds->add_option("--model", model_path, "optional lattice model to fill ret constants");
    cmd_bounds->add_option("--out", out_path, "output path");

    auto* cmd_sim = app.add_subcommand("simulate", "run planted-witness cover scenarios");
    cmd_sim->add_option("--scenario", scenario_path, "scenario JSON");
    cmd_sim->add_option("--out", out_path, "output path (JSON lines)");

    auto* cmd_heights = app.add_subcommand("heights", "canonical heights and the pairing Gram matrix");
    cmd_heights->add_option("--in", in_path, "curve + points JSON (default stdin)");
    cmd_heights->add_option("--out", out_path, "output path");

    auto* cmd_verify = app.add_subcommand("verify", "replay certificates and report pass/fail");
    cmd_verify->add_option("--in", in_path, "certificate file (object or JSON lines)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_reduce->parsed()) {
            Morphism psi = morphism_from_json(read_json_input(in_path));
            GaussReducedForm form = gauss_reduce(psi);
            emit(to_json(form, psi), out_path);
            return 0;
        }
        if (cmd_approx->parsed()) {
            Morphism psi = morphism_from_json(read_json_input(in_path));
            GaussReducedForm form = gauss_reduce(psi);
            ApproxCertificate cert = approx_gauss_reduced(form, int_from_string(q_str));
            emit(to_json(cert), out_path);
            return 0;
        }
        if (cmd_enum->parsed()) {
            std::vector<Morphism> all = enumerate_gauss_reduced(en_g, en_r, int_from_string(en_M));
            Json items = Json::array();
            for (const auto& m : all) items.push_back(to_json(m));
            emit(Json{{"type", "enumeration"},
                      {"g", en_g},
                      {"r", en_r},
                      {"M", en_M},
                      {"count", all.size()},
                      {"items", items}},
                 out_path);
            return 0;
        }
        if (cmd_bounds->parsed()) {
            CurveParams p = params_from_json(read_json_input(params_path));
            if (!model_path.empty()) {
                MWModel m = model_from_json(read_json_input(model_path));
                fill_ret_constants(p, m, m.gamma0);
            }
            EffectiveBounds b = compute_bounds(p);
            Json out = to_json(b);
            out["params"] = to_json(p);
            emit(out, out_path);
            return 0;
        }
        if (cmd_sim->parsed()) {
            Json sj = read_json_input(scenario_path);
            ScenarioConfig cfg;
            cfg.kind = sj.value("kind", std::string("cover"));
            cfg.model = model_from_json(sj.at("model"));
            cfg.g = sj.value("g", 3);
            cfg.r = sj.value("r", 2);
            cfg.trials = sj.value("trials", 10);
            cfg.seed = sj.contains("seed") ? sj.at("seed").get<unsigned long long>() : seed;
            if (sj.contains("pivot_max"))
                cfg.pivot_max = sj.at("pivot_max").is_string()
                                    ? int_from_string(sj.at("pivot_max").get<std::string>())
                                    : Int(sj.at("pivot_max").get<long>());
            if (sj.contains("eps")) cfg.eps = rat_from_json(sj.at("eps"));
            if (sj.contains("phi")) cfg.phi = morphism_from_json(sj.at("phi"));

            std::vector<Json> lines;
            lines.push_back(Json{{"type", "context"}, {"model", to_json(cfg.model)}, {"scenario", sj}});
            std::vector<ScenarioCertificate> certs = run_scenario(cfg);
            for (const auto& c : certs) {
                if (std::holds_alternative<CoverCertificate>(c))
                    lines.push_back(to_json(std::get<CoverCertificate>(c)));
                else if (std::holds_alternative<SpecialInjection>(c))
                    lines.push_back(to_json(std::get<SpecialInjection>(c)));
                else if (std::holds_alternative<ProjectionCertificate>(c))
                    lines.push_back(to_json(std::get<ProjectionCertificate>(c)));
                else
                    lines.push_back(to_json(std::get<QuasiSpecialReduction>(c)));
            }
            emit_lines(lines, out_path);
            return 0;
        }
        if (cmd_heights->parsed()) {
            Json j = read_json_input(in_path);
            WeierstrassCurve curve = curve_from_json(j.at("curve"));
            std::vector<RatPoint> pts;
            for (const auto& pj : j.at("points")) pts.push_back(rat_point_from_json(pj));
            for (const auto& p : pts)
                if (!on_curve(curve, p)) throw std::invalid_argument("heights: point not on curve");
            Rat prec = j.contains("precision") ? rat_from_json(j.at("precision"))
                                               : rat_from_string(precision);
            GramResult gr = height_pairing_gram(curve, pts, prec);
            std::vector<std::string> names;
            if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
            emit(gram_to_json(gr, names), out_path);
            return 0;
        }
        if (cmd_verify->parsed()) {
            // one pretty-printed object, or a JSON-lines stream
            std::vector<Json> objects;
            std::vector<std::string> lines = read_lines(in_path);
            std::string whole;
            for (const auto& l : lines) whole += l + "\n";
            try {
                Json j = Json::parse(whole);
                if (j.is_array())
                    for (const auto& item : j) objects.push_back(item);
                else
                    objects.push_back(j);
            } catch (const Json::exception&) {
                for (const auto& line : lines) objects.push_back(Json::parse(line));
            }
            std::optional<MWModel> model;
            bool all_ok = true;
            std::size_t idx = 0;
            for (const auto& j : objects) {
                VerifyReport rep = verify_json(j, model);
                if (rep.type == "context") continue;
                std::cout << (rep.ok ? "PASS" : "FAIL") << " item " << idx << " [" << rep.type << "]"
                          << (rep.message.empty() ? "" : ": " + rep.message) << "\n";
                all_ok = all_ok && rep.ok;
                ++idx;
            }
            return all_ok ? 0 : 1;
        }
    } catch (const Json::exception& e) {
        return fail_input(std::string("json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        return fail_input(e.what());
    } catch (const std::domain_error& e) {
        return fail_input(e.what());
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
