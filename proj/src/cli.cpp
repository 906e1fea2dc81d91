#include "crooked/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "crooked/config_io.hpp"
#include "crooked/properties.hpp"
#include "crooked/rng.hpp"
#include "crooked/svg.hpp"
#include "crooked/zigzag.hpp"

namespace crooked {

namespace {

using nlohmann::json;

json point_json(const SpacePoint& p) { return json::array({p.x1, p.x2, p.x3}); }

void emit(const json& j, const std::string& path) {
    std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << text;
    }
}

json validation_json(const ValidationReport& rep) {
    json j;
    j["ok"] = rep.ok;
    j["delta0"] = rep.delta0;
    j["theta0"] = rep.theta0;
    j["eps0"] = rep.eps0;
    j["max_pairing_residual"] = rep.max_pairing_residual;
    j["min_halfspace_separation"] = rep.min_halfspace_separation;
    j["x_nonempty"] = rep.x_nonempty;
    json seps = json::array();
    for (const auto& s : rep.halfspace_separations) {
        json e;
        e["pair"] = s.a.str() + "," + s.b.str();
        e["distance"] = s.distance;
        e["asymptotic"] = s.asymptotic;
        seps.push_back(e);
    }
    j["halfspace_separations"] = seps;
    json star = json::array();
    for (const auto& s : rep.star_separations) {
        json e;
        e["pair"] = s.a.str() + "," + s.b.str();
        e["distance"] = s.distance;
        star.push_back(e);
    }
    j["star_separations"] = star;
    j["linear"] = {{"ok", rep.linear_report.ok},
                   {"theta0", rep.linear_report.theta0},
                   {"eps0", rep.linear_report.eps0},
                   {"smallest_interval", rep.linear_report.smallest_interval}};
    j["failures"] = rep.failures;
    return j;
}

}  // namespace

double tolerance_from_env() {
    const char* env = std::getenv("CROOKED_TOL");
    if (!env || !*env) return 1e-9;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
        throw std::invalid_argument("CROOKED_TOL: not a positive number");
    return v;
}

int cmd_validate(const std::string& config_path, const std::string& json_out, double tol) {
    AffineSchottkyConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    ValidationReport rep = validate(cfg, tol);
    emit(validation_json(rep), json_out);
    return rep.ok ? kExitOk : kExitMath;
}

int cmd_tile(const TileOptions& opt) {
    AffineSchottkyConfig cfg;
    try {
        cfg = load_config(opt.config_path);
    } catch (const ConfigParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    // Render best-effort even for configurations that fail validation (the
    // linear case with all vertices at the origin is a legitimate picture);
    // the exit code still reports the failure.
    ValidationReport rep = validate(cfg, opt.tol);
    if (!rep.ok) std::cerr << "warning: configuration failed validation; rendering anyway\n";
    auto tiles = enumerate_tiles(cfg, opt.depth);
    // Nudge the plane off every tile vertex, deterministically.
    double c = opt.plane;
    auto clear_of_vertices = [&](double height) {
        double clear = std::numeric_limits<double>::infinity();
        for (const auto& t : tiles)
            for (const auto& f : t.faces) clear = std::min(clear, std::abs(f.p.x3 - height));
        return clear;
    };
    for (int k = 1; clear_of_vertices(c) <= 1e-9 && k <= 100; ++k) {
        c = opt.plane + 1e-6 * k;
        if (k == 1) std::cerr << "warning: slice plane passes through a vertex; nudging\n";
    }
    DefinitePlane plane = DefinitePlane::horizontal(c);

    SvgScene scene{opt.xmin, opt.xmax, opt.ymin, opt.ymax, {}};
    for (const auto& t : tiles) {
        int face_idx = 0;
        for (const auto& f : t.faces) {
            Zigzag z = slice(f.boundary(), plane, opt.tol);
            scene.add_zigzag(t.word.str() + "#" + std::to_string(face_idx++),
                             static_cast<int>(t.word.size()), z);
        }
    }
    std::ofstream out(opt.out_path);
    if (!out) {
        std::cerr << "cannot write " << opt.out_path << "\n";
        return kExitParse;
    }
    out << scene.render();
    return rep.ok ? kExitOk : kExitMath;
}

int cmd_locate(const std::string& config_path, double x, double y, double z, int max_steps,
               const std::string& json_out, double tol) {
    AffineSchottkyConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    ValidationReport rep = validate(cfg, tol);
    if (!rep.ok) {
        std::cerr << "configuration failed validation\n";
        return kExitMath;
    }
    SpacePoint q{x, y, z};
    auto res = locate(cfg, q, max_steps, tol);
    json j;
    if (std::holds_alternative<LocateResult>(res)) {
        const auto& loc = std::get<LocateResult>(res);
        j["located"] = true;
        j["word"] = loc.word.str();
        j["word_length"] = loc.word.size();
        j["final_point"] = point_json(loc.final);
        j["on_boundary"] = loc.on_boundary;
        emit(j, json_out);
        return kExitOk;
    }
    const auto& nl = std::get<NotLocated>(res);
    j["located"] = false;
    j["partial_word"] = nl.partial_word.str();
    j["steps"] = nl.steps;
    j["last_point"] = point_json(nl.last_point);
    // Nested-sequence diagnostics: the witness the completeness argument
    // would dissect.
    try {
        NestedSequence seq = nested_sequence(cfg, q, std::min(max_steps, 8), tol);
        json terms = json::array();
        for (const auto& t : seq.terms) {
            json e;
            e["index"] = t.index.str();
            e["gamma"] = t.gamma_word.str();
            e["vertex"] = point_json(t.half_space.p);
            terms.push_back(e);
        }
        j["nested_sequence"] = terms;
    } catch (const std::exception& e) {
        j["nested_sequence_error"] = e.what();
    }
    emit(j, json_out);
    return kExitNotLocated;
}

int cmd_verify(const VerifyOptions& opt) {
    AffineSchottkyConfig cfg;
    try {
        cfg = load_config(opt.config_path);
    } catch (const ConfigParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    PropertyBudget budget{opt.samples, opt.seed, opt.tol};
    std::vector<SeparationRow> rows;
    auto results = run_property_suite(cfg, budget, &rows);
    json j;
    j["config"] = opt.config_path;
    j["samples"] = opt.samples;
    j["seed"] = opt.seed;
    j["tol"] = opt.tol;
    j["rng"] = Rng::kAlgorithm;
    json checks = json::array();
    bool all = true;
    for (const auto& r : results) {
        json e;
        e["name"] = r.name;
        e["pass"] = r.pass;
        e["max_residual"] = r.max_residual;
        if (!r.detail.empty()) e["detail"] = r.detail;
        if (!r.pass) e["failure_class"] = r.tolerance_limited ? "tolerance" : "mathematics";
        checks.push_back(e);
        all = all && r.pass;
    }
    j["checks"] = checks;
    j["pass"] = all;
    emit(j, opt.json_out);
    if (!opt.separation_csv.empty()) {
        std::ofstream csv(opt.separation_csv);
        if (!csv) {
            std::cerr << "cannot write " << opt.separation_csv << "\n";
            return kExitParse;
        }
        csv << "k,rho_Lk_Lk1,bound,pass\n";
        char buf[128];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d\n", r.k, r.rho, r.bound,
                          r.pass && r.wu_pass && r.audit_ok ? 1 : 0);
            csv << buf;
        }
    }
    return all ? kExitOk : kExitMath;
}

}  // namespace crooked
