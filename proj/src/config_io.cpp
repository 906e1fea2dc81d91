#include "crooked/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace crooked {

namespace {

using nlohmann::json;

Vector3 vec_of(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ConfigParseError(std::string(what) + ": expected a length-3 array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

int sign_of(const json& j) {
    std::string s = j.get<std::string>();
    if (s == "+" || s == "+1") return +1;
    if (s == "-" || s == "-1") return -1;
    throw ConfigParseError("sign: expected \"+\" or \"-\"");
}

json vec_json(const Vector3& v) { return json::array({v.x1, v.x2, v.x3}); }
json point_json(const SpacePoint& p) { return json::array({p.x1, p.x2, p.x3}); }

}  // namespace

AffineSchottkyConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigParseError(e.what());
    }
    try {
        AffineSchottkyConfig cfg;
        cfg.m = j.at("m").get<int>();
        if (cfg.m < 1) throw ConfigParseError("m must be >= 1");

        struct Slot {
            bool have = false;
            Vector3 direction;
            SpacePoint vertex;
        };
        std::vector<Slot> plus(cfg.m), minus(cfg.m);
        if (!j.contains("half_spaces")) throw ConfigParseError("missing key: half_spaces");
        for (const auto& hj : j.at("half_spaces")) {
            int i = hj.at("i").get<int>();
            if (i < 1 || i > cfg.m) throw ConfigParseError("half_spaces: index out of range");
            int sign = sign_of(hj.at("sign"));
            Slot& s = sign > 0 ? plus[i - 1] : minus[i - 1];
            if (s.have) throw ConfigParseError("half_spaces: duplicate entry");
            s.have = true;
            Vector3 p = vec_of(hj.at("vertex"), "vertex");
            s.vertex = SpacePoint{p.x1, p.x2, p.x3};
            if (hj.contains("direction")) s.direction = vec_of(hj.at("direction"), "direction");
        }

        std::vector<Interval> a_plus, a_minus;
        bool have_intervals = j.contains("intervals");
        if (have_intervals) {
            std::vector<bool> seen(2 * cfg.m, false);
            a_plus.assign(cfg.m, Interval(0, 1));
            a_minus.assign(cfg.m, Interval(0, 1));
            for (const auto& ij : j.at("intervals")) {
                int i = ij.at("i").get<int>();
                if (i < 1 || i > cfg.m) throw ConfigParseError("intervals: index out of range");
                int sign = sign_of(ij.at("sign"));
                Interval a(ij.at("phi1").get<double>(), ij.at("phi2").get<double>());
                (sign > 0 ? a_plus : a_minus)[i - 1] = a;
                seen[2 * (i - 1) + (sign > 0 ? 0 : 1)] = true;
            }
            for (bool s : seen)
                if (!s) throw ConfigParseError("intervals: incomplete set");
        }

        bool have_generators = j.contains("generators");
        if (have_generators) {
            for (const auto& gj : j.at("generators")) {
                const auto& lin = gj.at("linear");
                if (!lin.is_array() || lin.size() != 9)
                    throw ConfigParseError("generators: linear must be a 9-element row-major array");
                LinearIsometry g;
                for (int k = 0; k < 9; ++k) g.m[k] = lin[k].get<double>();
                cfg.generators.push_back({g, vec_of(gj.at("translation"), "translation")});
            }
            if (static_cast<int>(cfg.generators.size()) != cfg.m)
                throw ConfigParseError("generators: expected m entries");
        } else if (have_intervals) {
            // Builder mode: linear parts from the interval pairing,
            // translations from the vertex pairing h_i(p_i^-) = p_i^+.
            for (int i = 0; i < cfg.m; ++i) {
                LinearIsometry g = build_generator(a_minus[i], a_plus[i]);
                if (!minus[i].have || !plus[i].have)
                    throw ConfigParseError("half_spaces: missing vertex for builder mode");
                Vector3 t = plus[i].vertex - SpacePoint{} -
                            g.apply(minus[i].vertex - SpacePoint{});
                cfg.generators.push_back({g, t});
            }
        } else {
            throw ConfigParseError("need either generators or intervals");
        }

        for (int i = 0; i < cfg.m; ++i) {
            if (!plus[i].have || !minus[i].have) throw ConfigParseError("half_spaces: incomplete set");
            Vector3 up = plus[i].direction, um = minus[i].direction;
            if (have_intervals) {
                Vector3 dp = spacelike_from_interval(a_plus[i]);
                Vector3 dm = spacelike_from_interval(a_minus[i]);
                if (euclid_norm(up) == 0.0) up = dp;
                if (euclid_norm(um) == 0.0) um = dm;
                if (euclid_norm(up - dp) > 1e-6 || euclid_norm(um - dm) > 1e-6)
                    throw ConfigParseError("intervals and directions disagree");
            }
            if (euclid_norm(up) == 0.0 || euclid_norm(um) == 0.0)
                throw ConfigParseError("half_spaces: missing direction");
            cfg.hs_plus.emplace_back(spacelike_normalize(up), plus[i].vertex);
            cfg.hs_minus.emplace_back(spacelike_normalize(um), minus[i].vertex);
        }
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigParseError(e.what());
    }
}

AffineSchottkyConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const AffineSchottkyConfig& cfg) {
    json j;
    j["m"] = cfg.m;
    json gens = json::array();
    for (const auto& h : cfg.generators) {
        json g;
        g["linear"] = h.linear.m;
        g["translation"] = vec_json(h.translation);
        gens.push_back(g);
    }
    j["generators"] = gens;
    json hs = json::array();
    for (int i = 0; i < cfg.m; ++i) {
        for (int sign : {+1, -1}) {
            const CrookedHalfSpace& h = sign > 0 ? cfg.hs_plus[i] : cfg.hs_minus[i];
            json e;
            e["i"] = i + 1;
            e["sign"] = sign > 0 ? "+" : "-";
            e["direction"] = vec_json(h.u);
            e["vertex"] = point_json(h.p);
            hs.push_back(e);
        }
    }
    j["half_spaces"] = hs;
    json ivs = json::array();
    for (int i = 0; i < cfg.m; ++i) {
        for (int sign : {+1, -1}) {
            const CrookedHalfSpace& h = sign > 0 ? cfg.hs_plus[i] : cfg.hs_minus[i];
            Interval a = interval_of_spacelike(h.u);
            json e;
            e["i"] = i + 1;
            e["sign"] = sign > 0 ? "+" : "-";
            e["phi1"] = a.lo();
            e["phi2"] = a.hi();
            ivs.push_back(e);
        }
    }
    j["intervals"] = ivs;
    return j.dump(2) + "\n";
}

void save_config(const AffineSchottkyConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << config_to_json(cfg);
}

}  // namespace crooked
