#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodgeforge/bergman.hpp"
#include "hodgeforge/chow.hpp"
#include "hodgeforge/convexity.hpp"
#include "hodgeforge/errors.hpp"
#include "hodgeforge/fan.hpp"
#include "hodgeforge/hodge.hpp"
#include "hodgeforge/matroid.hpp"

namespace hodgeforge {

using Json = nlohmann::ordered_json;

inline Json parse_json(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(where + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

namespace detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline Rat rat_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw InputError(where + ": expected an integer or a rational string");
}

} // namespace detail

/// Matroid document: {"name": str, "ground_size": n, "flats": [[elements]]}
/// with 1-based element lists. Flat order in the file is irrelevant; the
/// canonical (rank, lex) order is restored on load.
inline Matroid matroid_from_json(const Json& j, const std::string& where = "matroid") {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    const Json& gs = detail::field(j, "ground_size", where);
    if (!gs.is_number_integer()) throw InputError(where + ": ground_size must be an integer");
    int n = gs.get<int>();
    if (n < 1 || n > 62) throw InputError(where + ": ground_size must be between 1 and 62");
    const Json& fl = detail::field(j, "flats", where);
    if (!fl.is_array()) throw InputError(where + ": flats must be an array");
    std::vector<Mask> flats;
    for (std::size_t k = 0; k < fl.size(); ++k) {
        const Json& one = fl[k];
        std::string at = where + ": flats[" + std::to_string(k) + "]";
        if (!one.is_array()) throw InputError(at + " must be an array of elements");
        Mask mset = 0;
        for (const Json& e : one) {
            if (!e.is_number_integer()) throw InputError(at + ": elements must be integers");
            int v = e.get<int>();
            if (v < 1 || v > n)
                throw InputError(at + ": element " + std::to_string(v) + " outside 1.." +
                                 std::to_string(n));
            mset |= Mask(1) << (v - 1);
        }
        flats.push_back(mset);
    }
    std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>()
                                                                   : std::string{};
    return matroid_from_flats(n, flats, name);
}

inline Matroid load_matroid(const std::string& path) {
    return matroid_from_json(parse_json(read_file(path), path), path);
}

inline Json matroid_to_json(const Matroid& m) {
    Json j;
    j["name"] = m.name;
    j["ground_size"] = m.ground_size;
    Json flats = Json::array();
    for (Mask f : m.flats) flats.push_back(elements_of(f));
    j["flats"] = flats;
    return j;
}

inline Json vec_to_json(const RatVec& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(rat_to_string(x));
    return a;
}

inline Json fan_to_json(const Fan& f) {
    Json j;
    j["ambient_dim"] = f.ambient_dim;
    Json rays = Json::array();
    for (const RatVec& r : f.rays) rays.push_back(vec_to_json(r));
    j["rays"] = rays;
    j["labels"] = f.labels;
    Json mc = Json::array();
    for (const auto& c : f.max_cones()) mc.push_back(c);
    j["max_cones"] = mc;
    j["cone_count"] = f.cones.size();
    return j;
}

inline Json chow_report_json(const ChowSpace& c, int mw_dim) {
    Json j;
    std::vector<int> hilbert;
    for (int g = 0; g <= c.top; ++g) hilbert.push_back(c.dim(g));
    j["hilbert"] = hilbert;
    j["mw_dim"] = mw_dim;
    Json rels;
    Json basis;
    for (int g = 0; g <= c.top; ++g) {
        int monos = static_cast<int>(c.monos[g].size());
        rels[std::to_string(g)] = monos - c.dim(g);
        Json names = Json::array();
        for (int col : c.basis_cols[g]) names.push_back(monomial_to_string(c.monos[g][col]));
        basis[std::to_string(g)] = names;
    }
    j["relations"] = rels;
    j["basis"] = basis;
    return j;
}

/// Witness file: {"coefficients": {"{1,2}": value}} with one entry per
/// nontrivial flat, values integers or rational strings.
inline RatVec witness_from_json(const Json& j, const Matroid& m, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    const Json& co = detail::field(j, "coefficients", where);
    if (!co.is_object()) throw InputError(where + ": coefficients must be an object");
    RatVec out;
    for (Mask f : m.nontrivial_flats()) {
        std::string key = set_to_string(f);
        auto it = co.find(key);
        if (it == co.end())
            throw InputError(where + ": missing coefficient for flat " + key);
        out.push_back(detail::rat_from_json(*it, where + ": " + key));
    }
    for (auto it = co.begin(); it != co.end(); ++it) {
        bool known = false;
        for (Mask f : m.nontrivial_flats())
            if (set_to_string(f) == it.key()) { known = true; break; }
        if (!known) throw InputError(where + ": " + it.key() + " is not a nontrivial flat");
    }
    return out;
}

inline RatVec load_witness(const std::string& path, const Matroid& m) {
    return witness_from_json(parse_json(read_file(path), path), m, path);
}

inline Json witness_to_json(const Matroid& m, const RatVec& coeffs) {
    Json co;
    auto nt = m.nontrivial_flats();
    for (std::size_t k = 0; k < nt.size(); ++k)
        co[set_to_string(nt[k])] = rat_to_string(coeffs[k]);
    Json j;
    j["coefficients"] = co;
    return j;
}

inline Json convexity_to_json(const ConvexityVerdict& v, const RatVec& coeffs) {
    Json j;
    j["class"] = vec_to_json(coeffs);
    j["positive"] = v.positive;
    j["nonnegative"] = v.nonnegative;
    j["strictly_convex"] = v.strictly_convex;
    j["convex"] = v.convex;
    Json fails = Json::array();
    for (const auto& f : v.failures) {
        Json one;
        one["cone"] = f.cone;
        one["ray"] = f.ray;
        one["strict"] = f.strict;
        fails.push_back(one);
    }
    j["failures"] = fails;
    j["certificate"] = vec_to_json(v.certificate);
    return j;
}

inline Json verify_to_json(const VerifyReport& r) {
    Json j;
    j["mode"] = r.mode;
    if (r.mode == "tower") {
        j["element"] = r.element;
        j["tower_length"] = r.tower_length;
    }
    j["hilbert"] = r.hilbert;
    j["ok"] = r.ok;
    j["notes"] = r.notes;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json one;
        one["name"] = c.name;
        one["pass"] = c.pass;
        if (!c.detail.empty()) one["detail"] = c.detail;
        checks.push_back(one);
    }
    j["checks"] = checks;
    return j;
}

inline Json tower_to_json(const DeletionTower& t) {
    Json j;
    j["element"] = t.element;
    Json pairs = Json::array();
    for (Mask f : t.s_flats) pairs.push_back(elements_of(f));
    j["s_flats"] = pairs;
    Json subs = Json::array();
    int k = static_cast<int>(t.s_flats.size());
    for (int step = 1; step <= k; ++step) {
        Json one;
        one["subdivides"] = "level " + std::to_string(step) + " -> " + std::to_string(step - 1);
        one["tau"] = t.taus[step - 1];
        one["tau_labels"] = Json::array();
        for (int r : t.taus[step - 1]) one["tau_labels"].push_back(t.fans[step].labels[r]);
        one["new_ray"] = t.new_rays[step - 1];
        one["new_ray_generator"] =
            vec_to_json(t.fans[step - 1].rays[t.new_rays[step - 1]]);
        subs.push_back(one);
    }
    j["subdivisions"] = subs;
    Json proj = Json::array();
    for (const RatVec& row : t.projection.matrix) proj.push_back(vec_to_json(row));
    j["projection"] = proj;
    j["killed_ray"] = t.killed_ray;
    j["levels"] = Json::array();
    for (const Fan& f : t.fans) j["levels"].push_back(fan_to_json(f));
    j["deleted_fan"] = fan_to_json(t.deleted_fan);
    return j;
}

} // namespace hodgeforge
