#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hodgeforge/errors.hpp"
#include "hodgeforge/feasibility.hpp"
#include "hodgeforge/linalg.hpp"

namespace hodgeforge {

/// Simplicial rational fan. Cones are sorted index vectors into `rays` and
/// the set is closed under taking faces; the empty cone is always present.
/// `labels` is either empty or parallel to `rays`.
struct Fan {
    int ambient_dim = 0;
    std::vector<RatVec> rays;
    std::set<std::vector<int>> cones;
    std::vector<std::string> labels;

    bool has_cone(const std::vector<int>& c) const { return cones.count(c) > 0; }

    int dim() const {
        std::size_t d = 0;
        for (const auto& c : cones) d = std::max(d, c.size());
        return static_cast<int>(d);
    }

    std::vector<std::vector<int>> max_cones() const {
        std::vector<std::vector<int>> out;
        for (const auto& c : cones) {
            bool maximal = true;
            for (const auto& d : cones) {
                if (d.size() <= c.size()) continue;
                if (std::includes(d.begin(), d.end(), c.begin(), c.end())) {
                    maximal = false;
                    break;
                }
            }
            if (maximal) out.push_back(c);
        }
        return out;
    }

    bool is_pure() const {
        auto mc = max_cones();
        for (const auto& c : mc)
            if (c.size() != mc.front().size()) return false;
        return true;
    }
};

inline void close_faces(std::set<std::vector<int>>& cones) {
    std::set<std::vector<int>> out;
    for (const auto& c : cones) {
        std::size_t subsets = std::size_t{1} << c.size();
        for (std::size_t s = 0; s < subsets; ++s) {
            std::vector<int> face;
            for (std::size_t k = 0; k < c.size(); ++k)
                if (s >> k & 1) face.push_back(c[k]);
            out.insert(std::move(face));
        }
    }
    cones = std::move(out);
}

inline Fan make_fan(int ambient_dim, std::vector<RatVec> rays,
                    const std::vector<std::vector<int>>& generating_cones,
                    std::vector<std::string> labels = {}) {
    Fan f;
    f.ambient_dim = ambient_dim;
    f.rays = std::move(rays);
    f.labels = std::move(labels);
    for (auto c : generating_cones) {
        std::sort(c.begin(), c.end());
        f.cones.insert(std::move(c));
    }
    close_faces(f.cones);
    return f;
}

/// Columns are the generators of `cone`, rows ambient coordinates.
inline Mat generator_columns(const Fan& f, const std::vector<int>& cone) {
    Mat a(f.ambient_dim, zero_vec(cone.size()));
    for (std::size_t k = 0; k < cone.size(); ++k)
        for (int d = 0; d < f.ambient_dim; ++d) a[d][k] = f.rays[cone[k]][d];
    return a;
}

/// Nonnegative generator coefficients expressing p, or nullopt when p lies
/// outside the cone. Assumes independent generators, so coefficients are
/// unique.
inline std::optional<RatVec> point_in_cone(const Fan& f, const std::vector<int>& cone,
                                           const RatVec& p) {
    if (cone.empty()) {
        if (is_zero(p)) return RatVec{};
        return std::nullopt;
    }
    auto x = solve(generator_columns(f, cone), p);
    if (!x) return std::nullopt;
    for (const Rat& c : *x)
        if (c < 0) return std::nullopt;
    return x;
}

struct SupportHit {
    std::vector<int> cone;
    RatVec coords;
};

inline std::optional<SupportHit> in_support(const Fan& f, const RatVec& p) {
    for (const auto& c : f.max_cones())
        if (auto x = point_in_cone(f, c, p)) return SupportHit{c, std::move(*x)};
    return std::nullopt;
}

/// Value at p of the piecewise linear function with the given ray values.
inline Rat evaluate_pl(const Fan& f, const RatVec& ray_values, const RatVec& p) {
    auto hit = in_support(f, p);
    if (!hit) throw PreconditionFailure("evaluate_pl: point outside fan support");
    Rat v = 0;
    for (std::size_t k = 0; k < hit->cone.size(); ++k)
        v += hit->coords[k] * ray_values[hit->cone[k]];
    return v;
}

namespace detail {

/// True when cone(sigma) meets cone(tau) outside cone(sigma & tau). With
/// independent generators any such excess point has a positive coefficient
/// on sigma outside the shared rays, so one feasibility query decides it.
inline bool cones_overlap_badly(const Fan& f, const std::vector<int>& sigma,
                                const std::vector<int>& tau) {
    std::vector<int> shared;
    std::set_intersection(sigma.begin(), sigma.end(), tau.begin(), tau.end(),
                          std::back_inserter(shared));
    if (shared.size() == sigma.size()) return false;
    int na = static_cast<int>(sigma.size()), nb = static_cast<int>(tau.size());
    Mat eq(f.ambient_dim, zero_vec(na + nb));
    RatVec rhs = zero_vec(f.ambient_dim);
    for (int k = 0; k < na; ++k)
        for (int d = 0; d < f.ambient_dim; ++d) eq[d][k] = f.rays[sigma[k]][d];
    for (int k = 0; k < nb; ++k)
        for (int d = 0; d < f.ambient_dim; ++d) eq[d][na + k] = -f.rays[tau[k]][d];
    std::vector<LinIneq> ineqs;
    for (int v = 0; v < na + nb; ++v) {
        LinIneq nn{zero_vec(na + nb), 0, false};
        nn.coef[v] = 1;
        ineqs.push_back(std::move(nn));
    }
    LinIneq excess{zero_vec(na + nb), 1, false};
    for (int k = 0; k < na; ++k)
        if (!std::binary_search(shared.begin(), shared.end(), sigma[k])) excess.coef[k] = 1;
    ineqs.push_back(std::move(excess));
    return lp_feasible(eq, rhs, ineqs, na + nb);
}

} // namespace detail

/// Full structural check: ray sanity, face closure, simpliciality, and
/// pairwise intersection in common faces. Throws InternalMismatch naming
/// the first violation.
inline void validate_fan(const Fan& f) {
    if (f.ambient_dim < 0) throw InternalMismatch("fan: negative ambient dimension");
    if (!f.labels.empty() && f.labels.size() != f.rays.size())
        throw InternalMismatch("fan: label count differs from ray count");
    std::set<RatVec> prim;
    for (const RatVec& r : f.rays) {
        if (static_cast<int>(r.size()) != f.ambient_dim)
            throw InternalMismatch("fan: ray dimension differs from ambient dimension");
        if (is_zero(r)) throw InternalMismatch("fan: zero ray generator");
        if (!prim.insert(primitive(r)).second)
            throw InternalMismatch("fan: two generators span the same ray");
    }
    if (!f.has_cone({})) throw InternalMismatch("fan: missing empty cone");
    for (const auto& c : f.cones) {
        if (!std::is_sorted(c.begin(), c.end()) ||
            std::adjacent_find(c.begin(), c.end()) != c.end())
            throw InternalMismatch("fan: cone indices not sorted and distinct");
        for (int i : c)
            if (i < 0 || i >= static_cast<int>(f.rays.size()))
                throw InternalMismatch("fan: cone index out of range");
        std::size_t subsets = std::size_t{1} << c.size();
        for (std::size_t s = 0; s < subsets; ++s) {
            std::vector<int> face;
            for (std::size_t k = 0; k < c.size(); ++k)
                if (s >> k & 1) face.push_back(c[k]);
            if (!f.has_cone(face))
                throw InternalMismatch("fan: not closed under faces");
        }
        Mat gens;
        for (int i : c) gens.push_back(f.rays[i]);
        if (rank_of(gens) != static_cast<int>(c.size()))
            throw InternalMismatch("fan: dependent cone generators");
    }
    // Any excess intersection point has, in either cone, a positive
    // coefficient outside the shared rays, so one direction per pair decides.
    auto mc = f.max_cones();
    for (std::size_t i = 0; i < mc.size(); ++i)
        for (std::size_t j = i + 1; j < mc.size(); ++j)
            if (detail::cones_overlap_badly(f, mc[i], mc[j]))
                throw InternalMismatch("fan: cones intersect outside a common face");
}

/// Subfan of cones whose union with tau is a cone, reindexed to the rays it
/// uses. to_parent maps new ray indices to indices in f.
struct StarData {
    Fan fan;
    std::vector<int> to_parent;
};

inline StarData star(const Fan& f, const std::vector<int>& tau) {
    if (!f.has_cone(tau)) throw PreconditionFailure("star: not a cone of the fan");
    StarData out;
    out.fan.ambient_dim = f.ambient_dim;
    std::set<int> used;
    std::vector<std::vector<int>> kept;
    for (const auto& c : f.cones) {
        std::vector<int> u;
        std::set_union(c.begin(), c.end(), tau.begin(), tau.end(), std::back_inserter(u));
        if (!f.has_cone(u)) continue;
        kept.push_back(c);
        used.insert(c.begin(), c.end());
    }
    std::map<int, int> idx;
    for (int r : used) {
        idx[r] = static_cast<int>(out.fan.rays.size());
        out.fan.rays.push_back(f.rays[r]);
        out.to_parent.push_back(r);
        if (!f.labels.empty()) out.fan.labels.push_back(f.labels[r]);
    }
    for (auto& c : kept) {
        for (int& r : c) r = idx[r];
        out.fan.cones.insert(std::move(c));
    }
    return out;
}

/// Linear map onto canonical coordinates for the quotient by the row span:
/// pivots of the span sit at the largest possible coordinate indices and the
/// surviving coordinates are listed in `kept`.
struct QuotientMap {
    Mat matrix;
    std::vector<int> kept;
    std::vector<int> pivots;
};

inline QuotientMap make_quotient(int ambient_dim, Mat span_rows) {
    QuotientMap q;
    q.pivots = rref_right(span_rows);
    std::vector<bool> is_piv(ambient_dim, false);
    for (int p : q.pivots) is_piv[p] = true;
    for (int c = 0; c < ambient_dim; ++c)
        if (!is_piv[c]) q.kept.push_back(c);
    q.matrix.assign(q.kept.size(), zero_vec(ambient_dim));
    for (std::size_t ci = 0; ci < q.kept.size(); ++ci) {
        q.matrix[ci][q.kept[ci]] = 1;
        for (std::size_t r = 0; r < q.pivots.size(); ++r)
            q.matrix[ci][q.pivots[r]] = -span_rows[r][q.kept[ci]];
    }
    return q;
}

/// Link of a cone: images of its cofaces under the quotient by its span.
/// Requires the images of distinct coface rays to stay distinct.
struct LinkData {
    Fan fan;
    QuotientMap quotient;
    std::vector<int> source_ray; // link ray -> parent ray
    std::vector<int> image_ray;  // parent ray -> link ray or -1
};

inline LinkData link(const Fan& f, const std::vector<int>& tau) {
    if (!f.has_cone(tau)) throw PreconditionFailure("link: not a cone of the fan");
    LinkData out;
    Mat span;
    for (int r : tau) span.push_back(f.rays[r]);
    out.quotient = make_quotient(f.ambient_dim, std::move(span));
    out.fan.ambient_dim = static_cast<int>(out.quotient.kept.size());
    out.image_ray.assign(f.rays.size(), -1);
    std::set<int> used;
    std::vector<std::vector<int>> cofaces;
    for (const auto& c : f.cones) {
        if (!std::includes(c.begin(), c.end(), tau.begin(), tau.end())) continue;
        cofaces.push_back(c);
        for (int r : c)
            if (!std::binary_search(tau.begin(), tau.end(), r)) used.insert(r);
    }
    std::set<RatVec> seen;
    for (int r : used) {
        RatVec img = mat_vec(out.quotient.matrix, f.rays[r]);
        if (is_zero(img) || !seen.insert(img).second)
            throw InternalMismatch("link: coface rays collide in the quotient");
        out.image_ray[r] = static_cast<int>(out.fan.rays.size());
        out.source_ray.push_back(r);
        out.fan.rays.push_back(std::move(img));
        if (!f.labels.empty()) out.fan.labels.push_back(f.labels[r]);
    }
    for (const auto& c : cofaces) {
        std::vector<int> img;
        for (int r : c)
            if (!std::binary_search(tau.begin(), tau.end(), r)) img.push_back(out.image_ray[r]);
        std::sort(img.begin(), img.end());
        out.fan.cones.insert(std::move(img));
    }
    return out;
}

inline Fan product(const Fan& a, const Fan& b) {
    Fan f;
    f.ambient_dim = a.ambient_dim + b.ambient_dim;
    for (const RatVec& r : a.rays) {
        RatVec v = r;
        v.resize(f.ambient_dim, Rat(0));
        f.rays.push_back(std::move(v));
    }
    for (const RatVec& r : b.rays) {
        RatVec v = zero_vec(a.ambient_dim);
        v.insert(v.end(), r.begin(), r.end());
        f.rays.push_back(std::move(v));
    }
    if (!a.labels.empty() && !b.labels.empty()) {
        f.labels = a.labels;
        f.labels.insert(f.labels.end(), b.labels.begin(), b.labels.end());
    }
    int shift = static_cast<int>(a.rays.size());
    for (const auto& ca : a.cones)
        for (const auto& cb : b.cones) {
            std::vector<int> c = ca;
            for (int r : cb) c.push_back(r + shift);
            f.cones.insert(std::move(c));
        }
    return f;
}

/// Relocate coordinates: coordinate c moves to position to_new[c].
inline Fan permute_coords(const Fan& f, const std::vector<int>& to_new) {
    if (static_cast<int>(to_new.size()) != f.ambient_dim)
        throw PreconditionFailure("permute_coords: permutation arity mismatch");
    std::vector<bool> hit(f.ambient_dim, false);
    for (int p : to_new) {
        if (p < 0 || p >= f.ambient_dim || hit[p])
            throw PreconditionFailure("permute_coords: not a permutation");
        hit[p] = true;
    }
    Fan out = f;
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        for (int c = 0; c < f.ambient_dim; ++c) out.rays[i][to_new[c]] = f.rays[i][c];
    return out;
}

/// Nullopt when the fans agree as subsets of the ambient space (same ray
/// generators, matching cones); otherwise a description of the difference.
inline std::optional<std::string> embedded_mismatch(const Fan& a, const Fan& b) {
    if (a.ambient_dim != b.ambient_dim) return "ambient dimensions differ";
    if (a.rays.size() != b.rays.size()) return "ray counts differ";
    std::map<RatVec, int> of_b;
    for (std::size_t i = 0; i < b.rays.size(); ++i)
        if (!of_b.emplace(b.rays[i], static_cast<int>(i)).second)
            return "duplicate ray generator";
    std::vector<int> to_b;
    for (const RatVec& r : a.rays) {
        auto it = of_b.find(r);
        if (it == of_b.end()) return "ray generator " + vec_to_string(r) + " unmatched";
        to_b.push_back(it->second);
    }
    std::set<std::vector<int>> mapped;
    for (const auto& c : a.cones) {
        std::vector<int> m;
        for (int r : c) m.push_back(to_b[r]);
        std::sort(m.begin(), m.end());
        mapped.insert(std::move(m));
    }
    if (mapped != b.cones) return "cone sets differ";
    return std::nullopt;
}

inline bool fans_equal_embedded(const Fan& a, const Fan& b) {
    return !embedded_mismatch(a, b);
}

/// Stellar subdivision at a two-dimensional cone; the new ray is generated
/// by the exact sum of the two cone generators and appended last.
struct SubdivisionData {
    Fan fan;
    int new_ray = -1;
};

inline SubdivisionData star_subdivision(const Fan& f, const std::vector<int>& tau) {
    if (tau.size() != 2 || !f.has_cone(tau))
        throw PreconditionFailure("star_subdivision: need a two-dimensional cone of the fan");
    RatVec v0 = add(f.rays[tau[0]], f.rays[tau[1]]);
    for (const RatVec& r : f.rays)
        if (primitive(r) == primitive(v0))
            throw PreconditionFailure("star_subdivision: subdivision ray already present");
    SubdivisionData out;
    out.fan.ambient_dim = f.ambient_dim;
    out.fan.rays = f.rays;
    out.new_ray = static_cast<int>(out.fan.rays.size());
    out.fan.rays.push_back(std::move(v0));
    if (!f.labels.empty()) {
        out.fan.labels = f.labels;
        out.fan.labels.push_back(f.labels[tau[0]] + "+" + f.labels[tau[1]]);
    }
    for (const auto& c : f.cones) {
        bool has_tau = std::includes(c.begin(), c.end(), tau.begin(), tau.end());
        if (!has_tau) out.fan.cones.insert(c);
        std::vector<int> u;
        std::set_union(c.begin(), c.end(), tau.begin(), tau.end(), std::back_inserter(u));
        if (!has_tau && f.has_cone(u)) {
            std::vector<int> n = c;
            n.push_back(out.new_ray);
            out.fan.cones.insert(std::move(n));
        }
    }
    return out;
}

/// Linear map between fan ambients, y = matrix * x.
struct FanMap {
    Mat matrix;
};

inline RatVec apply_map(const FanMap& m, const RatVec& x) { return mat_vec(m.matrix, x); }

/// Checks that every source cone maps into a single target cone.
inline bool is_fan_map(const Fan& src, const Fan& tgt, const FanMap& m,
                       std::vector<int>* offending = nullptr) {
    auto tgt_max = tgt.max_cones();
    for (const auto& c : src.max_cones()) {
        std::vector<RatVec> imgs;
        for (int r : c) imgs.push_back(apply_map(m, src.rays[r]));
        bool ok = false;
        for (const auto& t : tgt_max) {
            bool all = true;
            for (const RatVec& p : imgs)
                if (!point_in_cone(tgt, t, p)) { all = false; break; }
            if (all) { ok = true; break; }
        }
        if (!ok) {
            if (offending) *offending = c;
            return false;
        }
    }
    return true;
}

} // namespace hodgeforge
