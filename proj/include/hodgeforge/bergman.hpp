#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodgeforge/errors.hpp"
#include "hodgeforge/fan.hpp"
#include "hodgeforge/matroid.hpp"

namespace hodgeforge {

/// Canonical representative of e_F in R^E/e_E: coordinate c (element c+1)
/// carries [c+1 in F] - [last element in F].
inline RatVec flat_generator(int ground_size, Mask f) {
    RatVec v = zero_vec(ground_size - 1);
    Rat last = mask_contains(f, ground_size) ? Rat(1) : Rat(0);
    for (int c = 0; c + 1 < ground_size; ++c)
        v[c] = (mask_contains(f, c + 1) ? Rat(1) : Rat(0)) - last;
    return v;
}

namespace detail {

/// Visits every chain (including the empty one) of a poset of sets, given
/// in an order where containment implies smaller index.
template <typename Emit>
inline void for_each_chain(const std::vector<Mask>& flats, Emit&& emit) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int last) {
        emit(cur);
        int start = last < 0 ? 0 : last + 1;
        for (int nxt = start; nxt < static_cast<int>(flats.size()); ++nxt) {
            if (last >= 0) {
                Mask a = flats[last], b = flats[nxt];
                if ((a & b) != a || a == b) continue;
            }
            cur.push_back(nxt);
            rec(nxt);
            cur.pop_back();
        }
    };
    rec(-1);
}

} // namespace detail

/// Fan in R^E/e_E with one ray per nontrivial flat and one cone per chain
/// of nontrivial flats. Ray labels carry the flats.
inline Fan bergman_fan(const Matroid& m) {
    if (m.ground_size < 1) throw PreconditionFailure("bergman_fan: rank-0 matroid");
    Fan f;
    f.ambient_dim = m.ground_size - 1;
    std::vector<Mask> nt = m.nontrivial_flats();
    for (Mask g : nt) {
        f.rays.push_back(flat_generator(m.ground_size, g));
        f.labels.push_back(set_to_string(g));
    }
    detail::for_each_chain(nt, [&](const std::vector<int>& chain) { f.cones.insert(chain); });
    return f;
}

/// The flats labeling the rays of a Bergman fan, parallel to fan rays.
inline std::vector<Mask> bergman_ray_flats(const Matroid& m) { return m.nontrivial_flats(); }

/// Link of tau presented as a product of the Bergman fans of the interval
/// matroids [lo, hi] and [hi, E], matched coordinate by coordinate.
struct IntervalFactorization {
    Matroid below, above;
    Fan below_fan, above_fan;
    Fan product_fan;     // raw product of the factors
    Fan product_embedded; // permuted into the link's quotient coordinates
    LinkData link_data;
    std::vector<int> to_link_coord; // product coordinate -> link coordinate
};

/// Factors link(fan, tau) where tau is the image of the chain lo < hi
/// (lo = empty for a ray). The embedded equality with the actual link is
/// asserted; a mismatch means the lattice and the fan disagree.
inline IntervalFactorization factor_link_as_intervals(const Matroid& m, const Fan& fan,
                                                      const std::vector<int>& tau, Mask lo,
                                                      Mask hi) {
    IntervalFactorization out;
    out.below = interval(m, lo, hi);
    out.above = interval(m, hi, m.ground());
    out.below_fan = bergman_fan(out.below);
    out.above_fan = bergman_fan(out.above);
    out.product_fan = product(out.below_fan, out.above_fan);
    out.link_data = link(fan, tau);

    // Coordinates of each factor name ground elements minus the largest one.
    std::vector<int> coord_elem;
    {
        auto below_elems = elements_of(hi & ~lo);
        for (std::size_t k = 0; k + 1 < below_elems.size(); ++k)
            coord_elem.push_back(below_elems[k]);
        auto above_elems = elements_of(m.ground() & ~hi);
        for (std::size_t k = 0; k + 1 < above_elems.size(); ++k)
            coord_elem.push_back(above_elems[k]);
    }
    std::map<int, int> kept_pos; // element -> link coordinate
    for (std::size_t c = 0; c < out.link_data.quotient.kept.size(); ++c)
        kept_pos[out.link_data.quotient.kept[c] + 1] = static_cast<int>(c);
    if (coord_elem.size() != kept_pos.size())
        throw InternalMismatch("interval factorization: coordinate counts differ");
    for (int e : coord_elem) {
        auto it = kept_pos.find(e);
        if (it == kept_pos.end())
            throw InternalMismatch("interval factorization: coordinate elements differ");
        out.to_link_coord.push_back(it->second);
    }
    out.product_embedded = permute_coords(out.product_fan, out.to_link_coord);
    if (auto why = embedded_mismatch(out.product_embedded, out.link_data.fan))
        throw VerificationFailure("link does not factor as the interval product: " + *why);
    return out;
}

/// Link of the ray of a nontrivial flat as the product of the Bergman fans
/// below and above the flat.
inline IntervalFactorization link_of_ray_as_product(const Matroid& m, Mask f) {
    if (!m.is_flat(f) || f == 0 || f == m.ground())
        throw PreconditionFailure("link_of_ray_as_product: need a nontrivial flat");
    Fan fan = bergman_fan(m);
    std::vector<Mask> nt = m.nontrivial_flats();
    int ray = static_cast<int>(std::find(nt.begin(), nt.end(), f) - nt.begin());
    return factor_link_as_intervals(m, fan, {ray}, 0, f);
}

/// Factorization of the projection of Bergman fans under deleting a
/// non-coloop element into star subdivisions at two-dimensional cones.
///
/// fans[j] realizes the quotient of the flat lattice merging F_l with
/// F_l + i for l <= j; ray_flats[j] records the class representative of
/// each ray. Step j subdivides fans[j] at taus[j-1] (the cone over e_i and
/// the merged class of F_j) and must reproduce fans[j-1] exactly, with the
/// new ray new_rays[j-1] generated by e_{F_j + i}. The final map drops the
/// e_i coordinate and matches deleted_fan ray for ray.
struct DeletionTower {
    int element = 0;
    std::vector<Mask> s_flats;
    Matroid matroid;
    Matroid deleted;
    std::vector<Fan> fans;
    std::vector<std::vector<Mask>> ray_flats;
    std::vector<std::vector<int>> taus;
    std::vector<int> new_rays;
    FanMap projection;
    Fan deleted_fan;
    std::vector<int> ray_to_deleted;
    int killed_ray = -1;
};

inline DeletionTower deletion_tower(const Matroid& m, int i,
                                    const std::vector<Mask>* order = nullptr) {
    if (i < 1 || i > m.ground_size) throw InputError("deletion_tower: element out of range");
    if (is_coloop(m, i)) throw ColoopInput("deletion_tower: element " + std::to_string(i));
    DeletionTower t;
    t.element = i;
    t.matroid = m;
    t.s_flats = deletion_flat_pairs(m, i);
    if (order) {
        std::vector<Mask> a = *order, b = t.s_flats;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw PreconditionFailure("deletion_tower: order is not a permutation of the pairs");
        for (std::size_t x = 0; x < order->size(); ++x)
            for (std::size_t y = x + 1; y < order->size(); ++y)
                if (((*order)[x] & (*order)[y]) == (*order)[y])
                    throw PreconditionFailure("deletion_tower: order violates containment");
        t.s_flats = *order;
    }
    t.deleted = deletion(m, i);
    t.deleted_fan = bergman_fan(t.deleted);
    int k = static_cast<int>(t.s_flats.size());
    Mask bit = Mask(1) << (i - 1);

    std::vector<Mask> nt = m.nontrivial_flats();
    for (int j = 0; j <= k; ++j) {
        // Class representative of each flat after merging the first j pairs.
        auto rep_of = [&](Mask g) {
            for (int l = 0; l < j; ++l)
                if (g == (t.s_flats[l] | bit)) return t.s_flats[l];
            return g;
        };
        Fan fj;
        fj.ambient_dim = m.ground_size - 1;
        std::vector<Mask> reps;
        std::map<Mask, int> ray_of;
        for (Mask g : nt) {
            Mask r = rep_of(g);
            if (ray_of.count(r)) continue;
            ray_of[r] = static_cast<int>(fj.rays.size());
            fj.rays.push_back(flat_generator(m.ground_size, r));
            fj.labels.push_back(set_to_string(r));
            reps.push_back(r);
        }
        for (int l = 0; l < j; ++l)
            fj.labels[ray_of[t.s_flats[l]]] =
                set_to_string(t.s_flats[l]) + "~" + set_to_string(t.s_flats[l] | bit);
        detail::for_each_chain(nt, [&](const std::vector<int>& chain) {
            std::vector<int> img;
            for (int c : chain) img.push_back(ray_of[rep_of(nt[c])]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            fj.cones.insert(std::move(img));
        });
        t.fans.push_back(std::move(fj));
        t.ray_flats.push_back(std::move(reps));
    }
    if (auto why = embedded_mismatch(t.fans[0], bergman_fan(m)))
        throw InternalMismatch("deletion tower: level 0 differs from the Bergman fan: " + *why);

    for (int j = 1; j <= k; ++j) {
        const auto& flats_j = t.ray_flats[j];
        auto ray_with = [&](const std::vector<Mask>& v, Mask g) {
            auto it = std::find(v.begin(), v.end(), g);
            if (it == v.end())
                throw InternalMismatch("deletion tower: expected ray class missing");
            return static_cast<int>(it - v.begin());
        };
        std::vector<int> tau{ray_with(flats_j, bit), ray_with(flats_j, t.s_flats[j - 1])};
        std::sort(tau.begin(), tau.end());
        SubdivisionData sub = star_subdivision(t.fans[j], tau);
        if (auto why = embedded_mismatch(sub.fan, t.fans[j - 1]))
            throw InternalMismatch("deletion tower: subdivision disagrees with the quotient poset: " +
                                   *why);
        t.taus.push_back(std::move(tau));
        t.new_rays.push_back(ray_with(t.ray_flats[j - 1], t.s_flats[j - 1] | bit));
    }

    QuotientMap q = make_quotient(m.ground_size - 1, {flat_generator(m.ground_size, bit)});
    t.projection.matrix = q.matrix;
    const Fan& top = t.fans[k];
    std::vector<bool> used(t.deleted_fan.rays.size(), false);
    std::map<RatVec, int> deleted_ray;
    for (std::size_t r = 0; r < t.deleted_fan.rays.size(); ++r)
        deleted_ray[t.deleted_fan.rays[r]] = static_cast<int>(r);
    t.ray_to_deleted.assign(top.rays.size(), -1);
    for (std::size_t r = 0; r < top.rays.size(); ++r) {
        RatVec img = apply_map(t.projection, top.rays[r]);
        if (is_zero(img)) {
            if (t.ray_flats[k][r] != bit || t.killed_ray != -1)
                throw InternalMismatch("deletion tower: projection kills an unexpected ray");
            t.killed_ray = static_cast<int>(r);
            continue;
        }
        auto it = deleted_ray.find(img);
        if (it == deleted_ray.end() || used[it->second])
            throw InternalMismatch("deletion tower: projected ray does not match the deleted fan");
        used[it->second] = true;
        t.ray_to_deleted[r] = it->second;
    }
    for (bool u : used)
        if (!u) throw InternalMismatch("deletion tower: a deleted-fan ray has no preimage");
    std::set<std::vector<int>> images;
    for (const auto& c : top.cones) {
        std::vector<int> img;
        for (int r : c)
            if (r != t.killed_ray) img.push_back(t.ray_to_deleted[r]);
        std::sort(img.begin(), img.end());
        if (!t.deleted_fan.has_cone(img))
            throw InternalMismatch("deletion tower: projected cone missing from the deleted fan");
        images.insert(std::move(img));
    }
    if (images != t.deleted_fan.cones)
        throw InternalMismatch("deletion tower: projection is not surjective on cones");
    return t;
}

} // namespace hodgeforge
