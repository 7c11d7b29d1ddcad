#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hodgeforge/bergman.hpp"
#include "hodgeforge/chow.hpp"
#include "hodgeforge/errors.hpp"
#include "hodgeforge/fan.hpp"
#include "hodgeforge/feasibility.hpp"

namespace hodgeforge {

/// Outcome of one feasibility question: does some global linear functional
/// m make every ray value of ell + m positive (resp. nonnegative)?
struct PositivityResult {
    bool ok = false;
    RatVec certificate;  // the functional m on success
    RatVec farkas;       // nonnegative multipliers over the ray rows on failure
    int witness_ray = -1; // smallest ray in the infeasible subsystem
};

namespace detail {

inline PositivityResult positivity(const Fan& f, const RatVec& ray_coeffs, bool strict) {
    if (ray_coeffs.size() != f.rays.size())
        throw PreconditionFailure("positivity: one coefficient per ray required");
    std::vector<LinIneq> sys;
    for (std::size_t r = 0; r < f.rays.size(); ++r)
        sys.push_back(LinIneq{f.rays[r], -ray_coeffs[r], strict});
    FMOutcome fm = fm_solve(sys, f.ambient_dim);
    PositivityResult out;
    out.ok = fm.feasible;
    if (fm.feasible) {
        out.certificate = std::move(fm.point);
        for (std::size_t r = 0; r < f.rays.size(); ++r) {
            Rat v = ray_coeffs[r] + dot(f.rays[r], out.certificate);
            if (v < 0 || (strict && v == 0))
                throw InternalMismatch("positivity: certificate fails to re-verify");
        }
    } else {
        out.farkas = std::move(fm.farkas);
        for (std::size_t r = 0; r < out.farkas.size(); ++r)
            if (out.farkas[r] != 0) { out.witness_ray = static_cast<int>(r); break; }
    }
    return out;
}

} // namespace detail

/// ell admits a representative with strictly positive ray values.
inline PositivityResult is_positive(const Fan& f, const RatVec& ray_coeffs) {
    return detail::positivity(f, ray_coeffs, true);
}

/// ell admits a representative with nonnegative ray values.
inline PositivityResult is_nonnegative(const Fan& f, const RatVec& ray_coeffs) {
    return detail::positivity(f, ray_coeffs, false);
}

struct ConvexityFailure {
    std::vector<int> cone; // tau whose link check failed
    int ray = -1;          // ray of the fan involved in the infeasibility, or -1
    bool strict = true;
};

/// Link-based classification of a degree-1 class given by ray coefficients.
/// Strict convexity quantifies positivity over the link of every cone,
/// including the zero cone; the convex variant relaxes to nonnegativity.
struct ConvexityVerdict {
    bool positive = false;
    bool nonnegative = false;
    bool strictly_convex = false;
    bool convex = false;
    RatVec certificate; // functional witnessing positivity on the whole fan
    std::vector<ConvexityFailure> failures;
};

inline ConvexityVerdict classify_convexity(const Fan& f, const RatVec& ray_coeffs) {
    ConvexityVerdict v;
    v.strictly_convex = true;
    v.convex = true;
    for (const auto& tau : f.cones) {
        LinkData l = link(f, tau);
        RatVec res = restrict_divisor_to_link(f, ray_coeffs, tau, l);
        auto back = [&](int link_ray) {
            return link_ray < 0 ? -1 : l.source_ray[link_ray];
        };
        PositivityResult strict = is_positive(l.fan, res);
        if (!strict.ok) {
            v.strictly_convex = false;
            v.failures.push_back(ConvexityFailure{tau, back(strict.witness_ray), true});
        }
        PositivityResult weak = is_nonnegative(l.fan, res);
        if (!weak.ok) {
            v.convex = false;
            v.failures.push_back(ConvexityFailure{tau, back(weak.witness_ray), false});
        }
        if (tau.empty()) {
            v.positive = strict.ok;
            v.nonnegative = weak.ok;
            if (strict.ok) v.certificate = strict.certificate;
        }
    }
    return v;
}

/// ell = sum over nontrivial flats of f(F) x_F with the classical strictly
/// submodular rule f(S) = |S| (|E| - |S|).
inline RatVec submodular_class(const Matroid& m) {
    RatVec out;
    for (Mask f : m.nontrivial_flats()) {
        int s = popcount(f);
        out.push_back(Rat(s) * Rat(m.ground_size - s));
    }
    return out;
}

/// A second strictly submodular witness, the default rule plus a bounded
/// perturbation supported on {1,2}; distinct from submodular_class whenever
/// the fan has a ray, which deformation scans need.
inline RatVec perturbed_submodular_class(const Matroid& m) {
    Mask pair = m.ground_size >= 2 ? mask_of({1, 2}) : mask_of({1});
    RatVec out;
    for (Mask f : m.nontrivial_flats()) {
        int s = popcount(f);
        int c = popcount(f & pair), p = popcount(pair);
        out.push_back(Rat(s) * Rat(m.ground_size - s) + Rat(c) * Rat(p - c) +
                      rat(c, 2));
    }
    return out;
}

/// One link check of the tower convexity property.
struct TowerConvexityEntry {
    int level = 0;      // m: which fan of the tower
    int step = 0;       // j: which subdivided cone, 1-based; 0 for fan-level
    std::string what;   // "convex" or "link-strictly-convex"
    bool pass = false;
};

struct TowerConvexityReport {
    std::vector<RatVec> pulled; // ell_m per level
    std::vector<TowerConvexityEntry> entries;
    bool ok = true;
};

/// Verifies that the pullbacks of a strictly convex class on the deleted
/// fan stay convex on every tower fan and strictly convex on the link of
/// every subdivided cone at every level.
inline TowerConvexityReport tower_convexity_check(const DeletionTower& t,
                                                  const RatVec& ell_deleted) {
    ConvexityVerdict base = classify_convexity(t.deleted_fan, ell_deleted);
    if (!base.strictly_convex)
        throw PreconditionFailure("tower_convexity_check: class not strictly convex on the base");
    int k = static_cast<int>(t.s_flats.size());
    TowerConvexityReport rep;
    rep.pulled.resize(k + 1);
    rep.pulled[k] = pullback_divisor(t.fans[k], t.deleted_fan, t.projection, ell_deleted);
    FanMap identity{mat_identity(t.fans[0].ambient_dim)};
    for (int j = k; j >= 1; --j)
        rep.pulled[j - 1] = pullback_divisor(t.fans[j - 1], t.fans[j], identity, rep.pulled[j]);

    Mask bit = Mask(1) << (t.element - 1);
    for (int m = 0; m <= k; ++m) {
        ConvexityVerdict v = classify_convexity(t.fans[m], rep.pulled[m]);
        rep.entries.push_back({m, 0, "convex", v.convex});
        rep.ok = rep.ok && v.convex;
        for (int j = 1; j <= k; ++j) {
            Mask upper = m >= j ? t.s_flats[j - 1] : (t.s_flats[j - 1] | bit);
            const auto& flats = t.ray_flats[m];
            auto ray_with = [&](Mask g) {
                return static_cast<int>(std::find(flats.begin(), flats.end(), g) - flats.begin());
            };
            std::vector<int> tau{ray_with(bit), ray_with(upper)};
            std::sort(tau.begin(), tau.end());
            LinkData l = link(t.fans[m], tau);
            RatVec res = restrict_divisor_to_link(t.fans[m], rep.pulled[m], tau, l);
            bool pass = is_positive(l.fan, res).ok;
            rep.entries.push_back({m, j, "link-strictly-convex", pass});
            rep.ok = rep.ok && pass;
        }
    }
    return rep;
}

} // namespace hodgeforge
