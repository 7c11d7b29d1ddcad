#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgeforge/bergman.hpp"
#include "hodgeforge/chow.hpp"
#include "hodgeforge/convexity.hpp"
#include "hodgeforge/errors.hpp"
#include "hodgeforge/fan.hpp"
#include "hodgeforge/matroid.hpp"
#include "hodgeforge/parallel.hpp"

namespace hodgeforge {

struct SignatureTriple {
    int pos = 0;
    int neg = 0;
    int zero = 0;
    bool operator==(const SignatureTriple&) const = default;
};

inline std::string signature_to_string(const SignatureTriple& s) {
    return "(" + std::to_string(s.pos) + "," + std::to_string(s.neg) + "," +
           std::to_string(s.zero) + ")";
}

/// Inertia of a symmetric rational matrix by congruence diagonalization.
inline SignatureTriple signature(Mat a) {
    if (!is_symmetric(a)) throw PreconditionFailure("signature: symmetric matrix required");
    std::size_t n = a.size();
    SignatureTriple s;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = n;
            for (std::size_t j = k + 1; j < n; ++j)
                if (a[j][j] != 0) { piv = j; break; }
            if (piv < n) {
                std::swap(a[k], a[piv]);
                for (std::size_t r = 0; r < n; ++r) std::swap(a[r][k], a[r][piv]);
            } else {
                std::size_t off = n;
                for (std::size_t j = k + 1; j < n; ++j)
                    if (a[k][j] != 0) { off = j; break; }
                if (off == n) { ++s.zero; continue; }
                // Remaining diagonal is zero, so this bumps a[k][k] to 2 a[k][off].
                for (std::size_t c = 0; c < n; ++c) a[k][c] += a[off][c];
                for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][off];
            }
        }
        Rat p = a[k][k];
        if (p > 0) ++s.pos; else ++s.neg;
        for (std::size_t j = k + 1; j < n; ++j) {
            if (a[j][k] == 0) continue;
            Rat f = a[j][k] / p;
            for (std::size_t c = 0; c < n; ++c) a[j][c] -= f * a[k][c];
            for (std::size_t r = 0; r < n; ++r) a[r][j] -= f * a[r][k];
        }
    }
    return s;
}

inline ChowElement basis_element(const ChowSpace& c, int grade, int idx) {
    return ChowElement{grade, {{c.basis_cols[grade][idx], Rat(1)}}};
}

/// Pairing matrix of CH^i x CH^{d-i} -> Q, entries deg(b_a b_c) over the
/// per-degree bases.
inline Mat poincare_pairing(const ChowSpace& c, const DegreeMap& dm, int i, int jobs = 1) {
    int d = c.top;
    if (i < 0 || i > d) throw PreconditionFailure("poincare_pairing: degree out of range");
    Mat p(c.dim(i), zero_vec(c.dim(d - i)));
    parallel_for(static_cast<std::size_t>(c.dim(i)), jobs, [&](std::size_t a) {
        ChowElement ba = basis_element(c, i, static_cast<int>(a));
        for (int b = 0; b < c.dim(d - i); ++b)
            p[a][b] = degree_of(c, dm, multiply(c, ba, basis_element(c, d - i, b)));
    });
    return p;
}

struct DualityReport {
    std::vector<int> dims;  // per grade 0..d
    std::vector<int> ranks; // rank of the pairing in each grade
    bool ok = true;
};

inline DualityReport check_poincare_duality(const ChowSpace& c, const DegreeMap& dm,
                                            int jobs = 1) {
    int d = c.top;
    DualityReport rep;
    rep.dims.resize(d + 1);
    rep.ranks.resize(d + 1);
    for (int i = 0; i <= d; ++i) rep.dims[i] = c.dim(i);
    for (int i = 0; 2 * i <= d; ++i) {
        int r = rank_of(poincare_pairing(c, dm, i, jobs));
        rep.ranks[i] = rep.ranks[d - i] = r;
        rep.ok = rep.ok && rep.dims[i] == rep.dims[d - i] && r == rep.dims[i];
    }
    return rep;
}

/// Matrix of multiplication by ell^k, CH^grade -> CH^{grade+k}.
inline Mat operator_power(const ChowSpace& c, const ChowElement& ell, int grade, int k) {
    Mat m = mat_identity(c.dim(grade));
    for (int t = 0; t < k; ++t) m = mat_mul(mult_matrix(c, ell, grade + t), m);
    return m;
}

struct LefschetzReport {
    std::vector<int> dims;  // per grade 0..d
    std::vector<int> ranks; // per i <= d/2: rank of ell^{d-2i}
    std::vector<bool> iso;  // per i <= d/2
    bool ok = true;
};

/// Hard Lefschetz for a degree-1 class: ell^{d-2i} maps CH^i isomorphically
/// onto CH^{d-i} for every i below the middle.
inline LefschetzReport hl_check(const ChowSpace& c, const ChowElement& ell) {
    int d = c.top;
    LefschetzReport rep;
    for (int i = 0; i <= d; ++i) rep.dims.push_back(c.dim(i));
    for (int i = 0; 2 * i <= d; ++i) {
        int r = rank_of(operator_power(c, ell, i, d - 2 * i));
        bool iso = rep.dims[i] == rep.dims[d - i] && r == rep.dims[i];
        rep.ranks.push_back(r);
        rep.iso.push_back(iso);
        rep.ok = rep.ok && iso;
    }
    return rep;
}

enum class CheckStatus { Pass, Fail, Skipped };

inline std::string check_status_to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "skipped";
    }
}

namespace detail {

/// Gram matrix of the form (x, y) -> deg(x ell^{d-2i} y) on CH^i.
inline Mat lefschetz_form(const ChowSpace& c, const DegreeMap& dm, const ChowElement& ell,
                          int i, int jobs = 1) {
    Mat b = mat_mul(poincare_pairing(c, dm, i, jobs), operator_power(c, ell, i, c.top - 2 * i));
    if (!is_symmetric(b)) throw InternalMismatch("lefschetz_form: form is not symmetric");
    return b;
}

/// Basis of the primitive subspace P^i = ker(ell^{d-2i+1}) in CH^i coords.
inline Mat primitive_basis(const ChowSpace& c, const ChowElement& ell, int i) {
    int d = c.top;
    if (i + (d - 2 * i + 1) > d) return mat_identity(c.dim(i));
    Mat op = operator_power(c, ell, i, d - 2 * i + 1);
    Mat k;
    for (auto& v : kernel_basis(std::move(op), c.dim(i))) k.push_back(std::move(v));
    return k;
}

} // namespace detail

struct HodgeRiemannReport {
    LefschetzReport hl;
    std::vector<int> prim_dims;            // per i <= d/2; -1 when skipped
    std::vector<SignatureTriple> form_sig; // signature of Q_ell on CH^i
    std::vector<CheckStatus> status;       // per i <= d/2
    bool ok = true;
};

/// Hodge-Riemann relations: (-1)^i Q_ell is positive definite on the
/// primitive subspace of CH^i. Degrees where Hard Lefschetz fails are
/// reported as skipped.
inline HodgeRiemannReport hr_check(const ChowSpace& c, const DegreeMap& dm,
                                   const ChowElement& ell, int jobs = 1) {
    int d = c.top;
    HodgeRiemannReport rep;
    rep.hl = hl_check(c, ell);
    rep.ok = rep.hl.ok;
    for (int i = 0; 2 * i <= d; ++i) {
        Mat b = detail::lefschetz_form(c, dm, ell, i, jobs);
        rep.form_sig.push_back(signature(b));
        if (!rep.hl.iso[i]) {
            rep.prim_dims.push_back(-1);
            rep.status.push_back(CheckStatus::Skipped);
            continue;
        }
        Mat k = detail::primitive_basis(c, ell, i);
        rep.prim_dims.push_back(static_cast<int>(k.size()));
        Mat g = mat_mul(mat_mul(k, b), mat_transpose(k));
        if (i % 2 == 1)
            for (auto& row : g)
                for (auto& x : row) x = -x;
        bool pass = signature(g) == SignatureTriple{static_cast<int>(k.size()), 0, 0};
        rep.status.push_back(pass ? CheckStatus::Pass : CheckStatus::Fail);
        rep.ok = rep.ok && pass;
    }
    return rep;
}

struct SignatureLemmaReport {
    std::vector<int> prim_dims; // per i <= d/2
    std::vector<int> expected;  // per m <= d/2: sum of (-1)^i dim P^i
    std::vector<int> actual;    // p - n of Q_ell on CH^m
    bool signatures_ok = true;
    bool decomposition_ok = true;
    bool ok = true;
};

/// The signature of Q_ell on CH^m equals the alternating sum of primitive
/// dimensions, and CH^m splits B_ell-orthogonally into ell^i P^{m-i}.
inline SignatureLemmaReport signature_lemma_check(const ChowSpace& c, const DegreeMap& dm,
                                                  const ChowElement& ell, int jobs = 1) {
    int d = c.top;
    if (!hl_check(c, ell).ok)
        throw PreconditionFailure("signature_lemma_check: hard Lefschetz fails for this class");
    SignatureLemmaReport rep;
    std::vector<Mat> prim;
    for (int i = 0; 2 * i <= d; ++i) {
        prim.push_back(detail::primitive_basis(c, ell, i));
        rep.prim_dims.push_back(static_cast<int>(prim.back().size()));
    }
    for (int m = 0; 2 * m <= d; ++m) {
        int expect = 0;
        for (int i = 0; i <= m; ++i)
            expect += (i % 2 == 0 ? 1 : -1) * rep.prim_dims[i];
        SignatureTriple s = signature(detail::lefschetz_form(c, dm, ell, m, jobs));
        rep.expected.push_back(expect);
        rep.actual.push_back(s.pos - s.neg);
        rep.signatures_ok = rep.signatures_ok && expect == s.pos - s.neg;

        // Lefschetz decomposition of CH^m: ell^i P^{m-i}, i = 0..m.
        Mat b = detail::lefschetz_form(c, dm, ell, m, jobs);
        std::vector<Mat> summands;
        int total = 0;
        for (int i = 0; i <= m; ++i) {
            Mat img;
            Mat op = operator_power(c, ell, m - i, i);
            for (const auto& v : prim[m - i]) img.push_back(mat_vec(op, v));
            total += static_cast<int>(img.size());
            summands.push_back(std::move(img));
        }
        Mat all;
        for (const auto& s2 : summands)
            for (const auto& v : s2) all.push_back(v);
        bool dims = total == c.dim(m);
        bool span = rank_of(all) == c.dim(m);
        bool orth = true;
        for (std::size_t i = 0; i < summands.size() && orth; ++i)
            for (std::size_t j = i + 1; j < summands.size() && orth; ++j)
                for (const auto& u : summands[i]) {
                    RatVec bu = mat_vec(b, u);
                    for (const auto& v : summands[j])
                        if (dot(bu, v) != 0) { orth = false; break; }
                    if (!orth) break;
                }
        rep.decomposition_ok = rep.decomposition_ok && dims && span && orth;
    }
    rep.ok = rep.signatures_ok && rep.decomposition_ok;
    return rep;
}

struct DeformationPoint {
    Rat t;
    bool hl_ok = false;
    std::vector<SignatureTriple> sig; // Q_ell at each i <= d/2
};

struct DeformationReport {
    bool sampled = true; // a finite scan, not a proof for the whole segment
    std::vector<DeformationPoint> points;
    bool all_hl = true;
    bool signatures_constant = true;
    int first_failure = -1;
    bool ok = true;
};

/// Samples the segment (1-t) ell0 + t ell1 at t = j/steps and records Hard
/// Lefschetz plus the signature of each Q_ell.
inline DeformationReport deformation_scan(const ChowSpace& c, const DegreeMap& dm,
                                          const RatVec& coeffs0, const RatVec& coeffs1,
                                          int steps, int jobs = 1) {
    if (steps < 1) throw PreconditionFailure("deformation_scan: steps must be at least 1");
    int d = c.top;
    DeformationReport rep;
    for (int j = 0; j <= steps; ++j) {
        Rat t = rat(j, steps);
        RatVec coeffs = add(scale(Rat(1) - t, coeffs0), scale(t, coeffs1));
        ChowElement ell = divisor_class(c, coeffs);
        DeformationPoint pt;
        pt.t = t;
        pt.hl_ok = hl_check(c, ell).ok;
        for (int i = 0; 2 * i <= d; ++i)
            pt.sig.push_back(signature(detail::lefschetz_form(c, dm, ell, i, jobs)));
        if (!pt.hl_ok && rep.first_failure < 0) rep.first_failure = j;
        rep.all_hl = rep.all_hl && pt.hl_ok;
        if (j > 0 && pt.sig != rep.points[0].sig) rep.signatures_constant = false;
        rep.points.push_back(std::move(pt));
    }
    rep.ok = rep.all_hl && rep.signatures_constant;
    return rep;
}

struct OrthoDecompReport {
    std::vector<int> dims_sub, dims_base, dims_link;
    bool dims_ok = true;   // dim CH^k(sub) = dim CH^k(base) + dim CH^{k-1}(link)
    bool cross_ok = true;  // the two summands pair to zero
    bool span_ok = true;   // together they span
    bool square_ok = true; // deg(x0^2 lift(f)) = -deg_link(f) in the top degree
    bool ok = true;
};

/// Decomposition of the Chow ring of a star subdivision at a 2-dimensional
/// cone into the pullback of the base ring and x0 times the link ring,
/// orthogonal under the induced degree map.
inline OrthoDecompReport ortho_decomp_check(const Fan& base, const Fan& subdivided,
                                            const std::vector<int>& tau,
                                            const MinkowskiWeight& w, int jobs = 1) {
    SubdivisionData ref = star_subdivision(base, tau);
    if (!fans_equal_embedded(ref.fan, subdivided))
        throw PreconditionFailure("ortho_decomp_check: not the star subdivision at this cone");
    LinkData l = link(base, tau);
    ChowSpace cb = chow_space(base, jobs);
    ChowSpace cs = chow_space(ref.fan, jobs);
    ChowSpace cl = chow_space(l.fan, jobs);
    int d = cb.top;
    int n = ref.new_ray;

    auto base_mc = base.max_cones();
    std::map<std::vector<int>, int> base_idx;
    for (std::size_t s = 0; s < base_mc.size(); ++s) base_idx[base_mc[s]] = static_cast<int>(s);
    MinkowskiWeight wsub;
    for (const auto& sigma : ref.fan.max_cones()) {
        std::vector<int> parent;
        bool has_new = std::binary_search(sigma.begin(), sigma.end(), n);
        if (has_new) {
            for (int r : sigma)
                if (r != n) parent.push_back(r);
            for (int r : tau) parent.push_back(r);
            std::sort(parent.begin(), parent.end());
            parent.erase(std::unique(parent.begin(), parent.end()), parent.end());
        } else {
            parent = sigma;
        }
        auto it = base_idx.find(parent);
        if (it == base_idx.end())
            throw InternalMismatch("ortho_decomp_check: subdivided cone without parent");
        wsub.w.push_back(w.w[it->second]);
    }
    DegreeMap dm_sub = degree_map(cs, wsub);
    DegreeMap dm_link = degree_map(cl, restrict_weight(base, tau, l, w));

    OrthoDecompReport rep;
    for (int k = 0; k <= d; ++k) {
        rep.dims_sub.push_back(cs.dim(k));
        rep.dims_base.push_back(cb.dim(k));
        rep.dims_link.push_back(k > 0 && k - 1 <= cl.top ? cl.dim(k - 1) : 0);
        rep.dims_ok = rep.dims_ok && rep.dims_sub[k] == rep.dims_base[k] + rep.dims_link[k];
    }

    // Summand one: pullback of the base ring along the identity on ambient
    // coordinates. Summand two: x0 times the lift of the link ring, link
    // rays lifted to their source rays in the subdivided fan.
    FanMap identity{mat_identity(base.ambient_dim)};
    auto lift_link = [&](int grade, int idx) {
        Monomial src = cl.monos[grade][cl.basis_cols[grade][idx]];
        Monomial img;
        for (auto [ray, e] : src.powers) img.powers.emplace_back(l.source_ray[ray], e);
        std::sort(img.powers.begin(), img.powers.end());
        return ChowElement{grade, {{cs.column_of(grade, img), Rat(1)}}};
    };
    ChowElement x0{1, {{cs.column_of(1, Monomial{{{n, 1}}}), Rat(1)}}};

    std::vector<std::vector<ChowElement>> pulled(d + 1), lifted(d + 1);
    for (int k = 0; k <= d; ++k) {
        for (int a = 0; a < cb.dim(k); ++a)
            pulled[k].push_back(pullback_element(cs, cb, identity, basis_element(cb, k, a)));
        if (k > 0 && k - 1 <= cl.top)
            for (int b = 0; b < cl.dim(k - 1); ++b)
                lifted[k].push_back(multiply(cs, x0, lift_link(k - 1, b)));
    }
    for (int k = 0; k <= d; ++k) {
        Mat rows;
        for (const auto& e : pulled[k]) rows.push_back(on_basis(cs, e));
        for (const auto& e : lifted[k]) rows.push_back(on_basis(cs, e));
        rep.span_ok = rep.span_ok && rank_of(rows) == cs.dim(k);
        for (const auto& p : pulled[k])
            for (const auto& q : lifted[d - k])
                if (degree_of(cs, dm_sub, multiply(cs, p, q)) != 0) rep.cross_ok = false;
    }
    if (cl.top == d - 2)
        for (int b = 0; b < cl.dim(cl.top); ++b) {
            ChowElement sq = multiply(cs, x0, multiply(cs, x0, lift_link(cl.top, b)));
            Rat lhs = degree_of(cs, dm_sub, sq);
            Rat rhs = degree_of(cl, dm_link, basis_element(cl, cl.top, b));
            if (lhs != -rhs) rep.square_ok = false;
        }
    rep.ok = rep.dims_ok && rep.cross_ok && rep.span_ok && rep.square_ok;
    return rep;
}

struct NamedCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::string mode = "direct"; // "direct" or "tower"
    int element = 0;             // 0 picks the smallest non-coloop
    int steps = 8;               // deformation samples in tower mode
    int jobs = 1;
    RatVec witness;              // optional override, one coefficient per ray of the
                                 // Bergman fan of M; empty selects the submodular rule
};

struct VerifyReport {
    std::string mode;
    int element = 0; // tower element, 0 in direct mode
    int tower_length = 0;
    std::vector<int> hilbert;
    std::vector<std::string> notes;
    std::vector<NamedCheck> checks;
    bool ok = true;
};

namespace detail {

template <typename F>
void run_check(VerifyReport& rep, const std::string& name, F&& body) {
    NamedCheck c{name, false, ""};
    try {
        auto [pass, detail_msg] = body();
        c.pass = pass;
        c.detail = detail_msg;
    } catch (const InputError&) {
        throw; // bad input is the caller's problem, not a failed verification
    } catch (const ColoopInput&) {
        throw;
    } catch (const Error& e) {
        c.pass = false;
        c.detail = e.what();
    }
    rep.ok = rep.ok && c.pass;
    rep.checks.push_back(std::move(c));
}

inline void verify_direct_checks(VerifyReport& rep, const Matroid& m, const VerifyOptions& opt) {
    Fan f = bergman_fan(m);
    run_check(rep, "fan-valid", [&] {
        validate_fan(f);
        return std::pair{true, std::string{}};
    });
    ChowSpace c = chow_space(f, opt.jobs);
    for (int i = 0; i <= c.top; ++i) rep.hilbert.push_back(c.dim(i));
    run_check(rep, "balanced", [&] {
        auto bad = is_balanced(f, all_ones_weight(f));
        return std::pair{!bad.has_value(), std::string{}};
    });
    run_check(rep, "mw-dimension", [&] {
        std::size_t n = mw_space(f, c).size();
        return std::pair{true, "dimension " + std::to_string(n)};
    });
    RatVec coeffs = opt.witness.empty() ? submodular_class(m) : opt.witness;
    if (coeffs.size() != f.rays.size())
        throw InputError("witness: expected " + std::to_string(f.rays.size()) +
                         " coefficients, got " + std::to_string(coeffs.size()));
    run_check(rep, "witness-strictly-convex", [&] {
        return std::pair{classify_convexity(f, coeffs).strictly_convex, std::string{}};
    });
    std::optional<DegreeMap> dm;
    run_check(rep, "degree-map", [&] {
        dm = degree_map(c, all_ones_weight(f));
        return std::pair{true, std::string{}};
    });
    if (!dm) {
        rep.notes.push_back("no degree map; duality and Lefschetz checks skipped");
        return;
    }
    ChowElement ell = divisor_class(c, coeffs);
    run_check(rep, "pd", [&] {
        return std::pair{check_poincare_duality(c, *dm, opt.jobs).ok, std::string{}};
    });
    run_check(rep, "hl", [&] { return std::pair{hl_check(c, ell).ok, std::string{}}; });
    run_check(rep, "hr", [&] {
        return std::pair{hr_check(c, *dm, ell, opt.jobs).ok, std::string{}};
    });
    run_check(rep, "signature-lemma", [&] {
        return std::pair{signature_lemma_check(c, *dm, ell, opt.jobs).ok, std::string{}};
    });
}

inline void verify_tower_checks(VerifyReport& rep, const Matroid& m, int elem,
                                const VerifyOptions& opt) {
    rep.element = elem;
    std::optional<DeletionTower> tower;
    run_check(rep, "tower-structure", [&] {
        tower = deletion_tower(m, elem);
        return std::pair{true, std::to_string(tower->s_flats.size()) + " subdivisions"};
    });
    if (!tower) {
        rep.notes.push_back("tower construction failed; remaining checks skipped");
        return;
    }
    const DeletionTower& t = *tower;
    int k = static_cast<int>(t.s_flats.size());
    rep.tower_length = k;
    Mask bit = Mask(1) << (elem - 1);

    RatVec ell_del = submodular_class(t.deleted);
    run_check(rep, "base-witness-strictly-convex", [&] {
        return std::pair{classify_convexity(t.deleted_fan, ell_del).strictly_convex,
                         std::string{}};
    });
    for (int j = 1; j <= k; ++j) {
        Mask hi = t.s_flats[j - 1] | bit;
        for (int lvl = 0; lvl <= k; ++lvl) {
            Mask upper = lvl >= j ? t.s_flats[j - 1] : hi;
            const auto& flats = t.ray_flats[lvl];
            auto ray_with = [&](Mask g) {
                return static_cast<int>(std::find(flats.begin(), flats.end(), g) - flats.begin());
            };
            std::vector<int> tau{ray_with(bit), ray_with(upper)};
            std::sort(tau.begin(), tau.end());
            run_check(rep,
                      "link-product[" + std::to_string(lvl) + "][" + std::to_string(j) + "]",
                      [&] {
                          factor_link_as_intervals(m, t.fans[lvl], tau, bit, hi);
                          return std::pair{true, std::string{}};
                      });
        }
        run_check(rep, "tensor-hilbert[" + std::to_string(j) + "]", [&] {
            Fan below = bergman_fan(interval(m, bit, hi));
            Fan above = bergman_fan(interval(m, hi, m.ground()));
            return std::pair{product_chow_iso_check(below, above, opt.jobs), std::string{}};
        });
    }
    for (int lvl = 0; lvl <= k; ++lvl)
        run_check(rep, "balanced[" + std::to_string(lvl) + "]", [&] {
            auto bad = is_balanced(t.fans[lvl], all_ones_weight(t.fans[lvl]));
            return std::pair{!bad.has_value(), std::string{}};
        });

    std::optional<TowerConvexityReport> conv;
    run_check(rep, "tower-convexity", [&] {
        conv = tower_convexity_check(t, ell_del);
        return std::pair{conv->ok, std::string{}};
    });

    for (int j = 1; j <= k; ++j) {
        std::optional<OrthoDecompReport> od;
        run_check(rep, "ortho-decomp[" + std::to_string(j) + "]", [&] {
            od = ortho_decomp_check(t.fans[j], t.fans[j - 1], t.taus[j - 1],
                                    all_ones_weight(t.fans[j]), opt.jobs);
            return std::pair{od->dims_ok && od->cross_ok && od->span_ok, std::string{}};
        });
        run_check(rep, "adjunction[" + std::to_string(j) + "]", [&] {
            return std::pair{od.has_value() && od->square_ok, std::string{}};
        });
    }

    ChowSpace ck = chow_space(t.fans[k], opt.jobs);
    ChowSpace cdel = chow_space(t.deleted_fan, opt.jobs);
    run_check(rep, "projection-iso", [&] {
        if (ck.top != cdel.top) return std::pair{false, std::string{"top degrees differ"}};
        for (int g = 0; g <= ck.top; ++g) {
            if (ck.dim(g) != cdel.dim(g)) return std::pair{false, std::string{"dims differ"}};
            Mat img;
            for (int a = 0; a < cdel.dim(g); ++a)
                img.push_back(on_basis(
                    ck, pullback_element(ck, cdel, t.projection, basis_element(cdel, g, a))));
            if (rank_of(img) != cdel.dim(g))
                return std::pair{false, std::string{"pullback not bijective in degree " +
                                                    std::to_string(g)}};
        }
        return std::pair{true, std::string{}};
    });

    ChowSpace c0 = chow_space(t.fans[0], opt.jobs);
    for (int i = 0; i <= c0.top; ++i) rep.hilbert.push_back(c0.dim(i));
    RatVec target = opt.witness.empty() ? submodular_class(m) : opt.witness;
    if (target.size() != t.fans[0].rays.size())
        throw InputError("witness: expected " + std::to_string(t.fans[0].rays.size()) +
                         " coefficients, got " + std::to_string(target.size()));
    run_check(rep, "witness-strictly-convex", [&] {
        return std::pair{classify_convexity(t.fans[0], target).strictly_convex, std::string{}};
    });
    if (!conv) {
        rep.notes.push_back("no pulled-back class; Lefschetz and deformation checks skipped");
        rep.ok = false;
        return;
    }
    DegreeMap dm0 = degree_map(c0, all_ones_weight(t.fans[0]));
    const RatVec& ell0 = conv->pulled[0];
    ChowElement ell0_class = divisor_class(c0, ell0);
    run_check(rep, "hl", [&] { return std::pair{hl_check(c0, ell0_class).ok, std::string{}}; });
    run_check(rep, "hr", [&] {
        return std::pair{hr_check(c0, dm0, ell0_class, opt.jobs).ok, std::string{}};
    });
    run_check(rep, "deformation", [&] {
        auto r = deformation_scan(c0, dm0, ell0, target, opt.steps, opt.jobs);
        std::string note = "sampled at " + std::to_string(opt.steps + 1) + " points";
        return std::pair{r.ok, note};
    });
}

} // namespace detail

/// Runs the full verification suite for one matroid. Direct mode checks
/// duality, Hard Lefschetz and Hodge-Riemann for the submodular witness on
/// the Bergman fan. Tower mode decomposes the deletion of a non-coloop into
/// star subdivisions and verifies every intermediate step, ending with the
/// pulled-back boundary class and a sampled deformation toward a strictly
/// convex witness.
inline VerifyReport verify_main_theorem(const Matroid& m, const VerifyOptions& opt = {}) {
    if (m.rank() < 1) throw PreconditionFailure("verify_main_theorem: rank at least 1 required");
    VerifyReport rep;
    rep.mode = opt.mode;
    if (opt.mode == "direct") {
        detail::verify_direct_checks(rep, m, opt);
        return rep;
    }
    if (opt.mode != "tower")
        throw InputError("verify_main_theorem: mode must be direct or tower");
    int elem = opt.element;
    if (elem == 0) {
        for (int e = 1; e <= m.ground_size; ++e)
            if (!is_coloop(m, e)) { elem = e; break; }
    }
    if (elem == 0) {
        rep.mode = "direct";
        rep.notes.push_back("all elements are coloops; the fan is complete and the direct "
                            "checks apply");
        detail::verify_direct_checks(rep, m, opt);
        return rep;
    }
    detail::verify_tower_checks(rep, m, elem, opt);
    return rep;
}

} // namespace hodgeforge
