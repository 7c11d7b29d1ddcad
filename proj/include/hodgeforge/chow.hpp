#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hodgeforge/errors.hpp"
#include "hodgeforge/fan.hpp"
#include "hodgeforge/parallel.hpp"

namespace hodgeforge {

/// Monomial in the ray variables; powers sorted by ray index, exponents
/// positive. Nonzero in the face ring iff the support is a cone.
struct Monomial {
    std::vector<std::pair<int, int>> powers;

    int degree() const {
        int d = 0;
        for (auto [r, e] : powers) d += e;
        return d;
    }

    std::vector<int> support() const {
        std::vector<int> s;
        for (auto [r, e] : powers) s.push_back(r);
        return s;
    }

    bool operator<(const Monomial& o) const { return powers < o.powers; }
    bool operator==(const Monomial& o) const { return powers == o.powers; }
};

/// Column order within a degree: at the smallest ray where exponents
/// differ, the larger exponent comes first.
inline bool monomial_before(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.powers.size() || j < b.powers.size()) {
        int ra = i < a.powers.size() ? a.powers[i].first : INT32_MAX;
        int rb = j < b.powers.size() ? b.powers[j].first : INT32_MAX;
        if (ra < rb) return true;  // a has positive exponent, b has zero
        if (rb < ra) return false;
        if (a.powers[i].second != b.powers[j].second)
            return a.powers[i].second > b.powers[j].second;
        ++i, ++j;
    }
    return false;
}

/// Product of monomials, or nullopt when the merged support is not a cone.
inline std::optional<Monomial> monomial_product(const Fan& f, const Monomial& a,
                                                const Monomial& b) {
    Monomial m;
    std::size_t i = 0, j = 0;
    while (i < a.powers.size() || j < b.powers.size()) {
        if (j == b.powers.size() || (i < a.powers.size() && a.powers[i].first < b.powers[j].first))
            m.powers.push_back(a.powers[i++]);
        else if (i == a.powers.size() || b.powers[j].first < a.powers[i].first)
            m.powers.push_back(b.powers[j++]);
        else {
            m.powers.emplace_back(a.powers[i].first, a.powers[i].second + b.powers[j].second);
            ++i, ++j;
        }
    }
    if (!f.has_cone(m.support())) return std::nullopt;
    return m;
}

inline std::string monomial_to_string(const Monomial& m) {
    if (m.powers.empty()) return "1";
    std::string s;
    for (auto [r, e] : m.powers) {
        if (!s.empty()) s += "*";
        s += std::to_string(r) + "^" + std::to_string(e);
    }
    return s;
}

/// Homogeneous element, stored as coefficients on the monomial columns of
/// its grade (normal form unless stated otherwise).
struct ChowElement {
    int grade = 0;
    SparseVec terms;

    bool is_zero() const { return terms.empty(); }
};

/// Functional from the dual standard basis together with its degree-1
/// expansion: the coefficient at ray r is the functional applied to v_r.
struct LinearRelation {
    RatVec functional;
    SparseVec expansion; // columns into the degree-1 monomials
};

/// Graded pieces of the face ring modulo the global linear functionals,
/// with exact per-degree reduction data.
struct ChowSpace {
    Fan fan;
    int top = 0;
    std::vector<std::vector<Monomial>> monos; // per degree, column order
    std::vector<std::map<Monomial, int>> mono_index;
    std::vector<Eliminator> elim; // finalized
    std::vector<std::vector<int>> basis_cols;
    std::vector<int> hilbert;

    int dim(int grade) const {
        return grade < 0 || grade > top ? 0 : hilbert[grade];
    }

    int column_of(int grade, const Monomial& m) const {
        auto it = mono_index[grade].find(m);
        if (it == mono_index[grade].end())
            throw PreconditionFailure("chow: monomial outside the enumerated columns");
        return it->second;
    }
};

namespace detail {

inline void enumerate_degree(const Fan& f, int k, std::vector<Monomial>& out) {
    if (k == 0) {
        out.push_back(Monomial{});
        return;
    }
    for (const auto& cone : f.cones) {
        if (cone.empty() || static_cast<int>(cone.size()) > k) continue;
        // Compositions of k into cone.size() positive parts.
        std::vector<int> exps(cone.size(), 1);
        int rest = k - static_cast<int>(cone.size());
        std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
            if (pos + 1 == exps.size()) {
                exps[pos] = 1 + left;
                Monomial m;
                for (std::size_t q = 0; q < cone.size(); ++q)
                    m.powers.emplace_back(cone[q], exps[q]);
                out.push_back(std::move(m));
                return;
            }
            for (int take = 0; take <= left; ++take) {
                exps[pos] = 1 + take;
                rec(pos + 1, left - take);
            }
        };
        rec(0, rest);
    }
    std::sort(out.begin(), out.end(), monomial_before);
}

} // namespace detail

inline std::vector<LinearRelation> linear_relations(const ChowSpace& c);

/// Builds all graded pieces up to the fan dimension. Per-degree
/// eliminations are independent; `jobs` > 1 runs them concurrently with
/// identical results.
inline ChowSpace chow_space(const Fan& f, int jobs = 1) {
    ChowSpace c;
    c.fan = f;
    c.top = f.dim();
    c.monos.resize(c.top + 1);
    c.mono_index.resize(c.top + 1);
    c.elim.resize(c.top + 1);
    c.basis_cols.resize(c.top + 1);
    c.hilbert.assign(c.top + 1, 0);
    for (int k = 0; k <= c.top; ++k) {
        detail::enumerate_degree(f, k, c.monos[k]);
        for (std::size_t i = 0; i < c.monos[k].size(); ++i)
            c.mono_index[k][c.monos[k][i]] = static_cast<int>(i);
    }
    parallel_for(c.top + 1, jobs, [&](std::size_t k) {
        if (k == 0) {
            c.basis_cols[0] = {0};
            c.hilbert[0] = 1;
            return;
        }
        Eliminator& e = c.elim[k];
        for (const Monomial& m : c.monos[k - 1]) {
            for (int a = 0; a < f.ambient_dim; ++a) {
                SparseVec row;
                for (std::size_t r = 0; r < f.rays.size(); ++r) {
                    const Rat& coef = f.rays[r][a];
                    if (coef == 0) continue;
                    Monomial xr{{{static_cast<int>(r), 1}}};
                    auto prod = monomial_product(f, m, xr);
                    if (!prod) continue;
                    row.emplace_back(c.mono_index[k].at(*prod), coef);
                }
                std::sort(row.begin(), row.end());
                e.insert(std::move(row));
            }
        }
        e.finalize();
        std::vector<int> piv = e.pivot_cols();
        std::set<int> pivset(piv.begin(), piv.end());
        for (int col = 0; col < static_cast<int>(c.monos[k].size()); ++col)
            if (!pivset.count(col)) c.basis_cols[k].push_back(col);
        c.hilbert[k] = static_cast<int>(c.basis_cols[k].size());
    });
    return c;
}

inline std::vector<LinearRelation> linear_relations(const ChowSpace& c) {
    std::vector<LinearRelation> out;
    for (int a = 0; a < c.fan.ambient_dim; ++a) {
        LinearRelation rel;
        rel.functional = zero_vec(c.fan.ambient_dim);
        rel.functional[a] = 1;
        for (std::size_t r = 0; r < c.fan.rays.size(); ++r) {
            const Rat& coef = c.fan.rays[r][a];
            if (coef == 0) continue;
            Monomial xr{{{static_cast<int>(r), 1}}};
            rel.expansion.emplace_back(c.column_of(1, xr), coef);
        }
        std::sort(rel.expansion.begin(), rel.expansion.end());
        out.push_back(std::move(rel));
    }
    return out;
}

inline ChowElement chow_zero(int grade) { return ChowElement{grade, {}}; }

inline ChowElement chow_one(const ChowSpace& c) {
    (void)c;
    return ChowElement{0, {{0, Rat(1)}}};
}

inline ChowElement normal_form(const ChowSpace& c, ChowElement x) {
    if (x.grade >= 0 && x.grade <= c.top) x.terms = c.elim[x.grade].reduce(std::move(x.terms));
    else x.terms.clear();
    return x;
}

/// Degree-1 class from ray coefficients (a representative of a divisor).
inline ChowElement divisor_class(const ChowSpace& c, const RatVec& ray_coeffs) {
    if (ray_coeffs.size() != c.fan.rays.size())
        throw PreconditionFailure("divisor_class: one coefficient per ray required");
    ChowElement x{1, {}};
    for (std::size_t r = 0; r < ray_coeffs.size(); ++r) {
        if (ray_coeffs[r] == 0) continue;
        Monomial xr{{{static_cast<int>(r), 1}}};
        x.terms.emplace_back(c.column_of(1, xr), ray_coeffs[r]);
    }
    std::sort(x.terms.begin(), x.terms.end());
    return normal_form(c, std::move(x));
}

inline ChowElement chow_add(ChowElement a, const ChowElement& b) {
    if (a.grade != b.grade) throw PreconditionFailure("chow_add: grades differ");
    a.terms = sparse_axpy(a.terms, Rat(1), b.terms);
    return a;
}

inline ChowElement chow_scale(const Rat& s, ChowElement a) {
    if (s == 0) return chow_zero(a.grade);
    for (auto& t : a.terms) t.second *= s;
    return a;
}

inline ChowElement multiply(const ChowSpace& c, const ChowElement& a, const ChowElement& b) {
    int grade = a.grade + b.grade;
    if (grade > c.top) return chow_zero(grade);
    std::map<int, Rat> acc;
    for (const auto& [ca, va] : a.terms)
        for (const auto& [cb, vb] : b.terms) {
            auto prod = monomial_product(c.fan, c.monos[a.grade][ca], c.monos[b.grade][cb]);
            if (!prod) continue;
            acc[c.mono_index[grade].at(*prod)] += va * vb;
        }
    ChowElement x{grade, {}};
    for (auto& [col, v] : acc)
        if (v != 0) x.terms.emplace_back(col, std::move(v));
    return normal_form(c, std::move(x));
}

/// Coefficients of a normal-form element on the basis columns of its grade.
inline RatVec on_basis(const ChowSpace& c, const ChowElement& x) {
    RatVec v = zero_vec(c.dim(x.grade));
    std::size_t k = 0;
    const auto& cols = c.basis_cols[x.grade];
    for (const auto& [col, val] : x.terms) {
        while (k < cols.size() && cols[k] < col) ++k;
        if (k == cols.size() || cols[k] != col)
            throw InternalMismatch("on_basis: element not in normal form");
        v[k] = val;
    }
    return v;
}

inline ChowElement from_basis(const ChowSpace& c, int grade, const RatVec& coords) {
    ChowElement x{grade, {}};
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (coords[k] != 0) x.terms.emplace_back(c.basis_cols[grade][k], coords[k]);
    return x;
}

/// Matrix of multiplication by a degree-1 class, CH^g -> CH^{g+1}, columns
/// indexed by the degree-g basis.
inline Mat mult_matrix(const ChowSpace& c, const ChowElement& ell, int grade) {
    if (ell.grade != 1) throw PreconditionFailure("mult_matrix: degree-1 class required");
    Mat m(c.dim(grade + 1), zero_vec(c.dim(grade)));
    for (int j = 0; j < c.dim(grade); ++j) {
        ChowElement bj{grade, {{c.basis_cols[grade][j], Rat(1)}}};
        RatVec col = on_basis(c, multiply(c, ell, bj));
        for (std::size_t i = 0; i < col.size(); ++i) m[i][j] = col[i];
    }
    return m;
}

/// Weights on the maximal cones, aligned with Fan::max_cones() order.
struct MinkowskiWeight {
    std::vector<Rat> w;
};

inline MinkowskiWeight all_ones_weight(const Fan& f) {
    return MinkowskiWeight{RatVec(f.max_cones().size(), Rat(1))};
}

namespace detail {

/// Balancing rows: one block per codimension-one cone tau, expressing that
/// the weighted sum of coface directions lies in span(tau).
inline Mat balancing_matrix(const Fan& f, const std::vector<std::vector<int>>& mc) {
    int d = f.dim();
    Mat rows;
    for (const auto& tau : f.cones) {
        if (static_cast<int>(tau.size()) != d - 1) continue;
        Mat span;
        for (int r : tau) span.push_back(f.rays[r]);
        QuotientMap q = make_quotient(f.ambient_dim, std::move(span));
        Mat block(q.kept.size(), zero_vec(mc.size()));
        for (std::size_t s = 0; s < mc.size(); ++s) {
            if (!std::includes(mc[s].begin(), mc[s].end(), tau.begin(), tau.end())) continue;
            int extra = -1;
            for (int r : mc[s])
                if (!std::binary_search(tau.begin(), tau.end(), r)) extra = r;
            RatVec img = mat_vec(q.matrix, f.rays[extra]);
            for (std::size_t i = 0; i < img.size(); ++i) block[i][s] = img[i];
        }
        for (auto& row : block) rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

/// Nullopt when balanced; otherwise the first codimension-one cone where
/// the balancing condition fails.
inline std::optional<std::vector<int>> is_balanced(const Fan& f, const MinkowskiWeight& w) {
    if (!f.is_pure()) throw PreconditionFailure("is_balanced: fan not pure-dimensional");
    auto mc = f.max_cones();
    if (w.w.size() != mc.size())
        throw PreconditionFailure("is_balanced: one weight per maximal cone required");
    int d = f.dim();
    for (const auto& tau : f.cones) {
        if (static_cast<int>(tau.size()) != d - 1) continue;
        Mat span;
        for (int r : tau) span.push_back(f.rays[r]);
        QuotientMap q = make_quotient(f.ambient_dim, std::move(span));
        RatVec sum = zero_vec(q.kept.size());
        for (std::size_t s = 0; s < mc.size(); ++s) {
            if (!std::includes(mc[s].begin(), mc[s].end(), tau.begin(), tau.end())) continue;
            int extra = -1;
            for (int r : mc[s])
                if (!std::binary_search(tau.begin(), tau.end(), r)) extra = r;
            sum = add(sum, scale(w.w[s], mat_vec(q.matrix, f.rays[extra])));
        }
        if (!is_zero(sum)) return tau;
    }
    return std::nullopt;
}

/// Basis of the space of balanced weights; its dimension must agree with
/// the top Chow dimension.
inline std::vector<MinkowskiWeight> mw_space(const Fan& f, const ChowSpace& c) {
    if (!f.is_pure()) throw PreconditionFailure("mw_space: fan not pure-dimensional");
    auto mc = f.max_cones();
    Mat rows = detail::balancing_matrix(f, mc);
    std::vector<RatVec> basis = kernel_basis(std::move(rows), mc.size());
    if (static_cast<int>(basis.size()) != c.dim(c.top))
        throw VerificationFailure("weight space dimension " + std::to_string(basis.size()) +
                                  " differs from top Chow dimension " +
                                  std::to_string(c.dim(c.top)));
    std::vector<MinkowskiWeight> out;
    for (auto& b : basis) out.push_back(MinkowskiWeight{std::move(b)});
    return out;
}

/// Functional on the top-degree basis determined by deg(x_sigma) = w_sigma.
struct DegreeMap {
    RatVec phi;
};

inline DegreeMap degree_map(const ChowSpace& c, const MinkowskiWeight& w) {
    if (!c.fan.is_pure()) throw PreconditionFailure("degree_map: fan not pure-dimensional");
    auto mc = c.fan.max_cones();
    if (w.w.size() != mc.size())
        throw PreconditionFailure("degree_map: one weight per maximal cone required");
    Mat a;
    for (const auto& sigma : mc) {
        Monomial m;
        for (int r : sigma) m.powers.emplace_back(r, 1);
        ChowElement x{c.top, {{c.column_of(c.top, m), Rat(1)}}};
        a.push_back(on_basis(c, normal_form(c, std::move(x))));
    }
    if (rank_of(a) != c.dim(c.top))
        throw VerificationFailure("degree_map: maximal-cone monomials do not span the top degree");
    auto phi = solve(a, w.w);
    if (!phi)
        throw PreconditionFailure("degree_map: weight is not balanced, no degree functional");
    return DegreeMap{std::move(*phi)};
}

inline Rat degree_of(const ChowSpace& c, const DegreeMap& dm, const ChowElement& x) {
    if (x.grade != c.top) throw PreconditionFailure("degree_of: top-degree element required");
    return dot(dm.phi, on_basis(c, x));
}

/// Weight induced on a link: each link cone inherits the weight of its
/// coface. The result must remain balanced.
inline MinkowskiWeight restrict_weight(const Fan& f, const std::vector<int>& tau,
                                       const LinkData& l, const MinkowskiWeight& w) {
    auto mc = f.max_cones();
    if (w.w.size() != mc.size())
        throw PreconditionFailure("restrict_weight: one weight per maximal cone required");
    std::map<std::vector<int>, int> idx;
    for (std::size_t s = 0; s < mc.size(); ++s) idx[mc[s]] = static_cast<int>(s);
    MinkowskiWeight out;
    for (const auto& lc : l.fan.max_cones()) {
        std::vector<int> coface = tau;
        for (int s : lc) coface.push_back(l.source_ray[s]);
        std::sort(coface.begin(), coface.end());
        auto it = idx.find(coface);
        if (it == idx.end())
            throw PreconditionFailure("restrict_weight: link cone without maximal coface");
        out.w.push_back(w.w[it->second]);
    }
    if (auto bad = is_balanced(l.fan, out))
        throw VerificationFailure("restrict_weight: restricted weight is unbalanced");
    return out;
}

/// Divisor restriction to a link: eliminate the tau variables with dual
/// functionals and push the rest through the quotient.
inline RatVec restrict_divisor_to_link(const Fan& f, const RatVec& ray_coeffs,
                                       const std::vector<int>& tau, const LinkData& l) {
    if (ray_coeffs.size() != f.rays.size())
        throw PreconditionFailure("restrict_divisor_to_link: one coefficient per ray required");
    // c_t applied to the generators of tau is the t-indicator; free
    // coordinates zero for determinism.
    Mat tau_rows;
    for (int t : tau) tau_rows.push_back(f.rays[t]);
    std::vector<RatVec> functionals;
    for (std::size_t t = 0; t < tau.size(); ++t) {
        RatVec rhs = zero_vec(tau.size());
        rhs[t] = 1;
        auto ct = solve(tau_rows, rhs);
        if (!ct) throw InternalMismatch("restrict_divisor_to_link: dependent cone generators");
        functionals.push_back(std::move(*ct));
    }
    RatVec out = zero_vec(l.fan.rays.size());
    for (std::size_t s = 0; s < l.fan.rays.size(); ++s) {
        const RatVec& v = f.rays[l.source_ray[s]];
        Rat val = ray_coeffs[l.source_ray[s]];
        for (std::size_t t = 0; t < tau.size(); ++t)
            val -= ray_coeffs[tau[t]] * dot(functionals[t], v);
        out[s] = val;
    }
    return out;
}

/// Full restriction CH(fan) -> CH(link): monomials outside the star die,
/// tau variables are eliminated, the rest map through the quotient.
inline ChowElement restrict_to_link(const ChowSpace& c, const ChowElement& x,
                                    const std::vector<int>& tau, const LinkData& l,
                                    const ChowSpace& cl) {
    std::vector<RatVec> sub; // per tau position: divisor on the link
    {
        RatVec indicator = zero_vec(c.fan.rays.size());
        for (std::size_t t = 0; t < tau.size(); ++t) {
            RatVec unit = indicator;
            unit[tau[t]] = 1;
            RatVec r = restrict_divisor_to_link(c.fan, unit, tau, l);
            // unit is supported on tau only, so r = -c_t on link sources
            sub.push_back(std::move(r));
        }
    }
    ChowElement out = chow_zero(x.grade);
    for (const auto& [col, coeff] : x.terms) {
        const Monomial& m = c.monos[x.grade][col];
        ChowElement acc = chow_scale(coeff, chow_one(cl));
        bool dead = false;
        for (auto [r, e] : m.powers) {
            RatVec div;
            auto t = std::find(tau.begin(), tau.end(), r);
            if (t != tau.end()) {
                div = sub[t - tau.begin()];
            } else if (l.image_ray[r] >= 0) {
                div = zero_vec(l.fan.rays.size());
                div[l.image_ray[r]] = 1;
            } else {
                dead = true;
                break;
            }
            ChowElement dcl = divisor_class(cl, div);
            for (int p = 0; p < e && !acc.is_zero(); ++p) acc = multiply(cl, acc, dcl);
        }
        if (!dead && !acc.is_zero()) out = chow_add(std::move(out), acc);
    }
    return out;
}

/// deg_w(x_tau * lift(f)) = deg_res(f) for top-degree link classes.
inline bool adjunction_check(const ChowSpace& c, const DegreeMap& dm, const std::vector<int>& tau,
                             const LinkData& l, const ChowSpace& cl, const DegreeMap& dm_res,
                             const ChowElement& f_link) {
    if (f_link.grade != cl.top)
        throw PreconditionFailure("adjunction_check: top-degree link class required");
    Monomial xt;
    for (int t : tau) xt.powers.emplace_back(t, 1);
    std::sort(xt.powers.begin(), xt.powers.end());
    ChowElement xtau{static_cast<int>(tau.size()), {{c.column_of(tau.size(), xt), Rat(1)}}};
    xtau = normal_form(c, std::move(xtau));
    ChowElement lift = chow_zero(f_link.grade);
    for (const auto& [col, coeff] : f_link.terms) {
        Monomial lifted;
        for (auto [s, e] : cl.monos[f_link.grade][col].powers)
            lifted.powers.emplace_back(l.source_ray[s], e);
        std::sort(lifted.powers.begin(), lifted.powers.end());
        lift.terms.emplace_back(c.column_of(f_link.grade, lifted), coeff);
    }
    std::sort(lift.terms.begin(), lift.terms.end());
    lift = normal_form(c, std::move(lift));
    Rat lhs = degree_of(c, dm, multiply(c, xtau, lift));
    Rat rhs = degree_of(cl, dm_res, f_link);
    return lhs == rhs;
}

/// Ray coefficients of the pullback of a divisor along a fan map: evaluate
/// the target's piecewise linear function at the mapped source generators.
inline RatVec pullback_divisor(const Fan& src, const Fan& tgt, const FanMap& f,
                               const RatVec& tgt_ray_coeffs) {
    RatVec out = zero_vec(src.rays.size());
    for (std::size_t r = 0; r < src.rays.size(); ++r)
        out[r] = evaluate_pl(tgt, tgt_ray_coeffs, apply_map(f, src.rays[r]));
    return out;
}

/// Pullback of an arbitrary class by multiplicativity over its monomials.
inline ChowElement pullback_element(const ChowSpace& cs, const ChowSpace& ct, const FanMap& f,
                                    const ChowElement& x) {
    std::vector<ChowElement> ray_pull; // pullback of each target ray class
    ray_pull.reserve(ct.fan.rays.size());
    for (std::size_t r = 0; r < ct.fan.rays.size(); ++r) {
        RatVec unit = zero_vec(ct.fan.rays.size());
        unit[r] = 1;
        ray_pull.push_back(divisor_class(cs, pullback_divisor(cs.fan, ct.fan, f, unit)));
    }
    ChowElement out = chow_zero(x.grade);
    for (const auto& [col, coeff] : x.terms) {
        ChowElement acc = chow_scale(coeff, chow_one(cs));
        for (auto [r, e] : ct.monos[x.grade][col].powers)
            for (int p = 0; p < e && !acc.is_zero(); ++p) acc = multiply(cs, acc, ray_pull[r]);
        if (!acc.is_zero()) out = chow_add(std::move(out), acc);
    }
    return out;
}

/// Hilbert convolution plus a rank check that pairing basis monomials spans
/// the product's Chow space degree by degree.
inline bool product_chow_iso_check(const Fan& a, const Fan& b, int jobs = 1) {
    ChowSpace ca = chow_space(a, jobs), cb = chow_space(b, jobs);
    Fan p = product(a, b);
    ChowSpace cp = chow_space(p, jobs);
    int shift = static_cast<int>(a.rays.size());
    for (int k = 0; k <= cp.top; ++k) {
        int conv = 0;
        for (int i = 0; i <= k; ++i) conv += ca.dim(i) * cb.dim(k - i);
        if (conv != cp.dim(k)) return false;
        Eliminator span;
        int inserted = 0;
        for (int i = 0; i <= k; ++i) {
            for (int ba : i <= ca.top ? ca.basis_cols[i] : std::vector<int>{})
                for (int bb : k - i <= cb.top ? cb.basis_cols[k - i] : std::vector<int>{}) {
                    Monomial m = ca.monos[i][ba];
                    for (auto [r, e] : cb.monos[k - i][bb].powers) m.powers.emplace_back(r + shift, e);
                    ChowElement x{k, {{cp.column_of(k, m), Rat(1)}}};
                    x = normal_form(cp, std::move(x));
                    SparseVec row;
                    RatVec coords = on_basis(cp, x);
                    for (std::size_t q = 0; q < coords.size(); ++q)
                        if (coords[q] != 0) row.emplace_back(static_cast<int>(q), coords[q]);
                    if (span.insert(std::move(row))) ++inserted;
                }
        }
        if (inserted != cp.dim(k)) return false;
    }
    return true;
}

} // namespace hodgeforge
