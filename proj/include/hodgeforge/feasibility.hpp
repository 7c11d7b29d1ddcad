#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "hodgeforge/linalg.hpp"

namespace hodgeforge {

/// One linear inequality <coef, x> > rhs (strict) or >= rhs.
struct LinIneq {
    RatVec coef;
    Rat rhs;
    bool strict = true;
};

/// Outcome of exact Fourier-Motzkin elimination. When feasible, `point`
/// satisfies every inequality. When infeasible, `farkas` holds nonnegative
/// multipliers over the input rows combining to an impossible constant row
/// (checkable by the caller).
struct FMOutcome {
    bool feasible = false;
    RatVec point;
    RatVec farkas;
};

namespace detail {

struct FMRow {
    RatVec coef;
    Rat rhs;
    bool strict;
    RatVec mult; // combination of original rows, always nonnegative
};

inline bool fm_constant_row_violated(const FMRow& r) {
    // Constant row reads 0 > rhs (or 0 >= rhs).
    if (r.rhs > 0) return true;
    return r.strict && r.rhs == 0;
}

/// Positive rescale to a canonical form plus domination pruning: among rows
/// with equal coefficients keep only the strongest bound.
inline void fm_compress(std::vector<FMRow>& rows) {
    for (FMRow& r : rows) {
        Rat norm = 0;
        for (const Rat& c : r.coef)
            if (c != 0) { norm = abs(c); break; }
        if (norm == 0 || norm == 1) continue;
        Rat inv = 1 / norm;
        for (Rat& c : r.coef) c *= inv;
        r.rhs *= inv;
        for (Rat& m : r.mult) m *= inv;
    }
    std::stable_sort(rows.begin(), rows.end(), [](const FMRow& a, const FMRow& b) {
        if (a.coef != b.coef) return a.coef < b.coef;
        if (a.rhs != b.rhs) return a.rhs > b.rhs;
        return a.strict && !b.strict;
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const FMRow& a, const FMRow& b) { return a.coef == b.coef; }),
               rows.end());
}

} // namespace detail

/// Exact feasibility of a system of strict/nonstrict linear inequalities.
inline FMOutcome fm_solve(const std::vector<LinIneq>& sys, int nvars) {
    using detail::FMRow;
    std::vector<FMRow> rows;
    rows.reserve(sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i) {
        FMRow r{sys[i].coef, sys[i].rhs, sys[i].strict, zero_vec(sys.size())};
        if (static_cast<int>(r.coef.size()) != nvars)
            throw PreconditionFailure("fm_solve: inequality arity mismatch");
        r.mult[i] = 1;
        rows.push_back(std::move(r));
    }

    // levels[v] = rows mentioning x_v at the moment x_v is eliminated.
    std::vector<std::vector<FMRow>> levels(nvars);
    FMOutcome out;
    for (int v = nvars - 1; v >= 0; --v) {
        std::vector<FMRow> pos, neg, rest;
        for (FMRow& r : rows) {
            if (r.coef[v] > 0) pos.push_back(std::move(r));
            else if (r.coef[v] < 0) neg.push_back(std::move(r));
            else rest.push_back(std::move(r));
        }
        for (const FMRow& p : pos)
            for (const FMRow& q : neg) {
                // coef_p[v] * q + (-coef_q[v]) * p cancels x_v; both factors > 0.
                Rat a = p.coef[v], b = -q.coef[v];
                FMRow r;
                r.coef = add(scale(a, q.coef), scale(b, p.coef));
                r.rhs = a * q.rhs + b * p.rhs;
                r.strict = p.strict || q.strict;
                r.mult = add(scale(a, q.mult), scale(b, p.mult));
                bool all_zero = true;
                for (int j = 0; j < v; ++j)
                    if (r.coef[j] != 0) { all_zero = false; break; }
                if (all_zero && detail::fm_constant_row_violated(r)) {
                    out.feasible = false;
                    out.farkas = r.mult;
                    return out;
                }
                rest.push_back(std::move(r));
            }
        levels[v] = std::move(pos);
        for (FMRow& q : neg) levels[v].push_back(std::move(q));
        detail::fm_compress(rest);
        rows = std::move(rest);
    }
    for (const FMRow& r : rows)
        if (detail::fm_constant_row_violated(r)) {
            out.feasible = false;
            out.farkas = r.mult;
            return out;
        }

    // Back-substitute in ascending variable order; level v rows only
    // mention variables 0..v.
    RatVec x = zero_vec(nvars);
    for (int v = 0; v < nvars; ++v) {
        std::optional<Rat> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const FMRow& r : levels[v]) {
            Rat rest = r.rhs;
            for (int j = 0; j < v; ++j) rest -= r.coef[j] * x[j];
            Rat bound = rest / r.coef[v];
            if (r.coef[v] > 0) {
                if (!lo || bound > *lo || (bound == *lo && r.strict)) {
                    lo = bound;
                    lo_strict = r.strict;
                }
            } else {
                if (!hi || bound < *hi || (bound == *hi && r.strict)) {
                    hi = bound;
                    hi_strict = r.strict;
                }
            }
        }
        if (lo && hi)
            x[v] = (*lo + *hi) / 2; // lo == hi only when both bounds are nonstrict
        else if (lo)
            x[v] = *lo + 1;
        else if (hi)
            x[v] = *hi - 1;
    }
    out.feasible = true;
    out.point = std::move(x);
    return out;
}

/// Feasibility of { Ax = b, each inequality } by eliminating the equalities
/// first and running Fourier-Motzkin on the free variables.
inline bool lp_feasible(const Mat& eq, const RatVec& eq_rhs, const std::vector<LinIneq>& ineqs,
                        int nvars) {
    Mat aug(eq.size());
    for (std::size_t i = 0; i < eq.size(); ++i) {
        aug[i] = eq[i];
        aug[i].push_back(eq_rhs[i]);
    }
    // Let the rhs column take a pivot: that happens exactly when the
    // equality system is inconsistent.
    std::vector<int> order;
    for (int c = 0; c <= nvars; ++c) order.push_back(c);
    std::vector<int> piv = rref_cols(aug, order);
    if (!piv.empty() && piv.back() == nvars) return false;
    std::vector<int> free_cols;
    {
        std::vector<bool> is_piv(nvars, false);
        for (int c : piv) is_piv[c] = true;
        for (int c = 0; c < nvars; ++c)
            if (!is_piv[c]) free_cols.push_back(c);
    }
    // x_piv[r] = aug[r][n] - sum over free cols of aug[r][f] x_f.
    std::vector<LinIneq> reduced;
    for (const LinIneq& q : ineqs) {
        LinIneq r;
        r.strict = q.strict;
        r.coef = zero_vec(free_cols.size());
        r.rhs = q.rhs;
        for (std::size_t fi = 0; fi < free_cols.size(); ++fi) r.coef[fi] = q.coef[free_cols[fi]];
        for (std::size_t pr = 0; pr < piv.size(); ++pr) {
            const Rat& c = q.coef[piv[pr]];
            if (c == 0) continue;
            r.rhs -= c * aug[pr][nvars];
            for (std::size_t fi = 0; fi < free_cols.size(); ++fi)
                r.coef[fi] -= c * aug[pr][free_cols[fi]];
        }
        reduced.push_back(std::move(r));
    }
    return fm_solve(reduced, static_cast<int>(free_cols.size())).feasible;
}

} // namespace hodgeforge
