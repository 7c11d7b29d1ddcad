#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hodgeforge/errors.hpp"
#include "hodgeforge/linalg.hpp"

namespace hodgeforge {

/// Subset of a ground set {1..n}, n <= 63. Element e occupies bit e-1.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline bool mask_contains(Mask m, int element) { return (m >> (element - 1)) & 1u; }

inline Mask mask_of(std::initializer_list<int> elems) {
    Mask m = 0;
    for (int e : elems) m |= Mask(1) << (e - 1);
    return m;
}

inline Mask mask_of(const std::vector<int>& elems) {
    Mask m = 0;
    for (int e : elems) m |= Mask(1) << (e - 1);
    return m;
}

inline std::vector<int> elements_of(Mask m) {
    std::vector<int> out;
    for (int e = 1; m; ++e, m >>= 1)
        if (m & 1u) out.push_back(e);
    return out;
}

inline Mask full_mask(int n) { return n == 64 ? ~Mask(0) : (Mask(1) << n) - 1; }

/// Lexicographic order on subsets viewed as ascending element lists,
/// e.g. {1,3} < {2} < {2,4}. Used (after rank) for all canonical orderings.
inline bool mask_lex_less(Mask a, Mask b) {
    while (a && b) {
        int ea = std::countr_zero(a), eb = std::countr_zero(b);
        if (ea != eb) return ea < eb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

inline std::string set_to_string(Mask m) {
    std::string s = "{";
    bool first = true;
    for (int e : elements_of(m)) {
        if (!first) s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

/// Loopless matroid presented by its lattice of flats. Flats are stored in
/// canonical order: by rank, then lexicographically on member lists.
struct Matroid {
    int ground_size = 0;
    std::vector<Mask> flats;
    std::vector<int> flat_ranks;
    std::string name;

    Mask ground() const { return full_mask(ground_size); }
    int rank() const { return flat_ranks.empty() ? 0 : flat_ranks.back(); }

    int flat_index(Mask f) const {
        auto it = index_.find(f);
        return it == index_.end() ? -1 : it->second;
    }
    bool is_flat(Mask f) const { return index_.count(f) != 0; }

    int rank_of_flat(Mask f) const {
        int i = flat_index(f);
        if (i < 0) throw PreconditionFailure("rank_of_flat: " + set_to_string(f) + " is not a flat");
        return flat_ranks[i];
    }

    /// Nontrivial flats (neither empty nor the ground set), canonical order.
    std::vector<Mask> nontrivial_flats() const {
        std::vector<Mask> out;
        for (Mask f : flats)
            if (f != 0 && f != ground()) out.push_back(f);
        return out;
    }

    /// Minimal flats strictly containing f.
    std::vector<Mask> covers_of(Mask f) const {
        std::vector<Mask> ups;
        for (Mask g : flats)
            if (f != g && (f & g) == f) ups.push_back(g);
        std::vector<Mask> mins;
        for (Mask g : ups) {
            bool minimal = true;
            for (Mask h : ups)
                if (h != g && (h & g) == h) { minimal = false; break; }
            if (minimal) mins.push_back(g);
        }
        return mins;
    }

    void rebuild_index() {
        index_.clear();
        for (std::size_t i = 0; i < flats.size(); ++i) index_[flats[i]] = static_cast<int>(i);
    }

private:
    std::map<Mask, int> index_;
};

namespace detail {

/// Validates the flat axioms, computes ranks via covering chains, and
/// produces the canonical ordering. Throws AxiomViolation with the name of
/// the failing axiom and a witness.
inline Matroid finish_matroid(int ground_size, std::vector<Mask> flats, std::string name) {
    Mask ground = full_mask(ground_size);
    std::sort(flats.begin(), flats.end());
    if (std::adjacent_find(flats.begin(), flats.end()) != flats.end())
        throw InputError("duplicate flat in input");
    for (Mask f : flats)
        if ((f & ~ground) != 0)
            throw InputError("flat " + set_to_string(f) + " uses elements outside the ground set");

    auto is_flat = [&](Mask f) { return std::binary_search(flats.begin(), flats.end(), f); };

    if (!is_flat(ground))
        throw AxiomViolation("ground-set-flat", "the ground set " + set_to_string(ground) + " is not a flat");
    if (!is_flat(0))
        throw AxiomViolation("empty-set-flat",
                             "the empty set is not a flat (loops are not supported)");
    for (Mask f : flats)
        for (Mask g : flats) {
            if (g >= f) break;
            if (!is_flat(f & g))
                throw AxiomViolation("intersection-closed",
                                     set_to_string(f) + " and " + set_to_string(g) +
                                         " are flats but their intersection " +
                                         set_to_string(f & g) + " is not");
        }

    // Minimal proper superflats of each flat, for the cover-partition axiom
    // and for the rank computation.
    std::map<Mask, std::vector<Mask>> covers;
    for (Mask f : flats) {
        std::vector<Mask> ups;
        for (Mask g : flats)
            if (g != f && (f & g) == f) ups.push_back(g);
        std::vector<Mask>& mins = covers[f];
        for (Mask g : ups) {
            bool minimal = true;
            for (Mask h : ups)
                if (h != g && (h & g) == h) { minimal = false; break; }
            if (minimal) mins.push_back(g);
        }
    }

    for (Mask f : flats) {
        Mask rest = ground & ~f;
        for (int x : elements_of(rest)) {
            int hits = 0;
            for (Mask g : covers[f])
                if (mask_contains(g, x)) ++hits;
            if (hits != 1)
                throw AxiomViolation(
                    "cover-partition",
                    "element " + std::to_string(x) + " outside the flat " + set_to_string(f) +
                        " lies in " + std::to_string(hits) + " minimal superflats (need exactly 1)");
        }
    }

    // Ranks = longest chain from the empty flat, walked upward by covers.
    // Gradedness demands every covering step raises the rank by exactly 1.
    std::vector<Mask> by_size = flats;
    std::sort(by_size.begin(), by_size.end(),
              [](Mask a, Mask b) { return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b; });
    std::map<Mask, int> rank_map;
    for (Mask f : by_size) {
        int r = 0;
        for (Mask g : by_size) {
            if (g == f) break;
            if (g != f && (g & f) == g) r = std::max(r, rank_map[g] + 1);
        }
        rank_map[f] = r;
    }
    for (Mask f : flats)
        for (Mask g : covers[f])
            if (rank_map[g] != rank_map[f] + 1)
                throw AxiomViolation("graded",
                                     "covering step " + set_to_string(f) + " < " + set_to_string(g) +
                                         " jumps rank from " + std::to_string(rank_map[f]) + " to " +
                                         std::to_string(rank_map[g]));

    Matroid m;
    m.ground_size = ground_size;
    m.name = std::move(name);
    m.flats = std::move(flats);
    std::sort(m.flats.begin(), m.flats.end(), [&](Mask a, Mask b) {
        if (rank_map[a] != rank_map[b]) return rank_map[a] < rank_map[b];
        return mask_lex_less(a, b);
    });
    m.flat_ranks.reserve(m.flats.size());
    for (Mask f : m.flats) m.flat_ranks.push_back(rank_map[f]);
    m.rebuild_index();
    return m;
}

} // namespace detail

inline Matroid matroid_from_flats(int ground_size, const std::vector<Mask>& flats,
                                  std::string name = "") {
    if (ground_size < 1 || ground_size > 63)
        throw InputError("ground size must be between 1 and 63");
    return detail::finish_matroid(ground_size, flats, std::move(name));
}

inline Matroid boolean_matroid(int n) {
    if (n < 1 || n > 20) throw InputError("boolean_matroid: n out of range");
    std::vector<Mask> flats;
    for (Mask f = 0; f <= full_mask(n); ++f) flats.push_back(f);
    return detail::finish_matroid(n, std::move(flats), "B" + std::to_string(n));
}

inline Matroid uniform_matroid(int k, int n) {
    if (n < 1 || n > 24 || k < 1 || k > n) throw InputError("uniform_matroid: need 1 <= k <= n");
    std::vector<Mask> flats;
    for (Mask f = 0; f <= full_mask(n); ++f)
        if (popcount(f) < k) flats.push_back(f);
    flats.push_back(full_mask(n));
    return detail::finish_matroid(n, std::move(flats),
                                  "U(" + std::to_string(k) + "," + std::to_string(n) + ")");
}

/// Matroid of a list of rational column vectors. Columns are the ground
/// elements in order; zero columns (loops) are rejected.
inline Matroid matroid_from_vectors(const std::vector<RatVec>& columns, std::string name = "") {
    int n = static_cast<int>(columns.size());
    if (n < 1 || n > 20) throw InputError("matroid_from_vectors: need 1..20 columns");
    std::size_t dim = columns[0].size();
    for (const RatVec& c : columns)
        if (c.size() != dim) throw InputError("matroid_from_vectors: ragged columns");
    auto rank_of_subset = [&](Mask s) {
        Mat rows;
        for (int e : elements_of(s)) rows.push_back(columns[e - 1]);
        return rank_of(std::move(rows));
    };
    for (int e = 1; e <= n; ++e)
        if (rank_of_subset(Mask(1) << (e - 1)) == 0)
            throw AxiomViolation("empty-set-flat",
                                 "column " + std::to_string(e) + " is zero (a loop)");
    std::vector<Mask> flats;
    for (Mask s = 0; s <= full_mask(n); ++s) {
        int r = rank_of_subset(s);
        bool closed = true;
        for (int e = 1; e <= n && closed; ++e)
            if (!mask_contains(s, e) && rank_of_subset(s | (Mask(1) << (e - 1))) == r)
                closed = false;
        if (closed) flats.push_back(s);
    }
    return detail::finish_matroid(n, std::move(flats), std::move(name));
}

/// Sorted elements of `subset`, defining the relabeling subset -> {1..m}.
inline std::vector<int> relabel_elements(Mask subset) { return elements_of(subset); }

inline Mask relabel_mask(Mask s, const std::vector<int>& elements) {
    Mask out = 0;
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (mask_contains(s, elements[i])) out |= Mask(1) << i;
    return out;
}

/// Interval [F,G] in the lattice of flats, as a matroid on G \ F with the
/// elements of G \ F relabeled to {1..|G\F|} in ascending order. The empty
/// interval [F,F] yields the rank-0 matroid on the empty ground set.
inline Matroid interval(const Matroid& m, Mask f, Mask g, std::string name = "") {
    if (!m.is_flat(f) || !m.is_flat(g) || (f & g) != f)
        throw PreconditionFailure("interval: need flats F <= G");
    std::vector<int> elems = relabel_elements(g & ~f);
    std::vector<Mask> flats;
    for (Mask h : m.flats)
        if ((h & f) == f && (h & g) == h) flats.push_back(relabel_mask(h & ~f, elems));
    if (elems.empty()) {
        Matroid trivial;
        trivial.ground_size = 0;
        trivial.flats = {0};
        trivial.flat_ranks = {0};
        trivial.name = std::move(name);
        trivial.rebuild_index();
        return trivial;
    }
    return detail::finish_matroid(static_cast<int>(elems.size()), std::move(flats), std::move(name));
}

inline Matroid localization(const Matroid& m, Mask f) { return interval(m, 0, f); }
inline Matroid contraction(const Matroid& m, Mask f) { return interval(m, f, m.ground()); }

/// Deletion of a single element: flats are {F \ i}, deduplicated, with the
/// remaining elements relabeled to {1..n-1} in ascending order.
inline Matroid deletion(const Matroid& m, int i, std::string name = "") {
    if (i < 1 || i > m.ground_size) throw InputError("deletion: element out of range");
    if (m.ground_size == 1) throw PreconditionFailure("deletion: cannot empty the ground set");
    std::vector<int> elems = relabel_elements(m.ground() & ~mask_of({i}));
    std::vector<Mask> flats;
    for (Mask f : m.flats) flats.push_back(relabel_mask(f & ~mask_of({i}), elems));
    std::sort(flats.begin(), flats.end());
    flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
    return detail::finish_matroid(m.ground_size - 1, std::move(flats), std::move(name));
}

inline bool is_coloop(const Matroid& m, int i) {
    return deletion(m, i).rank() < m.rank();
}

/// Non-coloop elements have none; returns all i with rank(M \ i) < rank(M).
inline std::vector<int> coloops(const Matroid& m) {
    std::vector<int> out;
    if (m.ground_size == 1) return {1};
    for (int i = 1; i <= m.ground_size; ++i)
        if (is_coloop(m, i)) out.push_back(i);
    return out;
}

/// S_i: nontrivial flats F with i outside F such that F and F+i are both
/// flats. Ordered by (rank, lex), a linear extension of inclusion.
inline std::vector<Mask> deletion_flat_pairs(const Matroid& m, int i) {
    if (i < 1 || i > m.ground_size) throw InputError("deletion_flat_pairs: element out of range");
    Mask bit = Mask(1) << (i - 1);
    std::vector<Mask> out;
    for (Mask f : m.flats) {
        if (f == 0 || f == m.ground() || (f & bit)) continue;
        if (m.is_flat(f | bit)) out.push_back(f);
    }
    // m.flats is already in (rank, lex) order, so `out` inherits it.
    return out;
}

} // namespace hodgeforge
