// Acceptance gate for the library and the hodge-forge tool.
//
// Runs eleven independent checks over the bundled matroid corpus: axiom
// validation, Poincare duality, balancing, convexity certificates, hard
// Lefschetz / Hodge-Riemann, star-subdivision decompositions, adjunction,
// deletion towers, tower convexity, deformation scans, and the CLI verify
// command end to end. One line per check, [PASS] or [FAIL]; exit status 0
// only when every check passes.
//
// Usage: acceptance <path-to-hodge-forge> <path-to-data-dir>

#include <hodgeforge/bergman.hpp>
#include <hodgeforge/chow.hpp>
#include <hodgeforge/convexity.hpp>
#include <hodgeforge/fan.hpp>
#include <hodgeforge/hodge.hpp>
#include <hodgeforge/json_io.hpp>
#include <hodgeforge/matroid.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace hodgeforge;

namespace {

struct Gate {
    std::string detail;
    int checked = 0;

    void require(bool ok, const std::string& what) {
        ++checked;
        if (!ok && detail.empty()) detail = what;
    }
};

const char* const kCorpus[] = {
    "b1", "b2", "b3", "b4",
    "u11",
    "u12", "u22",
    "u13", "u23", "u33",
    "u14", "u24", "u34", "u44",
    "u15", "u25", "u35", "u45", "u55",
    "parallel_pair", "two_lines",
};

std::string g_data_dir;
std::string g_cli;

std::vector<Matroid> load_corpus() {
    std::vector<Matroid> out;
    for (const char* name : kCorpus)
        out.push_back(load_matroid(g_data_dir + "/" + name + ".json"));
    return out;
}

std::string cone_to_string(const std::vector<int>& tau) {
    std::ostringstream out;
    out << "cone(";
    for (std::size_t i = 0; i < tau.size(); ++i) out << (i ? "," : "") << tau[i];
    out << ")";
    return out.str();
}

bool known_axiom(const std::string& a) {
    static const char* const names[] = {"ground-set-flat", "empty-set-flat",
                                        "intersection-closed", "cover-partition",
                                        "graded"};
    return std::find(std::begin(names), std::end(names), a) != std::end(names);
}

// Rebuilds the matroid with one flat removed and reports the axiom name the
// validator throws, or "" when the mutilated family still validates.
std::string axiom_after_drop(const Matroid& m, Mask victim) {
    std::vector<Mask> flats;
    for (Mask f : m.flats)
        if (f != victim) flats.push_back(f);
    try {
        matroid_from_flats(m.ground_size, flats, m.name);
    } catch (const AxiomViolation& e) {
        return e.axiom;
    }
    return "";
}

// ---------------------------------------------------------------------------
// 1. every corpus file loads and validates; corrupted variants fail by name

void corpus_validation(Gate& g) {
    std::vector<Matroid> corpus = load_corpus();
    g.require(corpus.size() == std::size(kCorpus), "corpus incomplete");
    for (const Matroid& m : corpus) {
        std::string a = axiom_after_drop(m, full_mask(m.ground_size));
        g.require(a == "ground-set-flat", m.name + ": dropping E gives " + a);
        a = axiom_after_drop(m, 0);
        g.require(known_axiom(a) && !a.empty(), m.name + ": dropping {} gives " + a);
        if (!m.nontrivial_flats().empty()) {
            a = axiom_after_drop(m, m.nontrivial_flats().front());
            g.require(known_axiom(a), m.name + ": dropping a flat gives " + a);
        }
    }
    try {
        load_matroid(g_data_dir + "/broken.json");
        g.require(false, "broken.json validated");
    } catch (const AxiomViolation& e) {
        g.require(e.axiom == "cover-partition", "broken.json axiom: " + e.axiom);
    }
}

// ---------------------------------------------------------------------------
// 2. symmetric Hilbert functions and nondegenerate Poincare pairings

void duality(Gate& g) {
    for (const Matroid& m : load_corpus()) {
        Fan f = bergman_fan(m);
        ChowSpace c = chow_space(f);
        int d = c.top;
        for (int i = 0; i <= d; ++i)
            g.require(c.dim(i) == c.dim(d - i), m.name + ": Hilbert not symmetric");
        DegreeMap dm = degree_map(c, all_ones_weight(f));
        DualityReport rep = check_poincare_duality(c, dm);
        g.require(rep.ok, m.name + ": Poincare pairing degenerate");
        if (m.name == "B3") g.require(c.hilbert == std::vector<int>{1, 4, 1}, "B3 Hilbert");
        if (m.name == "B4") g.require(c.hilbert == std::vector<int>{1, 11, 11, 1}, "B4 Hilbert");
        if (m.name == "U(2,3)") g.require(c.hilbert == std::vector<int>{1, 1}, "U(2,3) Hilbert");
    }
}

// ---------------------------------------------------------------------------
// 3. the all-ones weight balances, and it spans the Minkowski weights

void balancing(Gate& g) {
    for (const Matroid& m : load_corpus()) {
        Fan f = bergman_fan(m);
        ChowSpace c = chow_space(f);
        g.require(!is_balanced(f, all_ones_weight(f)).has_value(),
                  m.name + ": all-ones weight unbalanced");
        std::vector<MinkowskiWeight> mw = mw_space(f, c);
        g.require(static_cast<int>(mw.size()) == c.hilbert.back(),
                  m.name + ": weight space dimension");
    }
}

// ---------------------------------------------------------------------------
// 4. strict convexity of the submodular witness, certificates re-verified

void convexity(Gate& g) {
    for (const Matroid& m : load_corpus()) {
        Fan f = bergman_fan(m);
        RatVec ell = submodular_class(m);
        for (const auto& tau : f.cones) {
            LinkData l = link(f, tau);
            RatVec res = restrict_divisor_to_link(f, ell, tau, l);
            PositivityResult r = is_positive(l.fan, res);
            g.require(r.ok, m.name + ": witness not strict at " + cone_to_string(tau));
            if (!r.ok) continue;
            for (std::size_t k = 0; k < l.fan.rays.size(); ++k)
                g.require(res[k] + dot(l.fan.rays[k], r.certificate) > 0,
                          m.name + ": certificate does not re-verify");
        }
        if (f.rays.empty()) continue;
        ConvexityVerdict zero = classify_convexity(f, zero_vec(f.rays.size()));
        g.require(!zero.strictly_convex, m.name + ": zero class strictly convex");
        g.require(!zero.failures.empty(), m.name + ": no recorded failure");
        if (zero.failures.empty()) continue;
        LinkData l = link(f, zero.failures.front().cone);
        PositivityResult r = is_positive(l.fan, zero_vec(l.fan.rays.size()));
        g.require(!r.ok, m.name + ": failure cone re-verifies as positive");
        RatVec combo = zero_vec(l.fan.ambient_dim);
        bool nonzero = false;
        for (std::size_t k = 0; k < l.fan.rays.size(); ++k) {
            g.require(r.farkas[k] >= 0, m.name + ": negative multiplier");
            if (r.farkas[k] != 0) nonzero = true;
            combo = add(combo, scale(r.farkas[k], l.fan.rays[k]));
        }
        g.require(nonzero && is_zero(combo),
                  m.name + ": farkas certificate does not re-verify");
    }
}

// ---------------------------------------------------------------------------
// 5. hard Lefschetz, Hodge-Riemann, and the signature bookkeeping

void lefschetz(Gate& g) {
    for (const Matroid& m : load_corpus()) {
        Fan f = bergman_fan(m);
        ChowSpace c = chow_space(f);
        DegreeMap dm = degree_map(c, all_ones_weight(f));
        ChowElement ell = divisor_class(c, submodular_class(m));
        HodgeRiemannReport hr = hr_check(c, dm, ell);
        g.require(hr.hl.ok, m.name + ": hard Lefschetz fails");
        g.require(hr.ok, m.name + ": Hodge-Riemann fails");
        SignatureLemmaReport sl = signature_lemma_check(c, dm, ell);
        g.require(sl.ok, m.name + ": signature lemma fails");
        if (m.name == "B3") {
            g.require(hr.form_sig[1] == SignatureTriple{1, 3, 0}, "B3 signature on CH^1");
            g.require(hr.form_sig[1].pos - hr.form_sig[1].neg == 1 - hr.prim_dims[1],
                      "B3 signature vs primitive dimension");
        }
    }
}

// ---------------------------------------------------------------------------
// 6. orthogonal decomposition across one star subdivision

void star_subdivision_decomposition(Gate& g) {
    Fan b3 = bergman_fan(boolean_matroid(3));
    // rays 0 and 3 carry the flats {1} and {1,2}
    OrthoDecompReport rep =
        ortho_decomp_check(b3, star_subdivision(b3, {0, 3}).fan, {0, 3}, all_ones_weight(b3));
    g.require(rep.dims_ok, "B3: dimension identity");
    g.require(rep.cross_ok, "B3: cross pairings");
    g.require(rep.square_ok, "B3: exceptional square sign");
    g.require(rep.ok, "B3: decomposition");

    DeletionTower t = deletion_tower(uniform_matroid(3, 4), 4);
    for (std::size_t j = 1; j < t.fans.size(); ++j) {
        OrthoDecompReport r = ortho_decomp_check(t.fans[j], t.fans[j - 1], t.taus[j - 1],
                                                 all_ones_weight(t.fans[j]));
        std::string where = "tower step " + std::to_string(j);
        g.require(r.dims_ok, where + ": dimension identity");
        g.require(r.cross_ok, where + ": cross pairings");
        g.require(r.square_ok, where + ": exceptional square sign");
        g.require(r.ok, where + ": decomposition");
    }
}

// ---------------------------------------------------------------------------
// 7. adjunction for every cone and every top-degree link class

void adjunction(Gate& g) {
    for (const Matroid& m : {boolean_matroid(3), uniform_matroid(3, 4)}) {
        Fan f = bergman_fan(m);
        ChowSpace c = chow_space(f);
        MinkowskiWeight w = all_ones_weight(f);
        DegreeMap dm = degree_map(c, w);
        int two_dim = 0;
        for (const auto& tau : f.cones) {
            if (tau.empty()) continue;
            if (tau.size() == 2) ++two_dim;
            LinkData l = link(f, tau);
            ChowSpace cl = chow_space(l.fan);
            DegreeMap dml = degree_map(cl, restrict_weight(f, tau, l, w));
            for (int idx = 0; idx < cl.dim(cl.top); ++idx) {
                ChowElement basis{cl.top, {{cl.basis_cols[cl.top][idx], Rat(1)}}};
                g.require(adjunction_check(c, dm, tau, l, cl, dml, basis),
                          m.name + ": adjunction at " + cone_to_string(tau));
            }
        }
        g.require(two_dim == (m.ground_size == 3 ? 6 : 12),
                  m.name + ": unexpected two-dimensional cone count");
    }
}

// ---------------------------------------------------------------------------
// 8. deletion towers: shape, order independence, projection pullback

void deletion_towers(Gate& g) {
    Matroid u34 = uniform_matroid(3, 4);
    DeletionTower t = deletion_tower(u34, 4);
    g.require(t.taus.size() == 3, "U(3,4) tower length");
    for (std::size_t j = 1; j < t.fans.size(); ++j) {
        SubdivisionData sub = star_subdivision(t.fans[j], t.taus[j - 1]);
        g.require(fans_equal_embedded(sub.fan, t.fans[j - 1]),
                  "poset and subdivision fans differ at step " + std::to_string(j));
    }
    ChowSpace ck = chow_space(t.fans.back());
    ChowSpace cd = chow_space(t.deleted_fan);
    g.require(ck.hilbert == cd.hilbert, "coarsest level vs deleted Hilbert");
    for (int gr = 0; gr <= cd.top; ++gr) {
        Mat img;
        for (int j = 0; j < cd.dim(gr); ++j) {
            ChowElement bj{gr, {{cd.basis_cols[gr][j], Rat(1)}}};
            img.push_back(on_basis(ck, pullback_element(ck, cd, t.projection, bj)));
        }
        g.require(rank_of(img) == cd.dim(gr),
                  "projection pullback not injective in degree " + std::to_string(gr));
    }

    DeletionTower empty = deletion_tower(uniform_matroid(2, 3), 3);
    g.require(empty.taus.empty(), "U(2,3) tower length");
    g.require(is_fan_map(empty.fans[0], empty.deleted_fan, empty.projection),
              "U(2,3) projection is not a fan map");

    bool rejected = false;
    try {
        deletion_tower(boolean_matroid(3), 1);
    } catch (const ColoopInput&) {
        rejected = true;
    }
    g.require(rejected, "coloop deletion accepted");

    std::vector<Mask> order = deletion_flat_pairs(u34, 4);
    std::sort(order.begin(), order.end());
    int extensions = 0;
    do {
        ++extensions;
        DeletionTower alt = deletion_tower(u34, 4, &order);
        g.require(fans_equal_embedded(alt.fans[0], t.fans[0]) &&
                      fans_equal_embedded(alt.fans.back(), t.fans.back()),
                  "tower depends on the processing order");
        g.require(alt.killed_ray == t.killed_ray, "killed ray depends on the order");
        for (std::size_t j = 0; j < alt.fans.size(); ++j)
            g.require(chow_space(alt.fans[j]).hilbert == chow_space(t.fans[j]).hilbert,
                      "level Hilbert depends on the order");
    } while (std::next_permutation(order.begin(), order.end()));
    g.require(extensions == 6, "expected six linear extensions");
}

// ---------------------------------------------------------------------------
// 9. pulled-back witnesses: convex on each level, strict on each link

void tower_convexity(Gate& g) {
    DeletionTower t = deletion_tower(uniform_matroid(3, 4), 4);
    TowerConvexityReport rep = tower_convexity_check(t, submodular_class(t.deleted));
    g.require(rep.ok, "tower convexity fails");
    int fan_level = 0, link_level = 0;
    for (const auto& e : rep.entries) {
        g.require(e.pass, "entry fails at level " + std::to_string(e.level));
        if (e.what == "convex") ++fan_level;
        if (e.what == "link-strictly-convex") ++link_level;
    }
    g.require(fan_level == 4 && link_level == 12, "unexpected entry counts");
}

// ---------------------------------------------------------------------------
// 10. deformation between strictly convex witnesses, plus a failing endpoint

void deformation(Gate& g) {
    for (const Matroid& m : {boolean_matroid(3), uniform_matroid(3, 4)}) {
        Fan f = bergman_fan(m);
        ChowSpace c = chow_space(f);
        DegreeMap dm = degree_map(c, all_ones_weight(f));
        RatVec a = submodular_class(m), b = perturbed_submodular_class(m);
        g.require(a != b, m.name + ": witnesses coincide");
        DeformationReport rep = deformation_scan(c, dm, a, b, 16);
        g.require(rep.all_hl, m.name + ": hard Lefschetz lost along the segment");
        g.require(rep.signatures_constant, m.name + ": signature jumps");
        g.require(rep.ok && rep.points.size() == 17, m.name + ": scan shape");

        DeformationReport bad = deformation_scan(c, dm, a, zero_vec(a.size()), 16);
        g.require(!bad.all_hl, m.name + ": zero endpoint passes");
        g.require(bad.first_failure == 16, m.name + ": failure not at the endpoint");
        g.require(!bad.points.back().hl_ok, m.name + ": endpoint sample marked ok");
    }
}

// ---------------------------------------------------------------------------
// 11. the CLI verify command end to end

int run_cli(const std::string& args) {
    std::string cmd = "\"" + g_cli + "\" " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

void cli_end_to_end(Gate& g) {
    g.require(run_cli("verify --matroid " + g_data_dir + "/u34.json --mode tower --element 4") == 0,
              "tower verify on U(3,4)");
    g.require(run_cli("verify --matroid " + g_data_dir + "/b4.json --mode direct") == 0,
              "direct verify on B4");
    g.require(run_cli("verify --matroid " + g_data_dir + "/u24.json --mode direct") == 0,
              "direct verify on U(2,4)");
    g.require(run_cli("verify --matroid " + g_data_dir + "/broken.json") == 2,
              "broken input not reported as an input error");
}

struct Criterion {
    const char* name;
    void (*run)(Gate&);
    double budget_seconds; // 0 = no limit
};

const Criterion kCriteria[] = {
    {"corpus validation", corpus_validation, 10.0},
    {"hilbert symmetry and poincare duality", duality, 60.0},
    {"balancing and minkowski weights", balancing, 0.0},
    {"convexity certificates", convexity, 0.0},
    {"hard lefschetz and hodge-riemann", lefschetz, 0.0},
    {"star subdivision decomposition", star_subdivision_decomposition, 0.0},
    {"adjunction", adjunction, 0.0},
    {"deletion towers", deletion_towers, 0.0},
    {"tower convexity", tower_convexity, 0.0},
    {"deformation", deformation, 0.0},
    {"cli end to end", cli_end_to_end, 300.0},
};

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: acceptance <hodge-forge> <data-dir>\n");
        return 2;
    }
    g_cli = argv[1];
    g_data_dir = argv[2];

    int failed = 0;
    for (std::size_t i = 0; i < std::size(kCriteria); ++i) {
        const Criterion& cr = kCriteria[i];
        Gate gate;
        auto start = std::chrono::steady_clock::now();
        try {
            cr.run(gate);
        } catch (const std::exception& e) {
            gate.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.budget_seconds > 0 && secs >= cr.budget_seconds)
            gate.require(false, "over time budget");
        bool ok = gate.detail.empty();
        if (!ok) ++failed;
        std::printf("[%s] criterion-%zu %s (%d checks, %.2fs)%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                    cr.name, gate.checked, secs, ok ? "" : ": ", gate.detail.c_str());
        std::fflush(stdout);
    }
    if (failed == 0) {
        std::printf("all 11 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failed);
    return 1;
}
