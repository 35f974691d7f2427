// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twistlab/twistlab.hpp"

using namespace twistlab;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

// Independent naive oracle over the bounded box: enumerate the whole ball of
// coefficient vectors and test the defining predicate with the public
// pairing only.
template <typename Visit>
void box_walk(int slots, std::int64_t quad_budget, std::vector<std::int64_t>& acc,
              const Visit& visit) {
    if (slots == 0) {
        visit(acc);
        return;
    }
    std::int64_t bmax = 0;
    while ((bmax + 1) * (bmax + 1) <= quad_budget) ++bmax;
    for (std::int64_t b = -bmax; b <= bmax; ++b) {
        acc.push_back(b);
        box_walk(slots - 1, quad_budget - b * b, acc, visit);
        acc.pop_back();
    }
}

ClassSet oracle_enumerate(const BlowupLattice& lat, std::int64_t c1_target,
                          std::int64_t square_target, std::int64_t a_min,
                          std::int64_t a_max) {
    ClassSet out;
    out.k = lat.k();
    out.predicate = "oracle";
    HomologyClass scratch;
    scratch.coords.assign(lat.rank(), 0);
    for (std::int64_t a = a_min; a <= a_max; ++a) {
        std::int64_t quad = a * a - square_target;
        if (quad < 0) continue;
        std::vector<std::int64_t> acc;
        acc.reserve(std::size_t(lat.k()));
        scratch.coords[0] = a;
        box_walk(lat.k(), quad, acc, [&](const std::vector<std::int64_t>& b) {
            for (std::size_t i = 0; i < b.size(); ++i) scratch.coords[i + 1] = -b[i];
            if (lat.pairing(scratch, scratch) == square_target &&
                lat.c1(scratch) == c1_target)
                out.members.push_back(scratch);
        });
    }
    out.canonicalize();
    return out;
}

bool criterion1(std::string& detail) {
    Check c;
    const std::size_t exc_expected[] = {1, 3, 6, 10, 16, 27, 56, 240};
    const std::size_t root_expected[] = {0, 2, 8, 20, 40, 72, 126, 240};
    for (int k = 1; k <= 8; ++k) {
        BlowupLattice lat(k);
        ClassSet exc = enumerate_exceptional(lat);
        ClassSet oracle_exc = oracle_enumerate(lat, 1, -1, -1, 7);
        c.expect(exc.size() == exc_expected[k - 1],
                 "exceptional count k=" + std::to_string(k));
        c.expect(exc.members == oracle_exc.members,
                 "exceptional oracle mismatch k=" + std::to_string(k));
        ClassSet roots = enumerate_roots(lat);
        ClassSet oracle_roots = oracle_enumerate(lat, 0, -2, -4, 4);
        c.expect(roots.size() == root_expected[k - 1],
                 "root count k=" + std::to_string(k));
        c.expect(roots.members == oracle_roots.members,
                 "root oracle mismatch k=" + std::to_string(k));
    }
    detail = c.pass ? "counts 1,3,6,10,16,27,56,240 and 2,8,20,40,72,126,240, "
                      "bit-for-bit against the box oracle"
                    : c.detail.str();
    return c.pass;
}

bool criterion2(std::string& detail) {
    Check c;
    BlowupLattice lat5(5), lat6(6);
    auto d5 = weyl_closure(lat5, lat5.simple_roots());
    c.expect(!d5.cap_exceeded && d5.count == 1920, "order at k=5");
    auto e6 = weyl_closure(lat6, lat6.simple_roots());
    c.expect(!e6.cap_exceeded && e6.count == 51840, "order at k=6");
    const std::uint64_t orbit_expected[] = {126, 240};
    for (int k : {7, 8}) {
        BlowupLattice lat(k);
        auto res = weyl_closure(lat, lat.simple_roots()); // default cap 10^6
        c.expect(res.cap_exceeded, "cap refusal at k=" + std::to_string(k));
        auto orbit = reflection_orbit(lat, lat.simple_roots(), lat.E(1) - lat.E(2));
        c.expect(!orbit.cap_exceeded && orbit.count == orbit_expected[k - 7],
                 "root orbit at k=" + std::to_string(k));
    }
    detail = c.pass ? "1920 and 51840 exact; k=7,8 refused under the default cap, "
                      "root orbits 126 and 240"
                    : c.detail.str();
    return c.pass;
}

bool criterion3(std::string& detail) {
    Check c;
    for (int k = 5; k <= 8; ++k) {
        BlowupLattice lat(k);
        std::int64_t ck = 0;
        try {
            ck = quantum::kperp_proportionality(lat);
        } catch (const Error& e) {
            c.expect(false, std::string("proportionality failed: ") + e.what());
            continue;
        }
        c.expect(quantum::invariant_form_dimension(lat) == 1,
                 "invariant form dim k=" + std::to_string(k));
        bool identities = true;
        for (const auto& l : enumerate_roots(lat).members)
            identities = identities && quantum::module_identities(lat, l).pass;
        c.expect(identities, "module identities k=" + std::to_string(k));
        auto rep = quantum::frobenius_obstruction(lat, lat.E(1) - lat.E(2));
        c.expect(rep.c_k == ck, "c_k consistency k=" + std::to_string(k));
        c.expect(rep.dim_quotient == std::size_t(k + 1) &&
                     rep.dim_isotropic == std::size_t(k - 1) && rep.violated,
                 "obstruction dims k=" + std::to_string(k));
        c.expect(rep.alpha2_substitutions.size() == 3,
                 "alpha2 substitutions k=" + std::to_string(k));
    }
    // negative control at k = 4 through the raw sum
    try {
        quantum::kperp_proportionality_raw(BlowupLattice(4));
        c.expect(false, "k=4 raw sum unexpectedly proportional");
    } catch (const quantum::NotProportional& e) {
        BlowupLattice lat4(4);
        c.expect(e.x == lat4.E(1) - lat4.E(2) && e.y == e.x,
                 "k=4 witness pair");
        c.expect(e.sum == HomologyClass({4, -1, -1, -2, -2}), "k=4 witness sum");
    }
    detail = c.pass ? "pipeline green for k=5..8 (c_k = 1,2,6,60), invariant under "
                      "alpha2 in {0,1,-7}; k=4 raw sum rejected with witness"
                    : c.detail.str();
    return c.pass;
}

bool criterion4(std::string& detail) {
    Check c;
    for (int b2 = 1; b2 <= 100; ++b2)
        c.expect(quantum::general_type_obstruction(b2).violated == (b2 >= 3),
                 "threshold at b2=" + std::to_string(b2));
    detail = c.pass ? "violated iff b2 >= 3, exhaustive for b2 <= 100"
                    : c.detail.str();
    return c.pass;
}

bool criterion5(std::string& detail) {
    Check c;
    // monodromy invariance: 10^3 random reflection tuples, 50 random moves
    std::mt19937_64 rng(2718);
    BlowupLattice bl(5);
    ClassSet roots = enumerate_roots(bl);
    monodromy::CycleLattice refl = monodromy::CycleLattice::reflection(5);
    std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
    std::uniform_int_distribution<std::size_t> len(2, 7);
    std::size_t failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<HomologyClass> cycles;
        std::size_t m = len(rng);
        for (std::size_t i = 0; i < m; ++i) cycles.push_back(roots.members[pick(rng)]);
        monodromy::VanishingTuple t(refl, std::move(cycles));
        IntMat before = monodromy::total_monodromy(t);
        std::uniform_int_distribution<std::size_t> pos(1, t.size() - 1);
        for (int step = 0; step < 50; ++step) {
            auto dir = rng() % 2 ? monodromy::Direction::Left
                                 : monodromy::Direction::Right;
            t = monodromy::hurwitz_move(t, pos(rng), dir);
        }
        if (!(monodromy::total_monodromy(t) == before)) ++failures;
    }
    c.expect(failures == 0,
             std::to_string(failures) + " invariance failures out of 1000");

    // braid/commute classification, exhaustive over root pairs for k <= 5
    for (int k = 2; k <= 5; ++k) {
        BlowupLattice lat(k);
        monodromy::CycleLattice cl = monodromy::CycleLattice::reflection(k);
        bool ok = true;
        auto rts = enumerate_roots(lat);
        for (const auto& a : rts.members) {
            for (const auto& b : rts.members) {
                std::int64_t p = lat.pairing(a, b);
                auto rel = monodromy::braid_relation_check(cl, a, b);
                if (p == 0)
                    ok = ok && rel == monodromy::BraidRelation::Commute;
                else if (std::llabs(p) == 1)
                    ok = ok && rel == monodromy::BraidRelation::Braid;
            }
        }
        c.expect(ok, "braid classification k=" + std::to_string(k));
    }

    c.expect(bool(monodromy::find_cycle_configuration(BlowupLattice(4), 5)),
             "pentagon found at k=4");
    c.expect(!monodromy::find_cycle_configuration(BlowupLattice(2), 5),
             "pentagon absent at k=2");
    detail = c.pass ? "monodromy invariant over 1000 tuples x 50 moves; braid "
                      "classification exhaustive for k<=5; pentagon found at k=4 "
                      "and absent at k=2"
                    : c.detail.str();
    return c.pass;
}

bool criterion6(std::string& detail) {
    using namespace local_model;
    Check c;
    PointSampler smp(31415);

    // sigma_pi is the antipodal map
    double antip = 0;
    for (int i = 0; i < 100; ++i) {
        CotangentPoint p = smp.point();
        antip = std::max(antip,
                         distance(geodesic_flow(kPi, p), CotangentPoint{-p.u, -p.v}));
    }
    c.expect(antip < 1e-12, "sigma_pi antipodal: " + std::to_string(antip));

    // RK4 vs closed form, 100 samples, 10^4 steps
    double flow_err = 0;
    for (int i = 0; i < 100; ++i) {
        CotangentPoint p = smp.point();
        auto num = deformed_flow(DeformedStructure{0.0}, 1.0, p, 10000);
        flow_err = std::max(flow_err, distance(num, geodesic_flow(1.0, p)));
    }
    c.expect(flow_err < 1e-8, "RK4 vs closed form: " + std::to_string(flow_err));

    // period-2pi closure for the deformed action
    for (double s : {0.05, 0.1, 0.5}) {
        double gap = 0;
        for (int i = 0; i < 25; ++i) {
            CotangentPoint p = smp.point();
            gap = std::max(gap, distance(deformed_flow(DeformedStructure{s}, 2 * kPi,
                                                       p, 10000),
                                         p));
        }
        c.expect(gap < 1e-6, "period closure s=" + std::to_string(s));
    }

    // symplectic residual of the model twist over 10^3 samples
    TwistProfile prof = TwistProfile::smoothstep(1.0);
    std::vector<CotangentPoint> pts;
    for (int i = 0; i < 1000; ++i) pts.push_back(smp.point());
    auto res = symplectic_residual(
        [&](const CotangentPoint& p) { return model_twist(prof, p); },
        DeformedStructure{0.0}, pts, 1e-5);
    c.expect(res.max_residual < 1e-6,
             "twist residual: " + std::to_string(res.max_residual));

    // fragility family: identity near the zero-section at s = 0.2
    TwistProfile plateau = TwistProfile::plateau(1.0, 0.25);
    DeformedStructure ds{0.2};
    double near_id = 0;
    for (int i = 0; i < 25; ++i) {
        CotangentPoint p = smp.point_with_radius(0.005 + 0.24 * smp.uniform01());
        near_id = std::max(near_id,
                           distance(fragility_family(ds, plateau, p, 10000), p));
    }
    c.expect(near_id < 1e-6, "fragility near zero-section: " + std::to_string(near_id));

    // distance to the squared twist at |u| = lambda/3, decreasing in s
    std::vector<CotangentPoint> ring;
    for (int i = 0; i < 10; ++i) ring.push_back(smp.point_with_radius(1.0 / 3));
    double prev = 1e30;
    bool monotone = true;
    for (double s : {1e-1, 1e-2, 1e-3}) {
        double worst = 0;
        for (const auto& p : ring) {
            auto fam = fragility_family(DeformedStructure{s}, plateau, p, 10000);
            auto sq = model_twist(plateau, model_twist(plateau, p));
            worst = std::max(worst, distance(fam, sq));
        }
        monotone = monotone && worst < prev;
        prev = worst;
    }
    c.expect(monotone, "convergence to the squared twist not monotone");
    c.expect(prev < 1e-2, "distance at s=1e-3: " + std::to_string(prev));

    detail = c.pass ? "antipodal exact to 1e-12; RK4 error < 1e-8; orbits close to "
                      "1e-6; twist residual < 1e-6; fragility identity near the "
                      "zero-section and monotone convergence to the squared twist"
                    : c.detail.str();
    return c.pass;
}

bool criterion7(std::string& detail) {
    Check c;
    auto range = ci::degree_range(200);
    std::vector<std::vector<int>> nonneg;
    for (const auto& d : range)
        if (ci::c1_coefficient(d) >= 0) nonneg.push_back(d.degrees);
    std::vector<std::vector<int>> expected = {{2}, {2, 2}, {2, 2, 2}, {2, 3}, {3}, {4}};
    std::sort(nonneg.begin(), nonneg.end());
    std::sort(expected.begin(), expected.end());
    c.expect(nonneg == expected, "exceptional tuples != {c1 >= 0} set");

    c.expect(ci::euler_char(ci::DegreeVector::normalized({2})) == 4, "chi(2)");
    c.expect(ci::euler_char(ci::DegreeVector::normalized({3})) == 9, "chi(3)");
    c.expect(ci::euler_char(ci::DegreeVector::normalized({2, 2})) == 8, "chi(2,2)");
    c.expect(ci::euler_char(ci::DegreeVector::normalized({4})) == 24, "chi(4)");

    for (const auto& d : range) {
        if (ci::c1_coefficient(d) >= 0) continue;
        std::int64_t bound = 0;
        for (int k : d.degrees) bound += std::int64_t(k) * (k - 1);
        c.expect(ci::euler_char(d) > bound && bound >= 6,
                 "Euler bound fails at " + d.str());
    }

    for (const auto& d : range) {
        auto v = ci::classify(d.degrees);
        bool excluded = v.category == ci::SurfaceCategory::ExcludedCP2 ||
                        v.category == ci::SurfaceCategory::ExcludedQuadric;
        c.expect(v.tau_squared_nontrivial == !excluded,
                 "verdict at " + d.str());
    }
    detail = c.pass ? "six exceptional tuples = {c1 >= 0}; chi values 4, 9, 8, 24; "
                      "Euler bound and the nontriviality verdict hold across the "
                      "product <= 200 sweep"
                    : c.detail.str();
    return c.pass;
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* label;
        double budget_seconds;
        bool (*fn)(std::string&);
    };
    const Entry entries[] = {
        {1, "class enumeration vs naive oracle", 5, criterion1},
        {2, "Weyl closure orders and cap refusal", 60, criterion2},
        {3, "quantum obstruction pipeline", 30, criterion3},
        {4, "minimal-manifold obstruction threshold", 30, criterion4},
        {5, "Hurwitz monodromy invariants", 30, criterion5},
        {6, "local model numerics", 120, criterion6},
        {7, "complete-intersection classifier", 5, criterion7},
    };
    bool all = true;
    for (const auto& e : entries) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = e.fn(detail);
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                    t0)
                          .count();
        bool in_budget = secs < e.budget_seconds;
        all = all && ok && in_budget;
        std::printf("[%s] criterion %d: %s (%.2fs%s) %s\n", ok && in_budget ? "PASS" : "FAIL",
                    e.id, e.label, secs,
                    in_budget ? "" : ", over budget", detail.c_str());
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed"
                            : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
