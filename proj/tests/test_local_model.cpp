#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "twistlab/local_model.hpp"

using namespace twistlab;
using namespace twistlab::local_model;

namespace {

constexpr double kConstraintBound = 1e-8; // 10 x default constraint tolerance

Vec3 mat_apply(const std::array<std::array<double, 3>, 3>& m, Vec3 v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

// random element of O(3): a quaternion rotation, composed with a reflection
// for half the draws
std::array<std::array<double, 3>, 3> random_o3(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    double q0 = u(rng), q1 = u(rng), q2 = u(rng), q3 = u(rng);
    double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
    q0 /= n; q1 /= n; q2 /= n; q3 /= n;
    std::array<std::array<double, 3>, 3> r{{
        {1 - 2 * (q2 * q2 + q3 * q3), 2 * (q1 * q2 - q0 * q3), 2 * (q1 * q3 + q0 * q2)},
        {2 * (q1 * q2 + q0 * q3), 1 - 2 * (q1 * q1 + q3 * q3), 2 * (q2 * q3 - q0 * q1)},
        {2 * (q1 * q3 - q0 * q2), 2 * (q2 * q3 + q0 * q1), 1 - 2 * (q1 * q1 + q2 * q2)},
    }};
    if (rng() % 2)
        for (int i = 0; i < 3; ++i) r[i][2] = -r[i][2]; // compose with z-reflection
    return r;
}

// closed-form oracle for the deformed flow: the moment map direction is
// conserved, and the flow is the rotation about it
CotangentPoint rotation_oracle(const DeformedStructure& ds, double t,
                               const CotangentPoint& p) {
    Vec3 mu = ds.moment_map(p);
    Vec3 axis = (1.0 / norm(mu)) * mu;
    auto rot = [&](Vec3 w) {
        double c = std::cos(t), s = std::sin(t);
        return c * w + s * cross(axis, w) + ((1 - c) * dot(axis, w)) * axis;
    };
    return {rot(p.u), rot(p.v)};
}

} // namespace

TEST_CASE("geodesic flow closed-form values") {
    CotangentPoint p{{1, 0, 0}, {0, 0, 1}};

    SECTION("identity at t = 0") {
        auto q = geodesic_flow(0, p);
        CHECK(distance(q, p) == 0.0);
    }
    SECTION("antipodal at t = pi") {
        auto q = geodesic_flow(kPi, p);
        CHECK(distance(q, {-p.u, -p.v}) < 1e-12);
    }
    SECTION("quarter turn") {
        auto q = geodesic_flow(kPi / 2, p);
        CHECK(distance(q, {{0, 0, -1}, {1, 0, 0}}) < 1e-12);
    }
    SECTION("zero-section behaviour") {
        CotangentPoint z{{0, 0, 0}, {0, 0, 1}};
        CHECK(distance(geodesic_flow(0, z), z) == 0.0);
        CHECK(distance(geodesic_flow(kPi, z), {{0, 0, 0}, {0, 0, -1}}) == 0.0);
        CHECK(distance(geodesic_flow(2 * kPi, z), z) == 0.0);
        CHECK_THROWS_AS(geodesic_flow(1.0, z), ZeroSection);
    }
}

TEST_CASE("geodesic flow is a circle action conserving |u| and the constraints") {
    PointSampler smp(101);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(-6, 6);
    for (int i = 0; i < 200; ++i) {
        CotangentPoint p = smp.point();
        double t1 = ang(rng), t2 = ang(rng);
        auto a = geodesic_flow(t1, geodesic_flow(t2, p));
        auto b = geodesic_flow(t1 + t2, p);
        CHECK(distance(a, b) < 1e-10);
        CHECK(std::abs(norm(a.u) - norm(p.u)) < 1e-12);
        CHECK(a.constraint_defect() < kConstraintBound);
    }
}

TEST_CASE("twist profiles satisfy the required bounds") {
    for (const TwistProfile& prof :
         {TwistProfile::smoothstep(1.0), TwistProfile::plateau(1.0, 0.25),
          TwistProfile::smoothstep(0.5), TwistProfile::plateau(2.0, 0.3)}) {
        CHECK(prof.rprime(0) == 0.5);
        CHECK(prof.rprime(prof.lambda() / 2) == 0.0);
        CHECK(prof.rprime(prof.lambda()) == 0.0);
        for (int i = 0; i <= 1000; ++i) {
            double t = prof.lambda() * i / 1000.0;
            double r = prof.rprime(t);
            if (t < prof.mu()) {
                CHECK(r >= 0.25);
                CHECK(r <= 0.75);
            } else if (t < prof.lambda() / 2) {
                CHECK(r >= 0.0);
                CHECK(r <= 0.5);
            } else {
                CHECK(r == 0.0);
            }
        }
    }
    CHECK(TwistProfile::plateau(1.0, 0.25).has_plateau());
    CHECK_FALSE(TwistProfile::smoothstep(1.0).has_plateau());
    CHECK_THROWS_AS(TwistProfile::plateau(1.0, 0.6), UsageError);
    CHECK_THROWS_AS(TwistProfile::custom(1.0, 0.25, [](double) { return 0.9; }),
                    UsageError);
}

TEST_CASE("model twist: support, zero-section and equivariance") {
    TwistProfile prof = TwistProfile::smoothstep(1.0);
    PointSampler smp(300);

    SECTION("identity outside the support") {
        for (int i = 0; i < 50; ++i) {
            CotangentPoint p = smp.point_with_radius(0.5 + smp.uniform01());
            CHECK(distance(model_twist(prof, p), p) == 0.0);
        }
    }
    SECTION("zero-section maps to the antipode") {
        CotangentPoint z{{0, 0, 0}, {0, 1, 0}};
        auto img = model_twist(prof, z);
        CHECK(distance(img, {{0, 0, 0}, {0, -1, 0}}) == 0.0);
    }
    SECTION("O(3) equivariance") {
        std::mt19937_64 rng(13);
        for (int i = 0; i < 100; ++i) {
            auto r = random_o3(rng);
            CotangentPoint p = smp.point();
            CotangentPoint lhs = model_twist(prof, {mat_apply(r, p.u), mat_apply(r, p.v)});
            CotangentPoint img = model_twist(prof, p);
            CotangentPoint rhs{mat_apply(r, img.u), mat_apply(r, img.v)};
            CHECK(distance(lhs, rhs) < 1e-12);
        }
    }
    SECTION("constraints preserved") {
        for (int i = 0; i < 200; ++i) {
            CotangentPoint p = smp.point();
            CHECK(model_twist(prof, p).constraint_defect() < kConstraintBound);
        }
    }
}

TEST_CASE("isotopy family interpolates from the identity to the squared twist") {
    TwistProfile prof = TwistProfile::smoothstep(1.0);
    PointSampler smp(500);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        CotangentPoint p = smp.point();
        CHECK(distance(isotopy_family(prof, 0, p), p) == 0.0);
        auto one = isotopy_family(prof, 1, p);
        auto twice = model_twist(prof, model_twist(prof, p));
        worst = std::max(worst, distance(one, twice));
    }
    CHECK(worst < 1e-10);

    CotangentPoint z{{0, 0, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(isotopy_family(prof, 0.5, z), ZeroSection);
    CHECK_THROWS_AS(isotopy_family(prof, 2.0, CotangentPoint{{1, 0, 0}, {0, 0, 1}}),
                    UsageError);
}

TEST_CASE("deformed flow at s = 0 matches the closed form") {
    PointSampler smp(900);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        CotangentPoint p = smp.point();
        auto num = deformed_flow(DeformedStructure{0.0}, 1.0, p, 10000);
        worst = std::max(worst, distance(num, geodesic_flow(1.0, p)));
    }
    CHECK(worst < 1e-8);

    CHECK_THROWS_AS(
        deformed_flow(DeformedStructure{0.0}, 1.0, CotangentPoint{{0, 0, 0}, {0, 0, 1}}),
        ZeroSection);
}

TEST_CASE("deformed flow matches the rotation oracle for s != 0") {
    PointSampler smp(901);
    DeformedStructure ds{0.1};
    double worst = 0;
    for (int i = 0; i < 25; ++i) {
        CotangentPoint p = smp.point();
        auto num = deformed_flow(ds, 0.7, p, 10000);
        worst = std::max(worst, distance(num, rotation_oracle(ds, 0.7, p)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("deformed flow closes up after a full turn") {
    PointSampler smp(902);
    for (double s : {0.05, 0.1, 0.5}) {
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            CotangentPoint p = smp.point();
            auto back = deformed_flow(DeformedStructure{s}, 2 * kPi, p, 10000);
            worst = std::max(worst, distance(back, p));
        }
        INFO("s = " << s);
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("deformed flow conserves its Hamiltonian and the constraints") {
    PointSampler smp(903);
    DeformedStructure ds{0.2};
    for (int i = 0; i < 20; ++i) {
        CotangentPoint p = smp.point();
        auto q = deformed_flow(ds, 1.3, p, 10000);
        CHECK(std::abs(ds.hamiltonian(q) - ds.hamiltonian(p)) < 1e-9);
        CHECK(q.constraint_defect() < kConstraintBound);
    }
}

TEST_CASE("deformed flow converges to the geodesic flow away from the zero-section") {
    PointSampler smp(904);
    std::vector<CotangentPoint> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(smp.point_with_radius(0.5 + 0.1 * i));
    double prev = 1e9;
    for (double s : {1e-1, 1e-2, 1e-3}) {
        double worst = 0;
        for (const auto& p : pts) {
            auto num = deformed_flow(DeformedStructure{s}, 1.0, p, 10000);
            worst = std::max(worst, distance(num, geodesic_flow(1.0, p)));
        }
        CHECK(worst < prev);
        prev = worst;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("deformed moment map is bounded below by |s|") {
    PointSampler smp(911);
    for (double s : {0.05, -0.3, 1.0}) {
        DeformedStructure ds{s};
        for (int i = 0; i < 50; ++i)
            CHECK(ds.hamiltonian(smp.point()) >= std::abs(s));
        CotangentPoint on_section{{0, 0, 0}, {0, 0, 1}};
        CHECK(ds.hamiltonian(on_section) == std::abs(s));
    }
}

TEST_CASE("fragility family: identity near the zero-section for s != 0") {
    TwistProfile prof = TwistProfile::plateau(1.0, 0.25);
    DeformedStructure ds{0.2};
    PointSampler smp(905);
    double worst = 0;
    for (int i = 0; i < 25; ++i) {
        CotangentPoint p = smp.point_with_radius(0.24 * smp.uniform01() + 0.005);
        worst = std::max(worst, distance(fragility_family(ds, prof, p, 10000), p));
    }
    CHECK(worst < 1e-6);
    CHECK_THROWS_AS(fragility_family(ds, TwistProfile::smoothstep(1.0),
                                     CotangentPoint{{1, 0, 0}, {0, 0, 1}}),
                    UsageError);
}

TEST_CASE("fragility family: identity outside the support, any s") {
    TwistProfile prof = TwistProfile::plateau(1.0, 0.25);
    PointSampler smp(906);
    for (double s : {0.0, 0.05, 0.3}) {
        for (int i = 0; i < 20; ++i) {
            CotangentPoint p = smp.point_with_radius(0.5 + smp.uniform01());
            CHECK(distance(fragility_family(DeformedStructure{s}, prof, p), p) == 0.0);
        }
    }
}

TEST_CASE("fragility family converges to the squared twist as s -> 0") {
    TwistProfile prof = TwistProfile::plateau(1.0, 0.25);
    PointSampler smp(907);
    std::vector<CotangentPoint> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(smp.point_with_radius(1.0 / 3));
    double prev = 1e9;
    for (double s : {1e-1, 1e-2, 1e-3}) {
        double worst = 0;
        for (const auto& p : pts) {
            auto fam = fragility_family(DeformedStructure{s}, prof, p, 10000);
            auto sq = model_twist(prof, model_twist(prof, p));
            worst = std::max(worst, distance(fam, sq));
        }
        INFO("s = " << s);
        CHECK(worst < prev);
        prev = worst;
    }
    CHECK(prev < 1e-2);

    // s = 0 is the squared twist (single flow by twice the angle)
    for (const auto& p : pts)
        CHECK(distance(fragility_family(DeformedStructure{0.0}, prof, p),
                       model_twist(prof, model_twist(prof, p))) < 1e-12);
}

TEST_CASE("symplectic residual: identity, model twist, broken map") {
    PointSampler smp(908);
    std::vector<CotangentPoint> pts;
    for (int i = 0; i < 100; ++i) pts.push_back(smp.point());

    // the identity is linear, so a large step has no truncation error and
    // the residual is pure roundoff
    auto ident = symplectic_residual([](const CotangentPoint& p) { return p; },
                                     DeformedStructure{0.0}, pts, 1e-2);
    CHECK(ident.max_residual < 1e-12);

    TwistProfile prof = TwistProfile::smoothstep(1.0);
    auto twist = symplectic_residual(
        [&](const CotangentPoint& p) { return model_twist(prof, p); },
        DeformedStructure{0.0}, pts, 1e-5);
    CHECK(twist.max_residual < 1e-6);

    auto broken = symplectic_residual(
        [](const CotangentPoint& p) {
            return CotangentPoint{2.0 * p.u, p.v};
        },
        DeformedStructure{0.0}, pts, 1e-5);
    CHECK(broken.max_residual > 0.5);
}

TEST_CASE("symplectic residual for the deformed family under omega^s") {
    PointSampler smp(909);
    std::vector<CotangentPoint> pts;
    for (int i = 0; i < 15; ++i) pts.push_back(smp.point());
    TwistProfile prof = TwistProfile::plateau(1.0, 0.25);
    DeformedStructure ds{0.2};
    auto res = symplectic_residual(
        [&](const CotangentPoint& p) { return fragility_family(ds, prof, p, 4000); },
        ds, pts, 1e-5);
    CHECK(res.max_residual < 1e-5);
}

TEST_CASE("symplectic residual surfaces singular samples") {
    std::vector<CotangentPoint> pts{CotangentPoint{{0, 0, 0}, {0, 0, 1}}};
    CHECK_THROWS_AS(
        symplectic_residual(
            [](const CotangentPoint& p) { return geodesic_flow(1.0, p); },
            DeformedStructure{0.0}, pts, 1e-5),
        SampleOnSingularLocus);
}

TEST_CASE("two admissible profiles differ by a symplectic map connected to the identity") {
    TwistProfile a = TwistProfile::smoothstep(1.0);
    TwistProfile b = TwistProfile::plateau(1.0, 0.25);
    PointSampler smp(910);
    std::vector<CotangentPoint> pts;
    for (int i = 0; i < 50; ++i) pts.push_back(smp.point());

    // difference map tau_a o tau_b^{-1}; the inverse twist flows backwards
    auto inverse_twist = [&](const TwistProfile& prof, const CotangentPoint& p) {
        double n = norm(p.u);
        if (n < 1e-9) return CotangentPoint{-p.u, -p.v};
        if (n >= prof.lambda() / 2) return p;
        return geodesic_flow(-2 * kPi * prof.rprime(n), p);
    };
    auto difference = symplectic_residual(
        [&](const CotangentPoint& p) { return model_twist(a, inverse_twist(b, p)); },
        DeformedStructure{0.0}, pts, 1e-5);
    CHECK(difference.max_residual < 1e-6);

    // the interpolating family is admissible throughout and continuous in w
    CotangentPoint probe = smp.point_with_radius(0.3);
    CotangentPoint prev_img = model_twist(TwistProfile::blend(b, a, 0.0), probe);
    for (int step = 1; step <= 16; ++step) {
        TwistProfile mid = TwistProfile::blend(b, a, step / 16.0);
        CotangentPoint img = model_twist(mid, probe);
        CHECK(distance(img, prev_img) < 0.25);
        prev_img = img;
    }
    CHECK(distance(prev_img, model_twist(a, probe)) < 1e-12);
}
