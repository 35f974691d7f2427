#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "twistlab/errors.hpp"

namespace twistlab::local_model {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// A point (u, v) of the cotangent bundle of the two-sphere realized in
/// R^3 x R^3: u is the covector, v the unit base point, with <u, v> = 0.
struct CotangentPoint {
    Vec3 u, v;

    double constraint_defect() const {
        return std::max(std::abs(dot(u, v)), std::abs(norm(v) - 1.0));
    }
};

inline double distance(const CotangentPoint& a, const CotangentPoint& b) {
    Vec3 du = a.u - b.u, dv = a.v - b.v;
    return std::sqrt(dot(du, du) + dot(dv, dv));
}

/// Default numeric tolerances; every one of them can be overridden from the
/// run configuration.
struct Tolerances {
    double constraint = 1e-9;
    double period = 1e-6;
    double fd_step = 1e-5;
};

/// The normalized geodesic flow
///   sigma_t(u,v) = (cos(t) u - sin(t) |u| v, cos(t) v + sin(t) u/|u|).
/// It preserves |u| and the constraints; sigma_pi is the antipodal map and
/// sigma_0 the identity, but for other angles the flow does not extend over
/// the zero-section.
inline CotangentPoint geodesic_flow(double t, const CotangentPoint& p,
                                    double zero_tol = 1e-9) {
    double n = norm(p.u);
    if (n < zero_tol) {
        double m = std::fmod(std::fmod(t, 2 * kPi) + 2 * kPi, 2 * kPi);
        if (m < 1e-9 || 2 * kPi - m < 1e-9) return p;
        if (std::abs(m - kPi) < 1e-9) return {-p.u, -p.v};
        throw ZeroSection("geodesic_flow: angle " + std::to_string(t) +
                          " undefined on the zero-section");
    }
    double c = std::cos(t), s = std::sin(t);
    return {c * p.u - (s * n) * p.v, c * p.v + (s / n) * p.u};
}

/// Compactly supported twist profile: the derivative r' of the defining
/// function, with r'(0) = 1/2, r' vanishing for t >= lambda/2, and the
/// standard wobbly bounds r' in [1/4, 3/4] on [0, mu) and [0, 1/2] on
/// [mu, lambda/2).
class TwistProfile {
public:
    enum class Kind { Smoothstep, Plateau, Custom };

    /// r'(t) = 1/2 S(clamp(1 - 2t/lambda)) with S(x) = x^2 (3 - 2x);
    /// satisfies the wobbly bounds with mu = lambda/4.
    static TwistProfile smoothstep(double lambda) {
        TwistProfile p;
        p.kind_ = Kind::Smoothstep;
        p.lambda_ = lambda;
        p.mu_ = lambda / 4;
        p.validate();
        return p;
    }

    /// r' = 1/2 exactly on [0, mu], smoothstep decay to 0 at lambda/2. The
    /// plateau makes the deformed square-twist family the identity near the
    /// zero-section.
    static TwistProfile plateau(double lambda, double mu) {
        TwistProfile p;
        p.kind_ = Kind::Plateau;
        p.lambda_ = lambda;
        p.mu_ = mu;
        p.validate();
        return p;
    }

    static TwistProfile custom(double lambda, double mu,
                               std::function<double(double)> rprime) {
        TwistProfile p;
        p.kind_ = Kind::Custom;
        p.lambda_ = lambda;
        p.mu_ = mu;
        p.custom_ = std::move(rprime);
        p.validate();
        return p;
    }

    /// Pointwise blend of two admissible profiles with the same support
    /// radius; used to connect two model twists through a family.
    static TwistProfile blend(const TwistProfile& a, const TwistProfile& b,
                              double w) {
        if (a.lambda() != b.lambda())
            throw UsageError("TwistProfile::blend: support radii differ");
        return custom(a.lambda(), std::min(a.mu(), b.mu()),
                      [a, b, w](double t) {
                          return (1 - w) * a.rprime(t) + w * b.rprime(t);
                      });
    }

    double lambda() const { return lambda_; }
    double mu() const { return mu_; }
    Kind kind() const { return kind_; }

    double rprime(double t) const {
        switch (kind_) {
            case Kind::Smoothstep: {
                double x = 1 - 2 * t / lambda_;
                x = std::clamp(x, 0.0, 1.0);
                return 0.5 * x * x * (3 - 2 * x);
            }
            case Kind::Plateau: {
                if (t <= mu_) return 0.5;
                if (t >= lambda_ / 2) return 0.0;
                double x = (lambda_ / 2 - t) / (lambda_ / 2 - mu_);
                return 0.5 * x * x * (3 - 2 * x);
            }
            default:
                return custom_(t);
        }
    }

    /// True when r' is identically 1/2 on a neighbourhood of 0, the
    /// hypothesis for the fragility family.
    bool has_plateau() const {
        for (int i = 0; i <= 16; ++i)
            if (std::abs(rprime(mu_ * i / 16.0) - 0.5) > 1e-12) return false;
        return true;
    }

    /// Dense sampling check of the wobbly bounds; throws UsageError on any
    /// violation.
    void validate(int samples = 4096) const {
        if (lambda_ <= 0 || mu_ <= 0 || mu_ >= lambda_ / 2)
            throw UsageError("TwistProfile: need 0 < mu < lambda/2");
        if (std::abs(rprime(0) - 0.5) > 1e-12)
            throw UsageError("TwistProfile: r'(0) must be 1/2");
        for (int i = 0; i <= samples; ++i) {
            double t = lambda_ * i / samples;
            double r = rprime(t);
            if (t < mu_) {
                if (r < 0.25 - 1e-12 || r > 0.75 + 1e-12)
                    throw UsageError("TwistProfile: r' outside [1/4,3/4] on [0,mu)");
            } else if (t < lambda_ / 2) {
                if (r < -1e-12 || r > 0.5 + 1e-12)
                    throw UsageError("TwistProfile: r' outside [0,1/2] on [mu,lambda/2)");
            } else if (std::abs(r) > 1e-12) {
                throw UsageError("TwistProfile: r' must vanish for t >= lambda/2");
            }
        }
    }

private:
    Kind kind_ = Kind::Smoothstep;
    double lambda_ = 1.0;
    double mu_ = 0.25;
    std::function<double(double)> custom_;
};

/// The model Dehn twist tau(u,v) = sigma_{2 pi r'(|u|)}(u,v), extended over
/// the zero-section by (0,-v). Identity outside |u| >= lambda/2, and
/// O(3)-equivariant.
inline CotangentPoint model_twist(const TwistProfile& prof, const CotangentPoint& p,
                                  double zero_tol = 1e-9) {
    double n = norm(p.u);
    if (n < zero_tol) return {-p.u, -p.v};
    if (n >= prof.lambda() / 2) return p;
    return geodesic_flow(2 * kPi * prof.rprime(n), p, zero_tol);
}

/// The would-be isotopy from the identity to the squared twist,
/// psi_t = sigma_{4 pi t r'(|u|)}: well-defined off the zero-section for all
/// t, but over the zero-section only the endpoint maps extend continuously.
/// For intermediate t the family is undefined there, surfaced as ZeroSection
/// even at times where the pointwise angle happens to be a multiple of pi.
inline CotangentPoint isotopy_family(const TwistProfile& prof, double t,
                                     const CotangentPoint& p, double zero_tol = 1e-9) {
    if (t < 0 || t > 1) throw UsageError("isotopy_family: t must lie in [0,1]");
    double n = norm(p.u);
    if (n < zero_tol && t > zero_tol && t < 1 - zero_tol)
        throw ZeroSection("isotopy_family: not continuous over the zero-section "
                          "for intermediate times");
    double angle = 4 * kPi * t * prof.rprime(n);
    return geodesic_flow(angle, p, zero_tol);
}

/// The deformed symplectic structure omega^s = omega + s beta together with
/// its moment map mu^s(u,v) = -s v - u x v, which is nowhere zero for
/// s != 0. Its norm generates a circle action on the whole space.
struct DeformedStructure {
    double s = 0;

    Vec3 moment_map(const CotangentPoint& p) const {
        return -1.0 * (s * p.v) - cross(p.u, p.v);
    }
    double hamiltonian(const CotangentPoint& p) const { return norm(moment_map(p)); }
};

namespace detail {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Stereographic chart on the base sphere with induced canonical fiber
/// coordinates (x, y, p_x, p_y). pole = +1 covers everything except the
/// south pole, pole = -1 everything except the north pole. In these
/// coordinates the undeformed form is canonical and the deformation is
/// s f(x,y) dx ^ dy with f = pole * 4/D^2, D = 1 + x^2 + y^2.
struct Chart {
    int pole = +1;

    Vec3 singular_point() const { return {0, 0, pole == +1 ? -1.0 : 1.0}; }

    Vec3 base(double x, double y) const {
        double d = 1 + x * x + y * y;
        return {2 * x / d, 2 * y / d, double(pole) * (2 / d - 1)};
    }
    // tangent frame d(base)/dx, d(base)/dy
    void frame(double x, double y, Vec3& vx, Vec3& vy) const {
        double d = 1 + x * x + y * y, d2 = d * d;
        vx = {2 * (d - 2 * x * x) / d2, -4 * x * y / d2, double(pole) * -4 * x / d2};
        vy = {-4 * x * y / d2, 2 * (d - 2 * y * y) / d2, double(pole) * -4 * y / d2};
    }

    Vec4 to_chart(const CotangentPoint& p) const {
        double denom = 1 + pole * p.v.z;
        if (std::abs(denom) < 1e-12)
            throw ChartSingularity("chart: base point at the singular pole");
        double x = p.v.x / denom, y = p.v.y / denom;
        Vec3 vx, vy;
        frame(x, y, vx, vy);
        return {x, y, dot(p.u, vx), dot(p.u, vy)};
    }

    CotangentPoint from_chart(const Vec4& z) const {
        double x = z[0], y = z[1];
        double d = 1 + x * x + y * y;
        Vec3 vx, vy;
        frame(x, y, vx, vy);
        double scale = d * d / 4; // inverse of the conformal metric factor
        return {scale * (z[2] * vx + z[3] * vy), base(x, y)};
    }

    double beta_factor(double x, double y) const {
        double d = 1 + x * x + y * y;
        return double(pole) * 4 / (d * d);
    }

    Mat4 omega(double x, double y, double s) const {
        double sf = s * beta_factor(x, y);
        Mat4 m{};
        m[2][0] = 1;
        m[0][2] = -1;
        m[3][1] = 1;
        m[1][3] = -1;
        m[0][1] = sf;
        m[1][0] = -sf;
        return m;
    }

    /// Hamiltonian vector field of h = sqrt(s^2 + |u|^2) with respect to
    /// omega^s, solved from Omega X = grad h:
    ///   xdot = h_px, ydot = h_py,
    ///   pxdot = s f h_py - h_x, pydot = -s f h_px - h_y.
    Vec4 field(const Vec4& z, double s) const {
        double x = z[0], y = z[1], px = z[2], py = z[3];
        double d = 1 + x * x + y * y;
        double pp = px * px + py * py;
        double h = std::sqrt(s * s + d * d / 4 * pp);
        if (h < 1e-300) throw ZeroSection("flow field undefined at |u| = s = 0");
        double hx = d * x * pp / (2 * h);
        double hy = d * y * pp / (2 * h);
        double hpx = d * d / 4 * px / h;
        double hpy = d * d / 4 * py / h;
        double sf = s * beta_factor(x, y);
        return {hpx, hpy, sf * hpy - hx, -sf * hpx - hy};
    }
};

inline Vec4 axpy(const Vec4& a, double c, const Vec4& b) {
    return {a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2], a[3] + c * b[3]};
}

} // namespace detail

/// Flow of the circle-action Hamiltonian |mu^s| with respect to omega^s,
/// integrated with fixed-step RK4 in stereographic chart coordinates, with
/// automatic chart switching away from the singular pole. For s = 0 this is
/// the normalized geodesic flow (checked elsewhere against the closed form);
/// for s != 0 the orbit closes after t = 2 pi.
inline CotangentPoint deformed_flow(const DeformedStructure& ds, double t,
                                    const CotangentPoint& p, int steps = 10000,
                                    double zero_tol = 1e-9) {
    if (steps < 1) throw UsageError("deformed_flow: need at least one step");
    if (ds.s == 0 && norm(p.u) < zero_tol)
        throw ZeroSection("deformed_flow: undefined on the zero-section at s = 0");

    detail::Chart chart{p.v.z >= 0 ? +1 : -1};
    detail::Vec4 z = chart.to_chart(p);
    double dt = t / steps;
    for (int i = 0; i < steps; ++i) {
        detail::Vec4 k1 = chart.field(z, ds.s);
        detail::Vec4 k2 = chart.field(detail::axpy(z, dt / 2, k1), ds.s);
        detail::Vec4 k3 = chart.field(detail::axpy(z, dt / 2, k2), ds.s);
        detail::Vec4 k4 = chart.field(detail::axpy(z, dt, k3), ds.s);
        for (int d = 0; d < 4; ++d)
            z[d] += dt / 6 * (k1[d] + 2 * k2[d] + 2 * k3[d] + k4[d]);
        if (!std::isfinite(z[0]) || !std::isfinite(z[1]) || !std::isfinite(z[2]) ||
            !std::isfinite(z[3]))
            throw IntegrationDiverged("deformed_flow: state is not finite");
        // switch charts when the base point comes within 0.3 of the pole
        CotangentPoint cur = chart.from_chart(z);
        Vec3 gap = cur.v - chart.singular_point();
        if (norm(gap) < 0.3) {
            chart.pole = -chart.pole;
            z = chart.to_chart(cur);
        }
    }
    return chart.from_chart(z);
}

/// The deformation family phi^s(u,v) = sigma^s_{4 pi r'(|u|)}(u,v) of the
/// squared model twist. Requires a profile with r' = 1/2 near zero, which
/// makes the angle a full turn there: for s != 0 the map is the identity
/// near the zero-section, while phi^0 is exactly the squared twist.
inline CotangentPoint fragility_family(const DeformedStructure& ds,
                                       const TwistProfile& prof,
                                       const CotangentPoint& p, int steps = 10000,
                                       double zero_tol = 1e-9) {
    if (!prof.has_plateau())
        throw UsageError("fragility_family: profile must satisfy r' = 1/2 near 0");
    double n = norm(p.u);
    if (n >= prof.lambda() / 2) return p;
    double angle = 4 * kPi * prof.rprime(n);
    if (ds.s == 0) {
        if (n < zero_tol) return p; // squared twist fixes the zero-section
        return geodesic_flow(angle, p, zero_tol);
    }
    return deformed_flow(ds, angle, p, steps, zero_tol);
}

struct ResidualReport {
    std::size_t samples = 0;
    double max_residual = 0;
};

/// Numerical symplecticity check: in chart coordinates, computes the
/// finite-difference Jacobian J of the map at each sample and returns the
/// largest Frobenius norm of J^T Omega(image) J - Omega(source), where
/// Omega is the chart matrix of omega^s. A symplectic map gives pure
/// finite-difference error.
inline ResidualReport symplectic_residual(
    const std::function<CotangentPoint(const CotangentPoint&)>& map,
    const DeformedStructure& ds, const std::vector<CotangentPoint>& points,
    double h_fd = 1e-5) {
    ResidualReport rep;
    for (const auto& p : points) {
        detail::Chart cin{p.v.z >= 0 ? +1 : -1};
        detail::Vec4 z;
        CotangentPoint img0;
        try {
            z = cin.to_chart(p);
            img0 = map(p);
        } catch (const Error& e) {
            throw SampleOnSingularLocus(std::string("symplectic_residual: ") + e.what());
        }
        detail::Chart cout_{img0.v.z >= 0 ? +1 : -1};

        std::array<detail::Vec4, 4> cols;
        try {
            for (int d = 0; d < 4; ++d) {
                detail::Vec4 zp = z, zm = z;
                zp[d] += h_fd;
                zm[d] -= h_fd;
                detail::Vec4 wp = cout_.to_chart(map(cin.from_chart(zp)));
                detail::Vec4 wm = cout_.to_chart(map(cin.from_chart(zm)));
                for (int i = 0; i < 4; ++i) cols[d][i] = (wp[i] - wm[i]) / (2 * h_fd);
            }
        } catch (const Error& e) {
            throw SampleOnSingularLocus(std::string("symplectic_residual: ") + e.what());
        }

        detail::Vec4 w0 = cout_.to_chart(img0);
        detail::Mat4 oin = cin.omega(z[0], z[1], ds.s);
        detail::Mat4 oout = cout_.omega(w0[0], w0[1], ds.s);
        double frob = 0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                // (J^T Oout J)_{ij} = cols[i] . Oout . cols[j]
                double acc = 0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) acc += cols[i][a] * oout[a][b] * cols[j][b];
                double r = acc - oin[i][j];
                frob += r * r;
            }
        }
        rep.max_residual = std::max(rep.max_residual, std::sqrt(frob));
        ++rep.samples;
    }
    return rep;
}

/// Deterministic sample generator for cotangent points: given the same seed
/// it produces the same sequence on every run.
class PointSampler {
public:
    explicit PointSampler(std::uint64_t seed, double umin = 0.05, double umax = 1.5)
        : rng_(seed), umin_(umin), umax_(umax) {}

    double uniform01() { return double(rng_() >> 11) * 0x1.0p-53; }

    Vec3 unit_vector() {
        double z = 2 * uniform01() - 1;
        double phi = 2 * kPi * uniform01();
        double r = std::sqrt(std::max(0.0, 1 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    CotangentPoint point() {
        Vec3 v = unit_vector();
        Vec3 a = std::abs(v.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
        Vec3 e1 = cross(v, a);
        e1 = (1.0 / norm(e1)) * e1;
        Vec3 e2 = cross(v, e1);
        double psi = 2 * kPi * uniform01();
        double len = umin_ + (umax_ - umin_) * uniform01();
        Vec3 u = len * (std::cos(psi) * e1 + std::sin(psi) * e2);
        return {u, v};
    }

    /// Point with prescribed covector length.
    CotangentPoint point_with_radius(double len) {
        CotangentPoint p = point();
        double n = norm(p.u);
        p.u = (len / n) * p.u;
        return p;
    }

private:
    std::mt19937_64 rng_;
    double umin_, umax_;
};

} // namespace twistlab::local_model
