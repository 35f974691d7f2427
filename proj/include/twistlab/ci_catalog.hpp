#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "twistlab/errors.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/quantum.hpp"

namespace twistlab::ci {

/// Multidegree of a complete-intersection surface, normalized: degree-1
/// entries are dropped (a linear hypersurface cut reduces the ambient
/// dimension) and the rest sorted ascending. The empty normalized vector is
/// the plane itself (input was all ones).
struct DegreeVector {
    std::vector<int> degrees;

    static DegreeVector normalized(std::vector<int> raw) {
        if (raw.empty()) throw InvalidDegrees("degree vector must be nonempty");
        DegreeVector d;
        for (int v : raw) {
            if (v <= 0)
                throw InvalidDegrees("degrees must be positive, got " + std::to_string(v));
            if (v >= 2) d.degrees.push_back(v);
        }
        std::sort(d.degrees.begin(), d.degrees.end());
        return d;
    }

    std::size_t n() const { return degrees.size(); }
    bool is_plane() const { return degrees.empty(); }

    std::int64_t product() const {
        std::int64_t p = 1;
        for (int v : degrees) p *= v;
        return p;
    }
    std::int64_t sum() const {
        std::int64_t s = 0;
        for (int v : degrees) s += v;
        return s;
    }
    std::int64_t sum_squares() const {
        std::int64_t s = 0;
        for (int v : degrees) s += std::int64_t(v) * v;
        return s;
    }

    std::string str() const {
        if (degrees.empty()) return "(1)";
        std::string s = "(";
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(degrees[i]);
        }
        return s + ")";
    }

    friend bool operator==(const DegreeVector& a, const DegreeVector& b) {
        return a.degrees == b.degrees;
    }
    friend bool operator<(const DegreeVector& a, const DegreeVector& b) {
        return a.degrees < b.degrees;
    }
};

/// Euler characteristic of the complete intersection of the given degrees:
/// chi = 1/2 (prod d) [ (sum d - (n+3))^2 + sum d^2 - (n+3) ].
inline std::int64_t euler_char(const DegreeVector& d) {
    std::int64_t n3 = std::int64_t(d.n()) + 3;
    std::int64_t a = d.sum() - n3;
    std::int64_t twice = d.product() * (a * a + d.sum_squares() - n3);
    return twice / 2;
}

/// Coefficient of c1 against the hyperplane class: n + 3 - sum d.
inline std::int64_t c1_coefficient(const DegreeVector& d) {
    return std::int64_t(d.n()) + 3 - d.sum();
}

enum class SurfaceCategory {
    ExcludedCP2,
    ExcludedQuadric,
    DelPezzoObstruction,
    K3MinimalCriterion,
    GeneralTypeMinimalCriterion,
};

inline std::string category_name(SurfaceCategory c) {
    switch (c) {
        case SurfaceCategory::ExcludedCP2: return "excluded_cp2";
        case SurfaceCategory::ExcludedQuadric: return "excluded_quadric";
        case SurfaceCategory::DelPezzoObstruction: return "del_pezzo_obstruction";
        case SurfaceCategory::K3MinimalCriterion: return "k3_minimal_criterion";
        default: return "general_type_minimal_criterion";
    }
}

struct SurfaceVerdict {
    DegreeVector d;
    std::int64_t chi = 0;
    std::int64_t c1_coeff = 0;
    std::int64_t b2 = 0; // chi - 2, using simple connectivity
    SurfaceCategory category = SurfaceCategory::GeneralTypeMinimalCriterion;
    int del_pezzo_rank = 0; // set for the del Pezzo category
    bool tau_squared_nontrivial = false;
};

/// Classification of a two-dimensional complete intersection by multidegree:
/// the plane and the quadric are excluded, (3) and (2,2) are del Pezzo
/// surfaces of rank 6 and 5 handled by the quantum obstruction, (4), (2,3)
/// and (2,2,2) are K3 surfaces, and everything else is minimal of general
/// type with b2 >= 3; in all non-excluded cases the squared twist is not
/// isotopic to the identity.
inline SurfaceVerdict classify(const std::vector<int>& raw) {
    DegreeVector d = DegreeVector::normalized(raw);
    SurfaceVerdict v;
    v.d = d;
    v.chi = euler_char(d);
    v.c1_coeff = c1_coefficient(d);
    v.b2 = v.chi - 2;

    if (d.is_plane()) {
        v.category = SurfaceCategory::ExcludedCP2;
        v.tau_squared_nontrivial = false; // no Lagrangian sphere exists at all
        return v;
    }
    if (d.degrees == std::vector<int>{2}) {
        v.category = SurfaceCategory::ExcludedQuadric;
        v.tau_squared_nontrivial = false;
        return v;
    }
    if (d.degrees == std::vector<int>{3} || d.degrees == std::vector<int>{2, 2}) {
        v.category = SurfaceCategory::DelPezzoObstruction;
        v.del_pezzo_rank = d.degrees == std::vector<int>{3} ? 6 : 5;
        BlowupLattice lat(v.del_pezzo_rank);
        HomologyClass l = lat.E(1) - lat.E(2);
        v.tau_squared_nontrivial = quantum::frobenius_obstruction(lat, l).violated;
        return v;
    }
    if (d.degrees == std::vector<int>{4} || d.degrees == std::vector<int>{2, 3} ||
        d.degrees == std::vector<int>{2, 2, 2}) {
        v.category = SurfaceCategory::K3MinimalCriterion;
        v.tau_squared_nontrivial =
            quantum::general_type_obstruction(int(v.b2)).violated;
        return v;
    }

    v.category = SurfaceCategory::GeneralTypeMinimalCriterion;
    std::int64_t bound = 0;
    for (int k : d.degrees) bound += std::int64_t(k) * (k - 1);
    if (v.c1_coeff >= 0)
        throw CheckError("classify: general-type case with c1 >= 0 at " + d.str());
    if (!(v.chi > bound && bound >= 6))
        throw CheckError("classify: Euler bound fails at " + d.str());
    v.tau_squared_nontrivial = quantum::general_type_obstruction(int(v.b2)).violated;
    if (!v.tau_squared_nontrivial)
        throw CheckError("classify: minimal criterion unexpectedly passive at " + d.str());
    return v;
}

struct GeneralTypeChecks {
    DegreeVector d;
    std::int64_t chi = 0;
    std::int64_t bound = 0; // sum d(d-1)
    std::int64_t b2 = 0;
    bool holds = false; // chi > bound >= 6
};

/// Verifies the two inequalities chi > sum d(d-1) >= 6 for a multidegree
/// outside the six exceptional tuples.
inline GeneralTypeChecks general_type_checks(const std::vector<int>& raw) {
    DegreeVector d = DegreeVector::normalized(raw);
    static const std::vector<std::vector<int>> exceptional = {
        {2}, {3}, {4}, {2, 2}, {2, 3}, {2, 2, 2}};
    if (d.is_plane() ||
        std::find(exceptional.begin(), exceptional.end(), d.degrees) !=
            exceptional.end())
        throw NotGeneralType("general_type_checks: " + d.str() +
                             " is not of general type");
    GeneralTypeChecks r;
    r.d = d;
    r.chi = euler_char(d);
    for (int k : d.degrees) r.bound += std::int64_t(k) * (k - 1);
    r.b2 = r.chi - 2;
    r.holds = r.chi > r.bound && r.bound >= 6;
    return r;
}

/// All normalized multidegrees (entries >= 2, ascending) with product of
/// degrees at most max_product, in lexicographic order.
inline std::vector<DegreeVector> degree_range(std::int64_t max_product) {
    if (max_product < 2) return {};
    std::vector<DegreeVector> out;
    std::vector<int> cur;
    std::function<void(int, std::int64_t)> rec = [&](int min_d, std::int64_t prod) {
        for (int v = min_d; prod * v <= max_product; ++v) {
            cur.push_back(v);
            DegreeVector d;
            d.degrees = cur;
            out.push_back(d);
            rec(v, prod * v);
            cur.pop_back();
        }
    };
    rec(2, 1);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace twistlab::ci
