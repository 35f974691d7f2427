#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/lattice.hpp"
#include "twistlab/linalg.hpp"
#include "twistlab/scalar.hpp"

namespace twistlab::quantum {

/// Raised when the degree-two quantum product restricted to the orthogonal
/// complement of K fails to be a multiple of (x.y) K; carries the witness
/// pair and the offending sum.
struct NotProportional : CheckError {
    HomologyClass x, y, sum;
    NotProportional(HomologyClass x_, HomologyClass y_, HomologyClass sum_)
        : CheckError("product on K-perp is not K-proportional at (" + x_.str() +
                     ", " + y_.str() + "): sum = " + sum_.str()),
          x(std::move(x_)),
          y(std::move(y_)),
          sum(std::move(sum_)) {}
};

/// The bilinear sum over a set of classes: sum_A (x.A)(y.A) A.
inline HomologyClass divisor_sum(const BlowupLattice& lat, const ClassSet& classes,
                                 const HomologyClass& x, const HomologyClass& y) {
    HomologyClass acc = lat.zero();
    for (const auto& a : classes.members) {
        std::int64_t w = lat.pairing(x, a) * lat.pairing(y, a);
        if (w == 0) continue;
        for (std::size_t i = 0; i < acc.coords.size(); ++i)
            acc.coords[i] += w * a.coords[i];
    }
    return acc;
}

struct Star1Raw {
    HomologyClass value;
    /// True when the sum over exceptional classes is the actual first-order
    /// quantum product, which needs 5 <= k <= 8.
    bool formula_valid;
};

/// First-order product candidate for any 1 <= k <= 8: the sum over all
/// exceptional classes, flagged with its validity range.
inline Star1Raw star1_raw(const BlowupLattice& lat, const HomologyClass& x,
                          const HomologyClass& y) {
    ClassSet e = enumerate_exceptional(lat);
    return {divisor_sum(lat, e, x, y), lat.k() >= 5 && lat.k() <= 8};
}

/// The first-order quantum product of two degree-two classes,
/// x *_1 y = sum over exceptional A of (x.A)(y.A) A; defined for 5 <= k <= 8.
inline HomologyClass star1(const BlowupLattice& lat, const HomologyClass& x,
                           const HomologyClass& y) {
    if (lat.k() < 5)
        throw UnsupportedRank("star1: formula requires 5 <= k <= 8, got k = " +
                              std::to_string(lat.k()));
    ClassSet e = enumerate_exceptional(lat);
    return divisor_sum(lat, e, x, y);
}

/// A spanning set of the orthogonal complement of K (the simple roots).
inline std::vector<HomologyClass> kperp_basis(const BlowupLattice& lat) {
    return lat.simple_roots();
}

namespace detail {

/// Proportionality check over an explicit exceptional set; returns the
/// unique integer c with sum(x,y) = c (x.y) K over all spanning pairs.
inline std::int64_t kperp_constant(const BlowupLattice& lat, const ClassSet& e) {
    const HomologyClass K = lat.K();
    auto basis = kperp_basis(lat);
    std::optional<std::int64_t> c;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            HomologyClass s = divisor_sum(lat, e, basis[i], basis[j]);
            std::int64_t form = lat.pairing(basis[i], basis[j]);
            if (form == 0) {
                if (!s.is_zero()) throw NotProportional(basis[i], basis[j], s);
                continue;
            }
            // candidate from the L-coordinate: s = c * form * K
            std::int64_t denom = form * K.coords[0];
            if (s.coords[0] % denom != 0)
                throw NotProportional(basis[i], basis[j], s);
            std::int64_t cand = s.coords[0] / denom;
            if (s != cand * form * K) throw NotProportional(basis[i], basis[j], s);
            if (c && *c != cand) throw NotProportional(basis[i], basis[j], s);
            c = cand;
        }
    }
    if (!c) throw Error("kperp_constant: no pair with nonzero pairing");
    return *c;
}

} // namespace detail

/// Verifies that x *_1 y = c (x.y) K for all pairs from a spanning set of
/// K-perp and returns the integer c. Throws NotProportional with a witness
/// pair when the identity fails.
inline std::int64_t kperp_proportionality(const BlowupLattice& lat) {
    if (lat.k() < 5)
        throw UnsupportedRank("kperp_proportionality requires 5 <= k <= 8");
    return detail::kperp_constant(lat, enumerate_exceptional(lat));
}

/// Same check run on the raw sum for any 1 <= k <= 8 (negative control for
/// k outside the validity range of the product formula).
inline std::int64_t kperp_proportionality_raw(const BlowupLattice& lat) {
    return detail::kperp_constant(lat, enumerate_exceptional(lat));
}

struct EquivarianceReport {
    bool pass = true;
    std::size_t checked = 0;
    // failing triple, meaningful when !pass
    HomologyClass root, x, y;
};

/// Checks s(x *_1 y) = s(x) *_1 s(y) for every simple-root reflection s and
/// every basis pair (x, y). Total: reports a failing triple instead of
/// throwing.
inline EquivarianceReport check_w_equivariance(const BlowupLattice& lat) {
    ClassSet e = enumerate_exceptional(lat);
    EquivarianceReport rep;
    for (const auto& s : lat.simple_roots()) {
        for (std::size_t i = 0; i < lat.rank(); ++i) {
            for (std::size_t j = i; j < lat.rank(); ++j) {
                HomologyClass x = lat.basis(i), y = lat.basis(j);
                HomologyClass lhs = lat.reflect(s, divisor_sum(lat, e, x, y));
                HomologyClass rhs =
                    divisor_sum(lat, e, lat.reflect(s, x), lat.reflect(s, y));
                ++rep.checked;
                if (lhs != rhs) {
                    rep.pass = false;
                    rep.root = s;
                    rep.x = x;
                    rep.y = y;
                    return rep;
                }
            }
        }
    }
    return rep;
}

/// Expresses a class lying in K-perp in the simple-root basis (exact
/// rational coordinates).
inline std::vector<Rational> kperp_coordinates(const BlowupLattice& lat,
                                               const HomologyClass& v) {
    auto basis = kperp_basis(lat);
    linalg::Matrix<Rational> a(lat.rank(), std::vector<Rational>(basis.size()));
    std::vector<Rational> b(lat.rank());
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            a[i][j] = Rational(basis[j].coords[i]);
        b[i] = Rational(v.coords[i]);
    }
    auto x = linalg::solve(a, b);
    if (!x) throw Error("kperp_coordinates: class is not in K-perp");
    return *x;
}

/// Dimension of the space of symmetric bilinear forms on K-perp invariant
/// under the reflections in the given roots. With the full set of simple
/// roots the expected value is 1 (the reflection representation on K-perp is
/// irreducible, so only multiples of the intersection form survive); with no
/// generators it is the unconstrained k(k+1)/2.
inline std::size_t invariant_form_dimension(const BlowupLattice& lat,
                                            const std::vector<HomologyClass>& generators) {
    const std::size_t k = std::size_t(lat.k());
    auto basis = kperp_basis(lat);
    const std::size_t unknowns = k * (k + 1) / 2;
    auto idx = [k](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        return i * k - i * (i + 1) / 2 + j;
    };
    linalg::Matrix<Rational> rows;
    for (const auto& g : generators) {
        if (!lat.is_root(g)) throw NotARoot("invariant_form_dimension: not a root");
        // matrix of the reflection in the simple-root basis
        linalg::Matrix<Rational> s(k, std::vector<Rational>(k));
        for (std::size_t j = 0; j < k; ++j) {
            auto col = kperp_coordinates(lat, lat.reflect(g, basis[j]));
            for (std::size_t i = 0; i < k; ++i) s[i][j] = col[i];
        }
        // B(s x_p, s x_q) = B(x_p, x_q) for all p <= q
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = p; q < k; ++q) {
                std::vector<Rational> row(unknowns, Rational(0));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        row[idx(i, j)] += s[i][p] * s[j][q];
                row[idx(p, q)] -= Rational(1);
                rows.push_back(std::move(row));
            }
        }
    }
    if (rows.empty()) return unknowns;
    return unknowns - linalg::rank(std::move(rows));
}

inline std::size_t invariant_form_dimension(const BlowupLattice& lat) {
    return invariant_form_dimension(lat, lat.simple_roots());
}

struct ModuleIdentityReport {
    bool pass = true;
    std::size_t checked = 0;
    HomologyClass witness_w;
    std::string failure;
};

/// Verifies the first-order shadows of the two twist-compatibility
/// identities for the product: with w.l = 1,
///   reflect(l, w *_1 l) + (w *_1 l) + (l *_1 l) = 0
///   reflect(l, w *_1 x) = (w *_1 x) + (l *_1 x) + (x.l)((w *_1 l) + (l *_1 l))
/// for all basis classes x, plus the reflection-equivariance identity
/// reflect(l, x *_1 y) = reflect(l,x) *_1 reflect(l,y) on all basis pairs.
inline ModuleIdentityReport module_identities(const BlowupLattice& lat,
                                              const HomologyClass& l,
                                              std::optional<HomologyClass> w_choice = {}) {
    if (!lat.is_root(l)) throw NotARoot("module_identities: l is not a root");
    if (lat.k() < 5)
        throw UnsupportedRank("module_identities requires 5 <= k <= 8");
    ClassSet e = enumerate_exceptional(lat);
    auto prod = [&](const HomologyClass& a, const HomologyClass& b) {
        return divisor_sum(lat, e, a, b);
    };

    ModuleIdentityReport rep;
    HomologyClass w = w_choice ? *w_choice : dual_witness(lat, l);
    if (lat.pairing(w, l) != 1)
        throw UsageError("module_identities: witness must satisfy w.l = 1");
    rep.witness_w = w;

    const HomologyClass wl = prod(w, l);
    const HomologyClass ll = prod(l, l);
    const HomologyClass zero = lat.zero();

    auto check = [&](bool ok, const std::string& label) {
        ++rep.checked;
        if (!ok && rep.pass) {
            rep.pass = false;
            rep.failure = label;
        }
        return ok;
    };

    check(lat.reflect(l, wl) + wl + ll == zero, "first identity, w = " + w.str());
    // every basis vector with pairing one against l also serves as a witness
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        HomologyClass b = lat.basis(i);
        if (lat.pairing(b, l) != 1) continue;
        HomologyClass bl = prod(b, l);
        check(lat.reflect(l, bl) + bl + ll == zero, "first identity, w = " + b.str());
    }
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        HomologyClass x = lat.basis(i);
        HomologyClass wx = prod(w, x);
        HomologyClass rhs = wx + prod(l, x) + lat.pairing(x, l) * (wl + ll);
        check(lat.reflect(l, wx) == rhs, "second identity, x = " + x.str());
    }
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        for (std::size_t j = i; j < lat.rank(); ++j) {
            HomologyClass x = lat.basis(i), y = lat.basis(j);
            check(lat.reflect(l, prod(x, y)) ==
                      prod(lat.reflect(l, x), lat.reflect(l, y)),
                  "equivariance at (" + x.str() + ", " + y.str() + ")");
        }
    }
    return rep;
}

/// Graded element of the truncated quantum homology: a [point]-component,
/// a degree-two vector over the (L, E_i) basis, and an [M]-component, each
/// an exact Scalar.
struct QHElement {
    Scalar pt;
    std::vector<Scalar> mid;
    Scalar top;

    explicit QHElement(std::size_t lattice_rank = 0) : mid(lattice_rank) {}

    std::size_t lattice_rank() const { return mid.size(); }

    static QHElement from_h2(const HomologyClass& x) {
        QHElement e(x.rank());
        for (std::size_t i = 0; i < x.rank(); ++i) e.mid[i] = Scalar(x.coords[i]);
        return e;
    }

    std::vector<Scalar> flatten() const {
        std::vector<Scalar> v;
        v.reserve(mid.size() + 2);
        v.push_back(pt);
        v.insert(v.end(), mid.begin(), mid.end());
        v.push_back(top);
        return v;
    }

    QHElement substitute(unsigned var_index, const Rational& value) const {
        QHElement r(mid.size());
        r.pt = pt.substitute(var_index, value);
        for (std::size_t i = 0; i < mid.size(); ++i)
            r.mid[i] = mid[i].substitute(var_index, value);
        r.top = top.substitute(var_index, value);
        return r;
    }

    friend QHElement operator+(const QHElement& a, const QHElement& b) {
        QHElement r(a.mid.size());
        r.pt = a.pt + b.pt;
        for (std::size_t i = 0; i < a.mid.size(); ++i) r.mid[i] = a.mid[i] + b.mid[i];
        r.top = a.top + b.top;
        return r;
    }
    friend QHElement operator*(const Scalar& s, const QHElement& a) {
        QHElement r(a.mid.size());
        r.pt = s * a.pt;
        for (std::size_t i = 0; i < a.mid.size(); ++i) r.mid[i] = s * a.mid[i];
        r.top = s * a.top;
        return r;
    }
    friend QHElement operator-(const QHElement& a, const QHElement& b) {
        return a + (Scalar(-1) * b);
    }
    friend bool operator==(const QHElement& a, const QHElement& b) {
        return a.pt == b.pt && a.mid == b.mid && a.top == b.top;
    }

    /// For a product of two degree-two inputs the q-power grading must put
    /// q^0 in the [point]-component, q^1 in the degree-two component, and
    /// q^2 in the [M]-component.
    bool product_grading_consistent() const {
        auto pure_power = [](const Scalar& s, unsigned power) {
            if (!s.is_polynomial()) return false;
            Polynomial p = s.num();
            return p == p.coefficient_of(var::q, power) * Polynomial::variable(var::q, power);
        };
        if (!pure_power(pt, 0)) return false;
        for (const auto& m : mid)
            if (!pure_power(m, 1)) return false;
        return pure_power(top, 2);
    }
};

/// Full product of two degree-two classes orthogonal to K:
///   x * y = (x.y) [point] + (x *_1 y) q + alpha2 (x.y) [M] q^2
/// with the second-order term a single formal unknown times the intersection
/// form (licensed by invariant_form_dimension = 1).
inline QHElement star_kperp(const BlowupLattice& lat, const ClassSet& e,
                            const HomologyClass& x, const HomologyClass& y) {
    if (lat.pairing(x, lat.K()) != 0 || lat.pairing(y, lat.K()) != 0)
        throw UsageError("star_kperp: inputs must be orthogonal to K");
    QHElement r(lat.rank());
    std::int64_t form = lat.pairing(x, y);
    r.pt = Scalar(form);
    HomologyClass s1 = divisor_sum(lat, e, x, y);
    for (std::size_t i = 0; i < lat.rank(); ++i)
        r.mid[i] = Scalar(s1.coords[i]) * Scalar::q();
    r.top = Scalar(form) * Scalar::alpha2() * Scalar::q(2);
    return r;
}

/// Outcome of the squared-twist obstruction pipeline for one root class.
struct ObstructionReport {
    int k = 0;
    std::int64_t c_k = 0;
    std::size_t invariant_form_dim = 0;
    std::size_t dim_total = 0;     // k + 3
    std::size_t dim_ideal = 0;     // 2, input rule realized as span{l, l*l}
    std::size_t dim_quotient = 0;  // k + 1
    std::size_t dim_isotropic = 0; // k - 1
    bool violated = false;         // k - 1 > (k + 1)/2
    HomologyClass l;
    HomologyClass witness_w;
    std::vector<std::pair<HomologyClass, HomologyClass>> witnesses;
    std::vector<Rational> alpha2_substitutions;
};

/// Runs the full obstruction pipeline for the square of the twist in a root
/// class l:
///   (i)   fix alpha1 = c_k by the K-perp proportionality of the product;
///   (ii)  justify the single formal unknown alpha2 (invariant form dim 1);
///   (iii) form l*l and the span {l, l*l} of the ideal (dimension-2 input
///         rule; independence verified identically in alpha2);
///   (iv)  compute the dimension of the image of K-perp in the quotient by
///         exact linear algebra over the scalar field;
///   (v)   verify the image is isotropic: x*y = (x.y)(-1/2)(l*l) in the
///         ideal for all spanning pairs;
///   (vi)  report whether the isotropic dimension exceeds half the quotient
///         dimension.
/// All computed dimensions are rechecked under numeric substitutions of
/// alpha2 to confirm independence of the formal unknown.
inline ObstructionReport frobenius_obstruction(const BlowupLattice& lat,
                                               const HomologyClass& l,
                                               std::optional<HomologyClass> w_choice = {}) {
    if (!lat.is_root(l)) throw NotARoot("frobenius_obstruction: l is not a root");
    if (lat.k() < 5)
        throw UnsupportedRank("frobenius_obstruction requires 5 <= k <= 8");
    const std::size_t k = std::size_t(lat.k());
    ClassSet e = enumerate_exceptional(lat);

    ObstructionReport rep;
    rep.k = lat.k();
    rep.l = l;
    rep.c_k = detail::kperp_constant(lat, e);

    rep.invariant_form_dim = invariant_form_dimension(lat);
    if (rep.invariant_form_dim != 1)
        throw CheckError("frobenius_obstruction: invariant form space has dimension " +
                         std::to_string(rep.invariant_form_dim) + ", expected 1");

    rep.witness_w = w_choice ? *w_choice : dual_witness(lat, l);
    if (lat.pairing(rep.witness_w, l) != 1)
        throw UsageError("frobenius_obstruction: witness must satisfy w.l = 1");

    // l*l = -2 [point] + c_k (l.l) K q + (l.l) alpha2 [M] q^2
    QHElement l_el = QHElement::from_h2(l);
    QHElement ll = star_kperp(lat, e, l, l);

    // the ideal span: independent identically in alpha2 because l has no
    // [point]-component while l*l has [point]-coefficient -2
    if (!(l_el.pt.is_zero() && ll.pt == Scalar(-2)))
        throw CheckError("frobenius_obstruction: ideal span sanity check failed");

    auto basis = kperp_basis(lat);
    auto dims_for = [&](std::optional<Rational> alpha2_value) {
        auto row_of = [&](const QHElement& q) {
            QHElement s = alpha2_value ? q.substitute(var::alpha2, *alpha2_value) : q;
            return s.flatten();
        };
        linalg::Matrix<Scalar> ideal_rows{row_of(l_el), row_of(ll)};
        std::size_t ideal_rank = linalg::rank(ideal_rows);
        linalg::Matrix<Scalar> all_rows = ideal_rows;
        for (const auto& b : basis) all_rows.push_back(row_of(QHElement::from_h2(b)));
        std::size_t image = linalg::rank(all_rows) - ideal_rank;
        return std::make_pair(ideal_rank, image);
    };

    auto [ideal_rank, image_dim] = dims_for(std::nullopt);
    if (ideal_rank != 2)
        throw CheckError("frobenius_obstruction: span{l, l*l} has rank " +
                         std::to_string(ideal_rank));
    rep.dim_total = k + 3;
    rep.dim_ideal = 2;
    rep.dim_quotient = rep.dim_total - rep.dim_ideal;
    rep.dim_isotropic = image_dim;
    if (rep.dim_quotient != k + 1 || rep.dim_isotropic != k - 1)
        throw CheckError("frobenius_obstruction: computed dimensions disagree with "
                         "the rank-" + std::to_string(k) + " expectations");

    // the formal unknown must not affect any dimension
    for (std::int64_t v : {0LL, 1LL, -7LL}) {
        Rational value(v);
        auto [ir, im] = dims_for(value);
        if (ir != ideal_rank || im != image_dim)
            throw CheckError("frobenius_obstruction: dimensions depend on alpha2");
        rep.alpha2_substitutions.push_back(value);
    }

    // isotropy of the image: x*y = (x.y) (-1/2) (l*l) lies in the ideal
    Scalar minus_half(Rational(-1, 2));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            QHElement lhs = star_kperp(lat, e, basis[i], basis[j]);
            QHElement rhs =
                (Scalar(lat.pairing(basis[i], basis[j])) * minus_half) * ll;
            if (!(lhs == rhs))
                throw CheckError("frobenius_obstruction: isotropy identity fails at (" +
                                 basis[i].str() + ", " + basis[j].str() + ")");
            if (!lhs.product_grading_consistent())
                throw CheckError("frobenius_obstruction: grading check failed");
            rep.witnesses.emplace_back(basis[i], basis[j]);
        }
    }

    rep.violated = 2 * (k - 1) > k + 1;
    return rep;
}

struct GeneralTypeReport {
    int b2 = 0;
    int dim_quotient = 0;  // b2
    int dim_isotropic = 0; // b2 - 1
    bool violated = false; // b2 - 1 > b2/2, i.e. b2 >= 3
};

/// The minimal-manifold variant of the obstruction: when the quantum product
/// equals the classical intersection product, the quotient by the span of
/// {l, [point]} has dimension b2 and carries the isotropic image of the
/// degree-two part modulo l, of dimension b2 - 1. The Frobenius bound is
/// violated exactly when b2 >= 3.
inline GeneralTypeReport general_type_obstruction(int b2) {
    if (b2 < 1) throw UsageError("general_type_obstruction: b2 must be >= 1");
    GeneralTypeReport r;
    r.b2 = b2;
    r.dim_quotient = b2;
    r.dim_isotropic = b2 - 1;
    r.violated = 2 * (b2 - 1) > b2;
    return r;
}

} // namespace twistlab::quantum
