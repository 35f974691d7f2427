#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "twistlab/errors.hpp"

namespace twistlab {

/// An integer homology class in the basis (L, E_1, ..., E_k): coords[0] is
/// the coefficient of the line class L, coords[i] the coefficient of the
/// i-th exceptional class E_i.
struct HomologyClass {
    std::vector<std::int64_t> coords;

    HomologyClass() = default;
    explicit HomologyClass(std::vector<std::int64_t> c) : coords(std::move(c)) {}

    std::size_t rank() const { return coords.size(); }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](auto v) { return v == 0; });
    }

    friend HomologyClass operator+(const HomologyClass& a, const HomologyClass& b) {
        if (a.coords.size() != b.coords.size())
            throw DimensionMismatch("HomologyClass: length mismatch in +");
        HomologyClass r = a;
        for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
        return r;
    }
    friend HomologyClass operator-(const HomologyClass& a, const HomologyClass& b) {
        if (a.coords.size() != b.coords.size())
            throw DimensionMismatch("HomologyClass: length mismatch in -");
        HomologyClass r = a;
        for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
        return r;
    }
    friend HomologyClass operator*(std::int64_t s, const HomologyClass& a) {
        HomologyClass r = a;
        for (auto& v : r.coords) v *= s;
        return r;
    }
    HomologyClass operator-() const { return -1 * *this; }

    friend bool operator==(const HomologyClass& a, const HomologyClass& b) {
        return a.coords == b.coords;
    }
    friend bool operator!=(const HomologyClass& a, const HomologyClass& b) {
        return !(a == b);
    }
    friend bool operator<(const HomologyClass& a, const HomologyClass& b) {
        return a.coords < b.coords;
    }

    /// Renders e.g. "2L - E1 - E2"; zero renders as "0".
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            std::int64_t c = coords[i];
            if (c == 0) continue;
            std::string sym = i == 0 ? "L" : "E" + std::to_string(i);
            if (out.empty()) {
                if (c == -1)
                    out += "-";
                else if (c != 1)
                    out += std::to_string(c);
            } else {
                out += c < 0 ? " - " : " + ";
                std::int64_t a = c < 0 ? -c : c;
                if (a != 1) out += std::to_string(a);
            }
            out += sym;
        }
        return out.empty() ? "0" : out;
    }
};

/// The intersection lattice of the projective plane blown up at k points,
/// 1 <= k <= 8, with the diagonal form diag(+1, -1, ..., -1) in the basis
/// (L, E_1, ..., E_k) and canonical class K = -3L + E_1 + ... + E_k.
class BlowupLattice {
public:
    explicit BlowupLattice(int k) : k_(k) {
        if (k < 1 || k > 8)
            throw UnsupportedRank("BlowupLattice: k must be in 1..8, got " +
                                  std::to_string(k));
        K_.coords.assign(std::size_t(k) + 1, 1);
        K_.coords[0] = -3;
    }

    int k() const { return k_; }
    std::size_t rank() const { return std::size_t(k_) + 1; }
    const HomologyClass& K() const { return K_; }

    HomologyClass zero() const { return basis_class(-1); }
    HomologyClass L() const { return basis_class(0); }
    HomologyClass E(int i) const {
        if (i < 1 || i > k_) throw DimensionMismatch("BlowupLattice: no such E_i");
        return basis_class(i);
    }
    HomologyClass basis(std::size_t i) const { return basis_class(int(i)); }

    /// The intersection pairing x.y = x0*y0 - x1*y1 - ... - xk*yk.
    std::int64_t pairing(const HomologyClass& x, const HomologyClass& y) const {
        check(x);
        check(y);
        std::int64_t s = x.coords[0] * y.coords[0];
        for (std::size_t i = 1; i < rank(); ++i) s -= x.coords[i] * y.coords[i];
        return s;
    }

    /// First Chern number of a class, c1(A) = -K.A.
    std::int64_t c1(const HomologyClass& a) const { return -pairing(K_, a); }

    bool is_root(const HomologyClass& l) const {
        return l.rank() == rank() && pairing(l, l) == -2;
    }

    /// Reflection in a (-2)-class: x -> x + (x.l) l. Applying it twice is the
    /// identity; the fixed hyperplane is the orthogonal complement of l.
    HomologyClass reflect(const HomologyClass& l, const HomologyClass& x) const {
        if (pairing(l, l) != -2)
            throw NotARoot("reflect: class has self-pairing " +
                           std::to_string(pairing(l, l)) + ", need -2");
        return x + pairing(x, l) * l;
    }

    /// The involution A -> (k-6)(A.K) K - A, defined for k = 7, 8. It
    /// preserves the form and K, and acts freely on the exceptional classes.
    HomologyClass bar(const HomologyClass& a) const {
        if (k_ != 7 && k_ != 8)
            throw UnsupportedRank("bar involution requires k in {7,8}, got " +
                                  std::to_string(k_));
        return std::int64_t(k_ - 6) * pairing(a, K_) * K_ - a;
    }

    /// Simple roots: the chain E_i - E_{i+1} plus the node L - E_1 - E_2 - E_3
    /// (when k >= 3). These generate the full Weyl group of the lattice.
    std::vector<HomologyClass> simple_roots() const {
        std::vector<HomologyClass> roots;
        for (int i = 1; i < k_; ++i) {
            HomologyClass r = zero();
            r.coords[std::size_t(i)] = 1;
            r.coords[std::size_t(i) + 1] = -1;
            roots.push_back(std::move(r));
        }
        if (k_ >= 3) {
            HomologyClass r = zero();
            r.coords[0] = 1;
            r.coords[1] = r.coords[2] = r.coords[3] = -1;
            roots.push_back(std::move(r));
        }
        return roots;
    }

private:
    HomologyClass basis_class(int i) const {
        HomologyClass h;
        h.coords.assign(rank(), 0);
        if (i >= 0) h.coords[std::size_t(i)] = 1;
        return h;
    }
    void check(const HomologyClass& x) const {
        if (x.rank() != rank())
            throw DimensionMismatch("HomologyClass has length " +
                                    std::to_string(x.rank()) + ", lattice rank is " +
                                    std::to_string(rank()));
    }

    int k_;
    HomologyClass K_;
};

/// An ordered, deduplicated set of classes all satisfying one defining
/// predicate (exceptional or root), in canonical lexicographic order.
struct ClassSet {
    int k = 0;
    std::string predicate;
    std::vector<HomologyClass> members;

    std::size_t size() const { return members.size(); }
    bool contains(const HomologyClass& x) const {
        return std::binary_search(members.begin(), members.end(), x);
    }

    void canonicalize() {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }
};

namespace detail {

inline std::int64_t isqrt_floor(std::int64_t v) {
    if (v < 0) return -1;
    auto r = std::int64_t(std::max(0.0, std::sqrt(double(v)) - 2));
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

/// Enumerates integer vectors (b_1..b_k) with sum(b) = lin and sum(b^2) = quad,
/// pruning branches where the remaining targets are infeasible.
template <typename Emit>
void fill_b(int slots, std::int64_t lin, std::int64_t quad,
            std::vector<std::int64_t>& acc, const Emit& emit) {
    if (slots == 0) {
        if (lin == 0 && quad == 0) emit(acc);
        return;
    }
    if (quad < 0) return;
    if (lin * lin > std::int64_t(slots) * quad) return; // Cauchy-Schwarz
    std::int64_t bmax = isqrt_floor(quad);
    for (std::int64_t b = -bmax; b <= bmax; ++b) {
        acc.push_back(b);
        fill_b(slots - 1, lin - b, quad - b * b, acc, emit);
        acc.pop_back();
    }
}

/// Searches classes A = aL - sum(b_i E_i) with 3a - sum(b) = c1_target and
/// a^2 - sum(b^2) = square_target; the a-range comes from the Cauchy-Schwarz
/// bound (3a - c1)^2 <= k (a^2 - square).
inline ClassSet enumerate_by_invariants(const BlowupLattice& lat, std::int64_t c1_target,
                                        std::int64_t square_target,
                                        const std::string& predicate) {
    const int k = lat.k();
    ClassSet out;
    out.k = k;
    out.predicate = predicate;
    for (std::int64_t a = -16; a <= 16; ++a) {
        std::int64_t lin = 3 * a - c1_target;       // required sum of b
        std::int64_t quad = a * a - square_target;  // required sum of b^2
        if (quad < 0) continue;
        if (lin * lin > std::int64_t(k) * quad) continue;
        std::vector<std::int64_t> acc;
        fill_b(k, lin, quad, acc, [&](const std::vector<std::int64_t>& b) {
            HomologyClass h;
            h.coords.reserve(std::size_t(k) + 1);
            h.coords.push_back(a);
            for (auto v : b) h.coords.push_back(-v);
            out.members.push_back(std::move(h));
        });
    }
    out.canonicalize();
    return out;
}

} // namespace detail

/// All classes A with c1(A) = 1 and A.A = -1. Counts for k = 1..8 are
/// 1, 3, 6, 10, 16, 27, 56, 240.
inline ClassSet enumerate_exceptional(const BlowupLattice& lat) {
    return detail::enumerate_by_invariants(lat, 1, -1, "exceptional");
}

/// All classes A with A.K = 0 and A.A = -2; these are the roots of the
/// Weyl group of the lattice. Counts for k = 2..8 are 2, 8, 20, 40, 72,
/// 126, 240 (k = 1 has none).
inline ClassSet enumerate_roots(const BlowupLattice& lat) {
    return detail::enumerate_by_invariants(lat, 0, -2, "root");
}

/// Finds an integer class w with w.l = 1 via the extended Euclidean
/// algorithm on the coordinates of the pairing functional. Requires l to be
/// primitive (true for every (-2)-class in these unimodular lattices).
inline HomologyClass dual_witness(const BlowupLattice& lat, const HomologyClass& l) {
    // pairing(w, l) = w0*l0 - w1*l1 - ... - wk*lk = sum(w_i * f_i)
    std::vector<std::int64_t> f(l.coords);
    for (std::size_t i = 1; i < f.size(); ++i) f[i] = -f[i];
    std::vector<std::int64_t> w(f.size(), 0);
    std::int64_t g = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        if (g == 0) {
            g = std::abs(f[i]);
            w[i] = f[i] > 0 ? 1 : -1;
            continue;
        }
        // extended gcd of (g, f[i]): g_new = s*g + t*f[i]
        std::int64_t old_r = g, r = std::abs(f[i]);
        std::int64_t old_s = 1, s = 0;
        while (r != 0) {
            std::int64_t qt = old_r / r;
            std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
            std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
        }
        std::int64_t t = (old_r - old_s * g) / std::abs(f[i]);
        if (f[i] < 0) t = -t;
        for (auto& v : w) v *= old_s;
        w[i] += t;
        g = old_r;
    }
    if (g != 1)
        throw NotPrimitive("dual_witness: class is not primitive, gcd = " +
                           std::to_string(g));
    HomologyClass witness{std::move(w)};
    if (lat.pairing(witness, l) != 1)
        throw Error("dual_witness: internal pairing check failed");
    return witness;
}

} // namespace twistlab
