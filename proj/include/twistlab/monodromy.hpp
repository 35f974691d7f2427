#pragma once

#include <cctype>
#include <cstdint>
#include <deque>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "twistlab/intmat.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/weyl.hpp"

namespace twistlab::monodromy {

enum class Mode { Reflection, Transvection };

inline std::string mode_name(Mode m) {
    return m == Mode::Reflection ? "reflect" : "transvect";
}

/// The lattice a tuple of vanishing-cycle classes lives in: either a blowup
/// intersection lattice acted on by (-2)-class reflections, or a rank-2g
/// symplectic lattice with the standard antisymmetric form acted on by
/// transvections. Both actions share the formula x -> x + (x.c) c.
class CycleLattice {
public:
    static CycleLattice reflection(int k) {
        CycleLattice l;
        l.mode_ = Mode::Reflection;
        l.param_ = k;
        l.rank_ = std::size_t(BlowupLattice(k).rank());
        return l;
    }
    static CycleLattice transvection(int genus) {
        if (genus < 1) throw UsageError("CycleLattice: genus must be >= 1");
        CycleLattice l;
        l.mode_ = Mode::Transvection;
        l.param_ = genus;
        l.rank_ = std::size_t(2 * genus);
        return l;
    }
    /// Infers the lattice from the coordinate length of file data.
    static CycleLattice infer(Mode mode, std::size_t rank) {
        if (mode == Mode::Reflection) {
            if (rank < 2 || rank > 9)
                throw UnsupportedRank("CycleLattice: reflection-mode coordinate length " +
                                      std::to_string(rank) + " is outside 2..9");
            return reflection(int(rank) - 1);
        }
        if (rank == 0 || rank % 2 != 0)
            throw UsageError("CycleLattice: symplectic rank must be even");
        return transvection(int(rank / 2));
    }

    Mode mode() const { return mode_; }
    std::size_t rank() const { return rank_; }
    int param() const { return param_; }

    /// Pairing with overflow detection: iterated moves can grow coordinates
    /// without bound (the twist dynamics are not of finite order in general),
    /// so narrowing failures must surface instead of wrapping.
    std::int64_t pairing(const HomologyClass& x, const HomologyClass& y) const {
        if (x.rank() != rank_ || y.rank() != rank_)
            throw DimensionMismatch("CycleLattice: coordinate length mismatch");
        __int128 s = 0;
        if (mode_ == Mode::Reflection) {
            s = __int128(x.coords[0]) * y.coords[0];
            for (std::size_t i = 1; i < rank_; ++i)
                s -= __int128(x.coords[i]) * y.coords[i];
        } else {
            for (std::size_t i = 0; i + 1 < rank_; i += 2)
                s += __int128(x.coords[i]) * y.coords[i + 1] -
                     __int128(x.coords[i + 1]) * y.coords[i];
        }
        return narrow(s);
    }

    /// Checks the cycle-class constraint: self-pairing -2 in reflection mode,
    /// nonzero primitive in transvection mode.
    void validate_cycle(const HomologyClass& c) const {
        if (c.rank() != rank_)
            throw DimensionMismatch("CycleLattice: cycle length mismatch");
        if (mode_ == Mode::Reflection) {
            if (pairing(c, c) != -2)
                throw NotARoot("cycle has self-pairing " +
                               std::to_string(pairing(c, c)) + ", need -2");
            return;
        }
        std::int64_t g = 0;
        for (auto v : c.coords) g = std::gcd(g, v);
        if (g != 1) throw NotPrimitive("transvection cycle must be primitive");
    }

    HomologyClass twist(const HomologyClass& c, const HomologyClass& x) const {
        return add_multiple(x, pairing(x, c), c);
    }
    HomologyClass twist_inverse(const HomologyClass& c, const HomologyClass& x) const {
        if (mode_ == Mode::Reflection) return twist(c, x); // involution
        return add_multiple(x, -pairing(x, c), c);
    }

private:
    static std::int64_t narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw OverflowError("CycleLattice: coordinate arithmetic overflow");
        return std::int64_t(v);
    }
    static HomologyClass add_multiple(const HomologyClass& x, std::int64_t m,
                                      const HomologyClass& c) {
        HomologyClass r = x;
        for (std::size_t i = 0; i < r.coords.size(); ++i)
            r.coords[i] = narrow(__int128(r.coords[i]) + __int128(m) * c.coords[i]);
        return r;
    }

    Mode mode_ = Mode::Reflection;
    int param_ = 0;
    std::size_t rank_ = 0;
};

/// Sign normalization for unoriented cycles: first nonzero coordinate
/// positive. Idempotent, and stable under all moves because the twist in c
/// and in -c coincide.
inline HomologyClass sign_normalize(const HomologyClass& c) {
    for (auto v : c.coords) {
        if (v > 0) return c;
        if (v < 0) return -c;
    }
    return c;
}

/// Matrix of the twist x -> x + (x.c) c. In reflection mode this is an
/// involution; in transvection mode it is unipotent. Either way it preserves
/// the lattice form.
inline IntMat twist_matrix(const CycleLattice& lat, const HomologyClass& c) {
    lat.validate_cycle(c);
    const std::size_t n = lat.rank();
    IntMat m(n);
    for (std::size_t j = 0; j < n; ++j) {
        HomologyClass e;
        e.coords.assign(n, 0);
        e.coords[j] = 1;
        HomologyClass img = lat.twist(c, e);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = img.coords[i];
    }
    return m;
}

/// An ordered tuple of sign-normalized vanishing-cycle classes.
struct VanishingTuple {
    CycleLattice lattice;
    std::vector<HomologyClass> cycles;

    VanishingTuple(CycleLattice lat, std::vector<HomologyClass> cs)
        : lattice(std::move(lat)) {
        cycles.reserve(cs.size());
        for (auto& c : cs) {
            lattice.validate_cycle(c);
            cycles.push_back(sign_normalize(c));
        }
    }

    std::size_t size() const { return cycles.size(); }

    friend bool operator==(const VanishingTuple& a, const VanishingTuple& b) {
        return a.lattice.mode() == b.lattice.mode() &&
               a.lattice.rank() == b.lattice.rank() && a.cycles == b.cycles;
    }

    std::string encode() const {
        std::string s;
        for (const auto& c : cycles)
            for (auto v : c.coords) {
                if (v < INT32_MIN || v > INT32_MAX)
                    throw OverflowError("VanishingTuple: coordinate outside the "
                                        "encodable range");
                auto u = std::uint32_t(std::int32_t(v));
                for (int b = 0; b < 4; ++b) s.push_back(char((u >> (8 * b)) & 0xff));
            }
        return s;
    }
};

/// Ordered product of the twist matrices; the cycle at index 1 acts last,
/// so the matrix is M_1 * M_2 * ... * M_m.
inline IntMat total_monodromy(const VanishingTuple& t) {
    IntMat prod = IntMat::identity(t.lattice.rank());
    for (const auto& c : t.cycles) prod = prod * twist_matrix(t.lattice, c);
    return prod;
}

enum class Direction { Left, Right };

/// Elementary braid move at position k (1-based, 1 <= k < m):
///   right: (.., c_k, c_{k+1}, ..) -> (.., t_{c_k}(c_{k+1}), c_k, ..)
///   left:  the inverse move.
/// The total monodromy is unchanged; the moved entry is re-normalized.
inline VanishingTuple hurwitz_move(const VanishingTuple& t, std::size_t k,
                                   Direction dir) {
    if (k < 1 || k >= t.size())
        throw IndexOutOfRange("hurwitz_move: index " + std::to_string(k) +
                              " outside 1.." + std::to_string(t.size() - 1));
    VanishingTuple r = t;
    const std::size_t i = k - 1;
    if (dir == Direction::Right) {
        HomologyClass moved = t.lattice.twist(t.cycles[i], t.cycles[i + 1]);
        r.cycles[i] = sign_normalize(moved);
        r.cycles[i + 1] = t.cycles[i];
    } else {
        HomologyClass moved = t.lattice.twist_inverse(t.cycles[i + 1], t.cycles[i]);
        r.cycles[i] = t.cycles[i + 1];
        r.cycles[i + 1] = sign_normalize(moved);
    }
    return r;
}

/// Breadth-first orbit of a tuple under all elementary moves in both
/// directions, with canonical-form dedup. Deterministic.
inline ClosureResult hurwitz_orbit(const VanishingTuple& t, std::uint64_t cap = 100000) {
    if (cap == 0) throw UsageError("hurwitz_orbit: cap must be positive");
    std::unordered_set<std::string> seen;
    std::deque<VanishingTuple> frontier;
    seen.insert(t.encode());
    frontier.push_back(t);
    while (!frontier.empty()) {
        VanishingTuple cur = frontier.front();
        frontier.pop_front();
        for (std::size_t k = 1; k < cur.size(); ++k) {
            for (Direction d : {Direction::Right, Direction::Left}) {
                VanishingTuple next = hurwitz_move(cur, k, d);
                if (seen.insert(next.encode()).second) {
                    if (seen.size() > cap) return {true, seen.size()};
                    frontier.push_back(std::move(next));
                }
            }
        }
    }
    return {false, seen.size()};
}

enum class BraidRelation { Commute, Braid, Neither };

inline std::string braid_relation_name(BraidRelation r) {
    switch (r) {
        case BraidRelation::Commute: return "commute";
        case BraidRelation::Braid: return "braid";
        default: return "neither";
    }
}

/// Classifies the relation between two twists by explicit matrix products:
/// commute when T_a T_b = T_b T_a (guaranteed for a.b = 0), braid when
/// T_a T_b T_a = T_b T_a T_b (guaranteed for |a.b| = 1).
inline BraidRelation braid_relation_check(const CycleLattice& lat,
                                          const HomologyClass& a,
                                          const HomologyClass& b) {
    IntMat ta = twist_matrix(lat, a), tb = twist_matrix(lat, b);
    if (ta * tb == tb * ta) return BraidRelation::Commute;
    if (ta * tb * ta == tb * ta * tb) return BraidRelation::Braid;
    return BraidRelation::Neither;
}

/// Searches for n roots in cyclic configuration: consecutive classes (mod n)
/// pair to +-1, all other pairs are orthogonal. Returns the first witness in
/// lexicographic candidate order, or nullopt if the search exhausts.
inline std::optional<std::vector<HomologyClass>>
find_cycle_configuration(const BlowupLattice& lat, int n) {
    if (n < 3) throw UsageError("find_cycle_configuration: need n >= 3");
    ClassSet roots = enumerate_roots(lat);
    std::vector<HomologyClass> candidates;
    candidates.reserve(roots.size());
    for (const auto& r : roots.members) candidates.push_back(sign_normalize(r));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    std::vector<HomologyClass> chosen;
    auto compatible = [&](const HomologyClass& next) {
        std::size_t p = chosen.size();
        for (std::size_t q = 0; q < p; ++q) {
            std::int64_t pr = lat.pairing(chosen[q], next);
            bool adjacent = (q + 1 == p) || (q == 0 && p + 1 == std::size_t(n));
            if (adjacent ? std::abs(pr) != 1 : pr != 0) return false;
        }
        return true;
    };
    std::function<bool()> search = [&]() {
        if (chosen.size() == std::size_t(n)) return true;
        for (const auto& c : candidates) {
            if (!compatible(c)) continue;
            chosen.push_back(c);
            if (search()) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (search()) return chosen;
    return std::nullopt;
}

/// True when the tuple's total monodromy equals the target matrix. Note the
/// verdict is homological: a relation can be refuted here but never fully
/// confirmed, since the underlying objects carry more than their homology.
inline bool verify_relation(const VanishingTuple& t, const IntMat& target) {
    if (target.size() != t.lattice.rank())
        throw DimensionMismatch("verify_relation: target size mismatch");
    return total_monodromy(t) == target;
}

// --- batch file format: one tuple per line, integer CSV per class, '|'
// --- separating classes, '#' starting a comment line

inline std::vector<std::int64_t> parse_int_csv(const std::string& s) {
    std::vector<std::int64_t> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw UsageError("bad integer '" + item + "' in tuple file");
        }
        while (pos < item.size() && std::isspace(std::uint8_t(item[pos]))) ++pos;
        if (pos != item.size())
            throw UsageError("bad integer '" + item + "' in tuple file");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty class in tuple file");
    return out;
}

inline std::vector<VanishingTuple> read_tuples(std::istream& in, Mode mode) {
    std::vector<VanishingTuple> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<HomologyClass> cycles;
        std::string part;
        std::istringstream ls(line);
        while (std::getline(ls, part, '|'))
            cycles.push_back(HomologyClass(parse_int_csv(part)));
        if (cycles.empty()) continue;
        CycleLattice lat = CycleLattice::infer(mode, cycles[0].rank());
        out.emplace_back(lat, std::move(cycles));
    }
    return out;
}

inline void write_tuple(std::ostream& os, const VanishingTuple& t) {
    for (std::size_t c = 0; c < t.cycles.size(); ++c) {
        if (c) os << '|';
        for (std::size_t i = 0; i < t.cycles[c].coords.size(); ++i) {
            if (i) os << ',';
            os << t.cycles[c].coords[i];
        }
    }
    os << '\n';
}

} // namespace twistlab::monodromy
