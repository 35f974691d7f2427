#pragma once

#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

#include "twistlab/intmat.hpp"
#include "twistlab/lattice.hpp"

namespace twistlab {

/// Result of a breadth-first group or orbit closure. When the cap is hit,
/// `count` holds the partial count at the moment the search stopped.
struct ClosureResult {
    bool cap_exceeded = false;
    std::uint64_t count = 0;
};

/// Order of the group generated by the reflections in the given roots,
/// computed as a breadth-first closure of reflection matrices with canonical
/// byte-encoded dedup. Stops as soon as more than `cap` distinct elements
/// are seen. Every element fixes K and preserves the form, since the
/// generators do.
inline ClosureResult weyl_closure(const BlowupLattice& lat,
                                  const std::vector<HomologyClass>& generators,
                                  std::uint64_t cap = 1000000) {
    if (cap == 0) throw UsageError("weyl_closure: cap must be positive");
    std::vector<IntMat> gens;
    gens.reserve(generators.size());
    for (const auto& g : generators) gens.push_back(reflection_matrix(lat, g));

    const std::size_t n = lat.rank();
    std::unordered_set<std::string> seen;
    std::deque<std::string> frontier;
    std::string id = IntMat::identity(n).encode();
    seen.insert(id);
    frontier.push_back(std::move(id));
    while (!frontier.empty()) {
        IntMat cur = IntMat::decode(frontier.front(), n);
        frontier.pop_front();
        for (const auto& g : gens) {
            std::string key = (cur * g).encode();
            if (seen.insert(key).second) {
                if (seen.size() > cap) return {true, seen.size()};
                frontier.push_back(std::move(key));
            }
        }
    }
    return {false, seen.size()};
}

/// Orbit of a lattice class under the group generated by the given
/// reflections (breadth-first on vectors).
inline ClosureResult reflection_orbit(const BlowupLattice& lat,
                                      const std::vector<HomologyClass>& generators,
                                      const HomologyClass& start,
                                      std::uint64_t cap = 1000000) {
    if (cap == 0) throw UsageError("reflection_orbit: cap must be positive");
    for (const auto& g : generators)
        if (!lat.is_root(g)) throw NotARoot("reflection_orbit: generator is not a root");

    auto key = [](const HomologyClass& h) {
        std::string s;
        for (auto v : h.coords) {
            auto u = std::uint16_t(std::int16_t(v));
            s.push_back(char(u & 0xff));
            s.push_back(char(u >> 8));
        }
        return s;
    };
    std::unordered_set<std::string> seen;
    std::deque<HomologyClass> frontier;
    seen.insert(key(start));
    frontier.push_back(start);
    while (!frontier.empty()) {
        HomologyClass cur = frontier.front();
        frontier.pop_front();
        for (const auto& g : generators) {
            HomologyClass img = lat.reflect(g, cur);
            if (seen.insert(key(img)).second) {
                if (seen.size() > cap) return {true, seen.size()};
                frontier.push_back(std::move(img));
            }
        }
    }
    return {false, seen.size()};
}

} // namespace twistlab
