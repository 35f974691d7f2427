#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twistlab/errors.hpp"
#include "twistlab/lattice.hpp"

namespace twistlab {

/// Dense square integer matrix, used for reflection/transvection actions on
/// lattices and for group closures.
class IntMat {
public:
    IntMat() = default;
    explicit IntMat(std::size_t n) : n_(n), a_(n * n, 0) {}

    static IntMat identity(std::size_t n) {
        IntMat m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t size() const { return n_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    friend IntMat operator*(const IntMat& x, const IntMat& y) {
        if (x.n_ != y.n_) throw DimensionMismatch("IntMat: size mismatch in *");
        IntMat r(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t l = 0; l < x.n_; ++l) {
                std::int64_t v = x(i, l);
                if (v == 0) continue;
                for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += v * y(l, j);
            }
        return r;
    }

    HomologyClass apply(const HomologyClass& x) const {
        if (x.rank() != n_) throw DimensionMismatch("IntMat: vector length mismatch");
        HomologyClass r;
        r.coords.assign(n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r.coords[i] += (*this)(i, j) * x.coords[j];
        return r;
    }

    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const {
        if (x.size() != n_) throw DimensionMismatch("IntMat: vector length mismatch");
        std::vector<std::int64_t> r(n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * x[j];
        return r;
    }

    friend bool operator==(const IntMat& x, const IntMat& y) {
        return x.n_ == y.n_ && x.a_ == y.a_;
    }
    friend bool operator!=(const IntMat& x, const IntMat& y) { return !(x == y); }

    /// Canonical byte encoding (two bytes per entry, little-endian int16),
    /// used as a dedup key in group closures.
    std::string encode() const {
        std::string s;
        s.reserve(a_.size() * 2);
        for (std::int64_t v : a_) {
            if (v < INT16_MIN || v > INT16_MAX)
                throw OverflowError("IntMat: entry out of int16 encoding range");
            auto u = std::uint16_t(std::int16_t(v));
            s.push_back(char(u & 0xff));
            s.push_back(char(u >> 8));
        }
        return s;
    }

    static IntMat decode(const std::string& s, std::size_t n) {
        if (s.size() != n * n * 2) throw Error("IntMat: bad encoded length");
        IntMat m(n);
        for (std::size_t i = 0; i < n * n; ++i) {
            auto lo = std::uint16_t(std::uint8_t(s[2 * i]));
            auto hi = std::uint16_t(std::uint8_t(s[2 * i + 1]));
            m.a_[i] = std::int16_t(lo | (hi << 8));
        }
        return m;
    }

    const std::vector<std::int64_t>& data() const { return a_; }

private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> a_;
};

/// Matrix of the reflection x -> x + (x.l) l on the given lattice.
inline IntMat reflection_matrix(const BlowupLattice& lat, const HomologyClass& l) {
    if (!lat.is_root(l))
        throw NotARoot("reflection_matrix: class is not a (-2)-class");
    const std::size_t n = lat.rank();
    IntMat m(n);
    for (std::size_t j = 0; j < n; ++j) {
        HomologyClass img = lat.reflect(l, lat.basis(j));
        for (std::size_t i = 0; i < n; ++i) m(i, j) = img.coords[i];
    }
    return m;
}

} // namespace twistlab
