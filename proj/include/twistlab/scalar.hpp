#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "twistlab/rational.hpp"

namespace twistlab {

/// Variable indices used by the quantum-homology scalars. Index 0 is the
/// formal deformation variable q; further indices are formal unknowns.
namespace var {
inline constexpr unsigned q = 0;
inline constexpr unsigned alpha2 = 1;

inline std::string name(unsigned v) {
    switch (v) {
        case q: return "q";
        case alpha2: return "a2";
        default: return "u" + std::to_string(v);
    }
}
} // namespace var

/// Sparse multivariate polynomial with exact rational coefficients.
/// Monomials are exponent vectors (trailing zeros trimmed) ordered by the
/// map, which gives a canonical term order for printing and comparison.
class Polynomial {
public:
    using Mono = std::vector<unsigned>;

    Polynomial() = default;
    Polynomial(const Rational& c) {
        if (!c.is_zero()) terms_[Mono{}] = c;
    }
    Polynomial(std::int64_t c) : Polynomial(Rational(c)) {}

    static Polynomial variable(unsigned v, unsigned power = 1) {
        Polynomial p;
        if (power == 0) return Polynomial(1);
        Mono m(v + 1, 0);
        m[v] = power;
        p.terms_[m] = Rational(1);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw Error("Polynomial: not a constant");
        return terms_.begin()->second;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) {
            unsigned s = 0;
            for (unsigned e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(mul_mono(ma, mb), ca * cb);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
    friend bool operator<(const Polynomial& a, const Polynomial& b) {
        return a.terms_ < b.terms_;
    }

    /// Substitute an exact value for one variable; other variables stay formal.
    Polynomial substitute(unsigned v, const Rational& value) const {
        Polynomial r;
        for (const auto& [m, c] : terms_) {
            unsigned e = v < m.size() ? m[v] : 0;
            Rational coeff = c;
            for (unsigned i = 0; i < e; ++i) coeff *= value;
            Mono rest = m;
            if (v < rest.size()) rest[v] = 0;
            trim(rest);
            r.add_term(rest, coeff);
        }
        return r;
    }

    /// Coefficient of v^power viewed as a polynomial in variable v.
    Polynomial coefficient_of(unsigned v, unsigned power) const {
        Polynomial r;
        for (const auto& [m, c] : terms_) {
            unsigned e = v < m.size() ? m[v] : 0;
            if (e != power) continue;
            Mono rest = m;
            if (v < rest.size()) rest[v] = 0;
            trim(rest);
            r.add_term(rest, c);
        }
        return r;
    }

    /// Rational content: gcd of coefficients, signed like the leading term.
    Rational content() const {
        if (terms_.empty()) return Rational(0);
        std::int64_t gn = 0, gd = 1;
        for (const auto& [m, c] : terms_) {
            gn = std::gcd(gn, c.num());
            gd = std::lcm(gd, c.den());
        }
        Rational g(gn, gd);
        if (terms_.rbegin()->second.sign() < 0) g = -g;
        return g;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        // print highest monomial last to keep constants in front
        for (const auto& [m, c] : terms_) {
            std::string t;
            bool has_vars = false;
            for (unsigned v = 0; v < m.size(); ++v) {
                if (m[v] == 0) continue;
                if (has_vars) t += "*";
                t += var::name(v);
                if (m[v] > 1) t += "^" + std::to_string(m[v]);
                has_vars = true;
            }
            Rational a = c;
            std::string sep;
            if (first) {
                if (a.sign() < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += a.sign() < 0 ? " - " : " + ";
                if (a.sign() < 0) a = -a;
            }
            if (!has_vars) {
                out += a.str();
            } else {
                if (!(a == Rational(1))) out += a.str() + "*";
                out += t;
            }
            first = false;
        }
        return out;
    }

    const std::map<Mono, Rational>& terms() const { return terms_; }

private:
    static Mono mul_mono(const Mono& a, const Mono& b) {
        Mono m(std::max(a.size(), b.size()), 0);
        for (size_t i = 0; i < a.size(); ++i) m[i] += a[i];
        for (size_t i = 0; i < b.size(); ++i) m[i] += b[i];
        trim(m);
        return m;
    }
    static void trim(Mono& m) {
        while (!m.empty() && m.back() == 0) m.pop_back();
    }
    void add_term(const Mono& m, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::map<Mono, Rational> terms_;
};

/// Exact scalar of the truncated quantum-homology coefficient ring: a
/// rational function in q and the formal unknowns. Equality is decided by
/// cross-multiplication, so no polynomial gcd is ever needed; denominators
/// stay small in every computation this toolkit performs.
class Scalar {
public:
    Scalar() : num_(0), den_(1) {}
    Scalar(std::int64_t c) : num_(c), den_(1) {}
    Scalar(const Rational& c) : num_(c), den_(1) {}
    Scalar(Polynomial p) : num_(std::move(p)), den_(1) {}
    Scalar(Polynomial n, Polynomial d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw Error("Scalar: zero denominator");
        normalize();
    }

    static Scalar variable(unsigned v, unsigned power = 1) {
        return Scalar(Polynomial::variable(v, power));
    }
    static Scalar q(unsigned power = 1) { return variable(var::q, power); }
    static Scalar alpha2() { return variable(var::alpha2); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    /// The value as an exact rational; requires a constant scalar.
    Rational as_rational() const {
        if (!num_.is_constant() || !den_.is_constant())
            throw Error("Scalar: not a constant");
        return num_.constant_value() / den_.constant_value();
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.num_.is_zero()) throw Error("Scalar: division by zero");
        return Scalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    Scalar operator-() const { return Scalar(-num_, den_); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar substitute(unsigned v, const Rational& value) const {
        Polynomial d = den_.substitute(v, value);
        if (d.is_zero()) throw Error("Scalar: substitution hits a pole");
        return Scalar(num_.substitute(v, value), d);
    }

    std::string str() const {
        if (den_ == Polynomial(1)) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Polynomial(1);
            return;
        }
        if (den_.is_constant()) {
            Rational d = den_.constant_value();
            num_ = num_ * Polynomial(Rational(1) / d);
            den_ = Polynomial(1);
            return;
        }
        Rational c = den_.content();
        Polynomial inv(Rational(1) / c);
        num_ = num_ * inv;
        den_ = den_ * inv;
    }

    Polynomial num_;
    Polynomial den_;
};

} // namespace twistlab
