#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <type_traits>

#include "errors.hpp"
#include "gauss.hpp"
#include "rational.hpp"

namespace ncs {

// Laurent polynomial in q over an exact coefficient ring C.
// Exponents are bounded machine integers; overflow is a hard error.
template <class C>
class Laurent {
public:
    using coeff_type = C;
    using term_map = std::map<int32_t, C>;

    Laurent() = default;
    Laurent(const C& c) {
        if (!c.is_zero()) terms_[0] = c;
    }
    Laurent(int n) : Laurent(C(n)) {}
    Laurent(long n) : Laurent(C(n)) {}
    Laurent(const Rational& r) requires(!std::is_same_v<C, Rational>) : Laurent(C(r)) {}

    static Laurent monomial(const C& c, int32_t e) {
        Laurent p;
        if (!c.is_zero()) p.terms_[e] = c;
        return p;
    }
    static Laurent q(int32_t e = 1) { return monomial(C(1), e); }
    static Laurent one() { return Laurent(C(1)); }
    static Laurent zero() { return Laurent(); }

    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
    bool is_monomial() const { return terms_.size() == 1; }

    C constant_part() const {
        auto it = terms_.find(0);
        return it == terms_.end() ? C(0) : it->second;
    }

    int32_t min_exp() const { return terms_.begin()->first; }   // requires nonzero
    int32_t max_exp() const { return terms_.rbegin()->first; }  // requires nonzero

    C coeff(int32_t e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C(0) : it->second;
    }

    void add_term(int32_t e, const C& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_) {
                int64_t e = int64_t(e1) + int64_t(e2);
                if (e > std::numeric_limits<int32_t>::max() || e < std::numeric_limits<int32_t>::min())
                    throw ExponentOverflow("q-exponent out of range");
                r.add_term(static_cast<int32_t>(e), c1 * c2);
            }
        return r;
    }
    Laurent operator-() const {
        Laurent r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    Laurent& operator+=(const Laurent& o) { *this = *this + o; return *this; }
    Laurent& operator-=(const Laurent& o) { *this = *this - o; return *this; }
    Laurent& operator*=(const Laurent& o) { *this = *this * o; return *this; }

    Laurent scaled(const C& c) const {
        Laurent r;
        if (c.is_zero()) return r;
        for (const auto& [e, co] : terms_) {
            C p = co * c;
            if (!p.is_zero()) r.terms_[e] = p;
        }
        return r;
    }

    Laurent shifted(int32_t d) const {
        Laurent r;
        for (const auto& [e, c] : terms_) {
            int64_t ne = int64_t(e) + int64_t(d);
            if (ne > std::numeric_limits<int32_t>::max() || ne < std::numeric_limits<int32_t>::min())
                throw ExponentOverflow("q-exponent out of range");
            r.terms_[static_cast<int32_t>(ne)] = c;
        }
        return r;
    }

    Laurent pow(long k) const {
        if (k < 0) throw NotInvertible("negative power of a Laurent polynomial");
        Laurent acc = one(), base = *this;
        while (k) {
            if (k & 1) acc = acc * base;
            if (k >>= 1) base = base * base;
        }
        return acc;
    }

    Laurent conj() const {
        Laurent r;
        for (const auto& [e, c] : terms_) r.terms_[e] = c.conj();
        return r;
    }

    // q -> 1/q substitution.
    Laurent invert_q() const {
        Laurent r;
        for (const auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
    friend bool operator<(const Laurent& a, const Laurent& b) { return a.terms_ < b.terms_; }

    double evaluate(double qv) const {
        double acc = 0.0;
        for (const auto& [e, c] : terms_) acc += coeff_to_double(c) * std::pow(qv, double(e));
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        // descending exponent order
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string cs = it->second.str();
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs = cs.substr(1);
            bool composite = cs.find('+') != std::string::npos || cs.find('-') != std::string::npos;
            if (composite) cs = "(" + (neg ? "-" + cs : cs) + ")", neg = false;
            if (first) {
                out += neg ? "-" : "";
                first = false;
            } else {
                out += neg ? " - " : " + ";
            }
            int32_t e = it->first;
            if (e == 0) {
                out += cs;
            } else {
                std::string qs = e == 1 ? "q" : "q^" + std::to_string(e);
                if (cs == "1") out += qs;
                else out += cs + "*" + qs;
            }
        }
        return out;
    }

private:
    static double coeff_to_double(const Rational& r) { return r.to_double(); }
    static double coeff_to_double(const GaussRational& g) {
        if (!g.is_real()) throw ComputationError("numeric evaluation of a non-real coefficient");
        return g.re().to_double();
    }

    term_map terms_;
};

using QLaurent = Laurent<Rational>;
using GLaurent = Laurent<GaussRational>;

template <class C>
Laurent<C> conj(const Laurent<C>& p) { return p.conj(); }

// d/dq at q = 1: sum of exponent * coefficient.
template <class C>
C q_derivative_at_1(const Laurent<C>& p) {
    C acc(0);
    for (const auto& [e, c] : p.terms()) acc += c * C(long(e));
    return acc;
}

// Exact evaluation at a rational point (oracle for the numeric path).
inline Rational evaluate_exact(const QLaurent& p, const Rational& qv) {
    if (qv.is_zero() && !p.is_zero() && p.min_exp() < 0) throw PoleAtValue("q = 0");
    Rational acc(0);
    for (const auto& [e, c] : p.terms()) acc += c * qv.pow(e);
    return acc;
}

inline GLaurent to_gaussian(const QLaurent& p) {
    GLaurent r;
    for (const auto& [e, c] : p.terms()) r.add_term(e, GaussRational(c));
    return r;
}

// Splits a Gaussian-coefficient Laurent into real and imaginary rational parts.
inline std::pair<QLaurent, QLaurent> split_gaussian(const GLaurent& p) {
    QLaurent re, im;
    for (const auto& [e, c] : p.terms()) {
        re.add_term(e, c.re());
        im.add_term(e, c.im());
    }
    return {re, im};
}

// --- polynomial gcd over the rationals (used by QRatFunc) ---

namespace detail {

// Division of genuine polynomials (min exponent >= 0), rational coefficients.
inline void poly_divmod(const QLaurent& a, const QLaurent& b, QLaurent& quo, QLaurent& rem) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    quo = QLaurent::zero();
    rem = a;
    int32_t db = b.max_exp();
    Rational lb = b.coeff(db);
    while (!rem.is_zero() && rem.max_exp() >= db) {
        int32_t d = rem.max_exp() - db;
        Rational c = rem.coeff(rem.max_exp()) / lb;
        QLaurent t = QLaurent::monomial(c, d);
        quo += t;
        rem -= t * b;
    }
}

} // namespace detail

// Monic gcd of the polynomial parts; result has min exponent 0 and lowest coefficient 1.
inline QLaurent laurent_gcd(QLaurent a, QLaurent b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    a = a.shifted(-a.min_exp());
    b = b.shifted(-b.min_exp());
    while (!b.is_zero()) {
        QLaurent q, r;
        detail::poly_divmod(a, b, q, r);
        a = b;
        b = r;
    }
    a = a.shifted(-a.min_exp());
    return a.scaled(a.coeff(a.min_exp()).inv());
}

} // namespace ncs
