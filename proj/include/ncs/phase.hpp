#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gauss.hpp"

namespace ncs {

// Group ring of (1/2 Z)^{pairs} over the Gaussian rationals: finite sums of
// phase monomials  c * prod_{j<k} L_{jk}^{e_jk}  with half-integer exponents
// (stored doubled). The all-zero exponent is the unit monomial.
class Phase {
public:
    // sparse exponent vector, sorted by pair id, doubled half-integer entries
    using exp_vec = std::vector<std::pair<uint16_t, int32_t>>;
    using term_map = std::map<exp_vec, GaussRational>;

    Phase() = default;
    Phase(const GaussRational& c) {
        if (!c.is_zero()) terms_[{}] = c;
    }
    Phase(const Rational& r) : Phase(GaussRational(r)) {}
    Phase(int n) : Phase(GaussRational(n)) {}
    Phase(long n) : Phase(GaussRational(n)) {}

    static uint16_t pair_id(int j, int k) { return static_cast<uint16_t>((j << 8) | k); }

    // L_{jk}^(half_steps/2); indices normalized to j < k, L_{kj} = L_{jk}^{-1}, L_{jj} = 1.
    static Phase unit(int j, int k, int32_t half_steps = 2) {
        if (j == k || half_steps == 0) return Phase(GaussRational::one());
        if (j > k) {
            std::swap(j, k);
            half_steps = -half_steps;
        }
        Phase p;
        p.terms_[{{pair_id(j, k), half_steps}}] = GaussRational::one();
        return p;
    }

    static Phase one() { return Phase(GaussRational::one()); }
    static Phase zero() { return Phase(); }

    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second.is_one();
    }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

    GaussRational scalar_part() const {
        auto it = terms_.find({});
        return it == terms_.end() ? GaussRational::zero() : it->second;
    }

    void add_term(const exp_vec& e, const GaussRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Phase operator+(const Phase& a, const Phase& b) {
        Phase r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Phase operator-(const Phase& a, const Phase& b) {
        Phase r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend Phase operator*(const Phase& a, const Phase& b) {
        Phase r;
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_) r.add_term(merge_exps(e1, e2), c1 * c2);
        return r;
    }
    Phase operator-() const {
        Phase r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    Phase& operator+=(const Phase& o) { *this = *this + o; return *this; }
    Phase& operator-=(const Phase& o) { *this = *this - o; return *this; }
    Phase& operator*=(const Phase& o) { *this = *this * o; return *this; }

    // Conjugation negates exponents and conjugates coefficients.
    Phase conj() const {
        Phase r;
        for (const auto& [e, c] : terms_) {
            exp_vec ne = e;
            for (auto& [id, x] : ne) x = -x;
            r.terms_[ne] = c.conj();
        }
        return r;
    }

    Phase inv() const {
        if (terms_.empty()) throw DivisionByZero("inverse of zero phase element");
        if (terms_.size() != 1) throw NotInvertible("inverse of a multi-term phase element");
        const auto& [e, c] = *terms_.begin();
        exp_vec ne = e;
        for (auto& [id, x] : ne) x = -x;
        Phase r;
        r.terms_[ne] = c.inv();
        return r;
    }

    Phase pow(long k) const {
        Phase base = k >= 0 ? *this : inv();
        unsigned long e = static_cast<unsigned long>(k >= 0 ? k : -k);
        Phase acc = one();
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // All phases set to 1 (the classical point).
    GaussRational classical_value() const {
        GaussRational acc;
        for (const auto& [e, c] : terms_) acc += c;
        return acc;
    }

    friend bool operator==(const Phase& a, const Phase& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Phase& a, const Phase& b) { return !(a == b); }
    friend bool operator<(const Phase& a, const Phase& b) { return a.terms_ < b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string piece;
            for (const auto& [id, x] : e) {
                if (!piece.empty()) piece += "*";
                piece += "L" + std::to_string(id >> 8) + std::to_string(id & 0xff);
                if (x != 2) {
                    if (x % 2 == 0) piece += "^(" + std::to_string(x / 2) + ")";
                    else piece += "^(" + std::to_string(x) + "/2)";
                }
            }
            std::string cs = c.str();
            std::string term;
            if (piece.empty()) term = cs;
            else if (cs == "1") term = piece;
            else if (cs == "-1") term = "-" + piece;
            else term = (cs.find('+') != std::string::npos || cs.find('-') != std::string::npos
                             ? "(" + cs + ")" : cs) + "*" + piece;
            if (!first && term[0] != '-') out += " + ";
            else if (!first) { out += " - "; term = term.substr(1); }
            out += term;
            first = false;
        }
        return out;
    }

private:
    static exp_vec merge_exps(const exp_vec& a, const exp_vec& b) {
        exp_vec r;
        r.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first) r.push_back(a[i++]);
            else if (b[j].first < a[i].first) r.push_back(b[j++]);
            else {
                int32_t s = a[i].second + b[j].second;
                if (s != 0) r.emplace_back(a[i].first, s);
                ++i;
                ++j;
            }
        }
        while (i < a.size()) r.push_back(a[i++]);
        while (j < b.size()) r.push_back(b[j++]);
        return r;
    }

    term_map terms_;
};

inline Phase conj(const Phase& p) { return p.conj(); }

} // namespace ncs
