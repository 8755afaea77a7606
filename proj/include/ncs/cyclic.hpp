#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "matnc.hpp"
#include "ncpoly.hpp"
#include "qratfunc.hpp"

namespace ncs {

// Element of A (x) Abar^{(x)k} as a sum of coefficient-weighted word tensors.
// Slot 0 is unreduced; slots >= 1 hold classes mod scalar multiples of the
// unit, so the unit word never appears there.
template <class S>
class CyclicChain {
public:
    using key_type = std::vector<Word>;
    using term_map = std::map<key_type, S>;

    CyclicChain() = default;
    CyclicChain(PresPtr<S> pres, int degree) : pres_(std::move(pres)), degree_(degree) {}

    int degree() const { return degree_; }
    const PresPtr<S>& pres() const { return pres_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_word_tensor(const key_type& slots, const S& c) {
        if (c.is_zero()) return;
        for (size_t t = 1; t < slots.size(); ++t)
            if (slots[t].empty()) return; // unit class vanishes in Abar
        auto [it, inserted] = terms_.emplace(slots, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // Multilinear expansion of a tensor of polynomials.
    void add_tensor(const std::vector<NCPoly<S>>& slots, const S& c) {
        if (c.is_zero()) return;
        key_type key(slots.size());
        expand(slots, 0, key, c);
    }

    friend CyclicChain operator+(const CyclicChain& a, const CyclicChain& b) {
        CyclicChain r = a;
        if (!r.pres_) r.pres_ = b.pres_;
        for (const auto& [k, c] : b.terms_) r.add_word_tensor(k, c);
        return r;
    }
    friend CyclicChain operator-(const CyclicChain& a, const CyclicChain& b) {
        CyclicChain r = a;
        if (!r.pres_) r.pres_ = b.pres_;
        for (const auto& [k, c] : b.terms_) r.add_word_tensor(k, -c);
        return r;
    }
    CyclicChain scaled(const S& c) const {
        CyclicChain r(pres_, degree_);
        if (c.is_zero()) return r;
        for (const auto& [k, co] : terms_) {
            S p = co * c;
            if (!p.is_zero()) r.terms_[k] = p;
        }
        return r;
    }

    friend bool operator==(const CyclicChain& a, const CyclicChain& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const CyclicChain& a, const CyclicChain& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        NCPoly<S> probe(pres_);
        for (const auto& [k, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")*[";
            for (size_t t = 0; t < k.size(); ++t) {
                if (t) out += " (x) ";
                std::string ws = probe.word_str(k[t]);
                out += ws.empty() ? "1" : ws;
            }
            out += "]";
        }
        return out;
    }

private:
    void expand(const std::vector<NCPoly<S>>& slots, size_t t, key_type& key, const S& c) {
        if (t == slots.size()) {
            add_word_tensor(key, c);
            return;
        }
        for (const auto& [w, co] : slots[t].terms()) {
            if (t >= 1 && w.empty()) continue; // Abar reduction
            key[t] = w;
            expand(slots, t + 1, key, c * co);
        }
    }

    PresPtr<S> pres_;
    int degree_ = 0;
    term_map terms_;
};

// Hochschild boundary: degree drops by one.
template <class S>
CyclicChain<S> hochschild_b(const CyclicChain<S>& c) {
    if (c.degree() < 1) throw DegreeZero("hochschild_b needs degree >= 1");
    const auto& pres = c.pres();
    CyclicChain<S> out(pres, c.degree() - 1);
    int n = c.degree();
    for (const auto& [slots, coeff] : c.terms()) {
        for (int j = 0; j < n; ++j) {
            // merge slots j and j+1
            NCPoly<S> prod = NCPoly<S>::monomial_unchecked(pres, slots[j], S(1)) *
                             NCPoly<S>::monomial_unchecked(pres, slots[j + 1], S(1));
            std::vector<NCPoly<S>> t;
            t.reserve(n);
            for (int u = 0; u < j; ++u) t.push_back(NCPoly<S>::monomial_unchecked(pres, slots[u], S(1)));
            t.push_back(prod);
            for (int u = j + 2; u <= n; ++u) t.push_back(NCPoly<S>::monomial_unchecked(pres, slots[u], S(1)));
            out.add_tensor(t, (j % 2 == 0) ? coeff : -coeff);
        }
        // last face: a_n a_0 (x) a_1 ... a_{n-1}
        NCPoly<S> prod = NCPoly<S>::monomial_unchecked(pres, slots[n], S(1)) *
                         NCPoly<S>::monomial_unchecked(pres, slots[0], S(1));
        std::vector<NCPoly<S>> t;
        t.reserve(n);
        t.push_back(prod);
        for (int u = 1; u < n; ++u) t.push_back(NCPoly<S>::monomial_unchecked(pres, slots[u], S(1)));
        out.add_tensor(t, (n % 2 == 0) ? coeff : -coeff);
    }
    return out;
}

// Connes operator B = B_0 A on the reduced complex. The cyclic
// antisymmetrizer is used unaveraged: the averaged variant does not satisfy
// bB + Bb = 0 degreewise, which is required here.
template <class S>
CyclicChain<S> connes_B(const CyclicChain<S>& c) {
    const auto& pres = c.pres();
    int n = c.degree();
    CyclicChain<S> out(pres, n + 1);
    for (const auto& [slots, coeff] : c.terms()) {
        for (int j = 0; j <= n; ++j) {
            // rotation starting at slot j, then prepend the unit
            typename CyclicChain<S>::key_type key(n + 2);
            key[0] = Word{};
            for (int u = 0; u <= n; ++u) key[1 + u] = slots[(j + u) % (n + 1)];
            S sgn = ((n * j) % 2 == 0) ? coeff : -coeff;
            out.add_word_tensor(key, sgn);
        }
    }
    return out;
}

// Even Chern character component ch_k(e), an element of A (x) Abar^{(x)2k}.
template <class S>
CyclicChain<S> chern_even(const MatNC<S>& e, int k) {
    if (e.size() == 0) throw NotSquare("empty matrix");
    const auto& pres = e.pres();
    size_t r = e.size();
    CyclicChain<S> out(pres, 2 * k);
    MatNC<S> base = e - MatNC<S>::identity(pres, r, S(Rational(1, 2)));
    std::vector<size_t> idx(static_cast<size_t>(2 * k) + 1, 0);
    for (;;) {
        std::vector<NCPoly<S>> slots;
        slots.reserve(idx.size());
        bool dead = false;
        for (size_t t = 0; t < idx.size(); ++t) {
            size_t a = idx[t], b = idx[(t + 1) % idx.size()];
            const NCPoly<S>& entry = (t == 0) ? base.at(a, b) : e.at(a, b);
            if (entry.is_zero()) {
                dead = true;
                break;
            }
            slots.push_back(entry);
        }
        if (!dead) out.add_tensor(slots, S(1));
        size_t p = 0;
        while (p < idx.size() && ++idx[p] == r) idx[p++] = 0;
        if (p == idx.size()) break;
    }
    return out;
}

// Odd Chern character component ch_{k+1/2}(u) of degree 2k+1. The lowest
// component carries the 1/2 normalization; higher ones are unnormalized.
template <class S>
CyclicChain<S> chern_odd(const MatNC<S>& u, int k) {
    if (u.size() == 0) throw NotSquare("empty matrix");
    const auto& pres = u.pres();
    size_t r = u.size();
    CyclicChain<S> out(pres, 2 * k + 1);
    MatNC<S> ustar = u.adjoint();
    S lambda = (k == 0) ? S(Rational(1, 2)) : S(1);
    std::vector<size_t> idx(static_cast<size_t>(2 * k) + 2, 0);
    for (;;) {
        std::vector<NCPoly<S>> supper, slower;
        supper.reserve(idx.size());
        slower.reserve(idx.size());
        bool dead_u = false, dead_l = false;
        for (size_t t = 0; t < idx.size(); ++t) {
            size_t a = idx[t], b = idx[(t + 1) % idx.size()];
            const NCPoly<S>& eu = (t % 2 == 0) ? u.at(a, b) : ustar.at(a, b);
            const NCPoly<S>& el = (t % 2 == 0) ? ustar.at(a, b) : u.at(a, b);
            if (eu.is_zero()) dead_u = true;
            if (el.is_zero()) dead_l = true;
            if (dead_u && dead_l) break;
            supper.push_back(eu);
            slower.push_back(el);
        }
        if (!dead_u) out.add_tensor(supper, lambda);
        if (!dead_l) out.add_tensor(slower, -lambda);
        size_t p = 0;
        while (p < idx.size() && ++idx[p] == r) idx[p++] = 0;
        if (p == idx.size()) break;
    }
    return out;
}

// --- the cycle condition B ch_k = c * b ch_{k+1} ----------------------------

enum class CycleRatioStatus { Proportional, ProportionalToZero, NotProportional };

struct CycleRatioResult {
    CycleRatioStatus status;
    std::string ratio; // exact text of the constant when Proportional
};

namespace detail {

inline std::string ratio_text(const GLaurent& l, const GLaurent& r) {
    return (GQRat(l) / GQRat(r)).str();
}
inline std::string ratio_text(const QLaurent& l, const QLaurent& r) {
    return (QRatFunc(l) / QRatFunc(r)).str_pretty();
}
inline std::string ratio_text(const Phase& l, const Phase& r) {
    if (r.is_monomial()) return (l * r.inv()).str();
    return "(" + l.str() + ")/(" + r.str() + ")";
}

} // namespace detail

template <class S>
CycleRatioResult cycle_ratio_chains(const CyclicChain<S>& lhs, const CyclicChain<S>& rhs) {
    if (lhs.is_zero() && rhs.is_zero()) return {CycleRatioStatus::ProportionalToZero, "0"};
    if (lhs.is_zero() || rhs.is_zero()) return {CycleRatioStatus::NotProportional, ""};
    if (lhs.degree() != rhs.degree()) return {CycleRatioStatus::NotProportional, ""};
    auto itl = lhs.terms().begin();
    const auto& key0 = itl->first;
    auto itr = rhs.terms().find(key0);
    if (itr == rhs.terms().end()) return {CycleRatioStatus::NotProportional, ""};
    const S& l0 = itl->second;
    const S& r0 = itr->second;
    // cross-multiplied proportionality check, division-free
    if (lhs.terms().size() != rhs.terms().size()) return {CycleRatioStatus::NotProportional, ""};
    for (const auto& [k, l] : lhs.terms()) {
        auto it = rhs.terms().find(k);
        if (it == rhs.terms().end()) return {CycleRatioStatus::NotProportional, ""};
        if (!(l * r0 == it->second * l0)) return {CycleRatioStatus::NotProportional, ""};
    }
    return {CycleRatioStatus::Proportional, detail::ratio_text(l0, r0)};
}

// Computes B(ch_k(x)) and b(ch_{k+1}(x)) and reports their ratio.
template <class S>
CycleRatioResult cycle_ratio(const MatNC<S>& x, bool even, int k) {
    CyclicChain<S> low = even ? chern_even(x, k) : chern_odd(x, k);
    CyclicChain<S> high = even ? chern_even(x, k + 1) : chern_odd(x, k + 1);
    return cycle_ratio_chains(connes_B(low), hochschild_b(high));
}

} // namespace ncs
