#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "phase.hpp"

namespace ncs {

using GenId = uint16_t;
using Word = std::vector<GenId>;

struct GenInfo {
    std::string name;
    int index = 0;          // the subscript of the generator family
    bool starred = false;
    bool self_adjoint = false;
    GenId star = 0;         // involution partner (itself when self-adjoint)
};

enum class Strategy { LeftmostInnermost, RightmostOutermost };

// A finitely presented *-algebra with two-letter rewrite patterns.
//
// Termination certificate: every rule replacement word is either strictly
// smaller in the lexicographic tuple of per-index letter counts (counted in
// the presentation's declared priority order), or is the in-order
// transposition of the pattern. Both shapes strictly decrease the
// well-founded measure (degree tuple, then inversion count) in any context.
template <class S>
class Presentation : public std::enable_shared_from_this<Presentation<S>> {
public:
    using scalar_type = S;
    struct RhsTerm {
        Word word;
        S coeff;
    };
    using Rule = std::vector<RhsTerm>;

    explicit Presentation(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    size_t gen_count() const { return gens_.size(); }
    const GenInfo& gen(GenId g) const { return gens_[g]; }
    const std::vector<GenInfo>& gens() const { return gens_; }

    GenId add_generator(const std::string& name, int index, bool starred, bool self_adjoint) {
        GenInfo info;
        info.name = name;
        info.index = index;
        info.starred = starred;
        info.self_adjoint = self_adjoint;
        info.star = static_cast<GenId>(gens_.size()); // fixed up by link_stars / self
        gens_.push_back(info);
        sort_pos_.push_back(static_cast<int>(gens_.size()) - 1);
        return static_cast<GenId>(gens_.size() - 1);
    }

    void link_stars(GenId a, GenId b) {
        gens_[a].star = b;
        gens_[b].star = a;
    }

    // Position of each generator in the declared normal order (default:
    // declaration order). Inversions are counted against this order.
    void set_sort_positions(std::vector<int> pos) { sort_pos_ = std::move(pos); }

    // Priority ranks for the degree tuple of the termination measure; lower
    // rank is compared first. Defaults to the generator index descending.
    void set_priority_rank(std::vector<int> rank) { priority_rank_ = std::move(rank); }

    void add_rule(GenId a, GenId b, Rule rhs) {
        validate_rule(a, b, rhs);
        rules_[{a, b}] = std::move(rhs);
    }

    // Test hook: skips no validation but replaces an existing rule.
    void replace_rule(GenId a, GenId b, Rule rhs) { rules_[{a, b}] = std::move(rhs); }

    bool has_rule(GenId a, GenId b) const { return rules_.count({a, b}) != 0; }
    const Rule& rule(GenId a, GenId b) const { return rules_.at({a, b}); }
    const std::map<std::pair<GenId, GenId>, Rule>& rules() const { return rules_; }

    GenId find_generator(const std::string& name) const {
        for (size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return static_cast<GenId>(i);
        throw ParseError("unknown generator '" + name + "' in " + name_);
    }

    // Reduces a single word to a linear combination of normal words.
    std::map<Word, S> reduce(const Word& w, const S& coeff,
                             Strategy st = Strategy::LeftmostInnermost) const {
        std::map<Word, S> out;
        std::vector<std::pair<Word, S>> todo;
        todo.emplace_back(w, coeff);
        while (!todo.empty()) {
            auto [cur, c] = std::move(todo.back());
            todo.pop_back();
            if (c.is_zero()) continue;
            ptrdiff_t pos = find_match(cur, st);
            if (pos < 0) {
                auto [it, inserted] = out.emplace(cur, c);
                if (!inserted) {
                    it->second += c;
                    if (it->second.is_zero()) out.erase(it);
                }
                continue;
            }
            const Rule& r = rules_.at({cur[pos], cur[pos + 1]});
            for (const auto& term : r) {
                Word nw;
                nw.reserve(cur.size() - 2 + term.word.size());
                nw.insert(nw.end(), cur.begin(), cur.begin() + pos);
                nw.insert(nw.end(), term.word.begin(), term.word.end());
                nw.insert(nw.end(), cur.begin() + pos + 2, cur.end());
                todo.emplace_back(std::move(nw), c * term.coeff);
            }
        }
        return out;
    }

    bool is_normal(const Word& w) const { return find_match(w, Strategy::LeftmostInnermost) < 0; }

    GenId star_of(GenId g) const { return gens_[g].star; }

private:
    ptrdiff_t find_match(const Word& w, Strategy st) const {
        if (w.size() < 2) return -1;
        if (st == Strategy::LeftmostInnermost) {
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (rules_.count({w[i], w[i + 1]})) return static_cast<ptrdiff_t>(i);
        } else {
            for (size_t i = w.size() - 1; i-- > 0;)
                if (rules_.count({w[i], w[i + 1]})) return static_cast<ptrdiff_t>(i);
        }
        return -1;
    }

    std::vector<int> degree_tuple(const Word& w) const {
        std::vector<int> d(rank_count(), 0);
        for (GenId g : w) ++d[rank_of(g)];
        return d;
    }

    int rank_of(GenId g) const {
        if (!priority_rank_.empty()) return priority_rank_[g];
        // default: higher generator index first
        int maxidx = 0;
        for (const auto& gi : gens_) maxidx = std::max(maxidx, gi.index);
        return maxidx - gens_[g].index;
    }

    size_t rank_count() const {
        size_t n = 0;
        for (size_t g = 0; g < gens_.size(); ++g) n = std::max<size_t>(n, rank_of(static_cast<GenId>(g)) + 1);
        return n;
    }

    void validate_rule(GenId a, GenId b, const Rule& rhs) const {
        Word lhs{a, b};
        std::vector<int> dl = degree_tuple(lhs);
        for (const auto& term : rhs) {
            std::vector<int> dr = degree_tuple(term.word);
            if (dr < dl) continue;
            if (dr == dl && term.word.size() == 2 && term.word[0] == b && term.word[1] == a &&
                sort_pos_[b] < sort_pos_[a])
                continue;
            throw BadPresentation("rule for (" + gens_[a].name + "," + gens_[b].name +
                                  ") violates the termination order in " + name_);
        }
    }

    std::string name_;
    std::vector<GenInfo> gens_;
    std::vector<int> sort_pos_;
    std::vector<int> priority_rank_;
    std::map<std::pair<GenId, GenId>, Rule> rules_;
};

template <class S>
using PresPtr = std::shared_ptr<const Presentation<S>>;

// A *-polynomial in normal form over a shared presentation.
template <class S>
class NCPoly {
public:
    using scalar_type = S;
    using term_map = std::map<Word, S>;

    NCPoly() = default;
    explicit NCPoly(PresPtr<S> pres) : pres_(std::move(pres)) {}

    static NCPoly zero(PresPtr<S> pres) { return NCPoly(std::move(pres)); }

    static NCPoly unit(PresPtr<S> pres, const S& c = S(1)) {
        NCPoly p(std::move(pres));
        if (!c.is_zero()) p.terms_[{}] = c;
        return p;
    }

    static NCPoly generator(PresPtr<S> pres, GenId g, const S& c = S(1)) {
        NCPoly p(std::move(pres));
        if (!c.is_zero()) p.terms_[{g}] = c;
        return p;
    }

    // Reduces raw (word, coeff) terms to normal form.
    static NCPoly from_raw(PresPtr<S> pres, const std::vector<std::pair<Word, S>>& raw,
                           Strategy st = Strategy::LeftmostInnermost) {
        NCPoly p(pres);
        for (const auto& [w, c] : raw) {
            auto red = pres->reduce(w, c, st);
            for (const auto& [rw, rc] : red) p.add_term(rw, rc);
        }
        return p;
    }

    // Trusted constructor: the word is already normal.
    static NCPoly monomial_unchecked(PresPtr<S> pres, Word w, const S& c) {
        NCPoly p(std::move(pres));
        if (!c.is_zero()) p.terms_[std::move(w)] = c;
        return p;
    }

    const PresPtr<S>& pres() const { return pres_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_unit_multiple() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }

    S unit_coefficient() const {
        auto it = terms_.find(Word{});
        return it == terms_.end() ? S(0) : it->second;
    }

    void add_term(const Word& w, const S& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend NCPoly operator+(const NCPoly& a, const NCPoly& b) {
        a.check_same(b);
        NCPoly r = a;
        if (r.pres_ == nullptr) r.pres_ = b.pres_;
        for (const auto& [w, c] : b.terms_) r.add_term(w, c);
        return r;
    }
    friend NCPoly operator-(const NCPoly& a, const NCPoly& b) {
        a.check_same(b);
        NCPoly r = a;
        if (r.pres_ == nullptr) r.pres_ = b.pres_;
        for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
        return r;
    }
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        a.check_same(b);
        NCPoly r(a.pres_ ? a.pres_ : b.pres_);
        for (const auto& [w1, c1] : a.terms_)
            for (const auto& [w2, c2] : b.terms_) {
                Word w;
                w.reserve(w1.size() + w2.size());
                w.insert(w.end(), w1.begin(), w1.end());
                w.insert(w.end(), w2.begin(), w2.end());
                auto red = r.pres_->reduce(w, c1 * c2);
                for (const auto& [rw, rc] : red) r.add_term(rw, rc);
            }
        return r;
    }
    NCPoly operator-() const {
        NCPoly r(pres_);
        for (const auto& [w, c] : terms_) r.terms_[w] = -c;
        return r;
    }
    NCPoly& operator+=(const NCPoly& o) { *this = *this + o; return *this; }
    NCPoly& operator-=(const NCPoly& o) { *this = *this - o; return *this; }
    NCPoly& operator*=(const NCPoly& o) { *this = *this * o; return *this; }

    NCPoly scaled(const S& c) const {
        NCPoly r(pres_);
        if (c.is_zero()) return r;
        for (const auto& [w, co] : terms_) {
            S p = co * c;
            if (!p.is_zero()) r.terms_[w] = p;
        }
        return r;
    }

    // The involution: reverse words, star each letter, conjugate coefficients.
    NCPoly star() const {
        NCPoly r(pres_);
        for (const auto& [w, c] : terms_) {
            Word sw;
            sw.reserve(w.size());
            for (auto it = w.rbegin(); it != w.rend(); ++it) sw.push_back(pres_->star_of(*it));
            auto red = pres_->reduce(sw, conj(c));
            for (const auto& [rw, rc] : red) r.add_term(rw, rc);
        }
        return r;
    }

    // Substitution homomorphism: letters map to polynomials of a target
    // presentation, coefficients through a supplied map.
    template <class T, class CoeffMap>
    NCPoly<T> substituted(const PresPtr<T>& target, const std::vector<NCPoly<T>>& images,
                          CoeffMap&& cmap) const {
        NCPoly<T> acc = NCPoly<T>::zero(target);
        for (const auto& [w, c] : terms_) {
            NCPoly<T> prod = NCPoly<T>::unit(target, cmap(c));
            for (GenId g : w) prod = prod * images[g];
            acc += prod;
        }
        return acc;
    }

    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }
    friend bool operator<(const NCPoly& a, const NCPoly& b) { return a.terms_ < b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string ws = word_str(it->first);
            std::string cs = it->second.str();
            bool neg = cs.size() > 1 && cs[0] == '-' && cs.find('+') == std::string::npos &&
                       cs.find('-', 1) == std::string::npos;
            if (neg) cs = cs.substr(1);
            bool composite = cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos ||
                             cs.find(' ') != std::string::npos;
            if (composite) cs = "(" + cs + ")";
            std::string term;
            if (ws.empty()) term = cs;
            else if (cs == "1") term = ws;
            else term = cs + "*" + ws;
            if (first) out += (neg ? "-" : "") + term;
            else out += (neg ? " - " : " + ") + term;
            first = false;
        }
        return out;
    }

    std::string word_str(const Word& w) const {
        std::string out;
        size_t i = 0;
        while (i < w.size()) {
            size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            if (!out.empty()) out += "*";
            out += pres_->gen(w[i]).name;
            if (j - i > 1) out += "^" + std::to_string(j - i);
            i = j;
        }
        return out;
    }

private:
    void check_same(const NCPoly& o) const {
        if (pres_ && o.pres_ && pres_.get() != o.pres_.get())
            throw WrongAlgebra("operands live over different presentations");
    }

    PresPtr<S> pres_;
    term_map terms_;
};

template <class S>
NCPoly<S> star(const NCPoly<S>& p) { return p.star(); }

// --- confluence probe -------------------------------------------------------

struct ConfluenceDiscrepancy {
    std::string word;
    std::string nf_left;
    std::string nf_right;
};

struct ConfluenceReport {
    size_t trials = 0;
    std::vector<ConfluenceDiscrepancy> discrepancies;
    bool clean() const { return discrepancies.empty(); }
};

// Reduces random words under the two strategies and reports any differences.
template <class S>
ConfluenceReport confluence_probe(const Presentation<S>& p, size_t trials, uint64_t seed,
                                  size_t max_len = 12) {
    ConfluenceReport rep;
    rep.trials = trials;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> len_dist(1, max_len);
    std::uniform_int_distribution<size_t> gen_dist(0, p.gen_count() - 1);
    for (size_t t = 0; t < trials; ++t) {
        Word w(len_dist(rng));
        for (auto& g : w) g = static_cast<GenId>(gen_dist(rng));
        auto left = p.reduce(w, S(1), Strategy::LeftmostInnermost);
        auto right = p.reduce(w, S(1), Strategy::RightmostOutermost);
        if (left != right) {
            ConfluenceDiscrepancy d;
            for (GenId g : w) {
                if (!d.word.empty()) d.word += "*";
                d.word += p.gen(g).name;
            }
            auto render = [&](const std::map<Word, S>& terms) {
                std::string s;
                for (const auto& [rw, rc] : terms) {
                    if (!s.empty()) s += " + ";
                    std::string ws;
                    for (GenId g : rw) {
                        if (!ws.empty()) ws += "*";
                        ws += p.gen(g).name;
                    }
                    s += "(" + rc.str() + ")" + (ws.empty() ? "" : "*" + ws);
                }
                return s.empty() ? std::string("0") : s;
            };
            d.nf_left = render(left);
            d.nf_right = render(right);
            rep.discrepancies.push_back(std::move(d));
        }
    }
    return rep;
}

} // namespace ncs
