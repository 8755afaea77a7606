#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qratfunc.hpp"
#include "qsphere.hpp"

namespace ncs {

enum class RepFamily { EvenPlus, EvenMinus, OddLambda, OddFourier };

inline std::string family_name(RepFamily f) {
    switch (f) {
        case RepFamily::EvenPlus: return "even+";
        case RepFamily::EvenMinus: return "even-";
        case RepFamily::OddLambda: return "odd-lambda";
        case RepFamily::OddFourier: return "odd-fourier";
    }
    return "?";
}

// (1 - q^{-2(k_i + offset)})^{half_steps/2}
struct RootFactor {
    int index;
    long offset;
    int half_steps;
    friend bool operator==(const RootFactor&, const RootFactor&) = default;
};

// Weight of a multi-shift as a function of the pre-shift state:
// coeff * lambda^p * q^{-(<m,k> + c)} * prod of root factors.
struct SpectralWeight {
    std::vector<int> exp_m;
    long exp_c = 0;
    std::vector<RootFactor> roots; // sorted by (index, offset)
    int lambda_power = 0;
    GaussRational coeff = GaussRational::one();

    static SpectralWeight identity(size_t arity) {
        SpectralWeight w;
        w.exp_m.assign(arity, 0);
        return w;
    }

    bool is_zero() const { return coeff.is_zero(); }

    void push_root(int index, long offset, int half_steps) {
        if (half_steps == 0) return;
        auto it = std::lower_bound(roots.begin(), roots.end(), std::pair<int, long>{index, offset},
                                   [](const RootFactor& r, const std::pair<int, long>& k) {
                                       return std::pair<int, long>{r.index, r.offset} < k;
                                   });
        if (it != roots.end() && it->index == index && it->offset == offset) {
            it->half_steps += half_steps;
            if (it->half_steps == 0) roots.erase(it);
        } else {
            roots.insert(it, RootFactor{index, offset, half_steps});
        }
    }

    SpectralWeight times(const SpectralWeight& o) const {
        SpectralWeight r = *this;
        for (size_t i = 0; i < exp_m.size(); ++i) r.exp_m[i] += o.exp_m[i];
        r.exp_c += o.exp_c;
        for (const auto& rf : o.roots) r.push_root(rf.index, rf.offset, rf.half_steps);
        r.lambda_power += o.lambda_power;
        r.coeff = r.coeff * o.coeff;
        return r;
    }

    // Substitute k -> k + s.
    SpectralWeight shifted(const std::vector<long>& s) const {
        SpectralWeight r = *this;
        for (size_t i = 0; i < exp_m.size(); ++i) r.exp_c += long(exp_m[i]) * s[i];
        for (auto& rf : r.roots) rf.offset += s[rf.index];
        return r;
    }

    SpectralWeight conjugated() const {
        SpectralWeight r = *this;
        r.lambda_power = -r.lambda_power;
        r.coeff = r.coeff.conj();
        return r;
    }

    // Exact annihilation test at a concrete lattice point (one-sided indices
    // reach the vacuum wall exactly when some factor hits k_i + d = 0).
    bool annihilates(const std::vector<long>& state) const {
        for (const auto& rf : roots)
            if (state[rf.index] + rf.offset <= 0) return true;
        return false;
    }

    std::complex<double> evaluate(const std::vector<long>& state, double q,
                                  std::complex<double> lambda) const {
        if (coeff.is_zero()) return 0.0;
        double expo = double(exp_c);
        for (size_t i = 0; i < exp_m.size(); ++i) expo += double(exp_m[i]) * double(state[i]);
        double mag = std::pow(q, -expo);
        for (const auto& rf : roots) {
            double base = 1.0 - std::pow(q, -2.0 * double(state[rf.index] + rf.offset));
            mag *= std::pow(base, double(rf.half_steps) / 2.0);
        }
        std::complex<double> c(coeff.re().to_double(), coeff.im().to_double());
        return c * mag * std::pow(lambda, lambda_power);
    }

    friend bool operator==(const SpectralWeight&, const SpectralWeight&) = default;
};

struct GenAction {
    std::vector<long> shift;
    SpectralWeight weight; // as a function of the pre-shift state
    friend bool operator==(const GenAction&, const GenAction&) = default;
};

// One of the paper's irreducible families as a weighted multi-shift table.
struct ShiftRep {
    RepFamily family = RepFamily::EvenPlus;
    int n = 0;
    size_t arity = 0;
    bool fourier = false; // index 0 ranges over all integers
    SpherePresentation sphere;
    std::vector<GenAction> actions; // indexed by GenId
    std::optional<GaussRational> lambda; // concrete phase for numeric work

    const GenAction& action(GenId g) const { return actions[g]; }
};

// Populates the action table of the requested family.
inline ShiftRep build_rep(RepFamily family, int n,
                          std::optional<GaussRational> lambda = std::nullopt) {
    ShiftRep rep;
    rep.family = family;
    rep.n = n;
    bool even = (family == RepFamily::EvenPlus || family == RepFamily::EvenMinus);
    if (!even) {
        if (family == RepFamily::OddLambda && !lambda) throw MissingPhase("odd family needs a phase");
        if (lambda && !lambda->is_unit_modulus()) throw NotUnitModulus("|lambda| must be 1");
        rep.lambda = lambda;
    }
    rep.fourier = (family == RepFamily::OddFourier);
    rep.arity = even ? size_t(n) : (rep.fourier ? size_t(n + 1) : size_t(n));
    rep.sphere = sphere_algebra(even ? 2 * n + 1 : 2 * n + 2);
    rep.actions.assign(rep.sphere.pres->gen_count(), GenAction{});

    auto zero_shift = [&] { return std::vector<long>(rep.arity, 0); };
    auto base = [&] { return SpectralWeight::identity(rep.arity); };

    if (even) {
        // x0: +- q^{-(k_0+...+k_{n-1})}, diagonal
        GenAction a0;
        a0.shift = zero_shift();
        a0.weight = base();
        for (size_t p = 0; p < rep.arity; ++p) a0.weight.exp_m[p] = 1;
        if (family == RepFamily::EvenMinus) a0.weight.coeff = GaussRational(Rational(-1));
        rep.actions[rep.sphere.x0] = a0;
        // x_i lowers k_{i-1} with root (1 - q^{-2 k_{i-1}})^{1/2}
        for (int i = 1; i <= n; ++i) {
            int p = i - 1;
            GenAction low, raise;
            low.shift = zero_shift();
            low.shift[p] = -1;
            low.weight = base();
            low.weight.push_root(p, 0, 1);
            for (size_t j = p + 1; j < rep.arity; ++j) low.weight.exp_m[j] = 1;
            raise.shift = zero_shift();
            raise.shift[p] = +1;
            raise.weight = base();
            raise.weight.push_root(p, 1, 1);
            for (size_t j = p + 1; j < rep.arity; ++j) raise.weight.exp_m[j] = 1;
            rep.actions[rep.sphere.x[i]] = low;
            rep.actions[rep.sphere.xs[i]] = raise;
        }
    } else if (family == RepFamily::OddLambda) {
        // x1 diagonal with the phase; x_i (i >= 2) shifts k_{i-1}
        GenAction d, ds;
        d.shift = zero_shift();
        d.weight = base();
        for (size_t p = 0; p < rep.arity; ++p) d.weight.exp_m[p] = 1;
        d.weight.lambda_power = 1;
        ds = d;
        ds.weight.lambda_power = -1;
        rep.actions[rep.sphere.x[1]] = d;
        rep.actions[rep.sphere.xs[1]] = ds;
        for (int i = 2; i <= n + 1; ++i) {
            int p = i - 2;
            GenAction low, raise;
            low.shift = zero_shift();
            low.shift[p] = -1;
            low.weight = base();
            low.weight.push_root(p, 0, 1);
            for (size_t j = p + 1; j < rep.arity; ++j) low.weight.exp_m[j] = 1;
            raise.shift = zero_shift();
            raise.shift[p] = +1;
            raise.weight = base();
            raise.weight.push_root(p, 1, 1);
            for (size_t j = p + 1; j < rep.arity; ++j) raise.weight.exp_m[j] = 1;
            rep.actions[rep.sphere.x[i]] = low;
            rep.actions[rep.sphere.xs[i]] = raise;
        }
    } else {
        // Fourier basis |k_0, k_1, ..., k_n>, k_0 two-sided
        GenAction up, down;
        up.shift = zero_shift();
        up.shift[0] = +1;
        up.weight = base();
        for (size_t p = 1; p < rep.arity; ++p) up.weight.exp_m[p] = 1;
        down = up;
        down.shift[0] = -1;
        rep.actions[rep.sphere.x[1]] = up;
        rep.actions[rep.sphere.xs[1]] = down;
        for (int i = 2; i <= n + 1; ++i) {
            int p = i - 1; // lattice position of k_{i-1}
            GenAction low, raise;
            low.shift = zero_shift();
            low.shift[p] = -1;
            low.weight = base();
            low.weight.push_root(p, 0, 1);
            for (size_t j = p + 1; j < rep.arity; ++j) low.weight.exp_m[j] = 1;
            raise.shift = zero_shift();
            raise.shift[p] = +1;
            raise.weight = base();
            raise.weight.push_root(p, 1, 1);
            for (size_t j = p + 1; j < rep.arity; ++j) raise.weight.exp_m[j] = 1;
            rep.actions[rep.sphere.x[i]] = low;
            rep.actions[rep.sphere.xs[i]] = raise;
        }
    }
    return rep;
}

// Symbolic composition of the action of a word (rightmost letter first).
inline std::pair<std::vector<long>, SpectralWeight> compose_word(const ShiftRep& rep, const Word& w) {
    std::vector<long> shift(rep.arity, 0);
    SpectralWeight acc = SpectralWeight::identity(rep.arity);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const GenAction& a = rep.action(*it);
        acc = a.weight.shifted(shift).times(acc);
        for (size_t i = 0; i < rep.arity; ++i) shift[i] += a.shift[i];
    }
    return {shift, acc};
}

// Applies a word to a basis state; empty result means annihilation.
inline std::vector<std::pair<std::vector<long>, SpectralWeight>> apply(
    const ShiftRep& rep, const Word& w, const std::vector<long>& state) {
    auto [shift, weight] = compose_word(rep, w);
    if (weight.annihilates(state)) return {};
    std::vector<long> out = state;
    for (size_t i = 0; i < rep.arity; ++i) out[i] += shift[i];
    return {{out, weight}};
}

// Symbolic adjointness: action(g*) equals the adjoint of action(g).
inline bool adjointness_holds(const ShiftRep& rep) {
    for (size_t g = 0; g < rep.actions.size(); ++g) {
        GenId gs = rep.sphere.pres->star_of(static_cast<GenId>(g));
        const GenAction& a = rep.actions[g];
        const GenAction& as = rep.actions[gs];
        std::vector<long> neg(a.shift.size());
        for (size_t i = 0; i < neg.size(); ++i) neg[i] = -a.shift[i];
        if (as.shift != neg) return false;
        if (as.weight != a.weight.shifted(neg).conjugated()) return false;
    }
    return true;
}

// sigma-intertwining: psi_+ o sigma = psi_- as action tables.
inline bool sigma_intertwines(const ShiftRep& plus, const ShiftRep& minus) {
    if (plus.actions.size() != minus.actions.size()) return false;
    for (size_t g = 0; g < plus.actions.size(); ++g) {
        GenAction a = plus.actions[g];
        if (static_cast<GenId>(g) == plus.sphere.x0) a.weight.coeff = -a.weight.coeff;
        if (!(a == minus.actions[g])) return false;
    }
    return true;
}

// --- numeric relation checking ----------------------------------------------

struct RelationFailure {
    std::string relation;
    std::vector<long> state;
    double residual;
};

struct RelationReport {
    size_t states_checked = 0;
    size_t states_skipped = 0;
    std::vector<RelationFailure> failures;
    bool pass() const { return failures.empty(); }
};

namespace detail {

inline void apply_numeric(const ShiftRep& rep, const Word& w, const std::vector<long>& state,
                          double q, std::complex<double> lambda,
                          std::map<std::vector<long>, std::complex<double>>& out,
                          std::complex<double> scale) {
    auto [shift, weight] = compose_word(rep, w);
    if (weight.annihilates(state)) return;
    std::vector<long> target = state;
    for (size_t i = 0; i < rep.arity; ++i) target[i] += shift[i];
    for (size_t i = 0; i < rep.arity; ++i)
        if (!(rep.fourier && i == 0) && target[i] < 0) return;
    out[target] += scale * weight.evaluate(state, q, lambda);
}

} // namespace detail

// Every defining rewrite rule (and the sphere relation) applied to every
// interior basis state must hold within the tolerance.
inline RelationReport relation_check(const ShiftRep& rep, double q, long K, double tol) {
    RelationReport report;
    std::complex<double> lam(1.0, 0.0);
    if (rep.lambda) lam = {rep.lambda->re().to_double(), rep.lambda->im().to_double()};

    // enumerate interior states: one-sided indices in [0, K-3], fourier in [-(K-3), K-3]
    long hi = K - 3;
    std::vector<std::vector<long>> states;
    std::vector<long> cur(rep.arity, rep.fourier ? -hi : 0);
    if (rep.fourier)
        for (size_t i = 1; i < rep.arity; ++i) cur[i] = 0;
    for (;;) {
        states.push_back(cur);
        size_t p = 0;
        while (p < rep.arity) {
            if (++cur[p] <= hi) break;
            cur[p] = (rep.fourier && p == 0) ? -hi : 0;
            ++p;
        }
        if (p == rep.arity) break;
    }
    // count boundary shells as skipped: states with any index in (K-3, K)
    {
        double interior = 1, full = 1;
        for (size_t i = 0; i < rep.arity; ++i) {
            bool two_sided = rep.fourier && i == 0;
            interior *= two_sided ? double(2 * hi + 1) : double(hi + 1);
            full *= two_sided ? double(2 * K - 1) : double(K);
        }
        report.states_skipped = static_cast<size_t>(full - interior);
    }

    auto check_element = [&](const std::string& name, const std::vector<std::pair<Word, GLaurent>>& terms) {
        for (const auto& st : states) {
            std::map<std::vector<long>, std::complex<double>> acc;
            for (const auto& [w, c] : terms) {
                auto [cre, cim] = split_gaussian(c);
                std::complex<double> cv(cre.evaluate(q), cim.evaluate(q));
                detail::apply_numeric(rep, w, st, q, lam, acc, cv);
            }
            double resid = 0;
            for (const auto& [s, v] : acc) resid = std::max(resid, std::abs(v));
            if (resid > tol) report.failures.push_back({name, st, resid});
            ++report.states_checked;
        }
    };

    for (const auto& [pat, rhs] : rep.sphere.pres->rules()) {
        std::vector<std::pair<Word, GLaurent>> terms;
        terms.push_back({Word{pat.first, pat.second}, GLaurent(1)});
        for (const auto& t : rhs) terms.push_back({t.word, -t.coeff});
        std::string name = rep.sphere.pres->gen(pat.first).name + "*" + rep.sphere.pres->gen(pat.second).name;
        check_element(name, terms);
    }
    {
        // the sphere relation s_n = 1 spelled out
        std::vector<std::pair<Word, GLaurent>> terms;
        for (const auto& [w, c] : rep.sphere.s[rep.sphere.n].terms()) terms.push_back({w, c});
        terms.push_back({Word{}, GLaurent(-1)});
        check_element("s_n - 1", terms);
    }
    return report;
}

// --- exact traces ------------------------------------------------------------

// Trace of a represented polynomial, decomposed by formal lambda power.
struct TraceValue {
    std::map<int, GQRat> parts;

    void add(int lambda_power, const GQRat& v) {
        if (v.is_zero()) return;
        auto [it, inserted] = parts.emplace(lambda_power, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) parts.erase(it);
        }
    }
    bool is_zero() const { return parts.empty(); }
    // The value when no phase is involved.
    GQRat scalar() const {
        if (parts.empty()) return GQRat::zero();
        if (parts.size() == 1 && parts.begin()->first == 0) return parts.begin()->second;
        throw ComputationError("trace carries a nontrivial phase power");
    }
    GQRat at_lambda(const GaussRational& lam) const {
        GQRat acc;
        for (const auto& [p, v] : parts) acc += v * GQRat(lam.pow(p));
        return acc;
    }
    std::string str() const {
        if (parts.empty()) return "0";
        std::string out;
        for (const auto& [p, v] : parts) {
            if (!out.empty()) out += " + ";
            out += (p == 0) ? v.str() : "(" + v.str() + ")*lambda^" + std::to_string(p);
        }
        return out;
    }
};

namespace detail {

// Per-index factor as a polynomial in t = q^{-k}: map t-degree -> QLaurent in q.
using TPoly = std::map<long, QLaurent>;

inline TPoly tpoly_mul(const TPoly& a, const TPoly& b) {
    TPoly r;
    for (const auto& [da, ca] : a)
        for (const auto& [db, cb] : b) {
            QLaurent prod = ca * cb;
            auto [it, inserted] = r.emplace(da + db, prod);
            if (!inserted) {
                it->second += prod;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    return r;
}

// Sum over k >= 0 of f(q^{-k}) as an exact rational function.
inline QRatFunc tpoly_geometric_sum(const TPoly& f) {
    QRatFunc acc;
    for (const auto& [d, c] : f) {
        if (c.is_zero()) continue;
        if (d <= 0) throw NotTraceClass("nondecaying factor q^{-" + std::to_string(d) + "k}");
        acc += QRatFunc(c) * QRatFunc(QLaurent::one() - QLaurent::q(static_cast<int32_t>(-d))).inv();
    }
    return acc;
}

struct DiagonalFactorization {
    std::vector<TPoly> per_index; // factor per lattice index
    QLaurent prefactor;           // q^{-c} and the scalar coefficient folded in later
};

// Factorizes a diagonal weight; paired root factors expand to polynomials.
inline DiagonalFactorization factorize_diagonal(const SpectralWeight& w, size_t arity) {
    DiagonalFactorization f;
    f.prefactor = QLaurent::q(static_cast<int32_t>(-w.exp_c));
    f.per_index.resize(arity);
    for (size_t i = 0; i < arity; ++i) {
        TPoly t;
        t[w.exp_m[i]] = QLaurent::one();
        f.per_index[i] = t;
    }
    for (const auto& rf : w.roots) {
        if (rf.half_steps % 2 != 0)
            throw ComputationError("unpaired root factor in a diagonal weight");
        int e = rf.half_steps / 2;
        if (e < 0) throw ComputationError("inverse root factor in a diagonal weight");
        TPoly base;
        base[0] = QLaurent::one();
        base[2] = -QLaurent::q(static_cast<int32_t>(-2 * rf.offset));
        for (int rep_i = 0; rep_i < e; ++rep_i)
            f.per_index[rf.index] = tpoly_mul(f.per_index[rf.index], base);
    }
    return f;
}

} // namespace detail

// Exact trace by factorized geometric series; NotTraceClass on divergence.
// For the Fourier family the two-sided index admits no decay, so only the
// banded operators of the Fredholm module (handled separately) are traced.
inline TraceValue trace_exact(const ShiftRep& rep, const SpherePoly& p) {
    TraceValue out;
    for (const auto& [w, c] : p.terms()) {
        auto [shift, weight] = compose_word(rep, w);
        bool diagonal = true;
        for (long s : shift)
            if (s != 0) diagonal = false;
        if (!diagonal) continue;
        if (rep.fourier)
            throw NotTraceClass("two-sided Fourier index carries no decay");
        auto f = detail::factorize_diagonal(weight, rep.arity);
        GQRat total = GQRat(QRatFunc(f.prefactor));
        for (size_t i = 0; i < rep.arity; ++i)
            total *= GQRat(detail::tpoly_geometric_sum(f.per_index[i]));
        auto [cre, cim] = split_gaussian(c);
        total *= GQRat(QRatFunc(cre), QRatFunc(cim));
        total *= GQRat(weight.coeff);
        out.add(weight.lambda_power, total);
    }
    return out;
}

// --- numeric truncation -------------------------------------------------------

// A represented polynomial materialized at a numeric q on the finite lattice
// with every one-sided index below the cutoff.
struct TruncatedOperator {
    ShiftRep rep;
    double q = 2.0;
    long K = 0;
    std::complex<double> lambda{1.0, 0.0};
    std::vector<std::pair<std::vector<long>, SpectralWeight>> components; // (shift, weight)
    std::vector<std::pair<QLaurent, QLaurent>> coeffs;                    // re, im of each coefficient

    std::vector<std::pair<std::vector<long>, std::complex<double>>> apply_state(
        const std::vector<long>& state) const {
        std::vector<std::pair<std::vector<long>, std::complex<double>>> out;
        for (size_t t = 0; t < components.size(); ++t) {
            const auto& [shift, weight] = components[t];
            if (weight.annihilates(state)) continue;
            std::vector<long> target = state;
            bool in_domain = true;
            for (size_t i = 0; i < rep.arity; ++i) {
                target[i] += shift[i];
                bool two_sided = rep.fourier && i == 0;
                if (two_sided ? std::abs(target[i]) >= K : (target[i] < 0 || target[i] >= K))
                    in_domain = false;
            }
            if (!in_domain) continue;
            std::complex<double> cv(coeffs[t].first.evaluate(q), coeffs[t].second.evaluate(q));
            out.emplace_back(std::move(target), cv * weight.evaluate(state, q, lambda));
        }
        return out;
    }
};

inline TruncatedOperator truncate(const ShiftRep& rep, const SpherePoly& p, double q, long K) {
    if (q <= 1.0) throw ComputationError("numeric truncation assumes q > 1");
    TruncatedOperator op;
    op.rep = rep;
    op.q = q;
    op.K = K;
    if (rep.lambda) op.lambda = {rep.lambda->re().to_double(), rep.lambda->im().to_double()};
    else if (rep.family == RepFamily::OddLambda) throw MissingPhase("numeric work needs a phase");
    for (const auto& [w, c] : p.terms()) {
        op.components.push_back(compose_word(rep, w));
        op.coeffs.push_back(split_gaussian(c));
    }
    return op;
}

struct NumericTrace {
    std::complex<double> value{0.0, 0.0};
    double tail_bound = 0.0;
};

// Diagonal sum over the truncated lattice plus a closed-form geometric bound
// on everything beyond the cutoff.
inline NumericTrace numeric_trace(const TruncatedOperator& op) {
    NumericTrace out;
    const size_t arity = op.rep.arity;
    for (size_t t = 0; t < op.components.size(); ++t) {
        const auto& [shift, weight] = op.components[t];
        bool diagonal = true;
        for (long s : shift)
            if (s != 0) diagonal = false;
        if (!diagonal) continue;
        if (op.rep.fourier) throw NotTraceClass("two-sided Fourier index carries no decay");
        auto f = detail::factorize_diagonal(weight, arity);
        std::complex<double> cv(op.coeffs[t].first.evaluate(op.q), op.coeffs[t].second.evaluate(op.q));
        cv *= std::complex<double>(weight.coeff.re().to_double(), weight.coeff.im().to_double());
        cv *= std::pow(op.lambda, weight.lambda_power);
        cv *= f.prefactor.evaluate(op.q);

        // truncated sum, plus |full - truncated| <= prod(|head|+tail) - prod(|head|)
        double truncated_prod = 1.0, prod_abs = 1.0, prod_abs_tail = 1.0;
        for (size_t i = 0; i < arity; ++i) {
            double head = 0.0, head_abs = 0.0, tail = 0.0;
            for (const auto& [d, cq] : f.per_index[i]) {
                if (d <= 0) throw NotTraceClass("nondecaying factor in numeric trace");
                double cval = cq.evaluate(op.q);
                double r = std::pow(op.q, -double(d));
                double geo_head = (1.0 - std::pow(r, double(op.K))) / (1.0 - r);
                head += cval * geo_head;
                head_abs += std::abs(cval) * geo_head;
                tail += std::abs(cval) * std::pow(r, double(op.K)) / (1.0 - r);
            }
            truncated_prod *= head;
            prod_abs *= head_abs;
            prod_abs_tail *= head_abs + tail;
        }
        out.value += cv * truncated_prod;
        out.tail_bound += std::abs(cv) * (prod_abs_tail - prod_abs);
    }
    return out;
}

} // namespace ncs
