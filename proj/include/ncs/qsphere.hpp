#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "matnc.hpp"
#include "ncpoly.hpp"

namespace ncs {

using SpherePoly = NCPoly<GLaurent>;
using SphereMat = MatNC<GLaurent>;

// A quantum Euclidean sphere S_q^{N-1} with its rewriting presentation and
// cached partial radii. Generators are x0 (even case only) and x1..xn with
// adjoints, ordered x0 < x1' < x1 < x2' < x2 < ...; the top-index pairs
// rewrite through the sphere relation s_n = 1.
struct SpherePresentation {
    int N = 0;            // the sphere is S_q^{N-1}
    bool even = false;    // true for S_q^{2n} (N = 2n+1)
    int n = 0;            // top generator index
    PresPtr<GLaurent> pres;
    GenId x0 = 0;                  // meaningful only when even
    std::vector<GenId> x, xs;      // x[i], xs[i] for i = 1..n ([0] unused)
    std::vector<SpherePoly> s;     // partial radii s_0..s_n in normal form

    SpherePoly gen_poly(GenId g) const { return SpherePoly::generator(pres, g); }
    SpherePoly unit(const GLaurent& c = GLaurent(1)) const { return SpherePoly::unit(pres, c); }
};

inline GLaurent glq(int e) { return GLaurent::q(e); }

// Builds A(S_q^{N-1}) per the recursive relations; N >= 2.
inline SpherePresentation sphere_algebra(int N) {
    if (N < 2) throw WrongAlgebra("sphere_algebra needs N >= 2");
    SpherePresentation sp;
    sp.N = N;
    sp.even = (N % 2 == 1);
    sp.n = N / 2;
    auto pres = std::make_shared<Presentation<GLaurent>>("Sq" + std::to_string(N - 1));

    if (sp.even) sp.x0 = pres->add_generator("x0", 0, false, true);
    sp.x.assign(sp.n + 1, 0);
    sp.xs.assign(sp.n + 1, 0);
    for (int i = 1; i <= sp.n; ++i) {
        sp.xs[i] = pres->add_generator("x" + std::to_string(i) + "'", i, true, false);
        sp.x[i] = pres->add_generator("x" + std::to_string(i), i, false, false);
        pres->link_stars(sp.x[i], sp.xs[i]);
    }

    // partial radii in normal form: s_i = x0^2 + sum_{j<=i} xj' xj
    std::vector<std::vector<std::pair<Word, GLaurent>>> s_terms(sp.n + 1);
    {
        std::vector<std::pair<Word, GLaurent>> acc;
        if (sp.even) acc.push_back({Word{sp.x0, sp.x0}, GLaurent(1)});
        s_terms[0] = acc;
        for (int i = 1; i <= sp.n; ++i) {
            acc.push_back({Word{sp.xs[i], sp.x[i]}, GLaurent(1)});
            s_terms[i] = acc;
        }
    }

    auto add_swap = [&](GenId a, GenId b, int qpow) {
        // pattern (a,b) -> q^qpow (b,a)
        pres->add_rule(a, b, {{Word{b, a}, glq(qpow)}});
    };

    // index-ordering rules, i < j
    for (int j = 1; j <= sp.n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (i == 0) {
                if (!sp.even) continue;
                add_swap(sp.x[j], sp.x0, -1);
                add_swap(sp.xs[j], sp.x0, +1);
            } else {
                add_swap(sp.x[j], sp.x[i], -1);
                add_swap(sp.x[j], sp.xs[i], -1);
                add_swap(sp.xs[j], sp.x[i], +1);
                add_swap(sp.xs[j], sp.xs[i], +1);
            }
        }
    }
    // commutation at equal non-top index: x_i x_i' -> x_i' x_i + (1 - q^-2) s_{i-1}
    GLaurent comm = GLaurent(1) - glq(-2);
    for (int i = 1; i < sp.n; ++i) {
        typename Presentation<GLaurent>::Rule rule;
        rule.push_back({Word{sp.xs[i], sp.x[i]}, GLaurent(1)});
        for (const auto& [w, c] : s_terms[i - 1]) rule.push_back({w, c * comm});
        pres->add_rule(sp.x[i], sp.xs[i], std::move(rule));
    }
    // top index: the sphere relation s_n = 1
    {
        typename Presentation<GLaurent>::Rule starred_first;
        starred_first.push_back({Word{}, GLaurent(1)});
        for (const auto& [w, c] : s_terms[sp.n - 1]) starred_first.push_back({w, -c});
        pres->add_rule(sp.xs[sp.n], sp.x[sp.n], std::move(starred_first));

        typename Presentation<GLaurent>::Rule plain_first;
        plain_first.push_back({Word{}, GLaurent(1)});
        for (const auto& [w, c] : s_terms[sp.n - 1]) plain_first.push_back({w, -(c * glq(-2))});
        pres->add_rule(sp.x[sp.n], sp.xs[sp.n], std::move(plain_first));
    }

    sp.pres = pres;
    sp.s.reserve(sp.n + 1);
    for (int i = 0; i <= sp.n; ++i)
        sp.s.push_back(SpherePoly::from_raw(sp.pres, s_terms[i]));
    return sp;
}

// The recursive unipotent over A(S_q^{N-1}); size 2^(N/2 rounded down).
// For odd spheres the recursion starts from zero (x0 = 0).
inline SphereMat unipotent(const SpherePresentation& sp) {
    SphereMat u(sp.pres, 1);
    u.at(0, 0) = sp.even ? sp.gen_poly(sp.x0) : SpherePoly::zero(sp.pres);
    for (int i = 1; i <= sp.n; ++i) {
        size_t h = u.size();
        SphereMat xi = SphereMat::scalar(sp.pres, h, sp.gen_poly(sp.x[i]));
        SphereMat xis = SphereMat::scalar(sp.pres, h, sp.gen_poly(sp.xs[i]));
        SphereMat neg = u.scaled(GLaurent(-1));
        SphereMat qu = u.scaled(glq(-1));
        u = SphereMat::from_blocks(qu, xi, xis, neg);
    }
    return u;
}

inline SphereMat unipotent(int N) { return unipotent(sphere_algebra(N)); }

struct KTheoryElement {
    enum class Kind { Idempotent, Unitary, Unit } kind;
    SphereMat matrix;
    SpherePresentation sphere;
};

// e_(2n) = (I + u_(2n)) / 2 over A(S_q^{2n}).
inline KTheoryElement idempotent_even(int n) {
    SpherePresentation sp = sphere_algebra(2 * n + 1);
    SphereMat u = unipotent(sp);
    SphereMat e = (u + SphereMat::identity(sp.pres, u.size())).scaled(GLaurent(Rational(1, 2)));
    return {KTheoryElement::Kind::Idempotent, std::move(e), std::move(sp)};
}

// V_(2n+1) over A(S_q^{2n+1}), the recursive K_1 generator.
inline KTheoryElement unitary_odd(int n) {
    SpherePresentation sp = sphere_algebra(2 * n + 2);
    SphereMat v(sp.pres, 1);
    v.at(0, 0) = sp.gen_poly(sp.x[1]);
    for (int i = 1; i <= n; ++i) {
        size_t h = v.size();
        SphereMat xt = SphereMat::scalar(sp.pres, h, sp.gen_poly(sp.x[i + 1]));
        SphereMat xts = SphereMat::scalar(sp.pres, h, sp.gen_poly(sp.xs[i + 1]));
        v = SphereMat::from_blocks(xt, v.scaled(glq(-1)), v.adjoint().scaled(GLaurent(-1)), xts);
    }
    return {KTheoryElement::Kind::Unitary, std::move(v), std::move(sp)};
}

// x0 -> -x0, an involutive automorphism of even spheres.
inline SpherePoly sigma_auto(const SpherePresentation& sp, const SpherePoly& p) {
    if (!sp.even) throw WrongAlgebra("sigma is defined on even spheres");
    SpherePoly out(sp.pres);
    for (const auto& [w, c] : p.terms()) {
        size_t deg0 = 0;
        for (GenId g : w)
            if (g == sp.x0) ++deg0;
        out.add_term(w, (deg0 % 2 == 0) ? c : -c);
    }
    return out;
}

// Circle action on odd spheres: x1 -> lambda x1. The formal charge grading
// underlies it: charge = (#x1 - #x1') of each monomial.
inline std::map<int, SpherePoly> t_action_graded(const SpherePresentation& sp, const SpherePoly& p) {
    if (sp.even) throw WrongAlgebra("the circle action lives on odd spheres");
    std::map<int, SpherePoly> out;
    for (const auto& [w, c] : p.terms()) {
        int charge = 0;
        for (GenId g : w) {
            if (g == sp.x[1]) ++charge;
            else if (g == sp.xs[1]) --charge;
        }
        auto it = out.find(charge);
        if (it == out.end()) it = out.emplace(charge, SpherePoly::zero(sp.pres)).first;
        it->second.add_term(w, c);
    }
    return out;
}

inline SpherePoly t_action(const SpherePresentation& sp, const SpherePoly& p, const GaussRational& lambda) {
    if (!lambda.is_unit_modulus()) throw NotUnitModulus("phase must lie on the unit circle");
    SpherePoly out(sp.pres);
    for (auto& [charge, part] : t_action_graded(sp, p))
        out += part.scaled(GLaurent(lambda.pow(charge)));
    return out;
}

enum class SphereMap { Equator, SuspendEvenInOdd, InversionIso };

// equator: A(S_q^{2n}) ->> A(S_q^{2n-1}), x0 -> 0.
// suspend: A(S_q^{2n+1}) ->> A(S_q^{2n}), x1 = x1' -> x0, relabel upward.
// inversion: A(S_{1/q}^{N-1}) -> A(S_q^{N-1}) with x0 -> (-q)^n x0, x_i -> (-q)^{n-i} x_i'.
struct StructureMap {
    SpherePresentation source;
    SpherePresentation target;
    std::vector<SpherePoly> images;                  // indexed by source GenId
    std::function<GLaurent(const GLaurent&)> coeff;  // coefficient transport

    SpherePoly apply(const SpherePoly& p) const {
        return p.substituted(target.pres, images, coeff);
    }
};

inline StructureMap structure_map(const SpherePresentation& sp, SphereMap kind) {
    StructureMap m;
    m.source = sp;
    m.coeff = [](const GLaurent& c) { return c; };
    switch (kind) {
        case SphereMap::Equator: {
            if (!sp.even) throw WrongAlgebra("equator map starts from an even sphere");
            m.target = sphere_algebra(sp.N - 1);
            m.images.assign(sp.pres->gen_count(), SpherePoly::zero(m.target.pres));
            m.images[sp.x0] = SpherePoly::zero(m.target.pres);
            for (int i = 1; i <= sp.n; ++i) {
                m.images[sp.x[i]] = m.target.gen_poly(m.target.x[i]);
                m.images[sp.xs[i]] = m.target.gen_poly(m.target.xs[i]);
            }
            break;
        }
        case SphereMap::SuspendEvenInOdd: {
            if (sp.even) throw WrongAlgebra("suspension starts from an odd sphere");
            m.target = sphere_algebra(sp.N - 1);
            m.images.assign(sp.pres->gen_count(), SpherePoly::zero(m.target.pres));
            m.images[sp.x[1]] = m.target.gen_poly(m.target.x0);
            m.images[sp.xs[1]] = m.target.gen_poly(m.target.x0);
            for (int i = 2; i <= sp.n; ++i) {
                m.images[sp.x[i]] = m.target.gen_poly(m.target.x[i - 1]);
                m.images[sp.xs[i]] = m.target.gen_poly(m.target.xs[i - 1]);
            }
            break;
        }
        case SphereMap::InversionIso: {
            m.target = sphere_algebra(sp.N);
            m.images.assign(sp.pres->gen_count(), SpherePoly::zero(m.target.pres));
            // The scaling (-q)^k of the quoted substitution is in the source
            // parameter, i.e. (-q^{-1})^k on the target side; the literal
            // target-q reading breaks the sphere relation.
            auto mq = [&](int pw) {
                return GLaurent::monomial(GaussRational(Rational(pw % 2 == 0 ? 1 : -1)), -pw);
            };
            if (sp.even) m.images[sp.x0] = m.target.gen_poly(m.target.x0).scaled(mq(sp.n));
            for (int i = 1; i <= sp.n; ++i) {
                m.images[sp.x[i]] = m.target.gen_poly(m.target.xs[i]).scaled(mq(sp.n - i));
                m.images[sp.xs[i]] = m.target.gen_poly(m.target.x[i]).scaled(mq(sp.n - i));
            }
            m.coeff = [](const GLaurent& c) { return c.invert_q(); };
            break;
        }
    }
    return m;
}

// Verifies that a structure map sends every defining rule of its source to
// zero in the target (i.e. it is a well-defined homomorphism).
inline bool structure_map_respects_relations(const StructureMap& m) {
    for (const auto& [pat, rhs] : m.source.pres->rules()) {
        SpherePoly lhs = m.images[pat.first] * m.images[pat.second];
        SpherePoly img = SpherePoly::zero(m.target.pres);
        for (const auto& t : rhs) {
            SpherePoly w = SpherePoly::unit(m.target.pres, m.coeff(t.coeff));
            for (GenId g : t.word) w = w * m.images[g];
            img += w;
        }
        if (!(lhs - img).is_zero()) return false;
    }
    return true;
}

// The S^1 of classical points: x_n -> lambda, everything lower -> 0.
struct ClassicalPoint {
    SpherePresentation sphere;
    GaussRational lambda;

    GLaurent operator()(const SpherePoly& p) const {
        GLaurent acc;
        for (const auto& [w, c] : p.terms()) {
            GaussRational v = GaussRational::one();
            bool dead = false;
            for (GenId g : w) {
                if (g == sphere.x[sphere.n]) v *= lambda;
                else if (g == sphere.xs[sphere.n]) v *= lambda.conj();
                else {
                    dead = true;
                    break;
                }
            }
            if (!dead) acc += c.scaled(v);
        }
        return acc;
    }

    // formal variant: coefficient of each lambda-power
    std::map<int, GLaurent> graded(const SpherePoly& p) const {
        std::map<int, GLaurent> out;
        for (const auto& [w, c] : p.terms()) {
            int charge = 0;
            bool dead = false;
            for (GenId g : w) {
                if (g == sphere.x[sphere.n]) ++charge;
                else if (g == sphere.xs[sphere.n]) --charge;
                else {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            auto it = out.find(charge);
            if (it == out.end()) it = out.emplace(charge, GLaurent()).first;
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
        return out;
    }
};

inline ClassicalPoint classical_point(const SpherePresentation& sp, const GaussRational& lambda) {
    if (!lambda.is_unit_modulus()) throw NotUnitModulus("classical points carry |lambda| = 1");
    return {sp, lambda};
}

// --- Poisson bracket at q = 1 ----------------------------------------------

// Commutative polynomial with Gaussian-rational coefficients in the
// classical sphere coordinates; monomials are the q = 1 images of the
// normal-form basis words.
struct CommPoly {
    std::map<Word, GaussRational> terms;

    void add(const Word& w, const GaussRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    friend CommPoly operator+(const CommPoly& a, const CommPoly& b) {
        CommPoly r = a;
        for (const auto& [w, c] : b.terms) r.add(w, c);
        return r;
    }
    friend bool operator==(const CommPoly& a, const CommPoly& b) { return a.terms == b.terms; }
};

// {f, g} = -i d/dq|_{q=1} (f g - g f), evaluated in the normal-form basis.
inline CommPoly poisson_bracket(const SpherePresentation& sp, const SpherePoly& f, const SpherePoly& g) {
    SpherePoly comm = f * g - g * f;
    CommPoly out;
    GaussRational minus_i = -GaussRational::i();
    for (const auto& [w, c] : comm.terms()) out.add(w, minus_i * q_derivative_at_1(c));
    return out;
}

// Canonical lift of a classical basis monomial combination back into the
// quantum algebra (the identification used to fix the deformation).
inline SpherePoly lift_classical(const SpherePresentation& sp, const CommPoly& p) {
    SpherePoly out(sp.pres);
    for (const auto& [w, c] : p.terms) out.add_term(w, GLaurent(c));
    return out;
}

inline std::string comm_poly_str(const SpherePresentation& sp, const CommPoly& p) {
    if (p.terms.empty()) return "0";
    SpherePoly probe(sp.pres);
    std::string out;
    for (const auto& [w, c] : p.terms) {
        if (!out.empty()) out += " + ";
        std::string ws = probe.word_str(w);
        out += "(" + c.str() + ")" + (ws.empty() ? "" : "*" + ws);
    }
    return out;
}

} // namespace ncs
