#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ncs/cyclic.hpp"
#include "ncs/qsphere.hpp"

using namespace ncs;

namespace {

SpherePoly gen(const SpherePresentation& sp, GenId g) { return sp.gen_poly(g); }

GLaurent one_minus(int m) { return GLaurent(1) - GLaurent::q(-m); }

SpherePoly random_poly(const SpherePresentation& sp, std::mt19937_64& rng, int max_len = 2) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<size_t> pick(0, sp.pres->gen_count() - 1);
    Word w(len(rng));
    for (auto& g : w) g = static_cast<GenId>(pick(rng));
    return SpherePoly::from_raw(sp.pres, {{w, GLaurent(1)}});
}

CyclicChain<GLaurent> random_chain(const SpherePresentation& sp, std::mt19937_64& rng, int degree) {
    CyclicChain<GLaurent> c(sp.pres, degree);
    std::vector<SpherePoly> slots;
    for (int t = 0; t <= degree; ++t) slots.push_back(random_poly(sp, rng));
    c.add_tensor(slots, GLaurent(1));
    return c;
}

} // namespace

TEST_CASE("normal form matches the defining relations") {
    SpherePresentation sq3 = sphere_algebra(4); // S_q^3
    // x1 x1* = x1* x1 (x1 is normal)
    CHECK(gen(sq3, sq3.x[1]) * gen(sq3, sq3.xs[1]) == gen(sq3, sq3.xs[1]) * gen(sq3, sq3.x[1]));

    SpherePresentation sq2 = sphere_algebra(3); // S_q^2
    SpherePoly lhs = gen(sq2, sq2.x[1]) * gen(sq2, sq2.xs[1]);
    SpherePoly x0sq = gen(sq2, sq2.x0) * gen(sq2, sq2.x0);
    SpherePoly rhs = gen(sq2, sq2.xs[1]) * gen(sq2, sq2.x[1]) + x0sq.scaled(one_minus(2));
    CHECK(lhs == rhs);

    SpherePresentation sq4 = sphere_algebra(5); // S_q^4
    SpherePoly l = gen(sq4, sq4.x[1]) * gen(sq4, sq4.x0);
    SpherePoly r = (gen(sq4, sq4.x0) * gen(sq4, sq4.x[1])).scaled(GLaurent::q(-1));
    CHECK(l == r);
}

TEST_CASE("normal form is idempotent and linear") {
    SpherePresentation sp = sphere_algebra(5);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        SpherePoly p = random_poly(sp, rng, 4);
        // reducing an already normal polynomial changes nothing
        std::vector<std::pair<Word, GLaurent>> raw(p.terms().begin(), p.terms().end());
        CHECK(SpherePoly::from_raw(sp.pres, raw) == p);
    }
}

TEST_CASE("sphere relation reduces to the unit") {
    for (int N = 2; N <= 8; ++N) {
        SpherePresentation sp = sphere_algebra(N);
        CHECK(sp.s[sp.n] == sp.unit());
    }
}

TEST_CASE("confluence probe is clean on shipped spheres") {
    SpherePresentation sq2 = sphere_algebra(3);
    auto rep = confluence_probe(*sq2.pres, 500, 12345);
    CHECK(rep.discrepancies.empty());

    SpherePresentation sq5 = sphere_algebra(6);
    auto rep5 = confluence_probe(*sq5.pres, 300, 999);
    CHECK(rep5.discrepancies.empty());
}

TEST_CASE("confluence probe catches an inconsistent rule") {
    SpherePresentation sq2 = sphere_algebra(3);
    auto broken = std::make_shared<Presentation<GLaurent>>(*sq2.pres);
    // replace x1 x0 -> q^-1 x0 x1 with a wrong coefficient
    broken->replace_rule(sq2.x[1], sq2.x0, {{Word{sq2.x0, sq2.x[1]}, GLaurent(2)}});
    auto rep = confluence_probe(*broken, 500, 4242);
    CHECK(rep.discrepancies.size() >= 1);
}

TEST_CASE("star is an involutive antihomomorphism") {
    SpherePresentation sp = sphere_algebra(4);
    CHECK(gen(sp, sp.x[1]).star() == gen(sp, sp.xs[1]));

    SpherePresentation sq2 = sphere_algebra(3);
    SpherePoly fixed = (gen(sq2, sq2.x0) * gen(sq2, sq2.x0)).scaled(one_minus(2));
    CHECK(fixed.star() == fixed);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        SpherePoly p = random_poly(sp, rng, 3), q = random_poly(sp, rng, 3);
        REQUIRE(p.star().star() == p);
        REQUIRE((p * q).star() == q.star() * p.star());
    }
}

TEST_CASE("unipotents, idempotents and unitaries pass their checks") {
    // u_(2): q^-2 x0^2 + x1 x1* = 1 on the diagonal
    SpherePresentation sq2 = sphere_algebra(3);
    SphereMat u2 = unipotent(sq2);
    REQUIRE(u2.size() == 2);
    CHECK(mat_check(u2, MatKind::Unipotent).ok);
    CHECK(mat_check(u2, MatKind::SelfAdjoint).ok);
    CHECK(u2.at(0, 0) == gen(sq2, sq2.x0).scaled(GLaurent::q(-1)));

    auto e4 = idempotent_even(2);
    CHECK(mat_check(e4.matrix, MatKind::Idempotent).ok);
    CHECK(mat_check(e4.matrix, MatKind::SelfAdjoint).ok);

    auto v3 = unitary_odd(1);
    CHECK(mat_check(v3.matrix, MatKind::Unitary).ok);

    // failure reporting: the unipotent is not idempotent
    auto bad = mat_check(u2, MatKind::Idempotent);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.witness().empty());
}

TEST_CASE("hochschild boundary on small chains") {
    SpherePresentation sp = sphere_algebra(3);
    SpherePoly a = gen(sp, sp.x0), b = gen(sp, sp.x[1]), c = gen(sp, sp.xs[1]);

    CyclicChain<GLaurent> ab(sp.pres, 1);
    ab.add_tensor({a, b}, GLaurent(1));
    CyclicChain<GLaurent> expected(sp.pres, 0);
    expected.add_tensor({a * b - b * a}, GLaurent(1));
    CHECK(hochschild_b(ab) == expected);

    // a (x) b (x) c -> ab (x) c - a (x) bc + ca (x) b
    CyclicChain<GLaurent> abc(sp.pres, 2);
    abc.add_tensor({a, b, c}, GLaurent(1));
    CyclicChain<GLaurent> exp2(sp.pres, 1);
    exp2.add_tensor({a * b, c}, GLaurent(1));
    exp2.add_tensor({a, b * c}, GLaurent(-1));
    exp2.add_tensor({c * a, b}, GLaurent(1));
    CHECK(hochschild_b(abc) == exp2);

    CHECK_THROWS_AS(hochschild_b(expected), DegreeZero);
}

TEST_CASE("commutator chain of the normal generator vanishes") {
    SpherePresentation sq3 = sphere_algebra(4);
    SpherePoly x1 = gen(sq3, sq3.x[1]), x1s = gen(sq3, sq3.xs[1]);
    CyclicChain<GLaurent> c(sq3.pres, 1);
    c.add_tensor({x1, x1s}, GLaurent(1));
    c.add_tensor({x1s, x1}, GLaurent(-1));
    CyclicChain<GLaurent> bc = hochschild_b(c);
    // b sends it to 2[x1, x1*] = 0 by (5.4)
    CHECK(bc.is_zero());
}

TEST_CASE("connes operator on degree zero") {
    SpherePresentation sp = sphere_algebra(3);
    SpherePoly a = gen(sp, sp.x0);
    CyclicChain<GLaurent> c(sp.pres, 0);
    c.add_tensor({a}, GLaurent(1));
    CyclicChain<GLaurent> Bc = connes_B(c);
    CyclicChain<GLaurent> expected(sp.pres, 1);
    expected.add_tensor({sp.unit(), a}, GLaurent(1));
    CHECK(Bc == expected);
    CHECK(connes_B(Bc).is_zero());
}

TEST_CASE("bicomplex identities on random chains") {
    SpherePresentation sq2 = sphere_algebra(3);
    std::mt19937_64 rng(77);
    for (int deg = 1; deg <= 3; ++deg) {
        for (int t = 0; t < 30; ++t) {
            auto c = random_chain(sq2, rng, deg);
            REQUIRE(hochschild_b(hochschild_b(connes_B(c))).is_zero()); // b^2 = 0 (degree >= 1 input)
            REQUIRE(connes_B(connes_B(c)).is_zero());
            auto anti = hochschild_b(connes_B(c)) + connes_B(hochschild_b(c));
            REQUIRE(anti.is_zero());
        }
    }
}

TEST_CASE("even chern characters in degree zero") {
    for (int n = 1; n <= 2; ++n) {
        auto e = idempotent_even(n);
        CyclicChain<GLaurent> ch0 = chern_even(e.matrix, 0);
        // ch_0(e_(2n)) = (1/2)(q^-1 - 1)^n x0
        GLaurent coeff = (GLaurent::q(-1) - GLaurent(1)).pow(n).scaled(GaussRational(Rational(1, 2)));
        CyclicChain<GLaurent> expected(e.sphere.pres, 0);
        expected.add_tensor({e.sphere.gen_poly(e.sphere.x0)}, coeff);
        CHECK(ch0 == expected);
    }
}

TEST_CASE("odd chern characters in lowest degree") {
    for (int n = 0; n <= 2; ++n) {
        auto v = unitary_odd(n);
        CyclicChain<GLaurent> ch = chern_odd(v.matrix, 0);
        GLaurent coeff = (GLaurent::q(-2) - GLaurent(1)).pow(n).scaled(GaussRational(Rational(1, 2)));
        CyclicChain<GLaurent> expected(v.sphere.pres, 1);
        const auto& sp = v.sphere;
        expected.add_tensor({sp.gen_poly(sp.x[1]), sp.gen_poly(sp.xs[1])}, coeff);
        expected.add_tensor({sp.gen_poly(sp.xs[1]), sp.gen_poly(sp.x[1])}, -coeff);
        CHECK(ch == expected);
    }
}

TEST_CASE("chern of the trivial unitary vanishes") {
    SpherePresentation sp = sphere_algebra(2);
    SphereMat one = SphereMat::identity(sp.pres, 1);
    CHECK(chern_odd(one, 0).is_zero());
}

TEST_CASE("cycle condition as a proportionality") {
    auto e2 = idempotent_even(1);
    auto r = cycle_ratio(e2.matrix, true, 0);
    CHECK(r.status != CycleRatioStatus::NotProportional);

    SpherePresentation sp = sphere_algebra(3);
    SphereMat triv = SphereMat::identity(sp.pres, 1);
    auto rt = cycle_ratio(triv, true, 0);
    CHECK(rt.status == CycleRatioStatus::ProportionalToZero);
}

TEST_CASE("chern chains are invariant under constant permutation conjugation") {
    auto e4 = idempotent_even(2);
    size_t r = e4.matrix.size();
    // conjugate by the cyclic permutation matrix
    SphereMat p(e4.sphere.pres, r), pt(e4.sphere.pres, r);
    for (size_t i = 0; i < r; ++i) {
        p.at(i, (i + 1) % r) = e4.sphere.unit();
        pt.at((i + 1) % r, i) = e4.sphere.unit();
    }
    SphereMat conj_e = p * e4.matrix * pt;
    CHECK(mat_check(conj_e, MatKind::Idempotent).ok);
    CHECK(chern_even(conj_e, 0) == chern_even(e4.matrix, 0));
    CHECK(chern_even(conj_e, 1) == chern_even(e4.matrix, 1));
}
