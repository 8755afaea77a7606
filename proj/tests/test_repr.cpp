#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "ncs/shiftrep.hpp"

using namespace ncs;

namespace {
QRatFunc one_minus_pow_inv(int m, int n) {
    return QRatFunc(QLaurent::one() - QLaurent::q(-m)).inv().pow(n);
}
} // namespace

TEST_CASE("action tables match the displayed formulas") {
    ShiftRep ep1 = build_rep(RepFamily::EvenPlus, 1);
    const GenAction& a = ep1.action(ep1.sphere.x[1]);
    CHECK(a.shift == std::vector<long>{-1});
    CHECK(a.weight.roots == std::vector<RootFactor>{{0, 0, 1}});
    CHECK(a.weight.exp_m == std::vector<int>{0});

    ShiftRep ol1 = build_rep(RepFamily::OddLambda, 1, GaussRational(Rational(1)));
    const GenAction& d = ol1.action(ol1.sphere.x[1]);
    CHECK(d.shift == std::vector<long>{0});
    CHECK(d.weight.exp_m == std::vector<int>{1});
    CHECK(d.weight.lambda_power == 1);

    ShiftRep of2 = build_rep(RepFamily::OddFourier, 2);
    const GenAction& u = of2.action(of2.sphere.x[1]);
    CHECK(u.shift == std::vector<long>{1, 0, 0});
    CHECK(u.weight.exp_m == std::vector<int>{0, 1, 1});

    CHECK_THROWS_AS(build_rep(RepFamily::OddLambda, 1), MissingPhase);
    CHECK_THROWS_AS(build_rep(RepFamily::OddLambda, 1, GaussRational(Rational(2))), NotUnitModulus);
}

TEST_CASE("apply annihilates at the vacuum wall") {
    ShiftRep ep1 = build_rep(RepFamily::EvenPlus, 1);
    Word x1{ep1.sphere.x[1]};
    CHECK(apply(ep1, x1, {0}).empty());

    // x1* x1 acts diagonally with weight (1 - q^{-2k})
    Word balanced{ep1.sphere.xs[1], ep1.sphere.x[1]};
    auto res = apply(ep1, balanced, {3});
    REQUIRE(res.size() == 1);
    CHECK(res[0].first == std::vector<long>{3});
    CHECK(res[0].second.roots == std::vector<RootFactor>{{0, 0, 2}});

    // positivity: word then its star-reverse gives perfectly squared roots
    ShiftRep ep2 = build_rep(RepFamily::EvenPlus, 2);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<size_t> pick(0, ep2.sphere.pres->gen_count() - 1);
    for (int t = 0; t < 60; ++t) {
        Word w(3);
        for (auto& g : w) g = static_cast<GenId>(pick(rng));
        Word full = w;
        for (auto it = w.rbegin(); it != w.rend(); ++it) full.insert(full.begin(), ep2.sphere.pres->star_of(*it));
        auto [shift, weight] = compose_word(ep2, full);
        for (long s : shift) REQUIRE(s == 0);
        for (const auto& rf : weight.roots) REQUIRE(rf.half_steps % 2 == 0);
    }

    // odd Fourier: x1 x1* is diagonal with weight q^{-2(k_1+...+k_n)}
    ShiftRep of2 = build_rep(RepFamily::OddFourier, 2);
    Word w{of2.sphere.x[1], of2.sphere.xs[1]};
    auto [shift, weight] = compose_word(of2, w);
    CHECK(shift == std::vector<long>{0, 0, 0});
    CHECK(weight.exp_m == std::vector<int>{0, 2, 2});
    CHECK(weight.roots.empty());
}

TEST_CASE("adjointness and sigma intertwining hold symbolically") {
    for (int n = 1; n <= 3; ++n) {
        CHECK(adjointness_holds(build_rep(RepFamily::EvenPlus, n)));
        CHECK(adjointness_holds(build_rep(RepFamily::EvenMinus, n)));
        CHECK(adjointness_holds(build_rep(RepFamily::OddLambda, n, GaussRational(Rational(1)))));
        CHECK(adjointness_holds(build_rep(RepFamily::OddFourier, n)));
        CHECK(sigma_intertwines(build_rep(RepFamily::EvenPlus, n), build_rep(RepFamily::EvenMinus, n)));
    }
}

TEST_CASE("relation checks pass numerically") {
    ShiftRep ep1 = build_rep(RepFamily::EvenPlus, 1);
    auto rep = relation_check(ep1, 2.0, 30, 1e-12);
    CHECK(rep.pass());
    CHECK(rep.states_checked > 0);
    CHECK(rep.states_skipped > 0);

    ShiftRep ol2 = build_rep(RepFamily::OddLambda, 1, GaussRational(Rational(1)));
    CHECK(relation_check(ol2, 2.0, 30, 1e-12).pass());

    // corrupted weight fails with a witness
    ShiftRep bad = ep1;
    bad.actions[bad.sphere.x[1]].weight.coeff = GaussRational(Rational(2));
    auto fail = relation_check(bad, 2.0, 10, 1e-12);
    CHECK_FALSE(fail.pass());
    CHECK_FALSE(fail.failures.empty());
}

TEST_CASE("exact traces of x0 powers") {
    for (int n = 1; n <= 3; ++n) {
        ShiftRep ep = build_rep(RepFamily::EvenPlus, n);
        SpherePoly x0 = ep.sphere.gen_poly(ep.sphere.x0);
        TraceValue tr = trace_exact(ep, x0);
        CHECK(tr.scalar() == GQRat(one_minus_pow_inv(1, n)));
    }
    ShiftRep ep1 = build_rep(RepFamily::EvenPlus, 1);
    CHECK_THROWS_AS(trace_exact(ep1, ep1.sphere.unit()).scalar(), NotTraceClass);
    CHECK(trace_exact(ep1, ep1.sphere.gen_poly(ep1.sphere.x[1])).is_zero());

    // x0^3 in n=1: geometric series of ratio q^-3
    SpherePoly x0 = ep1.sphere.gen_poly(ep1.sphere.x0);
    CHECK(trace_exact(ep1, x0 * x0 * x0).scalar() == GQRat(one_minus_pow_inv(3, 1)));
}

TEST_CASE("odd-family traces carry the phase power") {
    ShiftRep ol = build_rep(RepFamily::OddLambda, 1, GaussRational(Rational(3, 5), Rational(4, 5)));
    SpherePoly x1 = ol.sphere.gen_poly(ol.sphere.x[1]);
    TraceValue tr = trace_exact(ol, x1);
    REQUIRE(tr.parts.size() == 1);
    CHECK(tr.parts.count(1) == 1);
    CHECK(tr.parts.at(1) == GQRat(one_minus_pow_inv(1, 1)));
    CHECK_THROWS_AS(tr.scalar(), ComputationError);
}

TEST_CASE("sign flip under sigma for x0-odd monomials") {
    for (int n = 1; n <= 2; ++n) {
        ShiftRep plus = build_rep(RepFamily::EvenPlus, n);
        ShiftRep minus = build_rep(RepFamily::EvenMinus, n);
        SpherePoly x0 = plus.sphere.gen_poly(plus.sphere.x0);
        SpherePoly x1s = plus.sphere.gen_poly(plus.sphere.xs[1]);
        SpherePoly x1 = plus.sphere.gen_poly(plus.sphere.x[1]);
        SpherePoly m = x0 * x1s * x1; // x0-degree one, balanced shifts
        TraceValue tp = trace_exact(plus, m);
        TraceValue tm = trace_exact(minus, m);
        GQRat diff = tp.scalar() - tm.scalar();
        CHECK(diff == tp.scalar() + tp.scalar());
    }
}

TEST_CASE("numeric truncations agree with exact traces") {
    ShiftRep ep1 = build_rep(RepFamily::EvenPlus, 1);
    SpherePoly x0 = ep1.sphere.gen_poly(ep1.sphere.x0);

    auto op = truncate(ep1, x0, 2.0, 40);
    NumericTrace nt = numeric_trace(op);
    CHECK(std::abs(nt.value.real() - 2.0) <= nt.tail_bound + 1e-12);
    CHECK(nt.tail_bound < 1e-10);

    auto op3 = truncate(ep1, x0 * x0 * x0, 2.0, 40);
    NumericTrace nt3 = numeric_trace(op3);
    CHECK(std::abs(nt3.value.real() - 8.0 / 7.0) <= nt3.tail_bound + 1e-12);

    auto opx1 = truncate(ep1, ep1.sphere.gen_poly(ep1.sphere.x[1]), 2.0, 10);
    CHECK(std::abs(numeric_trace(opx1).value) == 0.0);
}

TEST_CASE("random balanced monomials: exact equals numeric within the tail") {
    std::mt19937_64 rng(99);
    auto run_family = [&](ShiftRep rep, GaussRational lam) {
        std::uniform_int_distribution<size_t> pick(0, rep.sphere.pres->gen_count() - 1);
        int done = 0;
        for (int t = 0; t < 600 && done < 50; ++t) {
            Word w(4);
            for (auto& g : w) g = static_cast<GenId>(pick(rng));
            auto [shift, weight] = compose_word(rep, w);
            bool diag = true;
            for (long s : shift) diag = diag && s == 0;
            if (!diag) continue;
            SpherePoly p = SpherePoly::monomial_unchecked(rep.sphere.pres, w, GLaurent(1));
            TraceValue exact;
            try {
                exact = trace_exact(rep, p);
            } catch (const NotTraceClass&) {
                // the numeric path must agree that this diverges
                REQUIRE_THROWS_AS(numeric_trace(truncate(rep, p, 2.0, 40)), NotTraceClass);
                continue;
            }
            ++done;
            GQRat val = exact.at_lambda(lam);
            auto re = val.re().evaluate(2.0);
            auto im = val.im().evaluate(2.0);
            NumericTrace nt = numeric_trace(truncate(rep, p, 2.0, 40));
            REQUIRE(std::abs(nt.value - std::complex<double>(re, im)) <= nt.tail_bound + 1e-9);
        }
        REQUIRE(done == 50);
    };
    for (int n = 1; n <= 3; ++n) {
        run_family(build_rep(RepFamily::EvenPlus, n), GaussRational(Rational(1)));
        GaussRational lam(Rational(3, 5), Rational(4, 5));
        run_family(build_rep(RepFamily::OddLambda, n, lam), lam);
    }
}

TEST_CASE("spectra of truncated x*x and xx* agree off the boundary") {
    // the numeric shadow of {0} u Spec x*x = {0} u Spec xx*
    ShiftRep ep1 = build_rep(RepFamily::EvenPlus, 1);
    SpherePoly x1 = ep1.sphere.gen_poly(ep1.sphere.x[1]);
    long K = 20;
    auto opa = truncate(ep1, x1.star() * x1, 2.0, K);
    auto opb = truncate(ep1, x1 * x1.star(), 2.0, K);
    std::multiset<double> sa, sb;
    for (long k = 0; k < K; ++k) {
        auto ra = opa.apply_state({k});
        auto rb = opb.apply_state({k});
        // both operators are diagonal here
        double va = ra.empty() ? 0.0 : ra[0].second.real();
        double vb = rb.empty() ? 0.0 : rb[0].second.real();
        if (k >= 1) sa.insert(std::round(va * 1e12) / 1e12);
        if (k < K - 1) sb.insert(std::round(vb * 1e12) / 1e12);
    }
    CHECK(sa == sb);
}
