#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ncs/laurent.hpp"
#include "ncs/phase.hpp"
#include "ncs/qratfunc.hpp"

using namespace ncs;

namespace {

QLaurent one_minus_qinv(int m) { return QLaurent::one() - QLaurent::q(-m); }

QLaurent random_qlaurent(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 4), expd(-6, 6), numd(-9, 9), dend(1, 5);
    QLaurent p;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) p.add_term(expd(rng), Rational(numd(rng), dend(rng)));
    return p;
}

Phase random_phase(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 3), halves(-4, 4), numd(-5, 5), dend(1, 3);
    Phase p;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Phase mono = Phase::unit(1, 2, halves(rng)) * Phase::unit(1, 3, halves(rng));
        GaussRational c(Rational(numd(rng), dend(rng)), Rational(numd(rng), dend(rng)));
        p += mono * Phase(c);
    }
    return p;
}

} // namespace

TEST_CASE("rational basics") {
    Rational a(3, 6);
    CHECK(a == Rational(1, 2));
    CHECK((a * a.inv()).is_one());
    CHECK_THROWS_AS(Rational(0).inv(), DivisionByZero);
    CHECK(Rational(-4, 8).str() == "-1/2");
    CHECK(Rational(2).pow(-3) == Rational(1, 8));
}

TEST_CASE("q-laurent representation of 1 - q^-2") {
    QLaurent p = one_minus_qinv(2);
    REQUIRE(p.terms().size() == 2);
    CHECK(p.coeff(0) == Rational(1));
    CHECK(p.coeff(-2) == Rational(-1));
    CHECK(p.str() == "1 - q^-2");
}

TEST_CASE("qratfunc inverse multiplies to one") {
    QRatFunc f(one_minus_qinv(1));
    CHECK((f * f.inv()).is_one());
    CHECK_THROWS_AS(QRatFunc::zero().inv(), DivisionByZero);
}

TEST_CASE("phase conjugation inverts the phase") {
    Phase l = Phase::unit(1, 2);
    CHECK(l.conj() == l.inv());
    CHECK((l * l.conj()).is_one());
    CHECK(Phase::unit(2, 1) == l.inv());
    CHECK(Phase::unit(2, 2).is_one());
    CHECK(Phase::unit(1, 2, 1).str() == "L12^(1/2)");
    CHECK_THROWS_AS((l + Phase::one()).inv(), NotInvertible);
    CHECK_THROWS_AS(Phase::zero().inv(), DivisionByZero);
}

TEST_CASE("q derivative at 1") {
    QLaurent p = QLaurent::q(1) - QLaurent::q(-1);
    CHECK(q_derivative_at_1(p) == Rational(2));
    CHECK(q_derivative_at_1(QLaurent(5)) == Rational(0));

    // oracle: central finite difference at q = 1 +- 1e-6
    QLaurent g = one_minus_qinv(2);
    double h = 1e-6;
    double fd = (g.evaluate(1 + h) - g.evaluate(1 - h)) / (2 * h);
    Rational exact = q_derivative_at_1(g);
    CHECK(exact == Rational(2));
    CHECK(std::abs(fd - exact.to_double()) < 1e-6);
}

TEST_CASE("numeric evaluation") {
    QRatFunc f = QRatFunc(one_minus_qinv(1)).inv();
    CHECK(f.evaluate(2.0) == Catch::Approx(2.0).epsilon(1e-12));
    QRatFunc g = QRatFunc(one_minus_qinv(2)).inv();
    CHECK(g.evaluate(2.0) == Catch::Approx(4.0 / 3.0).epsilon(1e-12));

    // oracle: exact rational arithmetic for (1/2)(q^-1 - 1)^2 at q = 2
    QLaurent h = (QLaurent::q(-1) - QLaurent::one());
    QLaurent hh = (h * h).scaled(Rational(1, 2));
    Rational exact = evaluate_exact(hh, Rational(2));
    CHECK(exact == Rational(1, 8));
    CHECK(hh.evaluate(2.0) == Catch::Approx(0.125).epsilon(1e-12));

    QRatFunc pole(QLaurent::one(), QLaurent::one() - QLaurent::q(-1));
    CHECK_THROWS_AS(pole.evaluate_exact(Rational(1)), PoleAtValue);
}

TEST_CASE("relative numeric error stays under 1e-12 on moderate degrees") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        QLaurent p = random_qlaurent(rng);
        for (double qv : {1.1, 2.0, 10.0}) {
            double approx = p.evaluate(qv);
            // exact value via rationals at rational q
            Rational exact = evaluate_exact(p, Rational(qv == 1.1 ? 11 : long(qv) * 10, 10));
            if (qv == 1.1 || qv == 2.0 || qv == 10.0) {
                double ex = exact.to_double();
                double scale = std::max(1.0, std::abs(ex));
                CHECK(std::abs(approx - ex) / scale < 1e-12);
            }
        }
    }
}

TEST_CASE("ring axioms on randomized inputs") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 1000; ++t) {
        QLaurent a = random_qlaurent(rng), b = random_qlaurent(rng), c = random_qlaurent(rng);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE((a + b) * c == a * c + b * c);
    }
    for (int t = 0; t < 200; ++t) {
        Phase a = random_phase(rng), b = random_phase(rng), c = random_phase(rng);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("conjugation is involutive") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        Phase p = random_phase(rng);
        REQUIRE(p.conj().conj() == p);
    }
    GaussRational g(Rational(3, 5), Rational(4, 5));
    CHECK(g.conj().conj() == g);
    CHECK(g.is_unit_modulus());
    CHECK((g * g.conj()).is_one());
}

TEST_CASE("qratfunc canonical form is unique") {
    std::mt19937_64 rng(13);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 200; ++t) {
        QLaurent a = random_qlaurent(rng), b = random_qlaurent(rng);
        QLaurent c = random_qlaurent(rng), d = random_qlaurent(rng);
        if (b.is_zero() || d.is_zero()) continue;
        ++checked;
        QRatFunc f(a, b), g(c, d);
        bool equal_fracs = (a * d == c * b);
        REQUIRE((f == g) == equal_fracs);
    }
    REQUIRE(checked >= 100);

    // same value through different representatives
    QLaurent n = one_minus_qinv(2) * (QLaurent::q(3) + QLaurent(2));
    QLaurent m = one_minus_qinv(2) * (QLaurent::q(-1) - QLaurent(7));
    QRatFunc f(n, m), g(QLaurent::q(3) + QLaurent(2), QLaurent::q(-1) - QLaurent(7));
    CHECK(f == g);
}

TEST_CASE("pretty printing of geometric denominators") {
    QRatFunc f = QRatFunc(one_minus_qinv(2)).inv().pow(2);
    CHECK(f.str_pretty() == "1/(1 - q^-2)^2");
    QRatFunc g = QRatFunc(one_minus_qinv(1)).inv();
    CHECK(g.str_pretty() == "1/(1 - q^-1)");
}

TEST_CASE("gqrat field arithmetic") {
    GQRat i_val(QRatFunc::zero(), QRatFunc::one());
    CHECK((i_val * i_val) == GQRat(QRatFunc(Rational(-1))));
    GQRat z(QRatFunc(one_minus_qinv(1)), QRatFunc::one());
    CHECK((z / z).is_one());
    CHECK(z.conj().conj() == z);
}
