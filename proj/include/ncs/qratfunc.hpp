#pragma once

#include <optional>
#include <string>
#include <utility>

#include "laurent.hpp"

namespace ncs {

// Rational function in q with rational coefficients, kept in a unique
// canonical form: gcd(num, den) = 1, den a polynomial with min exponent 0
// and constant coefficient 1.
class QRatFunc {
public:
    QRatFunc() : num_(QLaurent::zero()), den_(QLaurent::one()) {}
    QRatFunc(const QLaurent& n) : num_(n), den_(QLaurent::one()) {}
    QRatFunc(const Rational& r) : num_(QLaurent(r)), den_(QLaurent::one()) {}
    QRatFunc(int n) : QRatFunc(Rational(n)) {}
    QRatFunc(const QLaurent& n, const QLaurent& d) : num_(n), den_(d) { canonicalize(); }

    static QRatFunc one() { return QRatFunc(QLaurent::one()); }
    static QRatFunc zero() { return QRatFunc(); }

    const QLaurent& num() const { return num_; }
    const QLaurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }

    // A constant rational function, if it is one.
    std::optional<Rational> as_constant() const {
        if (num_.is_zero()) return Rational(0);
        if (den_.is_one() && num_.is_constant()) return num_.constant_part();
        return std::nullopt;
    }

    QRatFunc conj() const { return *this; } // coefficients are real, q is real

    QRatFunc inv() const {
        if (is_zero()) throw DivisionByZero("inverse of zero rational function");
        return QRatFunc(den_, num_);
    }

    QRatFunc pow(long e) const {
        QRatFunc base = e >= 0 ? *this : inv();
        unsigned long k = static_cast<unsigned long>(e >= 0 ? e : -e);
        QRatFunc acc = one();
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    friend QRatFunc operator+(const QRatFunc& a, const QRatFunc& b) {
        return QRatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QRatFunc operator-(const QRatFunc& a, const QRatFunc& b) {
        return QRatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QRatFunc operator*(const QRatFunc& a, const QRatFunc& b) {
        return QRatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend QRatFunc operator/(const QRatFunc& a, const QRatFunc& b) { return a * b.inv(); }
    QRatFunc operator-() const {
        QRatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    QRatFunc& operator+=(const QRatFunc& o) { *this = *this + o; return *this; }
    QRatFunc& operator-=(const QRatFunc& o) { *this = *this - o; return *this; }
    QRatFunc& operator*=(const QRatFunc& o) { *this = *this * o; return *this; }

    friend bool operator==(const QRatFunc& a, const QRatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const QRatFunc& a, const QRatFunc& b) { return !(a == b); }
    friend bool operator<(const QRatFunc& a, const QRatFunc& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    double evaluate(double qv) const {
        double d = den_.evaluate(qv);
        if (d == 0.0) throw PoleAtValue("denominator vanishes");
        return num_.evaluate(qv) / d;
    }

    Rational evaluate_exact(const Rational& qv) const {
        Rational d = ncs::evaluate_exact(den_, qv);
        if (d.is_zero()) throw PoleAtValue("denominator vanishes");
        return ncs::evaluate_exact(num_, qv) / d;
    }

    // Plain canonical text.
    std::string str() const {
        if (den_.is_one()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

    // Report form: factors denominators of the shape (1 - q^-m)^k when possible.
    std::string str_pretty() const {
        if (den_.is_one()) return num_.str();
        int32_t span = den_.max_exp() - den_.min_exp();
        for (int32_t m = 1; m <= 8; ++m) {
            if (span % m != 0) continue;
            long k = span / m;
            if (k < 1 || k > 24) continue;
            QRatFunc base(QLaurent::one() - QLaurent::q(-m));
            QRatFunc prod = *this * base.pow(k);
            if (prod.is_laurent() && prod.num_.is_monomial()) {
                std::string head = prod.num_.str();
                std::string tail = "(1 - q^-" + std::to_string(m) + ")";
                if (k > 1) tail += "^" + std::to_string(k);
                return head + "/" + tail;
            }
        }
        return str();
    }

private:
    void canonicalize() {
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        if (num_.is_zero()) {
            den_ = QLaurent::one();
            return;
        }
        int32_t sn = num_.min_exp(), sd = den_.min_exp();
        QLaurent n = num_.shifted(-sn), d = den_.shifted(-sd);
        QLaurent g = laurent_gcd(n, d);
        if (!g.is_one()) {
            QLaurent q, r;
            detail::poly_divmod(n, g, q, r);
            n = q;
            detail::poly_divmod(d, g, q, r);
            d = q;
        }
        Rational c = d.coeff(d.min_exp());
        if (!c.is_one()) {
            Rational ci = c.inv();
            n = n.scaled(ci);
            d = d.scaled(ci);
        }
        if (d.min_exp() != 0) { // division should preserve this, but keep the form pinned
            n = n.shifted(-d.min_exp());
            d = d.shifted(-d.min_exp());
        }
        num_ = n.shifted(sn - sd);
        den_ = d;
    }

    QLaurent num_;
    QLaurent den_;
};

inline QRatFunc conj(const QRatFunc& r) { return r; }

// Element of Q(i)(q): re + i*im with re, im rational functions of q.
class GQRat {
public:
    GQRat() = default;
    GQRat(QRatFunc re) : re_(std::move(re)) {}
    GQRat(QRatFunc re, QRatFunc im) : re_(std::move(re)), im_(std::move(im)) {}
    GQRat(const Rational& r) : re_(QRatFunc(r)) {}
    GQRat(int n) : re_(QRatFunc(n)) {}
    GQRat(const GaussRational& g) : re_(QRatFunc(g.re())), im_(QRatFunc(g.im())) {}
    GQRat(const GLaurent& p) {
        auto [re, im] = split_gaussian(p);
        re_ = QRatFunc(re);
        im_ = QRatFunc(im);
    }

    static GQRat one() { return GQRat(QRatFunc::one()); }
    static GQRat zero() { return GQRat(); }

    const QRatFunc& re() const { return re_; }
    const QRatFunc& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GQRat conj() const { return GQRat(re_, -im_); }

    GQRat inv() const {
        QRatFunc n = re_ * re_ + im_ * im_;
        if (n.is_zero()) throw DivisionByZero("inverse of zero");
        return GQRat(re_ / n, -im_ / n);
    }

    std::optional<Rational> as_rational_constant() const {
        if (!im_.is_zero()) return std::nullopt;
        return re_.as_constant();
    }

    friend GQRat operator+(const GQRat& a, const GQRat& b) { return GQRat(a.re_ + b.re_, a.im_ + b.im_); }
    friend GQRat operator-(const GQRat& a, const GQRat& b) { return GQRat(a.re_ - b.re_, a.im_ - b.im_); }
    friend GQRat operator*(const GQRat& a, const GQRat& b) {
        return GQRat(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GQRat operator/(const GQRat& a, const GQRat& b) { return a * b.inv(); }
    GQRat operator-() const { return GQRat(-re_, -im_); }
    GQRat& operator+=(const GQRat& o) { *this = *this + o; return *this; }
    GQRat& operator*=(const GQRat& o) { *this = *this * o; return *this; }

    friend bool operator==(const GQRat& a, const GQRat& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const GQRat& a, const GQRat& b) { return !(a == b); }

    std::string str() const {
        if (im_.is_zero()) return re_.str_pretty();
        if (re_.is_zero()) return "(" + im_.str_pretty() + ")*i";
        return re_.str_pretty() + " + (" + im_.str_pretty() + ")*i";
    }

private:
    QRatFunc re_{};
    QRatFunc im_{};
};

inline GQRat conj(const GQRat& g) { return g.conj(); }

} // namespace ncs
