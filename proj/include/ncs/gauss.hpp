#pragma once

#include <string>

#include "rational.hpp"

namespace ncs {

// Gaussian rational a + b*i.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(Rational re) : re_(std::move(re)) {}
    GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    GaussRational(long n) : re_(n) {}
    GaussRational(int n) : re_(n) {}

    static GaussRational one() { return GaussRational(Rational(1)); }
    static GaussRational zero() { return GaussRational(); }
    static GaussRational i() { return GaussRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussRational conj() const { return GaussRational(re_, -im_); }

    Rational norm2() const { return re_ * re_ + im_ * im_; }

    bool is_unit_modulus() const { return norm2().is_one(); }

    GaussRational inv() const {
        Rational n = norm2();
        if (n.is_zero()) throw DivisionByZero("gaussian 1/0");
        return GaussRational(re_ / n, -im_ / n);
    }

    GaussRational pow(long e) const {
        GaussRational base = e >= 0 ? *this : inv();
        unsigned long k = static_cast<unsigned long>(e >= 0 ? e : -e);
        GaussRational acc = one();
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return GaussRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return GaussRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return GaussRational(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussRational operator/(const GaussRational& a, const GaussRational& b) { return a * b.inv(); }
    GaussRational operator-() const { return GaussRational(-re_, -im_); }
    GaussRational& operator+=(const GaussRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussRational& operator*=(const GaussRational& o) { *this = *this * o; return *this; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
    friend bool operator<(const GaussRational& a, const GaussRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    std::string str() const {
        if (im_.is_zero()) return re_.str();
        if (re_.is_zero()) return im_.is_one() ? "i" : im_.str() + "*i";
        std::string s = re_.str();
        if (!im_.is_negative()) s += "+";
        s += im_.is_one() ? "i" : im_.str() + "*i";
        return s;
    }

private:
    Rational re_{};
    Rational im_{};
};

inline GaussRational conj(const GaussRational& g) { return g.conj(); }

} // namespace ncs
