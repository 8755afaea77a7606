#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ncpoly.hpp"

namespace ncs {

enum class MatKind { Idempotent, SelfAdjoint, Unipotent, Unitary };

template <class S>
struct MatCheckResult {
    bool ok = true;
    size_t row = 0, col = 0;
    NCPoly<S> residual; // first offending entry, zero when ok
    std::string witness() const {
        if (ok) return "";
        return "entry (" + std::to_string(row) + "," + std::to_string(col) + "): " + residual.str();
    }
};

// Square matrix over a noncommutative polynomial algebra.
template <class S>
class MatNC {
public:
    MatNC() = default;
    MatNC(PresPtr<S> pres, size_t r)
        : pres_(std::move(pres)), r_(r), entries_(r * r, NCPoly<S>::zero(pres_)) {}

    static MatNC identity(PresPtr<S> pres, size_t r, const S& c = S(1)) {
        MatNC m(pres, r);
        for (size_t i = 0; i < r; ++i) m.at(i, i) = NCPoly<S>::unit(pres, c);
        return m;
    }

    static MatNC scalar(PresPtr<S> pres, size_t r, const NCPoly<S>& p) {
        MatNC m(pres, r);
        for (size_t i = 0; i < r; ++i) m.at(i, i) = p;
        return m;
    }

    // 2x2 block assembly from equally sized square blocks.
    static MatNC from_blocks(const MatNC& a, const MatNC& b, const MatNC& c, const MatNC& d) {
        size_t h = a.size();
        MatNC m(a.pres_, 2 * h);
        for (size_t i = 0; i < h; ++i)
            for (size_t j = 0; j < h; ++j) {
                m.at(i, j) = a.at(i, j);
                m.at(i, j + h) = b.at(i, j);
                m.at(i + h, j) = c.at(i, j);
                m.at(i + h, j + h) = d.at(i, j);
            }
        return m;
    }

    size_t size() const { return r_; }
    const PresPtr<S>& pres() const { return pres_; }

    NCPoly<S>& at(size_t i, size_t j) { return entries_[i * r_ + j]; }
    const NCPoly<S>& at(size_t i, size_t j) const { return entries_[i * r_ + j]; }

    friend MatNC operator+(const MatNC& a, const MatNC& b) {
        MatNC r(a.pres_, a.r_);
        for (size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] + b.entries_[i];
        return r;
    }
    friend MatNC operator-(const MatNC& a, const MatNC& b) {
        MatNC r(a.pres_, a.r_);
        for (size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] - b.entries_[i];
        return r;
    }
    friend MatNC operator*(const MatNC& a, const MatNC& b) {
        MatNC r(a.pres_, a.r_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t j = 0; j < a.r_; ++j) {
                NCPoly<S> acc = NCPoly<S>::zero(a.pres_);
                for (size_t k = 0; k < a.r_; ++k) acc += a.at(i, k) * b.at(k, j);
                r.at(i, j) = acc;
            }
        return r;
    }

    MatNC scaled(const S& c) const {
        MatNC r(pres_, r_);
        for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i].scaled(c);
        return r;
    }

    MatNC adjoint() const {
        MatNC r(pres_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < r_; ++j) r.at(i, j) = at(j, i).star();
        return r;
    }

    NCPoly<S> trace() const {
        NCPoly<S> acc = NCPoly<S>::zero(pres_);
        for (size_t i = 0; i < r_; ++i) acc += at(i, i);
        return acc;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    friend bool operator==(const MatNC& a, const MatNC& b) {
        return a.r_ == b.r_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const MatNC& a, const MatNC& b) { return !(a == b); }

private:
    PresPtr<S> pres_;
    size_t r_ = 0;
    std::vector<NCPoly<S>> entries_;
};

// Entrywise reduction to the exact defining identity of the requested kind.
template <class S>
MatCheckResult<S> mat_check(const MatNC<S>& m, MatKind kind) {
    auto first_nonzero = [](const MatNC<S>& d) {
        MatCheckResult<S> res;
        for (size_t i = 0; i < d.size(); ++i)
            for (size_t j = 0; j < d.size(); ++j)
                if (!d.at(i, j).is_zero()) {
                    res.ok = false;
                    res.row = i;
                    res.col = j;
                    res.residual = d.at(i, j);
                    return res;
                }
        return res;
    };
    switch (kind) {
        case MatKind::Idempotent:
            return first_nonzero(m * m - m);
        case MatKind::SelfAdjoint:
            return first_nonzero(m.adjoint() - m);
        case MatKind::Unipotent:
            return first_nonzero(m * m - MatNC<S>::identity(m.pres(), m.size()));
        case MatKind::Unitary: {
            auto res = first_nonzero(m * m.adjoint() - MatNC<S>::identity(m.pres(), m.size()));
            if (!res.ok) return res;
            return first_nonzero(m.adjoint() * m - MatNC<S>::identity(m.pres(), m.size()));
        }
    }
    return {};
}

} // namespace ncs
