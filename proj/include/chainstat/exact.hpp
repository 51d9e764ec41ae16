#pragma once

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chainstat/errors.hpp"

namespace chainstat::exact {

using Rational = boost::multiprecision::cpp_rational;

/// Element of Q(i): exact Gaussian rational. Every double (and hence every
/// bound counter value) embeds exactly, so the whole elimination stays exact
/// until root finding.
struct GRational {
    Rational re{0};
    Rational im{0};

    GRational() = default;
    GRational(int v) : re(v) {}
    GRational(Rational r) : re(std::move(r)) {}
    GRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GRational from(std::complex<double> z) {
        return GRational(Rational(z.real()), Rational(z.imag()));
    }

    bool is_zero() const { return re == 0 && im == 0; }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    friend GRational operator+(const GRational& a, const GRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GRational operator-(const GRational& a, const GRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GRational operator-(const GRational& a) { return {-a.re, -a.im}; }
    friend GRational operator*(const GRational& a, const GRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GRational operator/(const GRational& a, const GRational& b) {
        const Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero GRational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    bool operator==(const GRational& o) const { return re == o.re && im == o.im; }
};

/// Dense polynomial over Q(i), lowest degree first, exactly normalized.
class XPoly {
  public:
    XPoly() = default;
    explicit XPoly(GRational c) {
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }
    explicit XPoly(std::vector<GRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static XPoly z() { return XPoly(std::vector<GRational>{GRational(0), GRational(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<GRational>& coeffs() const { return coeffs_; }
    const GRational& leading() const { return coeffs_.back(); }

    friend XPoly operator+(const XPoly& a, const XPoly& b) {
        std::vector<GRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = c[i] + a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] = c[i] + b.coeffs_[i];
        return XPoly(std::move(c));
    }

    friend XPoly operator-(const XPoly& a, const XPoly& b) {
        std::vector<GRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = c[i] + a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] = c[i] - b.coeffs_[i];
        return XPoly(std::move(c));
    }

    friend XPoly operator*(const XPoly& a, const XPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
        return XPoly(std::move(c));
    }

    /// Quotient of an exact division; throws if the division leaves a
    /// remainder (Bareiss guarantees divisibility where this is used).
    XPoly divide_exact(const XPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
        return q;
    }

    std::pair<XPoly, XPoly> divmod(const XPoly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<GRational> rem = coeffs_;
        std::vector<GRational> quo;
        const int dd = d.degree();
        while (static_cast<int>(rem.size()) - 1 >= dd && !rem.empty()) {
            const int k = static_cast<int>(rem.size()) - 1 - dd;
            GRational f = rem.back() / d.leading();
            if (static_cast<int>(quo.size()) < k + 1) quo.resize(k + 1);
            quo[k] = f;
            for (int i = 0; i <= dd; ++i)
                rem[k + i] = rem[k + i] - f * d.coeffs_[i];
            while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        }
        return {XPoly(std::move(quo)), XPoly(std::move(rem))};
    }

    XPoly monic() const {
        if (is_zero()) return {};
        std::vector<GRational> c = coeffs_;
        const GRational l = leading();
        for (auto& x : c) x = x / l;
        return XPoly(std::move(c));
    }

    std::vector<std::complex<double>> to_complex() const {
        std::vector<std::complex<double>> c;
        c.reserve(coeffs_.size());
        for (const auto& x : coeffs_) c.push_back(x.to_complex());
        return c;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<GRational> coeffs_;
};

inline XPoly gcd(XPoly a, XPoly b) {
    while (!b.is_zero()) {
        XPoly r = a.divmod(b).second;
        a = std::move(b);
        b = r.is_zero() ? std::move(r) : r.monic();
    }
    return a.is_zero() ? a : a.monic();
}

/// Fraction-free (Bareiss) determinant of a polynomial matrix. Row pivoting
/// on structural nonzeros only; returns the zero polynomial for singular
/// input.
inline XPoly bareiss_determinant(std::vector<std::vector<XPoly>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return XPoly(GRational(1));
    XPoly prev(GRational(1));
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return {};
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                XPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = num.divide_exact(prev);
            }
            m[i][k] = XPoly();
        }
        prev = m[k][k];
    }
    XPoly det = m[n - 1][n - 1];
    if (sign < 0) det = XPoly() - det;
    return det;
}

}  // namespace chainstat::exact
