#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace chainstat {

/// Dense univariate polynomial with complex coefficients, lowest degree
/// first. Trailing near-zero coefficients are trimmed on construction.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<std::complex<double>> coeffs, double trim_tol = 0.0)
        : coeffs_(std::move(coeffs)) {
        trim(trim_tol);
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

    std::complex<double> eval(std::complex<double> z) const {
        std::complex<double> r = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * z + *it;
        return r;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<std::complex<double>> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            d[i - 1] = coeffs_[i] * static_cast<double>(i);
        return Polynomial(std::move(d));
    }

    double magnitude() const {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    Polynomial monic() const {
        if (is_zero()) return {};
        std::vector<std::complex<double>> c = coeffs_;
        const auto l = c.back();
        for (auto& x : c) x /= l;
        return Polynomial(std::move(c));
    }

  private:
    void trim(double tol) {
        while (!coeffs_.empty() && std::abs(coeffs_.back()) <= tol) coeffs_.pop_back();
    }
    std::vector<std::complex<double>> coeffs_;
};

/// Ratio of two polynomials; houses the probability generating function.
struct RationalFunction {
    Polynomial numerator;
    Polynomial denominator;

    std::complex<double> eval(std::complex<double> z) const {
        return numerator.eval(z) / denominator.eval(z);
    }

    /// Growth order at infinity; Eq.-(13)-style residue sums hold for t
    /// beyond this threshold.
    int t0() const { return std::max(0, numerator.degree() - denominator.degree()); }
};

}  // namespace chainstat
