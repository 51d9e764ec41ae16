#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "chainstat/errors.hpp"
#include "chainstat/polynomial.hpp"

namespace chainstat {

/// Poles of a PGF with their residues. Simple poles only; anything that
/// looks multiple is rejected so callers can fall back to matrix powers.
struct PoleSet {
    struct Pole {
        std::complex<double> z;
        std::complex<double> residue;
    };
    std::vector<Pole> poles;
    int t0 = 0;  // residue formulas valid for t > t0
};

namespace detail {

inline std::vector<std::complex<double>> companion_roots(const Polynomial& monic) {
    const int n = monic.degree();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -monic.coeffs()[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

inline std::complex<double> newton_polish(const Polynomial& p, const Polynomial& dp,
                                          std::complex<double> z) {
    for (int it = 0; it < 8; ++it) {
        const auto d = dp.eval(z);
        if (std::abs(d) == 0.0) break;
        const auto step = p.eval(z) / d;
        z -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

}  // namespace detail

/// Locate the denominator roots (companion-matrix eigenvalues plus Newton
/// polish) and compute the residue N(z_i)/D'(z_i) at each.
inline PoleSet poles_and_residues(const RationalFunction& f) {
    PoleSet ps;
    ps.t0 = f.t0();
    if (f.denominator.degree() < 1) return ps;  // polynomial PGF: no poles

    const Polynomial den = f.denominator.monic();
    const Polynomial dden = den.derivative();
    auto roots = detail::companion_roots(den);
    for (auto& z : roots) z = detail::newton_polish(den, dden, z);

    const double scale = f.denominator.magnitude();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            const double sep = std::abs(roots[i] - roots[j]);
            if (sep < 1e-8 * std::max(1.0, std::abs(roots[i])))
                throw MultiplePoleDetected("denominator roots closer than tolerance");
        }
        if (std::abs(roots[i] - 1.0) < 1e-9)
            throw NonTerminatingProcess("PGF pole at z = 1");
        if (std::abs(roots[i]) <= 1.0 - 1e-9)
            throw MultiplePoleDetected("pole inside the unit disk; root finding failed");
    }

    const Polynomial dden_orig = f.denominator.derivative();
    for (auto z : roots) {
        const auto r = f.numerator.eval(z) / dden_orig.eval(z);
        ps.poles.push_back({z, r});
    }
    return ps;
}

namespace detail {

inline std::complex<double> powi(std::complex<double> z, long n) {
    std::complex<double> r = 1.0;
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

inline double real_checked(std::complex<double> v, const char* what) {
    if (std::abs(v.imag()) > 1e-9)
        throw ResidualImaginary(std::string(what) + ": imaginary remainder " +
                                std::to_string(v.imag()));
    return v.real();
}

}  // namespace detail

/// p_t = -sum_i Res[f, z_i] / z_i^{t+1}, valid for t > t0.
inline double pmf_from_poles(const PoleSet& ps, long t) {
    std::complex<double> s = 0.0;
    for (const auto& p : ps.poles) s += p.residue / detail::powi(p.z, t + 1);
    return detail::real_checked(-s, "pmf");
}

/// sum_{s=a..t} p_s from the residue form (valid when a > t0); closed
/// geometric sum per pole. t may be huge; pass t < a for the infinite tail.
inline double cdf_range_from_poles(const PoleSet& ps, long a, long t) {
    std::complex<double> s = 0.0;
    for (const auto& p : ps.poles) {
        const std::complex<double> x = 1.0 / p.z;
        const std::complex<double> xa = detail::powi(x, a + 1);
        const std::complex<double> tail =
            t < a ? xa / (1.0 - x) : xa * (1.0 - detail::powi(x, t - a + 1)) / (1.0 - x);
        s += p.residue * tail;
    }
    return detail::real_checked(-s, "cdf");
}

/// Mean of the residue series summed from t = 0: -sum Res/(1-z)^2. Exact for
/// processes with t0 = 0; the distribution facade applies the small-t
/// correction otherwise.
inline double mean_from_poles(const PoleSet& ps) {
    std::complex<double> s = 0.0;
    for (const auto& p : ps.poles) s += p.residue / ((1.0 - p.z) * (1.0 - p.z));
    return detail::real_checked(-s, "mean");
}

/// Second moment of the residue series: sum Res (1+z)/(1-z)^3.
inline double second_moment_from_poles(const PoleSet& ps) {
    std::complex<double> s = 0.0;
    for (const auto& p : ps.poles) {
        const auto d = 1.0 - p.z;
        s += p.residue * (1.0 + p.z) / (d * d * d);
    }
    return detail::real_checked(s, "second moment");
}

}  // namespace chainstat
