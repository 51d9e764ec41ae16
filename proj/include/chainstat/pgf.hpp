#pragma once

#include <complex>
#include <span>
#include <vector>

#include "chainstat/counted_matrix.hpp"
#include "chainstat/errors.hpp"
#include "chainstat/exact.hpp"
#include "chainstat/polynomial.hpp"

namespace chainstat {

/// Probability generating function of the process, as a reduced rational
/// function in z. Built from the eigenvalue-1 system of M~(z) = z M^T +
/// diag(I): with terminal components normalized to 1, the non-terminal
/// components satisfy x_j - z sum_i M[i,j] x_i = z sum_{i in I} M[i,j], and
/// the PGF is the start component. Solved by Cramer's rule with fraction-free
/// elimination over Q(i)[z]; every bound counter value embeds exactly, so the
/// result is exact until demotion to doubles.
inline RationalFunction pgf(const CountedMatrix& m,
                            std::span<const Complex> counter_values) {
    if (counter_values.size() != m.counters().size())
        throw ConfigError("pgf: expected one value per counter");

    const int n = m.dim();
    std::vector<int> unknown_of(n, -1);
    std::vector<int> unknowns;
    for (int i = 0; i < n; ++i)
        if (!m.is_terminal(i)) {
            unknown_of[i] = static_cast<int>(unknowns.size());
            unknowns.push_back(i);
        }
    if (m.is_terminal(0)) {
        // start is absorbing: completion at t = 0 with certainty
        return {Polynomial({1.0}), Polynomial({1.0})};
    }
    const int k = static_cast<int>(unknowns.size());

    using exact::GRational;
    using exact::XPoly;

    // exact bound entry values
    std::vector<GRational> gvals;
    gvals.reserve(counter_values.size());
    for (auto v : counter_values) gvals.push_back(GRational::from(v));
    auto entry_value = [&](const CounterPoly& p) {
        GRational s;
        for (const auto& [e, c] : p.terms()) {
            GRational term{exact::Rational(c)};
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::uint32_t x = 0; x < e[i]; ++x) term = term * gvals[i];
            s = s + term;
        }
        return s;
    };

    // B[r][c] = delta_{rc} - z * M[unknowns[c], unknowns[r]]; rhs_r = z * sum
    // over terminal rows of column unknowns[r]
    std::vector<std::vector<XPoly>> B(k, std::vector<XPoly>(k));
    std::vector<XPoly> rhs(k);
    for (int r = 0; r < k; ++r) {
        B[r][r] = XPoly(GRational(1));
        const int j = unknowns[r];
        GRational term_sum;
        for (const auto& [key, poly] : m.entries()) {
            if (key.first != j) continue;
            const int i = key.second;
            const GRational v = entry_value(poly);
            if (v.is_zero()) continue;
            if (m.is_terminal(i)) {
                term_sum = term_sum + v;
            } else {
                // coefficient of x_{unknown_of[i]} gains -z*v
                XPoly zterm(std::vector<GRational>{GRational(0), -v});
                B[r][unknown_of[i]] = B[r][unknown_of[i]] + zterm;
            }
        }
        rhs[r] = XPoly(std::vector<GRational>{GRational(0), term_sum});
    }

    XPoly den = exact::bareiss_determinant(B);
    if (den.is_zero())
        throw DegenerateNullSpace("singular eigen-system; malformed process matrix");

    std::vector<std::vector<XPoly>> B1 = B;
    for (int r = 0; r < k; ++r) B1[r][0] = rhs[r];  // unknown 0 is the start state
    XPoly num = exact::bareiss_determinant(B1);

    // exact reduction
    if (!num.is_zero()) {
        XPoly g = exact::gcd(num, den);
        if (g.degree() > 0) {
            num = num.divide_exact(g);
            den = den.divide_exact(g);
        }
    }

    RationalFunction f{Polynomial(num.to_complex()), Polynomial(den.to_complex())};

    // normalization sanity when this is a completion-time PGF
    bool all_ones = true;
    for (auto v : counter_values)
        if (v != Complex(1.0)) all_ones = false;
    if (all_ones && !f.numerator.is_zero()) {
        const auto v = f.eval(1.0);
        if (std::abs(v - 1.0) > 1e-9)
            throw NonTerminatingProcess("PGF(1) = " + std::to_string(v.real()) +
                                        "; process does not terminate with probability 1");
    }
    return f;
}

inline RationalFunction pgf(const CountedMatrix& m) {
    std::vector<Complex> ones(m.counters().size(), Complex(1.0));
    return pgf(m, ones);
}

}  // namespace chainstat
