#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "chainstat/errors.hpp"

namespace chainstat {

/// Bell-diagonal two-qubit state: coefficients on |Phi+>, |Psi->, |Psi+>,
/// |Phi->. The fidelity (to Phi+) is a.
struct BellState {
    double a = 1.0, b = 0.0, c = 0.0, d = 0.0;

    double fidelity() const { return a; }

    void validate(double tol = 1e-12) const {
        if (a < -tol || b < -tol || c < -tol || d < -tol)
            throw ConfigError("negative Bell coefficient");
        if (std::abs(a + b + c + d - 1.0) > tol)
            throw ConfigError("Bell coefficients do not sum to 1");
    }
};

/// Werner state of fidelity F: equal weight on the three non-target
/// components.
inline BellState werner_state(double f) {
    if (f < 0.25 || f > 1.0) throw ConfigError("Werner fidelity outside [0.25, 1]");
    const double r = (1.0 - f) / 3.0;
    return {f, r, r, r};
}

/// Depolarizing memory decay: rho -> (1-eps) rho + eps 1/4.
inline BellState decay_state(const BellState& s, double eps) {
    const double q = eps / 4.0;
    return {(1.0 - eps) * s.a + q, (1.0 - eps) * s.b + q, (1.0 - eps) * s.c + q,
            (1.0 - eps) * s.d + q};
}

/// DEJMPS distillation map for two Bell-diagonal states. Returns the output
/// state conditioned on success together with the success probability.
inline std::pair<BellState, double> dejmps(const BellState& r1, const BellState& r2) {
    const double n = (r1.a + r1.b) * (r2.a + r2.b) + (r1.c + r1.d) * (r2.c + r2.d);
    if (n < 1e-12) throw DegenerateDistill("DEJMPS success probability vanishes");
    BellState out{(r1.a * r2.a + r1.b * r2.b) / n, (r2.c * r1.d + r1.c * r2.d) / n,
                  (r1.c * r2.c + r1.d * r2.d) / n, (r1.a * r2.b + r2.a * r1.b) / n};
    return {out, n};
}

/// Deterministic entanglement swap (CNOT + X measurement model).
inline BellState entanglement_swap(const BellState& r1, const BellState& r2) {
    return {r1.a * r2.a + r1.b * r2.b + r1.c * r2.c + r1.d * r2.d,
            r1.a * r2.b + r2.a * r1.b + r1.c * r2.d + r2.c * r1.d,
            r1.a * r2.c + r2.a * r1.c + r1.b * r2.d + r2.b * r1.d,
            r1.a * r2.d + r2.a * r1.d + r1.b * r2.c + r2.b * r1.c};
}

/// Bit error averaged between Z- and X-basis measurements: e_Z = b + c
/// (Psi components), e_X = b + d (Psi- and Phi- components).
inline double bit_error(const BellState& s) { return ((s.b + s.c) + (s.b + s.d)) / 2.0; }

inline double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Secret fraction of one pair, clamped at zero.
inline double key_fraction(const BellState& s) {
    return std::max(0.0, 1.0 - 2.0 * binary_entropy(bit_error(s)));
}

}  // namespace chainstat
