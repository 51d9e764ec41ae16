#pragma once

#include <optional>
#include <vector>

#include "chainstat/counted_matrix.hpp"
#include "chainstat/errors.hpp"
#include "chainstat/pgf.hpp"
#include "chainstat/residues.hpp"

namespace chainstat {

enum class Method { Auto, Power, Residue };

/// Completion-time distribution of a process: a pole/residue summary when the
/// PGF has simple poles, backed by an incremental matrix-power table for the
/// small-t range, boundary cases, and fallback.
class CompletionDistribution {
  public:
    static CompletionDistribution from_matrix(const CountedMatrix& m,
                                              Method method = Method::Auto) {
        CompletionDistribution d;
        d.bound_ = m.bind_ones();
        if (method != Method::Power) {
            try {
                RationalFunction f = pgf(m);
                PoleSet ps = poles_and_residues(f);
                if (!ps.poles.empty()) {
                    d.poles_ = std::move(ps);
                } else {
                    // polynomial PGF (deterministic-length process): keep the
                    // coefficient table as the exact pmf
                    d.poly_pgf_ = std::move(f.numerator);
                }
            } catch (const MultiplePoleDetected&) {
                if (method == Method::Residue) throw;
            }
        }
        return d;
    }

    bool has_poles() const { return poles_.has_value(); }
    int t0() const { return poles_ ? poles_->t0 : 0; }
    const PoleSet& poles() const { return *poles_; }

    double pmf(long t) const {
        if (t < 0) return 0.0;
        if (poles_ && t > poles_->t0) return std::max(0.0, pmf_from_poles(*poles_, t));
        if (!poles_ && poly_pgf_) {
            const auto& c = poly_pgf_->coeffs();
            return t < static_cast<long>(c.size()) ? c[t].real() : 0.0;
        }
        return pmf_power(t);
    }

    double cdf(long t) const {
        if (t < 0) return 0.0;
        if (poles_) {
            const int t0 = poles_->t0;
            double head = 0.0;
            for (long s = 0; s <= std::min<long>(t, t0); ++s) head += pmf_power(s);
            if (t <= t0) return head;
            return head + cdf_range_from_poles(*poles_, t0 + 1, t);
        }
        ensure_power(t);
        double s = 0.0;
        for (long u = 0; u <= t; ++u) s += power_table_[u];
        return s;
    }

    double mean() const {
        if (poles_) return mean_from_poles(*poles_) + correction(1);
        return power_moment(1);
    }

    double variance() const {
        double m = mean();
        double m2;
        if (poles_)
            m2 = second_moment_from_poles(*poles_) + correction(2);
        else
            m2 = power_moment(2);
        return m2 - m * m;
    }

    /// Smallest t with cdf(t) >= q.
    long quantile(double q) const {
        long t = 0;
        double acc = 0.0;
        const long cap = 100000000;
        if (poles_) {
            while (t < cap) {
                acc = cdf(t);
                if (acc >= q) return t;
                // jump ahead using the geometric tail of the dominant pole
                ++t;
            }
            return t;
        }
        while (t < cap) {
            ensure_power(t);
            acc += power_table_[t];
            if (acc >= q) return t;
            ++t;
        }
        return t;
    }

    double pmf_power(long t) const {
        ensure_power(t);
        return power_table_[t];
    }

  private:
    // sum over s=1..t0 of s^k (true - residue-formula) pmf
    double correction(int k) const {
        double c = 0.0;
        for (long s = 1; s <= poles_->t0; ++s) {
            const double d = pmf_power(s) - pmf_from_poles(*poles_, s);
            c += d * (k == 1 ? static_cast<double>(s) : static_cast<double>(s) * s);
        }
        return c;
    }

    double power_moment(int k) const {
        // truncated series; tail bounded by the CDF threshold
        double acc = 0.0, cdf_acc = 0.0;
        long t = 0;
        const long cap = 5000000;
        while (cdf_acc < 1.0 - 1e-12 && t < cap) {
            ensure_power(t);
            const double p = power_table_[t];
            cdf_acc += p;
            acc += p * (k == 1 ? static_cast<double>(t) : static_cast<double>(t) * t);
            ++t;
        }
        return acc;
    }

    void ensure_power(long t) const {
        if (power_state_.empty()) {
            power_state_.assign(bound_->dim(), 0.0);
            power_state_[0] = 1.0;
            power_table_.push_back(bound_->terminal_mass(power_state_).real());
        }
        std::vector<Complex> next(bound_->dim());
        while (static_cast<long>(power_table_.size()) <= t) {
            bound_->apply(power_state_, next);
            std::swap(power_state_, next);
            power_table_.push_back(bound_->terminal_mass(power_state_).real());
        }
    }

    std::optional<BoundMatrix> bound_;
    std::optional<PoleSet> poles_;
    std::optional<Polynomial> poly_pgf_;
    mutable std::vector<Complex> power_state_;
    mutable std::vector<double> power_table_;
};

}  // namespace chainstat
