#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace chainstat {

/// Sparse polynomial in the counting variables w_0..w_{m-1} with real
/// coefficients. Keys are exponent vectors with trailing zeros trimmed, so a
/// polynomial is independent of how many counters the owning matrix declares.
class CounterPoly {
  public:
    using Exponents = std::vector<std::uint32_t>;

    CounterPoly() = default;
    explicit CounterPoly(double c) {
        if (c != 0.0) terms_[Exponents{}] = c;
    }

    static CounterPoly monomial(double c, std::size_t var, std::uint32_t exp = 1) {
        CounterPoly p;
        if (c == 0.0) return p;
        if (exp == 0) return CounterPoly(c);
        Exponents e(var + 1, 0);
        e[var] = exp;
        p.terms_[std::move(e)] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }

    double constant_term() const {
        auto it = terms_.find(Exponents{});
        return it == terms_.end() ? 0.0 : it->second;
    }

    const std::map<Exponents, double>& terms() const { return terms_; }

    CounterPoly& operator+=(const CounterPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    friend CounterPoly operator+(CounterPoly a, const CounterPoly& b) { return a += b; }

    CounterPoly& operator-=(const CounterPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend CounterPoly operator-(CounterPoly a, const CounterPoly& b) { return a -= b; }

    friend CounterPoly operator*(const CounterPoly& a, const CounterPoly& b) {
        CounterPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(std::max(ea.size(), eb.size()), 0);
                for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
                for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
                trim(e);
                r.add_term(e, ca * cb);
            }
        return r;
    }

    CounterPoly& operator*=(double s) {
        if (s == 0.0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend CounterPoly operator*(CounterPoly a, double s) { return a *= s; }
    friend CounterPoly operator*(double s, CounterPoly a) { return a *= s; }

    /// Value with every counter set to 1 (the plain transition probability).
    double at_ones() const {
        double s = 0.0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    std::complex<double> eval(std::span<const std::complex<double>> values) const {
        std::complex<double> s = 0.0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> m = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) m *= values[i];
            s += m;
        }
        return s;
    }

    /// Fix counter `var` to a real value; the slot stays reserved but unused.
    CounterPoly bind(std::size_t var, double value) const {
        CounterPoly r;
        for (const auto& [e, c] : terms_) {
            Exponents e2 = e;
            double coeff = c;
            if (var < e2.size() && e2[var] > 0) {
                coeff *= std::pow(value, static_cast<double>(e2[var]));
                e2[var] = 0;
                trim(e2);
            }
            r.add_term(e2, coeff);
        }
        return r;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) {
            std::uint32_t t = 0;
            for (auto x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }

    std::uint32_t degree_of(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_)
            if (var < e.size()) d = std::max(d, e[var]);
        return d;
    }

    /// Remap counter slots (old index i -> slot_map[i]); used when merging
    /// counter registries of composed matrices.
    CounterPoly remap(const std::vector<std::size_t>& slot_map) const {
        CounterPoly r;
        for (const auto& [e, c] : terms_) {
            Exponents e2;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                std::size_t j = slot_map.at(i);
                if (e2.size() <= j) e2.resize(j + 1, 0);
                e2[j] += e[i];
            }
            trim(e2);
            r.add_term(e2, c);
        }
        return r;
    }

    bool approx_equal(const CounterPoly& o, double tol) const {
        for (const auto& [e, c] : terms_) {
            auto it = o.terms_.find(e);
            double oc = it == o.terms_.end() ? 0.0 : it->second;
            if (std::abs(c - oc) > tol) return false;
        }
        for (const auto& [e, c] : o.terms_)
            if (terms_.find(e) == terms_.end() && std::abs(c) > tol) return false;
        return true;
    }

    bool operator==(const CounterPoly& o) const { return terms_ == o.terms_; }

  private:
    static void trim(Exponents& e) {
        while (!e.empty() && e.back() == 0) e.pop_back();
    }

    void add_term(Exponents e, double c) {
        trim(e);
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0.0) terms_.erase(it);
        }
    }

    std::map<Exponents, double> terms_;
};

}  // namespace chainstat
