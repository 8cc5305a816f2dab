#pragma once

#include <vector>

#include "twistfold/scalar.hpp"

namespace twistfold {

// Sentinel cap for values that carry no truncation (e.g. nu-free input data).
inline constexpr int kNoCap = 1 << 20;

// Truncated formal series in nu with a running exactness flag.
class NuSeries {
public:
    NuSeries() = default;
    NuSeries(Scalar c, int cap = kNoCap);
    static NuSeries monomial(Scalar c, int power, int cap = kNoCap);

    int order_cap() const { return cap_; }
    bool exact() const { return exact_; }
    bool is_zero() const { return coeffs_.empty(); }
    // Highest stored power, -1 for zero.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    // Lowest power with a nonzero coefficient, -1 for zero.
    int valuation() const;
    Scalar operator[](int k) const;
    const std::vector<Scalar>& coeffs() const { return coeffs_; }

    NuSeries truncated(int cap) const;
    NuSeries with_inexact() const {
        NuSeries r = *this;
        r.exact_ = false;
        return r;
    }
    NuSeries conj() const;
    // Multiplicative inverse; requires a nonzero constant term.
    NuSeries inverse() const;

    NuSeries& operator+=(const NuSeries& o);
    NuSeries& operator-=(const NuSeries& o);
    NuSeries& operator*=(const Scalar& s);
    NuSeries& operator*=(const NuSeries& o) { return *this = *this * o; }
    friend NuSeries operator+(NuSeries a, const NuSeries& b) { return a += b; }
    friend NuSeries operator-(NuSeries a, const NuSeries& b) { return a -= b; }
    friend NuSeries operator*(const NuSeries& a, const NuSeries& b);
    friend NuSeries operator*(NuSeries a, const Scalar& s) { return a *= s; }
    NuSeries operator-() const;

    // Value equality; caps and flags are ignored.
    friend bool operator==(const NuSeries& a, const NuSeries& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const NuSeries& a, const NuSeries& b) { return !(a == b); }
    friend bool operator<(const NuSeries& a, const NuSeries& b) { return a.coeffs_ < b.coeffs_; }

    std::string str() const;

private:
    void trim();
    void clip(int cap);

    std::vector<Scalar> coeffs_;
    int cap_ = kNoCap;
    bool exact_ = true;
};

}  // namespace twistfold
