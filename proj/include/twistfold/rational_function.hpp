#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "twistfold/ideal.hpp"
#include "twistfold/polynomial.hpp"

namespace twistfold {

// numerator / prod(factor^exponent). Factors are nu-free, monic and distinct;
// no cancellation beyond exact division by a listed factor is attempted.
class RationalFunction {
public:
    using Factor = std::pair<FlatPoly, int>;

    RationalFunction() = default;
    RationalFunction(Polynomial num) : num_(std::move(num)) {}
    RationalFunction(Polynomial num, const Polynomial& den);
    RationalFunction(const Ring& ring, Scalar c) : num_(ring, std::move(c)) {}

    const Polynomial& numerator() const { return num_; }
    const std::vector<Factor>& factors() const { return den_; }
    Polynomial denominator() const;
    const Ring& ring() const { return num_.ring(); }
    bool is_polynomial() const { return den_.empty(); }
    bool is_zero() const { return num_.is_zero(); }
    bool exact() const { return num_.exact(); }
    int order_cap() const { return num_.order_cap(); }

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator*=(const Scalar& s) {
        num_ *= s;
        return *this;
    }
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator*(RationalFunction a, const Scalar& s) { return a *= s; }
    RationalFunction operator-() const;
    RationalFunction scaled(const NuSeries& s) const;
    // Division by a nu-free rational function.
    RationalFunction divided_by(const RationalFunction& d) const;
    RationalFunction inverse() const;
    RationalFunction partial(int i) const;
    RationalFunction truncated(int cap) const;
    RationalFunction conj() const;

    // Value equality by cross multiplication.
    bool equals(const RationalFunction& o) const;
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) { return a.equals(b); }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !a.equals(b); }

    // Reduce numerator and denominator factors modulo the ideal; factors that
    // become constants are folded into the numerator.
    RationalFunction reduce_mod(const IdealReducer& ideal) const;

    std::string str(bool compact = false) const;

    // Apply f to the numerator while the denominator stays put; only valid
    // for operations commuting with division by the factors.
    template <class F>
    RationalFunction map_numerator(F&& f) const {
        RationalFunction r = *this;
        r.num_ = f(num_);
        r.normalize();
        return r;
    }

private:
    void add_factor(FlatPoly d, int e);
    void normalize();
    Polynomial lifted(const std::vector<Factor>& target) const;

    Polynomial num_;
    std::vector<Factor> den_;
};

// If r is congruent modulo the ideal to a function of the parameters only,
// returns that function (numerator and denominator free of coordinates).
std::optional<RationalFunction> parameter_value(const RationalFunction& r, const IdealReducer& ideal);

}  // namespace twistfold
