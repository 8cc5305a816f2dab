#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistfold/nu_series.hpp"

namespace twistfold {

inline constexpr int kMaxCoords = 12;
inline constexpr int kMaxParams = 4;

// Exponent vector: coordinate slots first, then parameter slots.
struct Monomial {
    std::array<uint8_t, kMaxCoords + kMaxParams> e{};

    static Monomial coord(int i, int power = 1) {
        Monomial m;
        m.e[i] = static_cast<uint8_t>(power);
        return m;
    }
    static Monomial param(int j, int power = 1) {
        Monomial m;
        m.e[kMaxCoords + j] = static_cast<uint8_t>(power);
        return m;
    }
    int coord_degree() const;
    int param_degree() const;
    bool is_one() const;
    bool divides(const Monomial& o) const;
    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;  // requires divides
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }
    size_t hash() const;
};

// Block term order: degree-lexicographic on coordinates (x1 > x2 > ...),
// ties broken by degree-lexicographic order on parameters.
bool term_greater(const Monomial& a, const Monomial& b);

struct MonomialHash {
    size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Names of the variables a polynomial lives in.
struct CoordinateSystem {
    std::string id;
    std::vector<std::string> coords;
    std::vector<std::string> params;
    int dim() const { return static_cast<int>(coords.size()); }
};
using Ring = std::shared_ptr<const CoordinateSystem>;

Ring make_ring(std::string id, std::vector<std::string> coords, std::vector<std::string> params = {});
// Standard coordinates x1..xn (prefix selectable) with optional parameters.
Ring standard_ring(int n, std::vector<std::string> params = {}, const std::string& prefix = "x");

// Polynomial with Scalar coefficients, terms sorted by decreasing term order.
class FlatPoly {
public:
    using Term = std::pair<Monomial, Scalar>;

    FlatPoly() = default;
    explicit FlatPoly(Scalar c);
    FlatPoly(Monomial m, Scalar c);
    static FlatPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_term() const;
    Scalar coefficient(const Monomial& m) const;
    const Term& leading() const { return terms_.front(); }
    int coord_degree() const;
    size_t size() const { return terms_.size(); }

    FlatPoly& operator+=(const FlatPoly& o);
    FlatPoly& operator-=(const FlatPoly& o);
    FlatPoly& operator*=(const Scalar& s);
    friend FlatPoly operator+(FlatPoly a, const FlatPoly& b) { return a += b; }
    friend FlatPoly operator-(FlatPoly a, const FlatPoly& b) { return a -= b; }
    friend FlatPoly operator*(FlatPoly a, const Scalar& s) { return a *= s; }
    friend FlatPoly operator*(const FlatPoly& a, const FlatPoly& b);
    FlatPoly operator-() const;
    FlatPoly mul_monomial(const Monomial& m, const Scalar& c) const;
    FlatPoly partial(int i) const;
    FlatPoly conj() const;
    // Exact quotient if d divides *this, otherwise nullopt.
    std::optional<FlatPoly> divide_exact(const FlatPoly& d) const;

    friend bool operator==(const FlatPoly& a, const FlatPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const FlatPoly& a, const FlatPoly& b) { return !(a == b); }
    friend bool operator<(const FlatPoly& a, const FlatPoly& b);

private:
    std::vector<Term> terms_;
};

// Polynomial in coordinates and parameters whose coefficients are truncated
// nu-series, stored as one FlatPoly per power of nu.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}
    Polynomial(Ring ring, Scalar c);
    Polynomial(Ring ring, FlatPoly p, int nu_power = 0, int cap = kNoCap);
    static Polynomial coord(Ring ring, int i);
    static Polynomial param(Ring ring, int j);
    static Polynomial nu(Ring ring, int cap, int power = 1);

    const Ring& ring() const { return ring_; }
    int order_cap() const { return cap_; }
    bool exact() const { return exact_; }
    Polynomial with_inexact() const {
        Polynomial r = *this;
        r.exact_ = false;
        return r;
    }
    Polynomial truncated(int cap) const;

    bool is_zero() const { return layers_.empty(); }
    bool is_nu_free() const { return layers_.size() <= 1; }
    bool is_constant() const;
    // Layer at nu^k (empty poly if absent).
    const FlatPoly& layer(int k) const;
    int nu_degree() const { return static_cast<int>(layers_.size()) - 1; }
    NuSeries constant_series() const;
    NuSeries coefficient(const Monomial& m) const;
    int coord_degree() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Scalar& s);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    Polynomial scaled(const NuSeries& s) const;
    Polynomial partial(int i) const;
    Polynomial conj() const;
    std::optional<Polynomial> divide_exact(const FlatPoly& d) const;

    // Substitute each coordinate by a polynomial over `target` (coordinates of
    // this polynomial are replaced, parameters are kept).
    Polynomial substitute(const Ring& target, const std::vector<Polynomial>& images) const;

    // Replace the nu-free data layer by layer.
    template <class F>
    Polynomial map_layers(F&& f) const {
        Polynomial r(ring_);
        r.cap_ = cap_;
        r.exact_ = exact_;
        r.layers_.reserve(layers_.size());
        for (const auto& l : layers_) r.layers_.push_back(f(l));
        r.trim();
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.layers_ == b.layers_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
    friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.layers_ < b.layers_; }

    // Expression-grammar rendering; compact drops the spaces around + and -.
    std::string str(bool compact = false) const;

    const std::vector<FlatPoly>& layers() const { return layers_; }
    void set_layer(int k, FlatPoly p);

private:
    void check_ring(const Polynomial& o) const;
    void trim();
    void clip(int cap);

    Ring ring_;
    std::vector<FlatPoly> layers_;
    int cap_ = kNoCap;
    bool exact_ = true;
};

// Renders a FlatPoly over the given variable names.
std::string flat_str(const FlatPoly& p, const CoordinateSystem& cs, bool compact = false);
std::string monomial_str(const Monomial& m, const CoordinateSystem& cs);

// Affine change of coordinates: new ring with coordinates y = A x + b
// (A given as rows). Returns the images of the old coordinates x in terms of y,
// which can be fed to Polynomial::substitute.
struct LinearChange {
    Ring source;  // x coordinates
    Ring target;  // y coordinates
    std::vector<std::vector<Scalar>> matrix;  // y_i = sum_j matrix[i][j] x_j + shift[i]
    std::vector<Scalar> shift;
    std::vector<Polynomial> x_in_y;  // x_j as polynomials in y
    std::vector<Polynomial> y_in_x;  // y_i as polynomials in x
};
LinearChange linear_change(const Ring& source, const std::string& target_id,
                           const std::vector<std::string>& target_names,
                           const std::vector<std::vector<Scalar>>& matrix,
                           const std::vector<Scalar>& shift = {});

}  // namespace twistfold
