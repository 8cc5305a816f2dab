#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistfold/rational_function.hpp"

namespace twistfold {

using Function = RationalFunction;

class VectorField {
public:
    VectorField() = default;
    explicit VectorField(Ring ring);
    VectorField(Ring ring, std::vector<Function> comps);
    static VectorField partial(const Ring& ring, int i);
    static VectorField from_polys(const Ring& ring, const std::vector<Polynomial>& comps);

    const Ring& ring() const { return ring_; }
    int dim() const { return static_cast<int>(comps_.size()); }
    const Function& operator[](int i) const { return comps_[i]; }
    Function& operator[](int i) { return comps_[i]; }
    const std::vector<Function>& components() const { return comps_; }
    bool is_zero() const;
    bool is_polynomial() const;
    bool exact() const;

    // X(h) = X^i d_i h
    Function apply(const Function& h) const;
    Polynomial apply(const Polynomial& h) const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    VectorField operator-() const;
    VectorField operator*(const Scalar& s) const;
    VectorField times(const Function& h) const;  // h X
    VectorField scaled(const NuSeries& s) const;
    VectorField truncated(int cap) const;
    VectorField reduce_mod(const IdealReducer& ideal) const;

    bool equals(const VectorField& o) const;
    friend bool operator==(const VectorField& a, const VectorField& b) { return a.equals(b); }

    std::string str(bool compact = false) const;

private:
    Ring ring_;
    std::vector<Function> comps_;
};

// Strictly increasing index tuple.
using IndexSet = std::vector<int>;

class PForm {
public:
    PForm() = default;
    PForm(Ring ring, int degree);
    static PForm scalar(const Function& h);  // 0-form
    static PForm basis(const Ring& ring, const IndexSet& idx, Function coeff);
    static PForm dx(const Ring& ring, int i);
    static PForm one_form(const Ring& ring, const std::vector<Function>& comps);

    const Ring& ring() const { return ring_; }
    int degree() const { return degree_; }
    int dim() const { return ring_->dim(); }
    const std::map<IndexSet, Function>& components() const { return comps_; }
    Function component(const IndexSet& idx) const;  // any index order, with sign
    bool is_zero() const { return comps_.empty(); }
    bool exact() const;

    PForm& operator+=(const PForm& o);
    PForm& operator-=(const PForm& o);
    friend PForm operator+(PForm a, const PForm& b) { return a += b; }
    friend PForm operator-(PForm a, const PForm& b) { return a -= b; }
    PForm operator-() const;
    PForm operator*(const Scalar& s) const;
    PForm times(const Function& h) const;
    PForm scaled(const NuSeries& s) const;
    PForm truncated(int cap) const;
    PForm reduce_mod(const IdealReducer& ideal) const;

    bool equals(const PForm& o) const;
    friend bool operator==(const PForm& a, const PForm& b) { return a.equals(b); }

    std::string str(bool compact = false) const;

private:
    void add_term(const IndexSet& idx, const Function& c);

    Ring ring_;
    int degree_ = 0;
    std::map<IndexSet, Function> comps_;
};

// Mixed tensor with p form slots followed by r vector slots; dense storage
// in the coordinate frame.
class TensorField {
public:
    TensorField() = default;
    TensorField(Ring ring, int p, int r);
    static TensorField from_function(const Function& h);
    static TensorField from_vector(const VectorField& X);
    static TensorField from_form(const PForm& w);  // antisymmetric p-tensor, dx^dy = dx(x)dy - dy(x)dx

    const Ring& ring() const { return ring_; }
    int form_slots() const { return p_; }
    int vector_slots() const { return r_; }
    int rank() const { return p_ + r_; }
    int dim() const { return n_; }
    size_t size() const { return comps_.size(); }
    const Function& at(const std::vector<int>& idx) const { return comps_[offset(idx)]; }
    Function& at(const std::vector<int>& idx) { return comps_[offset(idx)]; }
    const Function& flat(size_t k) const { return comps_[k]; }
    Function& flat(size_t k) { return comps_[k]; }
    std::vector<int> unflatten(size_t k) const;
    size_t offset(const std::vector<int>& idx) const;
    bool is_zero() const;
    bool exact() const;

    Function as_function() const;  // rank 0
    VectorField as_vector() const; // type (0,1)
    PForm as_one_form() const;     // type (1,0)

    TensorField& operator+=(const TensorField& o);
    TensorField& operator-=(const TensorField& o);
    friend TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
    friend TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }
    TensorField operator-() const;
    TensorField operator*(const Scalar& s) const;
    TensorField times(const Function& h) const;
    TensorField scaled(const NuSeries& s) const;
    TensorField truncated(int cap) const;
    TensorField reduce_mod(const IdealReducer& ideal) const;

    bool equals(const TensorField& o) const;
    friend bool operator==(const TensorField& a, const TensorField& b) { return a.equals(b); }

    std::string str(bool compact = false) const;

private:
    void check_shape(const TensorField& o) const;

    Ring ring_;
    int p_ = 0, r_ = 0, n_ = 0;
    std::vector<Function> comps_;
};

// ---- Lie derivative and bracket
VectorField bracket(const VectorField& X, const VectorField& Y);
Function lie(const VectorField& X, const Function& h);
Polynomial lie(const VectorField& X, const Polynomial& h);
VectorField lie(const VectorField& X, const VectorField& Y);
PForm lie(const VectorField& X, const PForm& w);
TensorField lie(const VectorField& X, const TensorField& T);

// ---- exterior calculus
PForm d(const Function& h);
PForm d(const PForm& w);
PForm wedge(const PForm& a, const PForm& b);
PForm insertion(const VectorField& X, const PForm& w);

// ---- tensor product and pairing
// Concatenates slots; requires a to have no vector slot or b no form slot.
TensorField tensor(const TensorField& a, const TensorField& b);
// <X_p (x) ... (x) X_1, w_1 (x) ... (x) w_p (x) tau> = <X_1,w_1>...<X_p,w_p> tau
TensorField pairing(const TensorField& vectors, const TensorField& forms);
Function pairing(const VectorField& X, const PForm& w);
// <tau (x) w_p (x) ... (x) w_1, X_1 (x) ... (x) X_p> = tau <w_1,X_1>...<w_p,X_p>
TensorField pairing_form_first(const TensorField& forms, const TensorField& vectors);

// Derivative of each component along X (flat connection in Cartesian frame).
Function directional(const VectorField& X, const Function& h);
VectorField directional(const VectorField& X, const VectorField& Y);
PForm directional(const VectorField& X, const PForm& w);
TensorField directional(const VectorField& X, const TensorField& T);

// ---- matrices of functions
using FunctionMatrix = std::vector<std::vector<Function>>;
Function determinant(const FunctionMatrix& a);
// Adjugate over determinant; nullopt if the determinant vanishes.
std::optional<FunctionMatrix> invert(const FunctionMatrix& a);

}  // namespace twistfold
