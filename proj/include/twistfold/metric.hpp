#pragma once

#include <string>
#include <vector>

#include "twistfold/linear_algebra.hpp"
#include "twistfold/star.hpp"

namespace twistfold {

enum class Signature { euclidean, minkowski, custom };

// Constant symmetric non-degenerate metric g_ij dx^i (x) dx^j.
class Metric {
public:
    Metric() = default;
    static Metric euclidean(int n);
    // diag(1, ..., 1, -1)
    static Metric minkowski(int n);
    // Throws unless g is square, symmetric and invertible.
    static Metric custom(ScalarMatrix g);

    int dim() const { return static_cast<int>(g_.size()); }
    const ScalarMatrix& matrix() const { return g_; }
    const ScalarMatrix& inverse_matrix() const { return ginv_; }
    Signature signature() const { return sig_; }
    std::string signature_name() const;

    // The same metric in coordinates y = A x + b.
    Metric in_coordinates(const LinearChange& change) const;

    Function operator()(const VectorField& X, const VectorField& Y) const;
    Function inverse(const PForm& a, const PForm& b) const;
    PForm flat(const VectorField& X) const;
    VectorField sharp(const PForm& w) const;
    // g as a (2,0) tensor and its inverse as a (0,2) tensor.
    TensorField tensor(const Ring& ring) const;
    TensorField inverse_tensor(const Ring& ring) const;

private:
    ScalarMatrix g_, ginv_;
    Signature sig_ = Signature::custom;
};

// g_*(X, Y) = g(Fbar_1 |> X, Fbar_2 |> Y)
Function g_star(const StarContext& ctx, const Metric& g, const VectorField& X, const VectorField& Y);
// g^-1_*(a, b) = g^-1(Fbar_1 |> a, Fbar_2 |> b)
Function g_inverse_star(const StarContext& ctx, const Metric& g, const PForm& a, const PForm& b);

// ---- symmetries
// d_h Z_i + d_i Z_h with Z_i = g_ij Z^j.
FunctionMatrix killing_residual(const Metric& g, const VectorField& Z);
bool is_killing(const Metric& g, const VectorField& Z);
// X^h Y^i (d_h Z_i + d_i Z_h)
Function killing_on_pair(const Metric& g, const VectorField& Z, const VectorField& X, const VectorField& Y);
// [Z, nabla_X Y] - nabla_[Z,X] Y - nabla_X [Z,Y] for the flat connection.
VectorField equivariance_residual(const VectorField& Z, const VectorField& X, const VectorField& Y);
// The flat connection is Z-equivariant iff the second derivatives of Z vanish.
bool is_equivariant(const VectorField& Z);

struct SymmetryReport {
    bool killing = false;
    bool equivariant = false;
    std::string detail;
    // Killing fields must be equivariant.
    bool consistent() const { return !killing || equivariant; }
};
SymmetryReport symmetry_check(const Metric& g, const VectorField& Z);

}  // namespace twistfold
