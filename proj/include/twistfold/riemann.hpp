#pragma once

#include <optional>
#include <vector>

#include "twistfold/submanifold.hpp"

namespace twistfold {

// Flat Levi-Civita connection of a constant metric: nabla_X Y = X(Y^j) d_j.
VectorField flat_nabla(const VectorField& X, const VectorField& Y);
// Tangent and normal parts of nabla_X Y; X and Y must be tangent.
VectorField projected_nabla(const Embedding& emb, const VectorField& X, const VectorField& Y);
VectorField second_form(const Embedding& emb, const VectorField& X, const VectorField& Y);
// -X^i Y^j f^a_ij N^a
VectorField second_form_closed(const Embedding& emb, const VectorField& X, const VectorField& Y);
// Throws unless X(f^a) = 0 for all a.
void require_tangent(const Embedding& emb, const VectorField& X);

// Curvature of the flat connection, R(X,Y)Z.
VectorField ambient_curvature(const VectorField& X, const VectorField& Y, const VectorField& Z);
// Curvature of the projected connection.
VectorField intrinsic_curvature(const Embedding& emb, const VectorField& X, const VectorField& Y,
                                const VectorField& Z);
// g(R(X,Y)Z,W) - g(R_t(X,Y)Z,W) - g(II(X,Z),II(Y,W)) + g(II(Y,Z),II(X,W)), reduced modulo the ideal.
Function gauss_residual(const Embedding& emb, const VectorField& X, const VectorField& Y, const VectorField& Z,
                        const VectorField& W);

// Frame components on a tangent frame v_1..v_m.
struct CurvatureData {
    FunctionMatrix g;      // g(v_a, v_b)
    FunctionMatrix g_inv;
    // R[a][b][c][d] = g(R_t(v_a, v_b) v_c, v_d), assembled from II through the Gauss equation.
    std::vector<std::vector<std::vector<std::vector<Function>>>> lowered;
    // R[a][b][c][e] = component of R_t(v_a, v_b) v_c along v_e.
    std::vector<std::vector<std::vector<std::vector<Function>>>> raised;
    FunctionMatrix ricci;  // Ric(v_b, v_c) = trace of v -> R_t(v, v_b) v_c
    Function scalar;       // reduced modulo the ideal
    std::optional<Function> scalar_value;  // as a function of the parameters
};
// Throws on a non-tangent or degenerate frame.
CurvatureData curvature(const Embedding& emb, const std::vector<VectorField>& frame);

// Codimension one in three dimensions with a unit normal U: h_ab = zeta g(II(v_a, v_b), U),
// shape operator g^-1 h. Principal curvatures are returned when the shape operator is
// diagonal on the frame.
struct PrincipalData {
    FunctionMatrix shape;  // parameter values
    std::optional<std::vector<Function>> principal;
    Function gauss;  // det
    Function mean;   // trace / 2
};
PrincipalData principal_curvatures(const Embedding& emb, const std::vector<VectorField>& frame);

// Reduces modulo the ideal and returns the parameter value, throwing if the
// function still depends on the coordinates.
Function parameter_value_or_throw(const Embedding& emb, const Function& h, const char* what);

}  // namespace twistfold
