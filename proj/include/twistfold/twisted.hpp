#pragma once

#include <optional>
#include <vector>

#include "twistfold/riemann.hpp"

namespace twistfold {

enum class TwistBasis { equivariance, killing };

// nabla^F_X T = nabla_{Fbar_1 |> X}(Fbar_2 |> T) for the flat connection of a
// constant metric. Every output is truncated to the context order.
class TwistedConnection {
public:
    // Throws unless every generator in the twist legs is in the equivariance
    // algebra of the flat connection.
    TwistedConnection(StarContext ctx, Metric g);

    const StarContext& context() const { return ctx_; }
    const Metric& metric() const { return g_; }
    const Ring& ring() const { return ctx_.ring(); }
    int order() const { return ctx_.order(); }
    TwistBasis basis() const { return basis_; }
    // Throws "twist legs not Killing: X" for equivariance-based twists.
    void require_killing() const;

    Function nabla(const VectorField& X, const Function& h) const;
    VectorField nabla(const VectorField& X, const VectorField& Y) const;
    PForm nabla(const VectorField& X, const PForm& w) const;
    TensorField nabla(const VectorField& X, const TensorField& T) const;

    // T(X,Y) = nabla_X Y - nabla_{R_2 |> Y}(R_1 |> X) - [X,Y]_*
    VectorField torsion(const VectorField& X, const VectorField& Y) const;
    // R(X,Y)Z = nabla_X nabla_Y Z - nabla_{R_2 |> Y} nabla_{R_1 |> X} Z - nabla_{[X,Y]_*} Z
    VectorField curvature(const VectorField& X, const VectorField& Y, const VectorField& Z) const;
    // T(X,Y) + T(R_2 |> Y, R_1 |> X)
    VectorField torsion_antisymmetry(const VectorField& X, const VectorField& Y) const;
    VectorField curvature_antisymmetry(const VectorField& X, const VectorField& Y, const VectorField& Z) const;

    // Metric maps; Killing-based twists only.
    Function g(const VectorField& X, const VectorField& Y) const;
    // L*_X g_*(Y,Z) - g_*(nabla_X Y, Z) - g_*(Rbar_1 |> Y, nabla_{Rbar_2 |> X} Z)
    Function compatibility_residual(const VectorField& X, const VectorField& Y, const VectorField& Z) const;
    // g_*(X, Y * h) - g_*(X, Y) * h
    Function right_linearity_residual(const VectorField& X, const VectorField& Y, const Function& h) const;

private:
    StarContext ctx_;
    Metric g_;
    TwistBasis basis_ = TwistBasis::equivariance;
    std::vector<int> letters_;
};

// Generators that occur in the legs of F.
std::vector<int> twist_letters(const TwistData& t);

struct TwistedRicci {
    FunctionMatrix ricci;  // Ric_*(v_a, v_b), reduced
    Function scalar;       // reduced modulo the ideal
    std::optional<Function> scalar_value;
};

// The level-set family under a Killing twist whose legs are tangent.
class TwistedSubmanifold {
public:
    TwistedSubmanifold(TwistedConnection conn, Embedding emb);

    const TwistedConnection& connection() const { return conn_; }
    const Embedding& embedding() const { return emb_; }
    const StarContext& context() const { return conn_.context(); }

    Function g(const VectorField& X, const VectorField& Y) const;  // tangent arguments
    VectorField nabla(const VectorField& X, const VectorField& Y) const;
    VectorField second_form(const VectorField& X, const VectorField& Y) const;
    // II(Fbar_1 |> X, Fbar_2 |> Y)
    VectorField second_form_legs(const VectorField& X, const VectorField& Y) const;
    VectorField curvature(const VectorField& X, const VectorField& Y, const VectorField& Z) const;

    // g_*(R(X,Y)Z, W) - g_*(R_t(X,Y)Z, W) - g_*(II(X, Rbar_1 |> Z), II(Rbar_2 |> Y, W))
    //   + g_*(II(Rbar_1(1) |> Y, Rbar_1(2) |> Z), II(Rbar_2 |> X, W)), reduced modulo the ideal,
    // with the coproduct of the twisted Hopf algebra on the first leg of Rbar.
    Function gauss_residual(const VectorField& X, const VectorField& Y, const VectorField& Z,
                            const VectorField& W) const;

    // Ric_*(X,Y) = sum_a <theta^a, R_t(v_a, X, Y)>'_* with theta the star-dual of
    // the tangent frame completed by the raised gradients; the scalar evaluates
    // Ric_* on the star decomposition of the inverse first fundamental form.
    TwistedRicci ricci(const std::vector<VectorField>& frame) const;

private:
    TwistedConnection conn_;
    Embedding emb_;
};

}  // namespace twistfold
