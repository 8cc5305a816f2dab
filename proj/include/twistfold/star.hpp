#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistfold/hopf.hpp"

namespace twistfold {

// One twist, the operations it deforms and the order they are computed to.
class StarContext {
public:
    // Throws if the twist fails check_twist_axioms.
    explicit StarContext(TwistData twist);

    const TwistData& twist() const { return twist_; }
    const Generators& generators() const { return twist_.generators(); }
    const Ring& ring() const { return twist_.generators()->ring(); }
    int dim() const { return ring()->dim(); }
    int order() const { return twist_.order(); }

    // True if the order-N truncation of Fbar acting on (a, b) is the full
    // series: high powers of the nilpotent legs kill a or b.
    template <class A, class B>
    bool terminates(const A& a, const B& b) const {
        if (twist_.spec().family == TwistFamily::identity) return true;
        int n = order() + 1;
        return annihilated_by_powers(generators(), twist_.left_nilpotent(), a, n) ||
               annihilated_by_powers(generators(), twist_.right_nilpotent(), b, n);
    }

private:
    TwistData twist_;
};

// sum c op(w1 |> a, w2 |> b) over the terms of a two-leg element.
template <class A, class B, class Op>
auto apply_two_leg(const MultiLeg& m, const A& a, const B& b, Op&& op) -> decltype(op(a, b)) {
    using Out = decltype(op(a, b));
    WordAction<A> left(m.generators(), a);
    WordAction<B> right(m.generators(), b);
    std::optional<Out> out;
    for (const auto& [k, c] : m.terms()) {
        const A& la = left(k[0]);
        if (la.is_zero()) continue;
        const B& rb = right(k[1]);
        if (rb.is_zero()) continue;
        Out term = scale_object(op(la, rb), c);
        if (out)
            *out += term;
        else
            out = std::move(term);
    }
    if (!out) out = scale_object(op(a, b), NuSeries());
    return *out;
}

// ---- star products
Polynomial star_product(const StarContext& ctx, const Polynomial& a, const Polynomial& b);
Function star_product(const StarContext& ctx, const Function& a, const Function& b);
TensorField star_product(const StarContext& ctx, const TensorField& a, const TensorField& b);
// h * X
VectorField star_product(const StarContext& ctx, const Function& h, const VectorField& X);
// h * w
PForm star_product(const StarContext& ctx, const Function& h, const PForm& w);
// X right-multiplied by h: (Fbar_1 |> X)(Fbar_2 |> h), equal to (Rbar_1 |> h) * (Rbar_2 |> X).
VectorField right_multiply(const StarContext& ctx, const VectorField& X, const Function& h);
PForm right_multiply(const StarContext& ctx, const PForm& w, const Function& h);
TensorField right_multiply(const StarContext& ctx, const TensorField& T, const Function& h);

// a (x)_* b = (Fbar_1 |> a) (x) (Fbar_2 |> b)
TensorField star_tensor(const StarContext& ctx, const TensorField& a, const TensorField& b);
// a ^_* b = (Fbar_1 |> a) ^ (Fbar_2 |> b)
PForm star_wedge(const StarContext& ctx, const PForm& a, const PForm& b);

// Formal sum of star tensor products c a (x)_* b, kept factorized so the star
// and classical decompositions can be converted into each other.
class StarTensor {
public:
    struct Term {
        NuSeries coeff;
        TensorField left, right;
    };

    StarTensor() = default;
    static StarTensor product(const TensorField& a, const TensorField& b);
    // a (x) b rewritten as sum (F_1 |> a) (x)_* (F_2 |> b).
    static StarTensor from_classical(const StarContext& ctx, const TensorField& a, const TensorField& b);

    const std::vector<Term>& terms() const { return terms_; }
    // Components in the coordinate frame.
    TensorField value(const StarContext& ctx) const;

private:
    std::vector<Term> terms_;
};

// ---- star bracket and star Lie derivative
VectorField star_bracket(const StarContext& ctx, const VectorField& X, const VectorField& Y);
// L*_X(T) = (Fbar_1 |> X) |> (Fbar_2 |> T)
Polynomial star_lie(const StarContext& ctx, const VectorField& X, const Polynomial& h);
Function star_lie(const StarContext& ctx, const VectorField& X, const Function& h);
VectorField star_lie(const StarContext& ctx, const VectorField& X, const VectorField& Y);
PForm star_lie(const StarContext& ctx, const VectorField& X, const PForm& w);
TensorField star_lie(const StarContext& ctx, const VectorField& X, const TensorField& T);
// Same with an element of the enveloping algebra, Fbar_1 acting by the adjoint action.
Polynomial star_lie(const StarContext& ctx, const UElement& xi, const Polynomial& h);
VectorField star_lie(const StarContext& ctx, const UElement& xi, const VectorField& Y);
TensorField star_lie(const StarContext& ctx, const UElement& xi, const TensorField& T);

// ---- star pairings
Function star_pairing(const StarContext& ctx, const VectorField& X, const PForm& w);
// <X_p (x) ... , w_1 (x) ...>_* = <Fbar_1 |> vectors, Fbar_2 |> forms>
TensorField star_pairing(const StarContext& ctx, const TensorField& vectors, const TensorField& forms);
// Forms on the left: <Fbar_1 |> forms, Fbar_2 |> vectors>'
TensorField star_pairing_form_first(const StarContext& ctx, const TensorField& forms, const TensorField& vectors);

// ---- twisted derivations
// X_*(h) = (Fbar_1 |> X)(Fbar_2 |> h)
Function twisted_vector_action(const StarContext& ctx, const VectorField& X, const Function& h);
Polynomial twisted_vector_action(const StarContext& ctx, const VectorField& X, const Polynomial& h);

// First-order operator k -> zeroth * k + (first)_*(k).
struct StarOperator {
    Function zeroth;
    VectorField first;
};
// X composed after h in the operator algebra: k -> X_*(h * k).
StarOperator compose_after(const StarContext& ctx, const VectorField& X, const Function& h);
Function apply(const StarContext& ctx, const StarOperator& op, const Function& k);

// Right-hand side of the twisted Leibniz rule,
// X_*(h) * h' + (R_2 |> h) * ((R_1 |> X)_*(h')).
Function twisted_leibniz_rhs(const StarContext& ctx, const VectorField& X, const Function& h, const Function& hp);

// ---- frames
// Classical dual coframe of a frame; nullopt if the frame is singular.
std::optional<std::vector<PForm>> classical_dual_frame(const std::vector<VectorField>& frame);
// {theta^j} with <e_i, theta^j>_* = delta_i^j through order N. Throws on a
// singular frame.
std::vector<PForm> star_dual_frame(const StarContext& ctx, const std::vector<VectorField>& frame);

// ---- braiding
struct BraidingReport {
    int sign = 1;            // +1 commuting, -1 anticommuting
    bool commutation = false;  // b * a = sign (R_2 |> a) * (R_1 |> b)
    bool tensor_law = false;   // (a (x)_* b)(a' (x)_* b') = a * (R_2 |> a') (x)_* (R_1 |> b) * b'
    std::string detail;
    bool ok() const { return commutation && tensor_law; }
};
BraidingReport braiding_check(const StarContext& ctx, const Polynomial& a, const Polynomial& b);
BraidingReport braiding_check(const StarContext& ctx, const PForm& a, const PForm& b);

// nu^m coefficient of a function whose denominator is nu-free.
Function nu_layer(const Function& h, int m);

}  // namespace twistfold
