#include "twistfold/twisted.hpp"

#include <set>

namespace twistfold {

namespace {

Function zero_fn(const Ring& r) { return Function(r, Scalar(0)); }

// sum c op(w1 |> a, w2 |> b, w3 |> c) over a three-leg element.
template <class A, class B, class C, class Op>
auto apply_three_leg(const MultiLeg& m, const A& a, const B& b, const C& c, Op&& op) -> decltype(op(a, b, c)) {
    using Out = decltype(op(a, b, c));
    WordAction<A> la(m.generators(), a);
    WordAction<B> lb(m.generators(), b);
    WordAction<C> lc(m.generators(), c);
    std::optional<Out> out;
    for (const auto& [k, coeff] : m.terms()) {
        const A& x = la(k[0]);
        if (x.is_zero()) continue;
        const B& y = lb(k[1]);
        if (y.is_zero()) continue;
        const C& z = lc(k[2]);
        if (z.is_zero()) continue;
        Out term = scale_object(op(x, y, z), coeff);
        if (out)
            *out += term;
        else
            out = std::move(term);
    }
    if (!out) out = scale_object(op(a, b, c), NuSeries());
    return *out;
}

}  // namespace

std::vector<int> twist_letters(const TwistData& t) {
    std::set<int> used;
    for (const auto& [key, c] : t.F().terms())
        for (const auto& w : key) used.insert(w.begin(), w.end());
    return {used.begin(), used.end()};
}

// ------------------------------------------------------------- connection

TwistedConnection::TwistedConnection(StarContext ctx, Metric g)
    : ctx_(std::move(ctx)), g_(std::move(g)), letters_(twist_letters(ctx_.twist())) {
    if (g_.dim() != ctx_.dim()) throw Error("metric and twist use different dimensions");
    const auto& gens = ctx_.generators();
    bool killing = true;
    for (int i : letters_) {
        if (!is_equivariant(gens->field(i))) throw Error("twist legs not equivariant: " + gens->name(i));
        killing = killing && is_killing(g_, gens->field(i));
    }
    basis_ = killing ? TwistBasis::killing : TwistBasis::equivariance;
}

void TwistedConnection::require_killing() const {
    if (basis_ == TwistBasis::killing) return;
    const auto& gens = ctx_.generators();
    for (int i : letters_)
        if (!is_killing(g_, gens->field(i))) throw Error("twist legs not Killing: " + gens->name(i));
}

Function TwistedConnection::nabla(const VectorField& X, const Function& h) const {
    return star_lie(ctx_, X, h).truncated(order());
}

VectorField TwistedConnection::nabla(const VectorField& X, const VectorField& Y) const {
    return apply_two_leg(ctx_.twist().Fbar(), X, Y,
                         [](const VectorField& a, const VectorField& b) { return directional(a, b); })
        .truncated(order());
}

PForm TwistedConnection::nabla(const VectorField& X, const PForm& w) const {
    return apply_two_leg(ctx_.twist().Fbar(), X, w, [](const VectorField& a, const PForm& b) { return directional(a, b); })
        .truncated(order());
}

TensorField TwistedConnection::nabla(const VectorField& X, const TensorField& T) const {
    return apply_two_leg(ctx_.twist().Fbar(), X, T,
                         [](const VectorField& a, const TensorField& b) { return directional(a, b); })
        .truncated(order());
}

VectorField TwistedConnection::torsion(const VectorField& X, const VectorField& Y) const {
    VectorField swapped = apply_two_leg(ctx_.twist().R(), X, Y,
                                        [&](const VectorField& x, const VectorField& y) { return nabla(y, x); });
    return (nabla(X, Y) - swapped - star_bracket(ctx_, X, Y)).truncated(order());
}

VectorField TwistedConnection::curvature(const VectorField& X, const VectorField& Y, const VectorField& Z) const {
    VectorField swapped = apply_two_leg(ctx_.twist().R(), X, Y, [&](const VectorField& x, const VectorField& y) {
        return nabla(y, nabla(x, Z));
    });
    VectorField br = star_bracket(ctx_, X, Y).truncated(order());
    return (nabla(X, nabla(Y, Z)) - swapped - nabla(br, Z)).truncated(order());
}

VectorField TwistedConnection::torsion_antisymmetry(const VectorField& X, const VectorField& Y) const {
    VectorField other = apply_two_leg(ctx_.twist().R(), X, Y,
                                      [&](const VectorField& x, const VectorField& y) { return torsion(y, x); });
    return (torsion(X, Y) + other).truncated(order());
}

VectorField TwistedConnection::curvature_antisymmetry(const VectorField& X, const VectorField& Y,
                                                      const VectorField& Z) const {
    VectorField other = apply_two_leg(ctx_.twist().R(), X, Y,
                                      [&](const VectorField& x, const VectorField& y) { return curvature(y, x, Z); });
    return (curvature(X, Y, Z) + other).truncated(order());
}

Function TwistedConnection::g(const VectorField& X, const VectorField& Y) const {
    require_killing();
    return g_star(ctx_, g_, X, Y);
}

Function TwistedConnection::compatibility_residual(const VectorField& X, const VectorField& Y,
                                                   const VectorField& Z) const {
    require_killing();
    Function lhs = star_lie(ctx_, X, g(Y, Z));
    Function first = g(nabla(X, Y), Z);
    Function second = apply_two_leg(ctx_.twist().Rbar(), Y, X,
                                    [&](const VectorField& y, const VectorField& x) { return g(y, nabla(x, Z)); });
    return (lhs - first - second).truncated(order());
}

Function TwistedConnection::right_linearity_residual(const VectorField& X, const VectorField& Y,
                                                     const Function& h) const {
    require_killing();
    Function lhs = g(X, right_multiply(ctx_, Y, h).truncated(order()));
    return (lhs - star_product(ctx_, g(X, Y), h)).truncated(order());
}

// ------------------------------------------------------------- submanifold

TwistedSubmanifold::TwistedSubmanifold(TwistedConnection conn, Embedding emb)
    : conn_(std::move(conn)), emb_(std::move(emb)) {
    if (!(conn_.metric().matrix() == emb_.metric().matrix())) throw Error("connection and level sets use different metrics");
    require_killing_twist(conn_.context(), emb_);
}

Function TwistedSubmanifold::g(const VectorField& X, const VectorField& Y) const {
    require_tangent(emb_, X);
    require_tangent(emb_, Y);
    return conn_.g(X, Y);
}

VectorField TwistedSubmanifold::nabla(const VectorField& X, const VectorField& Y) const {
    require_tangent(emb_, X);
    require_tangent(emb_, Y);
    return emb_.tangent_part(conn_.nabla(X, Y));
}

VectorField TwistedSubmanifold::second_form(const VectorField& X, const VectorField& Y) const {
    require_tangent(emb_, X);
    require_tangent(emb_, Y);
    return emb_.normal_part(conn_.nabla(X, Y));
}

VectorField TwistedSubmanifold::second_form_legs(const VectorField& X, const VectorField& Y) const {
    return apply_two_leg(context().twist().Fbar(), X, Y,
                         [&](const VectorField& a, const VectorField& b) { return twistfold::second_form(emb_, a, b); })
        .truncated(conn_.order());
}

VectorField TwistedSubmanifold::curvature(const VectorField& X, const VectorField& Y, const VectorField& Z) const {
    const auto& tw = context().twist();
    int N = conn_.order();
    VectorField swapped = apply_two_leg(tw.R(), X, Y, [&](const VectorField& x, const VectorField& y) {
        return nabla(y, nabla(x, Z).truncated(N));
    });
    VectorField br = star_bracket(context(), X, Y).truncated(N);
    return (nabla(X, nabla(Y, Z).truncated(N)) - swapped - nabla(br, Z)).truncated(N);
}

Function TwistedSubmanifold::gauss_residual(const VectorField& X, const VectorField& Y, const VectorField& Z,
                                            const VectorField& W) const {
    for (const auto* v : {&X, &Y, &Z, &W}) require_tangent(emb_, *v);
    const auto& tw = context().twist();
    int N = conn_.order();
    auto gs = [&](const VectorField& a, const VectorField& b) { return conn_.g(a, b); };
    Function lhs = gs(conn_.curvature(X, Y, Z), W);
    Function first = gs(curvature(X, Y, Z), W);
    Function second = apply_two_leg(tw.Rbar(), Z, Y, [&](const VectorField& z, const VectorField& y) {
        return gs(second_form(X, z), second_form(y, W));
    });
    // (F (x) 1)(Delta (x) id)(Rbar)(Fbar (x) 1)
    MultiLeg three = (tw.F().insert_unit(2) * tw.Rbar().coproduct_on(0) * tw.Fbar().insert_unit(2)).truncated(N);
    Function third = apply_three_leg(three, Y, Z, X, [&](const VectorField& y, const VectorField& z, const VectorField& x) {
        return gs(second_form(y, z), second_form(x, W));
    });
    return emb_.family().reduce((lhs - first - second + third).truncated(N)).truncated(N);
}

TwistedRicci TwistedSubmanifold::ricci(const std::vector<VectorField>& frame) const {
    const auto& M = emb_.family();
    const auto& ctx = context();
    int N = conn_.order();
    size_t m = frame.size();
    if (static_cast<int>(m) != M.dim() - M.codim()) throw Error("tangent frame has the wrong size");
    for (const auto& v : frame) require_tangent(emb_, v);

    std::vector<VectorField> full = frame;
    for (int a = 0; a < M.codim(); ++a) full.push_back(M.gradient(a));
    std::vector<PForm> theta = star_dual_frame(ctx, full);

    auto ric = [&](const VectorField& X, const VectorField& Y) {
        Function s = zero_fn(emb_.ring());
        for (size_t a = 0; a < m; ++a) {
            VectorField r = curvature(frame[a], X, Y);
            s += star_pairing_form_first(ctx, TensorField::from_form(theta[a]), TensorField::from_vector(r))
                     .as_function();
        }
        return s.truncated(N);
    };

    TwistedRicci out;
    out.ricci.assign(m, std::vector<Function>(m));
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) out.ricci[a][b] = M.reduce(ric(frame[a], frame[b])).truncated(N);

    FunctionMatrix gt(m, std::vector<Function>(m));
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) gt[a][b] = emb_.metric()(frame[a], frame[b]);
    auto inv = invert(gt);
    if (!inv || M.reduce(determinant(gt)).is_zero()) throw Error("first fundamental form is degenerate on the frame");

    // g_t^-1 = sum_b (g^{ab} v_a) (x) v_b, rewritten in star tensor products.
    Function s = zero_fn(emb_.ring());
    for (size_t b = 0; b < m; ++b) {
        VectorField left = frame[0].times((*inv)[0][b]);
        for (size_t a = 1; a < m; ++a) left += frame[a].times((*inv)[a][b]);
        auto st = StarTensor::from_classical(ctx, TensorField::from_vector(left), TensorField::from_vector(frame[b]));
        for (const auto& t : st.terms()) {
            Function v = ric(t.left.as_vector(), t.right.as_vector());
            if (!v.is_zero()) s += v.scaled(t.coeff);
        }
    }
    out.scalar = M.reduce(s.truncated(N)).truncated(N);
    out.scalar_value = parameter_value(out.scalar, M.ideal());
    return out;
}

}  // namespace twistfold
