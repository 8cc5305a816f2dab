#include "twistfold/star.hpp"

namespace twistfold {

StarContext::StarContext(TwistData twist) : twist_(std::move(twist)) {
    if (!twist_.generators()) throw Error("star context needs a twist");
    if (!check_twist_axioms(twist_).ok()) throw Error("twist fails the twist axioms");
}

namespace {

Function fn(const Polynomial& p) { return Function(p); }

}  // namespace

// ------------------------------------------------------------------ products

Polynomial star_product(const StarContext& ctx, const Polynomial& a, const Polynomial& b) {
    Polynomial out = apply_two_leg(ctx.twist().Fbar(), a, b,
                                   [](const Polynomial& x, const Polynomial& y) { return x * y; });
    if (!(a.exact() && b.exact() && ctx.terminates(a, b))) out = out.with_inexact();
    return out;
}

Function star_product(const StarContext& ctx, const Function& a, const Function& b) {
    if (a.is_polynomial() && b.is_polynomial()) return fn(star_product(ctx, a.numerator(), b.numerator()));
    return apply_two_leg(ctx.twist().Fbar(), a, b, [](const Function& x, const Function& y) { return x * y; });
}

TensorField star_product(const StarContext& ctx, const TensorField& a, const TensorField& b) {
    return star_tensor(ctx, a, b);
}

VectorField star_product(const StarContext& ctx, const Function& h, const VectorField& X) {
    return apply_two_leg(ctx.twist().Fbar(), h, X,
                         [](const Function& x, const VectorField& y) { return y.times(x); });
}

PForm star_product(const StarContext& ctx, const Function& h, const PForm& w) {
    return apply_two_leg(ctx.twist().Fbar(), h, w, [](const Function& x, const PForm& y) { return y.times(x); });
}

VectorField right_multiply(const StarContext& ctx, const VectorField& X, const Function& h) {
    return apply_two_leg(ctx.twist().Fbar(), X, h,
                         [](const VectorField& x, const Function& y) { return x.times(y); });
}

PForm right_multiply(const StarContext& ctx, const PForm& w, const Function& h) {
    return apply_two_leg(ctx.twist().Fbar(), w, h, [](const PForm& x, const Function& y) { return x.times(y); });
}

TensorField right_multiply(const StarContext& ctx, const TensorField& T, const Function& h) {
    return apply_two_leg(ctx.twist().Fbar(), T, h,
                         [](const TensorField& x, const Function& y) { return x.times(y); });
}

TensorField star_tensor(const StarContext& ctx, const TensorField& a, const TensorField& b) {
    return apply_two_leg(ctx.twist().Fbar(), a, b,
                         [](const TensorField& x, const TensorField& y) { return tensor(x, y); });
}

PForm star_wedge(const StarContext& ctx, const PForm& a, const PForm& b) {
    if (a.degree() + b.degree() > ctx.dim()) throw Error("form degree overflow");
    return apply_two_leg(ctx.twist().Fbar(), a, b, [](const PForm& x, const PForm& y) { return wedge(x, y); });
}

StarTensor StarTensor::product(const TensorField& a, const TensorField& b) {
    StarTensor t;
    t.terms_.push_back({NuSeries(Scalar(1)), a, b});
    return t;
}

StarTensor StarTensor::from_classical(const StarContext& ctx, const TensorField& a, const TensorField& b) {
    StarTensor t;
    WordAction<TensorField> left(ctx.generators(), a), right(ctx.generators(), b);
    for (const auto& [k, c] : ctx.twist().F().terms()) {
        const TensorField& l = left(k[0]);
        if (l.is_zero()) continue;
        const TensorField& r = right(k[1]);
        if (r.is_zero()) continue;
        t.terms_.push_back({c, l, r});
    }
    return t;
}

TensorField StarTensor::value(const StarContext& ctx) const {
    if (terms_.empty()) throw Error("empty star tensor");
    std::optional<TensorField> out;
    for (const auto& t : terms_) {
        TensorField v = star_tensor(ctx, t.left, t.right).scaled(t.coeff).truncated(ctx.order());
        if (out)
            *out += v;
        else
            out = std::move(v);
    }
    return *out;
}

// ----------------------------------------------------- bracket and derivative

VectorField star_bracket(const StarContext& ctx, const VectorField& X, const VectorField& Y) {
    return apply_two_leg(ctx.twist().Fbar(), X, Y,
                         [](const VectorField& x, const VectorField& y) { return bracket(x, y); });
}

namespace {

template <class T>
T star_lie_impl(const StarContext& ctx, const VectorField& X, const T& t) {
    return apply_two_leg(ctx.twist().Fbar(), X, t, [](const VectorField& x, const T& y) { return lie(x, y); });
}

template <class T>
T star_lie_u(const StarContext& ctx, const UElement& xi, const T& t) {
    if (xi.generators() != ctx.generators()) throw Error("enveloping algebra element over a different generator set");
    WordAction<T> right(ctx.generators(), t);
    std::map<Word, UElement> left;
    T out = scale_object(t, NuSeries());
    for (const auto& [k, c] : ctx.twist().Fbar().terms()) {
        const T& r = right(k[1]);
        if (r.is_zero()) continue;
        auto it = left.find(k[0]);
        if (it == left.end()) {
            UElement w(ctx.generators(), ctx.order());
            w.add_term(k[0], NuSeries(Scalar(1)));
            it = left.emplace(k[0], w.adjoint(xi)).first;
        }
        if (it->second.is_zero()) continue;
        out += scale_object(hopf_act(it->second, r), c);
    }
    return out;
}

}  // namespace

Polynomial star_lie(const StarContext& ctx, const VectorField& X, const Polynomial& h) {
    return star_lie_impl(ctx, X, h);
}
Function star_lie(const StarContext& ctx, const VectorField& X, const Function& h) { return star_lie_impl(ctx, X, h); }
VectorField star_lie(const StarContext& ctx, const VectorField& X, const VectorField& Y) {
    return star_lie_impl(ctx, X, Y);
}
PForm star_lie(const StarContext& ctx, const VectorField& X, const PForm& w) { return star_lie_impl(ctx, X, w); }
TensorField star_lie(const StarContext& ctx, const VectorField& X, const TensorField& T) {
    return star_lie_impl(ctx, X, T);
}
Polynomial star_lie(const StarContext& ctx, const UElement& xi, const Polynomial& h) {
    return star_lie_u(ctx, xi, h);
}
VectorField star_lie(const StarContext& ctx, const UElement& xi, const VectorField& Y) {
    return star_lie_u(ctx, xi, Y);
}
TensorField star_lie(const StarContext& ctx, const UElement& xi, const TensorField& T) {
    return star_lie_u(ctx, xi, T);
}

// ------------------------------------------------------------------ pairings

Function star_pairing(const StarContext& ctx, const VectorField& X, const PForm& w) {
    return apply_two_leg(ctx.twist().Fbar(), X, w, [](const VectorField& x, const PForm& y) { return pairing(x, y); });
}

TensorField star_pairing(const StarContext& ctx, const TensorField& vectors, const TensorField& forms) {
    return apply_two_leg(ctx.twist().Fbar(), vectors, forms,
                         [](const TensorField& x, const TensorField& y) { return pairing(x, y); });
}

TensorField star_pairing_form_first(const StarContext& ctx, const TensorField& forms, const TensorField& vectors) {
    return apply_two_leg(ctx.twist().Fbar(), forms, vectors,
                         [](const TensorField& x, const TensorField& y) { return pairing_form_first(x, y); });
}

// ------------------------------------------------------- twisted derivations

Function twisted_vector_action(const StarContext& ctx, const VectorField& X, const Function& h) {
    return star_lie(ctx, X, h);
}

Polynomial twisted_vector_action(const StarContext& ctx, const VectorField& X, const Polynomial& h) {
    return star_lie(ctx, X, h);
}

StarOperator compose_after(const StarContext& ctx, const VectorField& X, const Function& h) {
    StarOperator op;
    op.zeroth = twisted_vector_action(ctx, X, h);
    op.first = apply_two_leg(ctx.twist().R(), X, h, [&](const VectorField& x, const Function& y) {
        return star_product(ctx, y, x);
    });
    return op;
}

Function apply(const StarContext& ctx, const StarOperator& op, const Function& k) {
    return star_product(ctx, op.zeroth, k) + twisted_vector_action(ctx, op.first, k);
}

Function twisted_leibniz_rhs(const StarContext& ctx, const VectorField& X, const Function& h, const Function& hp) {
    Function first = star_product(ctx, twisted_vector_action(ctx, X, h), hp);
    Function second = apply_two_leg(ctx.twist().R(), X, h, [&](const VectorField& x, const Function& y) {
        return star_product(ctx, y, twisted_vector_action(ctx, x, hp));
    });
    return first + second;
}

// -------------------------------------------------------------------- frames

std::optional<std::vector<PForm>> classical_dual_frame(const std::vector<VectorField>& frame) {
    if (frame.empty()) throw Error("empty frame");
    const Ring& ring = frame[0].ring();
    int n = ring->dim();
    if (static_cast<int>(frame.size()) != n) throw Error("frame size must equal the coordinate dimension");
    FunctionMatrix a(n, std::vector<Function>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) a[i][k] = frame[i][k];
    auto inv = invert(a);
    if (!inv) return std::nullopt;
    // theta^j_k = (A^-1)_kj
    std::vector<PForm> out;
    for (int j = 0; j < n; ++j) {
        std::vector<Function> comps;
        for (int k = 0; k < n; ++k) comps.push_back((*inv)[k][j]);
        out.push_back(PForm::one_form(ring, comps));
    }
    return out;
}

Function nu_layer(const Function& h, int m) {
    return h.map_numerator([m](const Polynomial& p) { return Polynomial(p.ring(), p.layer(m)); });
}

std::vector<PForm> star_dual_frame(const StarContext& ctx, const std::vector<VectorField>& frame) {
    auto seed = classical_dual_frame(frame);
    if (!seed) throw Error("singular frame");
    const Ring& ring = ctx.ring();
    int n = static_cast<int>(frame.size());
    int N = ctx.order();
    std::vector<PForm> theta = *seed;
    for (int m = 1; m <= N; ++m) {
        Function nu_m(Polynomial::nu(ring, N, m));
        for (int j = 0; j < n; ++j) {
            PForm correction(ring, 1);
            for (int i = 0; i < n; ++i) {
                Function r = nu_layer(star_pairing(ctx, frame[i], theta[j]), m);
                if (r.is_zero()) continue;
                correction += (*seed)[i].times(r * nu_m);
            }
            theta[j] -= correction;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Function r = star_pairing(ctx, frame[i], theta[j]).truncated(N);
            if (r != Function(ring, Scalar(i == j ? 1 : 0))) throw Error("star dual frame did not converge");
        }
    return theta;
}

// ------------------------------------------------------------------ braiding

namespace {

// Same twist over the doubled coordinates, generators acting diagonally.
StarContext doubled_context(const StarContext& ctx, const Ring& big) {
    const Generators& g = ctx.generators();
    int n = ctx.dim();
    std::vector<VectorField> fields;
    for (int k = 0; k < g->size(); ++k) {
        const VectorField& X = g->field(k);
        if (!X.is_polynomial()) throw Error("braiding check needs polynomial generators");
        std::vector<Function> comps(2 * n, Function(big, Scalar(0)));
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < n; ++i) comps[c * n + i] = Function(embed_copy(X[i].numerator(), big, c));
        fields.emplace_back(big, comps);
    }
    Generators g2 = make_generators(big, g->names(), fields);
    return StarContext(build_twist(g2, ctx.twist().spec(), ctx.order()));
}

Function embed_fn(const Function& h, const Ring& big, int copy) {
    if (!h.is_polynomial()) throw Error("braiding check needs polynomial inputs");
    return Function(embed_copy(h.numerator(), big, copy));
}

PForm embed_form(const PForm& w, const Ring& big, int copy) {
    int n = w.dim();
    PForm out(big, w.degree());
    for (const auto& [idx, c] : w.components()) {
        IndexSet shifted;
        for (int i : idx) shifted.push_back(i + copy * n);
        out += PForm::basis(big, shifted, embed_fn(c, big, copy));
    }
    return out;
}

template <class T, class Mul, class Embed>
BraidingReport braiding_impl(const StarContext& ctx, const T& a, const T& b, int sign, Mul mul, Embed embed) {
    BraidingReport r;
    r.sign = sign;
    const MultiLeg& R = ctx.twist().R();
    T lhs = mul(ctx, b, a);
    T rhs = apply_two_leg(R, b, a, [&](const T& rb, const T& ra) { return mul(ctx, ra, rb); });
    if (sign < 0) rhs = -rhs;
    r.commutation = (lhs - rhs).truncated(ctx.order()).is_zero();
    if (!r.commutation) r.detail = "commutation residual " + (lhs - rhs).truncated(ctx.order()).str();

    // (a (x)_* b)(b (x)_* a) in the braided tensor product algebra.
    Ring big = tensor_ring(ctx.ring(), 2);
    StarContext dbl = doubled_context(ctx, big);
    T a1 = embed(a, big, 0), b1 = embed(b, big, 0), a2 = embed(a, big, 1), b2 = embed(b, big, 1);
    T left = mul(dbl, mul(dbl, a1, b2), mul(dbl, b1, a2));
    T right = apply_two_leg(R, b, b, [&](const T& rb, const T& rbp) {
        // rb = R_1 |> b (second factor), rbp = R_2 |> b (first factor)
        T first = embed(mul(ctx, a, rbp), big, 0);
        T second = embed(mul(ctx, rb, a), big, 1);
        return mul(dbl, first, second);
    });
    if (sign < 0) right = -right;
    T diff = (left - right).truncated(ctx.order());
    r.tensor_law = diff.is_zero();
    if (!r.tensor_law && r.detail.empty()) r.detail = "tensor law residual " + diff.str();
    return r;
}

}  // namespace

BraidingReport braiding_check(const StarContext& ctx, const Polynomial& a, const Polynomial& b) {
    auto mul = [](const StarContext& c, const Function& x, const Function& y) { return star_product(c, x, y); };
    return braiding_impl<Function>(ctx, fn(a), fn(b), 1, mul, embed_fn);
}

BraidingReport braiding_check(const StarContext& ctx, const PForm& a, const PForm& b) {
    int sign = (a.degree() * b.degree()) % 2 ? -1 : 1;
    auto mul = [](const StarContext& c, const PForm& x, const PForm& y) { return star_wedge(c, x, y); };
    return braiding_impl<PForm>(ctx, a, b, sign, mul, embed_form);
}

}  // namespace twistfold
