#include "twistfold/eval.hpp"

namespace twistfold {

EvalError::EvalError(const Span& span, const std::string& message)
    : Error("line " + std::to_string(span.line) + ", column " + std::to_string(span.column) + ": " + message),
      span_(span) {}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Evaluator {
public:
    explicit Evaluator(const Workspace& ws) : ws_(ws), r_(ws.ring) {}

    Value eval(const Expr& e) {
        try {
            return eval_inner(e);
        } catch (const EvalError&) {
            throw;
        } catch (const Error& err) {
            throw EvalError(e.span, err.what());
        }
    }

private:
    [[noreturn]] void fail(const Expr& e, const std::string& msg) const { throw EvalError(e.span, msg); }

    Function fn(const Scalar& s) const { return Function(r_, s); }

    template <class T>
    const T& as(const Expr& e, const Value& v, const char* what) const {
        if (auto p = std::get_if<T>(&v)) return *p;
        fail(e, std::string("expected ") + what + ", got " + value_kind(v));
    }
    Function F(const Expr& e) { return as<Function>(e, eval(e), "a function"); }
    VectorField V(const Expr& e) { return as<VectorField>(e, eval(e), "a vector field"); }
    PForm P(const Expr& e) { return as<PForm>(e, eval(e), "a form"); }

    const StarContext& ctx(const Expr& e) const {
        if (!ws_.ctx) fail(e, e.text + " needs a twist");
        return *ws_.ctx;
    }
    const Metric& metric(const Expr& e) const {
        if (!ws_.metric) fail(e, e.text + " needs a metric");
        return *ws_.metric;
    }
    const Embedding& emb(const Expr& e) const {
        if (!ws_.family) fail(e, e.text + " needs a level set");
        if (!ws_.emb) fail(e, e.text + " needs a nondegenerate normal frame");
        return *ws_.emb;
    }
    const TwistedConnection& conn(const Expr& e) const {
        if (!ws_.conn) fail(e, e.text + " needs a twist and a metric");
        return *ws_.conn;
    }
    const TwistedSubmanifold& twisted(const Expr& e) const {
        if (!ws_.twisted) fail(e, e.text + " needs a Killing twist tangent to the level sets");
        return *ws_.twisted;
    }
    const std::vector<VectorField>& frame(const Expr& e) const {
        if (ws_.frame.empty()) fail(e, e.text + " needs a tangent frame");
        return ws_.frame;
    }
    int small_int(const Expr& e) {
        Function h = F(e);
        if (!h.is_polynomial() || !h.numerator().is_constant() || !h.numerator().is_nu_free())
            fail(e, "expected an integer");
        Scalar s = h.numerator().constant_series()[0];
        if (!s.is_real() || s.re().get_den() != 1 || !s.re().get_num().fits_slong_p()) fail(e, "expected an integer");
        return static_cast<int>(s.re().get_num().get_si());
    }
    Value trunc(const Value& v) const { return ws_.ctx ? truncate(v, ws_.order()) : v; }

    Value symbol(const Expr& e) {
        const std::string& s = e.text;
        if (auto it = ws_.names.find(s); it != ws_.names.end()) return it->second;
        if (ws_.gens)
            if (int g = ws_.gens->index(s); g >= 0) return ws_.gens->field(g);
        const auto& cs = *r_;
        for (int i = 0; i < cs.dim(); ++i) {
            if (s == cs.coords[i]) return Function(Polynomial::coord(r_, i));
            if (s == "d" + cs.coords[i]) return PForm::dx(r_, i);
            if (s == "d" + std::to_string(i + 1)) return VectorField::partial(r_, i);
        }
        for (size_t j = 0; j < cs.params.size(); ++j)
            if (s == cs.params[j]) return Function(Polynomial::param(r_, static_cast<int>(j)));
        if (s == "nu") return Function(Polynomial::nu(r_, kNoCap, 1));
        if (s == "i") return fn(Scalar::i());
        fail(e, "unknown symbol '" + s + "'");
    }

    Value add(const Expr& e, const Value& a, const Value& b, bool minus) {
        if (a.index() != b.index())
            fail(e, std::string("cannot ") + (minus ? "subtract " : "add ") + value_kind(b) + (minus ? " from " : " to ") +
                        value_kind(a));
        return std::visit(
            [&](const auto& x) -> Value {
                using T = std::decay_t<decltype(x)>;
                const T& y = std::get<T>(b);
                if constexpr (std::is_same_v<T, PForm>)
                    if (x.degree() != y.degree() && !x.is_zero() && !y.is_zero()) fail(e, "forms of different degree");
                if (minus) return T(x - y);
                return T(x + y);
            },
            a);
    }

    Value mul(const Expr& e, const Value& a, const Value& b) {
        return std::visit(overloaded{
                              [](const Function& x, const Function& y) -> Value { return x * y; },
                              [](const Function& x, const VectorField& y) -> Value { return y.times(x); },
                              [](const VectorField& x, const Function& y) -> Value { return x.times(y); },
                              [](const Function& x, const PForm& y) -> Value { return y.times(x); },
                              [](const PForm& x, const Function& y) -> Value { return x.times(y); },
                              [&](const auto& x, const auto& y) -> Value {
                                  fail(e, std::string("cannot multiply ") + value_kind(Value(x)) + " by " +
                                              value_kind(Value(y)));
                              },
                          },
                          a, b);
    }

    Value power(const Expr& e) {
        Value base = eval(*e.args[0]);
        if (auto w = std::get_if<PForm>(&base)) return wedge(*w, P(*e.args[1]));
        Function h = as<Function>(*e.args[0], base, "a function or a form");
        int k = small_int(*e.args[1]);
        if (k < 0) {
            if (h.is_zero()) fail(e, "division by zero");
            h = h.inverse();
            k = -k;
        }
        Function out = fn(Scalar(1));
        for (int t = 0; t < k; ++t) out = out * h;
        return out;
    }

    Value star(const Expr& e, const Value& a, const Value& b) {
        const StarContext& c = ctx(e);
        return std::visit(overloaded{
                              [&](const Function& x, const Function& y) -> Value { return star_product(c, x, y); },
                              [&](const Function& x, const VectorField& y) -> Value { return star_product(c, x, y); },
                              [&](const Function& x, const PForm& y) -> Value { return star_product(c, x, y); },
                              [&](const VectorField& x, const Function& y) -> Value { return right_multiply(c, x, y); },
                              [&](const PForm& x, const Function& y) -> Value { return right_multiply(c, x, y); },
                              [&](const auto& x, const auto& y) -> Value {
                                  fail(e, std::string("star product of ") + value_kind(Value(x)) + " and " +
                                              value_kind(Value(y)) + " is not defined");
                              },
                          },
                          a, b);
    }

    template <class Lie>
    static Value act(const VectorField& X, const Value& t, Lie&& l) {
        return std::visit([&](const auto& y) -> Value { return l(X, y); }, t);
    }

    Value projection(const Expr& e, bool tangent, bool twisted_version) {
        const Embedding& m = emb(e);
        Value v = eval(*e.args[0]);
        if (twisted_version) {
            const StarContext& c = ctx(e);
            if (auto X = std::get_if<VectorField>(&v))
                return tangent ? twisted_tangent_part(c, m, *X) : twisted_normal_part(c, m, *X);
            PForm w = as<PForm>(*e.args[0], v, "a vector field or a 1-form");
            return tangent ? twisted_tangent_part(c, m, w) : twisted_normal_part(c, m, w);
        }
        if (auto X = std::get_if<VectorField>(&v)) return tangent ? m.tangent_part(*X) : m.normal_part(*X);
        PForm w = as<PForm>(*e.args[0], v, "a vector field or a form");
        return tangent ? m.tangent_part(w) : m.normal_part(w);
    }

    Value call(const Expr& e) {
        const std::string& f = e.text;
        const auto& a = e.args;
        if (f == "star") return trunc(star(e, eval(*a[0]), eval(*a[1])));
        if (f == "bracket") return bracket(V(*a[0]), V(*a[1]));
        if (f == "sbracket") return trunc(star_bracket(ctx(e), V(*a[0]), V(*a[1])));
        if (f == "wedge") return wedge(P(*a[0]), P(*a[1]));
        if (f == "swedge") return trunc(star_wedge(ctx(e), P(*a[0]), P(*a[1])));
        if (f == "pair") return pairing(V(*a[0]), P(*a[1]));
        if (f == "spair") return trunc(star_pairing(ctx(e), V(*a[0]), P(*a[1])));
        if (f == "d") {
            Value v = eval(*a[0]);
            if (auto h = std::get_if<Function>(&v)) return d(*h);
            return d(as<PForm>(*a[0], v, "a function or a form"));
        }
        if (f == "act") {
            VectorField X = V(*a[0]);
            return act(X, eval(*a[1]), [](const VectorField& x, const auto& y) { return lie(x, y); });
        }
        if (f == "slie") {
            const StarContext& c = ctx(e);
            VectorField X = V(*a[0]);
            return trunc(act(X, eval(*a[1]), [&](const VectorField& x, const auto& y) { return star_lie(c, x, y); }));
        }
        if (f == "g") return metric(e)(V(*a[0]), V(*a[1]));
        if (f == "ginv") return metric(e).inverse(P(*a[0]), P(*a[1]));
        if (f == "gs") return conn(e).g(V(*a[0]), V(*a[1]));
        if (f == "proj_t" || f == "proj_n") return projection(e, f == "proj_t", false);
        if (f == "sproj_t" || f == "sproj_n") return trunc(projection(e, f == "sproj_t", true));
        if (f == "nabla") {
            VectorField X = V(*a[0]);
            Value y = eval(*a[1]);
            return std::visit([&](const auto& t) -> Value { return directional(X, t); }, y);
        }
        if (f == "nabla_t") return projected_nabla(emb(e), V(*a[0]), V(*a[1]));
        if (f == "snabla") return conn(e).nabla(V(*a[0]), V(*a[1]));
        if (f == "snabla_t") return twisted(e).nabla(V(*a[0]), V(*a[1]));
        if (f == "II") return second_form(emb(e), V(*a[0]), V(*a[1]));
        if (f == "sII") return twisted(e).second_form(V(*a[0]), V(*a[1]));
        if (f == "storsion") return conn(e).torsion(V(*a[0]), V(*a[1]));
        if (f == "curvature") return ambient_curvature(V(*a[0]), V(*a[1]), V(*a[2]));
        if (f == "curvature_t") return intrinsic_curvature(emb(e), V(*a[0]), V(*a[1]), V(*a[2]));
        if (f == "scurvature") return conn(e).curvature(V(*a[0]), V(*a[1]), V(*a[2]));
        if (f == "scurvature_t") return twisted(e).curvature(V(*a[0]), V(*a[1]), V(*a[2]));
        if (f == "reduce") return reduce(ws_, eval(*a[0]));
        if (f == "truncate") return truncate(eval(*a[0]), small_int(*a[1]));
        if (f == "kappa" || f == "gauss_curvature" || f == "mean_curvature") {
            auto p = principal_curvatures(emb(e), frame(e));
            if (f == "gauss_curvature") return p.gauss;
            if (f == "mean_curvature") return p.mean;
            if (!p.principal) fail(e, "shape operator is not diagonal on the frame");
            int k = small_int(*a[0]);
            if (k < 1 || k > 2) fail(e, "kappa takes 1 or 2");
            return (*p.principal)[k - 1];
        }
        if (f == "ricci_scalar") {
            auto c = curvature(emb(e), frame(e));
            return c.scalar_value ? *c.scalar_value : c.scalar;
        }
        if (f == "sricci_scalar") {
            auto c = twisted(e).ricci(frame(e));
            return c.scalar_value ? *c.scalar_value : c.scalar;
        }
        if (f == "normal" || f == "grad") {
            const Embedding& m = emb(e);
            int k = small_int(*a[0]);
            if (k < 1 || k > m.family().codim()) fail(e, "no constraint with index " + std::to_string(k));
            return f == "normal" ? m.frame().normals()[k - 1] : m.family().gradient(k - 1);
        }
        if (f == "unit_normal") {
            const auto& u = emb(e).frame().unit();
            if (!u) fail(e, "no unit normal: E is not a square modulo the ideal");
            return u->normal;
        }
        if (f == "normal_matrix") {
            const Embedding& m = emb(e);
            int i = small_int(*a[0]), j = small_int(*a[1]);
            int k = m.family().codim();
            if (i < 1 || j < 1 || i > k || j > k) fail(e, "index out of range");
            return m.frame().E_reduced()[i - 1][j - 1];
        }
        fail(e, "unknown function '" + f + "'");
    }

    Value eval_inner(const Expr& e) {
        switch (e.kind) {
            case NodeKind::number: return fn(Scalar(mpq_class(e.text)));
            case NodeKind::symbol: return symbol(e);
            case NodeKind::neg:
                return std::visit([](const auto& x) -> Value { return decltype(x.scaled(NuSeries()))(x * Scalar(-1)); },
                                  eval(*e.args[0]));
            case NodeKind::add:
            case NodeKind::sub: return add(e, eval(*e.args[0]), eval(*e.args[1]), e.kind == NodeKind::sub);
            case NodeKind::mul: return mul(e, eval(*e.args[0]), eval(*e.args[1]));
            case NodeKind::div: {
                Value num = eval(*e.args[0]);
                Function den = F(*e.args[1]);
                if (den.is_zero()) fail(e, "division by zero");
                return mul(e, num, den.inverse());
            }
            case NodeKind::pow: return power(e);
            case NodeKind::call: return call(e);
        }
        fail(e, "malformed expression");
    }

    const Workspace& ws_;
    Ring r_;
};

}  // namespace

Value evaluate(const Workspace& ws, const Expr& e) { return Evaluator(ws).eval(e); }

Value evaluate(const Workspace& ws, std::string_view src) { return evaluate(ws, *parse_expression(src)); }

const char* value_kind(const Value& v) {
    switch (v.index()) {
        case 0: return "function";
        case 1: return "vector field";
        default: return "form";
    }
}

bool is_zero(const Value& v) {
    return std::visit([](const auto& x) { return x.is_zero(); }, v);
}

Value subtract(const Value& a, const Value& b) {
    if (a.index() != b.index()) {
        // 0 compares with anything
        if (auto h = std::get_if<Function>(&b); h && h->is_zero()) return a;
        if (auto h = std::get_if<Function>(&a); h && h->is_zero())
            return std::visit([](const auto& x) -> Value { return decltype(x.scaled(NuSeries()))(x * Scalar(-1)); }, b);
        throw Error(std::string("cannot compare ") + value_kind(a) + " with " + value_kind(b));
    }
    return std::visit(
        [&](const auto& x) -> Value {
            using T = std::decay_t<decltype(x)>;
            return T(x - std::get<T>(b));
        },
        a);
}

Value truncate(const Value& v, int order) {
    return std::visit([&](const auto& x) -> Value { return x.truncated(order); }, v);
}

Value reduce(const Workspace& ws, const Value& v) {
    if (!ws.family) throw Error("reduction needs a level set");
    const auto& ideal = ws.family->ideal();
    return std::visit(overloaded{
                          [&](const Function& h) -> Value { return ws.family->reduce(h); },
                          [&](const VectorField& X) -> Value { return X.reduce_mod(ideal); },
                          [&](const PForm& w) -> Value { return w.reduce_mod(ideal); },
                      },
                      v);
}

std::string value_str(const Value& v, bool compact) {
    return std::visit([&](const auto& x) { return x.str(compact); }, v);
}

}  // namespace twistfold
