#include "twistfold/riemann.hpp"

namespace twistfold {

namespace {

Function zero_fn(const Ring& ring) { return Function(ring, Scalar(0)); }

using Tensor4 = std::vector<std::vector<std::vector<std::vector<Function>>>>;

Tensor4 tensor4(size_t m, const Function& z) {
    return Tensor4(m, std::vector<std::vector<std::vector<Function>>>(
                          m, std::vector<std::vector<Function>>(m, std::vector<Function>(m, z))));
}

}  // namespace

VectorField flat_nabla(const VectorField& X, const VectorField& Y) { return directional(X, Y); }

void require_tangent(const Embedding& emb, const VectorField& X) {
    for (const auto& f : emb.family().constraints())
        if (!X.apply(Function(f)).is_zero()) throw Error("argument is not tangent: " + X.str(true));
}

VectorField projected_nabla(const Embedding& emb, const VectorField& X, const VectorField& Y) {
    require_tangent(emb, X);
    require_tangent(emb, Y);
    return emb.tangent_part(flat_nabla(X, Y));
}

VectorField second_form(const Embedding& emb, const VectorField& X, const VectorField& Y) {
    require_tangent(emb, X);
    require_tangent(emb, Y);
    return emb.normal_part(flat_nabla(X, Y));
}

VectorField second_form_closed(const Embedding& emb, const VectorField& X, const VectorField& Y) {
    const auto& M = emb.family();
    int n = M.dim();
    VectorField out(emb.ring());
    for (int i = 0; i < n; ++i) out[i] = zero_fn(emb.ring());
    for (int a = 0; a < M.codim(); ++a) {
        Function c = zero_fn(emb.ring());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!M.hessian(a, i, j).is_zero()) c -= X[i] * Y[j] * Function(M.hessian(a, i, j));
        if (!c.is_zero()) out += emb.frame().normals()[a].times(c);
    }
    return out;
}

VectorField ambient_curvature(const VectorField& X, const VectorField& Y, const VectorField& Z) {
    return flat_nabla(X, flat_nabla(Y, Z)) - flat_nabla(Y, flat_nabla(X, Z)) - flat_nabla(bracket(X, Y), Z);
}

VectorField intrinsic_curvature(const Embedding& emb, const VectorField& X, const VectorField& Y,
                                const VectorField& Z) {
    auto nt = [&](const VectorField& a, const VectorField& b) { return projected_nabla(emb, a, b); };
    return nt(X, nt(Y, Z)) - nt(Y, nt(X, Z)) - nt(bracket(X, Y), Z);
}

Function gauss_residual(const Embedding& emb, const VectorField& X, const VectorField& Y, const VectorField& Z,
                        const VectorField& W) {
    const Metric& g = emb.metric();
    Function r = g(ambient_curvature(X, Y, Z), W) - g(intrinsic_curvature(emb, X, Y, Z), W) -
                 g(second_form(emb, X, Z), second_form(emb, Y, W)) + g(second_form(emb, Y, Z), second_form(emb, X, W));
    return emb.family().reduce(r);
}

Function parameter_value_or_throw(const Embedding& emb, const Function& h, const char* what) {
    auto v = parameter_value(h, emb.family().ideal());
    if (!v) throw Error(std::string(what) + " is not constant on the level sets: " + h.str(true));
    return *v;
}

CurvatureData curvature(const Embedding& emb, const std::vector<VectorField>& frame) {
    const Metric& g = emb.metric();
    const auto& M = emb.family();
    size_t m = frame.size();
    if (static_cast<int>(m) != M.dim() - M.codim()) throw Error("tangent frame has the wrong size");
    for (const auto& v : frame) require_tangent(emb, v);
    Function z = zero_fn(emb.ring());

    CurvatureData c;
    c.g.assign(m, std::vector<Function>(m));
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) c.g[a][b] = g(frame[a], frame[b]);
    auto inv = invert(c.g);
    if (!inv || M.reduce(determinant(c.g)).is_zero()) throw Error("first fundamental form is degenerate on the frame");
    c.g_inv = std::move(*inv);

    std::vector<std::vector<VectorField>> II(m, std::vector<VectorField>(m));
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) II[a][b] = second_form(emb, frame[a], frame[b]);
    // gIJ[a][b][c][d] = g(II(v_a, v_b), II(v_c, v_d)) reduced
    auto gII = [&](size_t a, size_t b, size_t cc, size_t d) { return g(II[a][b], II[cc][d]); };

    c.lowered = tensor4(m, z);
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b)
            for (size_t cc = 0; cc < m; ++cc)
                for (size_t d = 0; d < m; ++d)
                    c.lowered[a][b][cc][d] = M.reduce(gII(b, cc, a, d) - gII(a, cc, b, d));
    c.raised = tensor4(m, z);
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b)
            for (size_t cc = 0; cc < m; ++cc)
                for (size_t e = 0; e < m; ++e) {
                    Function s = z;
                    for (size_t d = 0; d < m; ++d)
                        if (!c.lowered[a][b][cc][d].is_zero()) s += c.lowered[a][b][cc][d] * c.g_inv[d][e];
                    c.raised[a][b][cc][e] = M.reduce(s);
                }
    c.ricci.assign(m, std::vector<Function>(m, z));
    for (size_t b = 0; b < m; ++b)
        for (size_t cc = 0; cc < m; ++cc) {
            Function s = z;
            for (size_t a = 0; a < m; ++a) s += c.raised[a][b][cc][a];
            c.ricci[b][cc] = M.reduce(s);
        }
    Function s = z;
    for (size_t b = 0; b < m; ++b)
        for (size_t cc = 0; cc < m; ++cc)
            if (!c.ricci[b][cc].is_zero()) s += c.ricci[b][cc] * c.g_inv[b][cc];
    c.scalar = M.reduce(s);
    c.scalar_value = parameter_value(c.scalar, M.ideal());
    return c;
}

PrincipalData principal_curvatures(const Embedding& emb, const std::vector<VectorField>& frame) {
    const auto& M = emb.family();
    if (M.dim() != 3 || M.codim() != 1) throw Error("principal curvatures need a surface in three dimensions");
    const auto& unit = emb.frame().unit();
    if (!unit) throw Error("no unit normal: E is not a square modulo the ideal");
    if (frame.size() != 2) throw Error("tangent frame has the wrong size");
    for (const auto& v : frame) require_tangent(emb, v);
    const Metric& g = emb.metric();
    FunctionMatrix gt(2, std::vector<Function>(2)), h = gt;
    for (size_t a = 0; a < 2; ++a)
        for (size_t b = 0; b < 2; ++b) {
            gt[a][b] = g(frame[a], frame[b]);
            h[a][b] = g(second_form(emb, frame[a], frame[b]), unit->normal) * Scalar(unit->zeta);
        }
    auto inv = invert(gt);
    if (!inv) throw Error("first fundamental form is degenerate on the frame");
    PrincipalData p;
    p.shape.assign(2, std::vector<Function>(2));
    for (size_t a = 0; a < 2; ++a)
        for (size_t b = 0; b < 2; ++b) {
            Function s = (*inv)[a][0] * h[0][b] + (*inv)[a][1] * h[1][b];
            p.shape[a][b] = parameter_value_or_throw(emb, s, "shape operator");
        }
    p.gauss = determinant(p.shape);
    p.mean = (p.shape[0][0] + p.shape[1][1]) * Scalar::frac(1, 2);
    if (p.shape[0][1].is_zero() && p.shape[1][0].is_zero()) p.principal = std::vector<Function>{p.shape[0][0], p.shape[1][1]};
    return p;
}

}  // namespace twistfold
