#include "twistfold/metric.hpp"

namespace twistfold {

namespace {

Function constant(const Ring& ring, const Scalar& s) { return Function(ring, s); }

void check_dim(const Metric& g, const Ring& ring) {
    if (g.dim() != ring->dim()) throw Error("metric dimension does not match the coordinates");
}

}  // namespace

Metric Metric::euclidean(int n) {
    ScalarMatrix g(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i) g[i][i] = Scalar(1);
    Metric m = custom(g);
    m.sig_ = Signature::euclidean;
    return m;
}

Metric Metric::minkowski(int n) {
    if (n < 2) throw Error("Minkowski metric needs at least two coordinates");
    ScalarMatrix g(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i) g[i][i] = Scalar(i + 1 == n ? -1 : 1);
    Metric m = custom(g);
    m.sig_ = Signature::minkowski;
    return m;
}

Metric Metric::custom(ScalarMatrix g) {
    size_t n = g.size();
    if (n == 0) throw Error("empty metric");
    for (size_t i = 0; i < n; ++i) {
        if (g[i].size() != n) throw Error("metric matrix is not square");
        for (size_t j = 0; j < i; ++j)
            if (g[i][j] != g[j][i]) throw Error("metric matrix is not symmetric");
    }
    auto inv = invert(g);
    if (!inv) throw Error("metric matrix is singular");
    Metric m;
    m.g_ = std::move(g);
    m.ginv_ = std::move(*inv);
    return m;
}

std::string Metric::signature_name() const {
    switch (sig_) {
        case Signature::euclidean: return "euclidean";
        case Signature::minkowski: return "minkowski";
        default: return "custom";
    }
}

Metric Metric::in_coordinates(const LinearChange& change) const {
    int n = dim();
    if (change.source->dim() != n || change.target->dim() != n) throw Error("coordinate change dimension mismatch");
    auto ainv = invert(change.matrix);
    if (!ainv) throw Error("coordinate change is singular");
    // dx^i/dy^a = (A^-1)_ia; g'_ab = (A^-1)_ia g_ij (A^-1)_jb
    ScalarMatrix h(n, std::vector<Scalar>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Scalar s;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) s += (*ainv)[i][a] * g_[i][j] * (*ainv)[j][b];
            h[a][b] = s;
        }
    return custom(h);
}

Function Metric::operator()(const VectorField& X, const VectorField& Y) const {
    check_dim(*this, X.ring());
    int n = dim();
    Function out = constant(X.ring(), Scalar(0));
    for (int i = 0; i < n; ++i) {
        if (X[i].is_zero()) continue;
        for (int j = 0; j < n; ++j)
            if (!g_[i][j].is_zero() && !Y[j].is_zero()) out += X[i] * Y[j] * g_[i][j];
    }
    return out;
}

Function Metric::inverse(const PForm& a, const PForm& b) const {
    if (a.degree() != 1 || b.degree() != 1) throw Error("inverse metric takes two 1-forms");
    check_dim(*this, a.ring());
    Function out = constant(a.ring(), Scalar(0));
    for (const auto& [i, ai] : a.components())
        for (const auto& [j, bj] : b.components())
            if (!ginv_[i[0]][j[0]].is_zero()) out += ai * bj * ginv_[i[0]][j[0]];
    return out;
}

PForm Metric::flat(const VectorField& X) const {
    check_dim(*this, X.ring());
    int n = dim();
    std::vector<Function> c(n, constant(X.ring(), Scalar(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!g_[i][j].is_zero() && !X[j].is_zero()) c[i] += X[j] * g_[i][j];
    return PForm::one_form(X.ring(), c);
}

VectorField Metric::sharp(const PForm& w) const {
    if (w.degree() != 1) throw Error("sharp takes a 1-form");
    check_dim(*this, w.ring());
    int n = dim();
    std::vector<Function> c(n, constant(w.ring(), Scalar(0)));
    for (const auto& [j, wj] : w.components())
        for (int i = 0; i < n; ++i)
            if (!ginv_[i][j[0]].is_zero()) c[i] += wj * ginv_[i][j[0]];
    return VectorField(w.ring(), c);
}

TensorField Metric::tensor(const Ring& ring) const {
    check_dim(*this, ring);
    int n = dim();
    TensorField t(ring, 2, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at({i, j}) = constant(ring, g_[i][j]);
    return t;
}

TensorField Metric::inverse_tensor(const Ring& ring) const {
    check_dim(*this, ring);
    int n = dim();
    TensorField t(ring, 0, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at({i, j}) = constant(ring, ginv_[i][j]);
    return t;
}

Function g_star(const StarContext& ctx, const Metric& g, const VectorField& X, const VectorField& Y) {
    return apply_two_leg(ctx.twist().Fbar(), X, Y, [&](const VectorField& a, const VectorField& b) { return g(a, b); })
        .truncated(ctx.order());
}

Function g_inverse_star(const StarContext& ctx, const Metric& g, const PForm& a, const PForm& b) {
    return apply_two_leg(ctx.twist().Fbar(), a, b, [&](const PForm& u, const PForm& v) { return g.inverse(u, v); })
        .truncated(ctx.order());
}

FunctionMatrix killing_residual(const Metric& g, const VectorField& Z) {
    PForm low = g.flat(Z);
    int n = g.dim();
    std::vector<Function> zi;
    for (int i = 0; i < n; ++i) zi.push_back(low.component({i}));
    FunctionMatrix k(n, std::vector<Function>(n));
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i) k[h][i] = zi[i].partial(h) + zi[h].partial(i);
    return k;
}

bool is_killing(const Metric& g, const VectorField& Z) {
    for (const auto& row : killing_residual(g, Z))
        for (const auto& v : row)
            if (!v.is_zero()) return false;
    return true;
}

Function killing_on_pair(const Metric& g, const VectorField& Z, const VectorField& X, const VectorField& Y) {
    auto k = killing_residual(g, Z);
    int n = g.dim();
    Function out = constant(Z.ring(), Scalar(0));
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            if (!k[h][i].is_zero()) out += X[h] * Y[i] * k[h][i];
    return out;
}

VectorField equivariance_residual(const VectorField& Z, const VectorField& X, const VectorField& Y) {
    return bracket(Z, directional(X, Y)) - directional(bracket(Z, X), Y) - directional(X, bracket(Z, Y));
}

bool is_equivariant(const VectorField& Z) {
    int n = Z.dim();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (!Z[k].partial(i).partial(j).is_zero()) return false;
    return true;
}

SymmetryReport symmetry_check(const Metric& g, const VectorField& Z) {
    SymmetryReport r;
    r.killing = is_killing(g, Z);
    r.equivariant = is_equivariant(Z);
    if (!r.killing) {
        auto k = killing_residual(g, Z);
        r.detail = "killing residual row 1: ";
        for (size_t i = 0; i < k[0].size(); ++i) r.detail += (i ? ", " : "") + k[0][i].str(true);
    }
    return r;
}

}  // namespace twistfold
