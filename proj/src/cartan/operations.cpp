#include "twistfold/cartan.hpp"

namespace twistfold {

VectorField bracket(const VectorField& X, const VectorField& Y) {
    if (X.dim() != Y.dim()) throw Error("dimension mismatch");
    VectorField Z(X.ring());
    for (int j = 0; j < X.dim(); ++j) Z[j] = X.apply(Y[j]) - Y.apply(X[j]);
    return Z;
}

Function lie(const VectorField& X, const Function& h) { return X.apply(h); }
Polynomial lie(const VectorField& X, const Polynomial& h) { return X.apply(h); }
VectorField lie(const VectorField& X, const VectorField& Y) { return bracket(X, Y); }

PForm lie(const VectorField& X, const PForm& w) {
    PForm out(w.ring(), w.degree());
    std::vector<PForm> dX;
    for (int i = 0; i < X.dim(); ++i) dX.push_back(d(X[i]));
    for (const auto& [idx, c] : w.components()) {
        out += PForm::basis(w.ring(), idx, X.apply(c));
        for (size_t k = 0; k < idx.size(); ++k) {
            PForm acc = PForm::scalar(c);
            for (size_t m = 0; m < idx.size(); ++m)
                acc = wedge(acc, m == k ? dX[idx[m]] : PForm::dx(w.ring(), idx[m]));
            out += acc;
        }
    }
    return out;
}

TensorField lie(const VectorField& X, const TensorField& T) {
    int n = T.dim();
    // jac[i][j] = d_j X^i
    std::vector<std::vector<Function>> jac(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) jac[i].push_back(X[i].partial(j));
    TensorField out(T.ring(), T.form_slots(), T.vector_slots());
    for (size_t k = 0; k < T.size(); ++k) {
        auto idx = T.unflatten(k);
        Function acc = X.apply(T.flat(k));
        for (int s = 0; s < T.rank(); ++s) {
            auto moved = idx;
            for (int i = 0; i < n; ++i) {
                moved[s] = i;
                const Function& t = T.at(moved);
                if (t.is_zero()) continue;
                if (s < T.form_slots()) {
                    if (!jac[i][idx[s]].is_zero()) acc += t * jac[i][idx[s]];
                } else {
                    if (!jac[idx[s]][i].is_zero()) acc -= t * jac[idx[s]][i];
                }
            }
        }
        out.flat(k) = std::move(acc);
    }
    return out;
}

PForm d(const Function& h) {
    PForm w(h.ring(), 1);
    for (int i = 0; i < h.ring()->dim(); ++i) w += PForm::basis(h.ring(), {i}, h.partial(i));
    return w;
}

PForm d(const PForm& w) {
    if (w.degree() + 1 > w.dim()) return PForm(w.ring(), w.dim());
    PForm out(w.ring(), w.degree() + 1);
    for (const auto& [idx, c] : w.components())
        for (int i = 0; i < w.dim(); ++i) {
            Function dc = c.partial(i);
            if (dc.is_zero()) continue;
            IndexSet j{i};
            j.insert(j.end(), idx.begin(), idx.end());
            out += PForm::basis(w.ring(), j, dc);
        }
    return out;
}

PForm wedge(const PForm& a, const PForm& b) {
    if (a.degree() + b.degree() > a.dim()) throw Error("wedge degree overflow");
    PForm out(a.ring(), a.degree() + b.degree());
    for (const auto& [ia, ca] : a.components())
        for (const auto& [ib, cb] : b.components()) {
            IndexSet j = ia;
            j.insert(j.end(), ib.begin(), ib.end());
            out += PForm::basis(a.ring(), j, ca * cb);
        }
    return out;
}

PForm insertion(const VectorField& X, const PForm& w) {
    if (w.degree() == 0) return PForm(w.ring(), 0);
    PForm out(w.ring(), w.degree() - 1);
    for (const auto& [idx, c] : w.components())
        for (size_t k = 0; k < idx.size(); ++k) {
            if (X[idx[k]].is_zero()) continue;
            IndexSet rest;
            for (size_t m = 0; m < idx.size(); ++m)
                if (m != k) rest.push_back(idx[m]);
            Function coeff = c * X[idx[k]];
            out += PForm::basis(w.ring(), rest, k % 2 ? -coeff : coeff);
        }
    return out;
}

TensorField tensor(const TensorField& a, const TensorField& b) {
    if (a.vector_slots() > 0 && b.form_slots() > 0)
        throw Error("tensor product would put a form slot after a vector slot");
    TensorField out(a.ring(), a.form_slots() + b.form_slots(), a.vector_slots() + b.vector_slots());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a.flat(i).is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b.flat(j).is_zero()) continue;
            out.flat(i * b.size() + j) = a.flat(i) * b.flat(j);
        }
    }
    return out;
}

TensorField pairing(const TensorField& vectors, const TensorField& forms) {
    int p = vectors.vector_slots();
    if (vectors.form_slots() != 0) throw Error("pairing: left argument must be a vector tensor");
    if (forms.form_slots() < p) throw Error("pairing arity mismatch");
    TensorField out(forms.ring(), forms.form_slots() - p, forms.vector_slots());
    for (size_t k = 0; k < out.size(); ++k) {
        auto rest = out.unflatten(k);
        Function acc(Polynomial(forms.ring()));
        for (size_t v = 0; v < vectors.size(); ++v) {
            if (vectors.flat(v).is_zero()) continue;
            auto mu = vectors.unflatten(v);
            std::vector<int> idx(mu.rbegin(), mu.rend());
            idx.insert(idx.end(), rest.begin(), rest.end());
            const Function& w = forms.at(idx);
            if (!w.is_zero()) acc += vectors.flat(v) * w;
        }
        out.flat(k) = std::move(acc);
    }
    return out;
}

Function pairing(const VectorField& X, const PForm& w) {
    if (w.degree() != 1) throw Error("pairing arity mismatch");
    Function acc(Polynomial(X.ring()));
    for (const auto& [idx, c] : w.components())
        if (!X[idx[0]].is_zero()) acc += X[idx[0]] * c;
    return acc;
}

TensorField pairing_form_first(const TensorField& forms, const TensorField& vectors) {
    int p = vectors.vector_slots();
    if (vectors.form_slots() != 0 || forms.vector_slots() != 0) throw Error("pairing: slot kinds mismatch");
    if (forms.form_slots() < p) throw Error("pairing arity mismatch");
    int q = forms.form_slots();
    TensorField out(forms.ring(), q - p, 0);
    for (size_t k = 0; k < out.size(); ++k) {
        auto rest = out.unflatten(k);
        Function acc(Polynomial(forms.ring()));
        for (size_t v = 0; v < vectors.size(); ++v) {
            if (vectors.flat(v).is_zero()) continue;
            auto mu = vectors.unflatten(v);
            std::vector<int> idx = rest;
            idx.insert(idx.end(), mu.rbegin(), mu.rend());
            const Function& w = forms.at(idx);
            if (!w.is_zero()) acc += w * vectors.flat(v);
        }
        out.flat(k) = std::move(acc);
    }
    return out;
}

Function directional(const VectorField& X, const Function& h) { return X.apply(h); }

VectorField directional(const VectorField& X, const VectorField& Y) {
    VectorField Z(Y.ring());
    for (int j = 0; j < Y.dim(); ++j) Z[j] = X.apply(Y[j]);
    return Z;
}

PForm directional(const VectorField& X, const PForm& w) {
    PForm out(w.ring(), w.degree());
    for (const auto& [idx, c] : w.components()) out += PForm::basis(w.ring(), idx, X.apply(c));
    return out;
}

TensorField directional(const VectorField& X, const TensorField& T) {
    TensorField out = T;
    for (size_t k = 0; k < T.size(); ++k) out.flat(k) = X.apply(T.flat(k));
    return out;
}

// ------------------------------------------------------------------ matrices

Function determinant(const FunctionMatrix& a) {
    size_t n = a.size();
    if (n == 0) throw Error("empty matrix");
    if (n == 1) return a[0][0];
    if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    Function det = a[0][0] * Scalar(0);
    for (size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        FunctionMatrix minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<Function> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(std::move(row));
        }
        Function term = a[0][j] * determinant(minor);
        if (j % 2)
            det -= term;
        else
            det += term;
    }
    return det;
}

std::optional<FunctionMatrix> invert(const FunctionMatrix& a) {
    size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw Error("matrix is not square");
    Function det = determinant(a);
    if (det.is_zero()) return std::nullopt;
    if (n == 1) return FunctionMatrix{{Function(det.ring(), Scalar(1)).divided_by(det)}};
    FunctionMatrix inv(n, std::vector<Function>(n));
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
            FunctionMatrix minor;
            for (size_t i = 0; i < n; ++i) {
                if (i == j) continue;
                std::vector<Function> row;
                for (size_t l = 0; l < n; ++l)
                    if (l != k) row.push_back(a[i][l]);
                minor.push_back(std::move(row));
            }
            Function cof = determinant(minor);
            if ((j + k) % 2) cof = -cof;
            inv[k][j] = cof.is_zero() ? cof : cof.divided_by(det);
        }
    return inv;
}

}  // namespace twistfold
