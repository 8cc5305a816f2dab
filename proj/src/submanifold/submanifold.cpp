#include "twistfold/submanifold.hpp"

#include <functional>

namespace twistfold {

namespace {

Function zero_fn(const Ring& ring) { return Function(ring, Scalar(0)); }

Scalar evaluate(const FlatPoly& p, const std::vector<Scalar>& coords, const std::vector<Scalar>& params) {
    Scalar out;
    for (const auto& [m, c] : p.terms()) {
        Scalar t = c;
        for (size_t i = 0; i < coords.size(); ++i) t *= pow(coords[i], m.e[i]);
        for (size_t j = 0; j < params.size(); ++j) t *= pow(params[j], m.e[kMaxCoords + j]);
        out += t;
    }
    return out;
}

// Strictly increasing subsets of {0..n-1} with `size` elements.
std::vector<IndexSet> subsets(int n, int size) {
    std::vector<IndexSet> out;
    IndexSet cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::string index_name(const IndexSet& idx, int n) {
    std::string s = "L";
    for (int i : idx) s += (n > 9 ? "_" : "") + std::to_string(i + 1);
    return s;
}

// Minor of the Jacobian on the given columns.
Function jacobian_minor(const LevelSetFamily& M, const IndexSet& cols) {
    FunctionMatrix m;
    for (int a = 0; a < M.codim(); ++a) {
        std::vector<Function> row;
        for (int i : cols) row.push_back(Function(M.jacobian(a, i)));
        m.push_back(std::move(row));
    }
    return determinant(m);
}

// sum_m (-1)^m coeff(j_m) gen(J without j_m), with m counted from 1.
VectorField alternating_sum(const IndexSet& J, const std::function<Function(int)>& coeff,
                            const std::function<VectorField(const IndexSet&)>& gen) {
    VectorField out;
    for (size_t m = 0; m < J.size(); ++m) {
        IndexSet rest;
        for (size_t l = 0; l < J.size(); ++l)
            if (l != m) rest.push_back(J[l]);
        VectorField term = gen(rest).times(coeff(J[m]));
        if (m % 2 == 0) term = -term;
        if (out.dim() == 0)
            out = term;
        else
            out += term;
    }
    return out;
}

std::optional<Polynomial> square_root(const FlatPoly& p, const Ring& ring) {
    if (p.size() != 1) return std::nullopt;
    const auto& [m, c] = p.leading();
    if (!c.is_real()) return std::nullopt;
    mpq_class q = abs(c.re());
    mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    Monomial half;
    for (size_t k = 0; k < m.e.size(); ++k) {
        if (m.e[k] % 2) return std::nullopt;
        half.e[k] = m.e[k] / 2;
    }
    if (half.coord_degree() != 0) return std::nullopt;
    return Polynomial(ring, FlatPoly(half, Scalar(mpq_class(sqrt(num), sqrt(den)))));
}

}  // namespace

// ------------------------------------------------------------ LevelSetFamily

LevelSetFamily::LevelSetFamily(std::vector<Polynomial> f, const Metric& g) : f_(std::move(f)), g_(g) {
    if (f_.empty()) throw Error("no constraints given");
    const Ring& r = f_[0].ring();
    int n = r->dim();
    int k = codim();
    for (const auto& p : f_) {
        if (p.ring() != r) throw Error("constraints live in different coordinate systems");
        if (!p.is_nu_free()) throw Error("constraints must not depend on nu");
        if (p.coord_degree() <= 0) throw Error("constraint " + p.str() + " is constant");
    }
    if (k >= n) throw Error("need fewer constraints than coordinates");
    if (g_.dim() != n) throw Error("metric dimension does not match the coordinates");

    jac_.assign(k, std::vector<Polynomial>(n));
    raised_.assign(k, std::vector<Polynomial>(n, Polynomial(r)));
    hess_.assign(k, std::vector<std::vector<Polynomial>>(n, std::vector<Polynomial>(n)));
    for (int a = 0; a < k; ++a) {
        for (int i = 0; i < n; ++i) {
            jac_[a][i] = f_[a].partial(i);
            for (int j = 0; j < n; ++j) hess_[a][i][j] = jac_[a][i].partial(j);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!g_.inverse_matrix()[i][j].is_zero()) raised_[a][i] += jac_[a][j] * g_.inverse_matrix()[i][j];
    }

    // Rank of the Jacobian at a few fixed rational points.
    int params = static_cast<int>(r->params.size());
    bool full = false;
    for (int s = 0; s < 6 && !full; ++s) {
        std::vector<Scalar> xs, ps;
        for (int i = 0; i < n; ++i) xs.push_back(Scalar::frac((7 * s + 3 * i + 1) % 11 - 4, 1 + (i + s) % 3));
        for (int j = 0; j < params; ++j) ps.push_back(Scalar::frac(2 + j + s, 1 + j % 2));
        ScalarMatrix m(k, std::vector<Scalar>(n));
        for (int a = 0; a < k; ++a)
            for (int i = 0; i < n; ++i) m[a][i] = evaluate(jac_[a][i].layer(0), xs, ps);
        full = rank(m) == k;
    }
    if (!full) throw Error("Jacobian is rank deficient at every sampled point");

    ideal_ = IdealReducer(f_);

    // Degeneracy of the normal data.
    FunctionMatrix E(k, std::vector<Function>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            Polynomial e(r);
            for (int i = 0; i < n; ++i) e += raised_[a][i] * jac_[b][i];
            E[a][b] = Function(e);
        }
    std::string label = k == 1 ? "E" : "det E";
    Function det = determinant(E);
    if (!ideal_.complete()) {
        note_ = "reduction incomplete: " + ideal_.diagnostic();
    } else if (auto v = parameter_value(det, ideal_)) {
        if (v->is_zero())
            note_ = label + " vanishes on every level set";
        else if (v->numerator().is_constant() && v->is_polynomial())
            note_ = label + " = " + v->str(true) + " never vanishes";
        else
            note_ = label + " = " + v->str(true) + " vanishes at " + v->numerator().str(true) + " = 0";
    } else {
        note_ = label + " = " + det.str(true) + " degenerates where it vanishes";
    }
}

PForm LevelSetFamily::df(int a) const {
    std::vector<Function> c;
    for (int i = 0; i < dim(); ++i) c.push_back(Function(jac_[a][i]));
    return PForm::one_form(ring(), c);
}

VectorField LevelSetFamily::gradient(int a) const { return VectorField::from_polys(ring(), raised_[a]); }

Function LevelSetFamily::reduce(const Function& h) const { return h.reduce_mod(ideal_); }

// ------------------------------------------------------------------ tangency

std::string TangencyClass::name() const {
    switch (kind) {
        case Tangency::tangent: return "tangent";
        case Tangency::chi_cc: return "chi_cc";
        case Tangency::chi_c: return "chi_c";
        default: return "none";
    }
}

TangencyClass classify(const VectorField& X, const LevelSetFamily& M) {
    TangencyClass t;
    t.tangent = true;
    t.chi_c = true;
    for (const auto& f : M.constraints()) {
        Function v = X.apply(Function(f));
        if (!v.is_zero()) t.tangent = false;
        Function red = M.reduce(v);
        if (!red.is_zero()) t.chi_c = false;
        t.witnesses.push_back(red);
    }
    t.chi_cc = true;
    for (const auto& c : X.components())
        if (!M.in_ideal(c)) t.chi_cc = false;
    t.kind = t.tangent ? Tangency::tangent : t.chi_cc ? Tangency::chi_cc : t.chi_c ? Tangency::chi_c : Tangency::none;
    return t;
}

std::string FormClass::name() const {
    switch (kind) {
        case FormKind::tangent: return "tangent";
        case FormKind::normal: return "normal";
        case FormKind::cc: return "omega_cc";
        case FormKind::c: return "omega_c";
        case FormKind::box: return "omega_box";
        default: return "none";
    }
}

FormClass classify(const PForm& w, const LevelSetFamily& M) {
    if (w.degree() != 1) throw Error("form classification takes a 1-form");
    FormClass fc;
    fc.tangent = fc.c = true;
    for (int a = 0; a < M.codim(); ++a) {
        Function v = pairing(M.gradient(a), w);
        if (!v.is_zero()) fc.tangent = false;
        if (!M.in_ideal(v)) fc.c = false;
    }
    fc.normal = fc.box = true;
    for (const auto& L : tangent_generators(M).fields) {
        Function v = pairing(L, w);
        if (!v.is_zero()) fc.normal = false;
        if (!M.in_ideal(v)) fc.box = false;
    }
    fc.cc = true;
    for (const auto& [idx, c] : w.components())
        if (!M.in_ideal(c)) fc.cc = false;
    fc.kind = fc.tangent  ? FormKind::tangent
              : fc.normal ? FormKind::normal
              : fc.cc     ? FormKind::cc
              : fc.c      ? FormKind::c
              : fc.box    ? FormKind::box
                          : FormKind::none;
    return fc;
}

// -------------------------------------------------------------- NormalFrame

namespace {

// E^ab = f^{ai} f^b_i and its reduction modulo the ideal
void normal_matrices(const LevelSetFamily& M, FunctionMatrix& E, FunctionMatrix& Ered) {
    int k = M.codim(), n = M.dim();
    E.assign(k, std::vector<Function>(k));
    Ered = E;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            Polynomial e(M.ring());
            for (int i = 0; i < n; ++i) e += M.raised(a, i) * M.jacobian(b, i);
            E[a][b] = Function(e);
            Ered[a][b] = M.reduce(E[a][b]);
        }
}

}  // namespace

bool has_normal_frame(const LevelSetFamily& M) {
    FunctionMatrix E, Ered;
    normal_matrices(M, E, Ered);
    return !determinant(Ered).is_zero();
}

NormalFrame::NormalFrame(const LevelSetFamily& M) {
    int k = M.codim(), n = M.dim();
    const Ring& r = M.ring();
    normal_matrices(M, E_, Ered_);
    if (determinant(Ered_).is_zero()) throw Error("normal frame degenerates: E is singular modulo the ideal");
    auto K = invert(E_);
    if (!K) throw Error("normal frame degenerates: E is singular");
    K_ = std::move(*K);
    for (int a = 0; a < k; ++a) {
        VectorField N(r);
        for (int i = 0; i < n; ++i) N[i] = zero_fn(r);
        for (int b = 0; b < k; ++b) N += M.gradient(b).times(K_[a][b]);
        N_.push_back(std::move(N));
    }
    if (k != 1) return;
    auto v = parameter_value(Ered_[0][0], M.ideal());
    if (!v || !v->is_polynomial() || !v->numerator().is_nu_free()) return;
    auto s = square_root(v->numerator().layer(0), r);
    if (!s) return;
    Unit u;
    u.scale = Function(*s);
    u.zeta = sgn(v->numerator().layer(0).leading().second.re()) < 0 ? -1 : 1;
    u.normal = M.gradient(0).times(u.scale.inverse());
    u.coform = M.df(0).times(u.scale.inverse());
    unit_ = std::move(u);
}

// --------------------------------------------------------------- Embedding

VectorField Embedding::normal_part(const VectorField& X) const {
    VectorField out(ring());
    for (int i = 0; i < M_.dim(); ++i) out[i] = zero_fn(ring());
    for (int a = 0; a < M_.codim(); ++a) {
        Function c = X.apply(Function(M_.constraints()[a]));
        if (!c.is_zero()) out += frame_.normals()[a].times(c);
    }
    return out;
}

namespace {

// Image of each dx^i under a 1-form projection.
PForm project_wedge(const PForm& w, const std::vector<PForm>& images) {
    if (w.degree() == 0) return w;
    PForm out(w.ring(), w.degree());
    for (const auto& [idx, c] : w.components()) {
        PForm term = images[idx[0]];
        for (size_t l = 1; l < idx.size(); ++l) term = wedge(term, images[idx[l]]);
        out += term.times(c);
    }
    return out;
}

}  // namespace

PForm Embedding::normal_part(const PForm& w) const {
    if (w.degree() == 0) return PForm(ring(), 0);
    std::vector<PForm> images;
    for (int i = 0; i < M_.dim(); ++i) {
        PForm img(ring(), 1);
        for (int a = 0; a < M_.codim(); ++a) img += M_.df(a).times(frame_.normals()[a][i]);
        images.push_back(img);
    }
    return project_wedge(w, images);
}

PForm Embedding::tangent_part(const PForm& w) const {
    std::vector<PForm> images;
    for (int i = 0; i < M_.dim(); ++i) {
        PForm img = PForm::dx(ring(), i);
        for (int a = 0; a < M_.codim(); ++a) img -= M_.df(a).times(frame_.normals()[a][i]);
        images.push_back(img);
    }
    return project_wedge(w, images);
}

namespace {

// P^j_i = sum_a N^a_j f^a_i
FunctionMatrix normal_projector(const LevelSetFamily& M, const NormalFrame& frame) {
    int n = M.dim();
    FunctionMatrix P(n, std::vector<Function>(n, zero_fn(M.ring())));
    for (int a = 0; a < M.codim(); ++a)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (!M.jacobian(a, i).is_zero()) P[j][i] += frame.normals()[a][j] * Function(M.jacobian(a, i));
    return P;
}

TensorField project_slots(const TensorField& T, const FunctionMatrix& P) {
    TensorField cur = T;
    int n = T.dim();
    for (int slot = 0; slot < T.rank(); ++slot) {
        bool form_slot = slot < T.form_slots();
        TensorField next(T.ring(), T.form_slots(), T.vector_slots());
        for (size_t k = 0; k < next.size(); ++k) {
            auto idx = next.unflatten(k);
            Function v = zero_fn(T.ring());
            int out = idx[slot];
            for (int in = 0; in < n; ++in) {
                const Function& p = form_slot ? P[in][out] : P[out][in];
                if (p.is_zero()) continue;
                idx[slot] = in;
                const Function& c = cur.at(idx);
                if (!c.is_zero()) v += p * c;
            }
            next.flat(k) = v;
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

TensorField Embedding::normal_part(const TensorField& T) const {
    return project_slots(T, normal_projector(M_, frame_));
}

TensorField Embedding::tangent_part(const TensorField& T) const {
    auto P = normal_projector(M_, frame_);
    int n = M_.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) P[i][j] = (i == j ? Function(ring(), Scalar(1)) : zero_fn(ring())) - P[i][j];
    return project_slots(T, P);
}

// ------------------------------------------------------ twisted projections

void require_killing_twist(const StarContext& ctx, const Embedding& emb) {
    const auto& gens = ctx.generators();
    if (gens->ring() != emb.ring()) throw Error("twist and level sets use different coordinates");
    std::vector<bool> used(gens->size());
    for (const auto& [key, c] : ctx.twist().F().terms())
        for (const auto& w : key)
            for (int g : w) used[g] = true;
    for (int g = 0; g < gens->size(); ++g) {
        if (!used[g]) continue;
        if (classify(gens->field(g), emb.family()).kind != Tangency::tangent)
            throw Error("twist legs not tangent: " + gens->name(g));
        if (!is_killing(emb.metric(), gens->field(g))) throw Error("twist legs not Killing: " + gens->name(g));
    }
}

VectorField twisted_normal_part(const StarContext& ctx, const Embedding& emb, const VectorField& X) {
    require_killing_twist(ctx, emb);
    const auto& N = emb.frame().normals();
    const auto& E = emb.frame().E();
    VectorField out(emb.ring());
    for (int i = 0; i < emb.family().dim(); ++i) out[i] = zero_fn(emb.ring());
    for (size_t a = 0; a < N.size(); ++a) {
        Function ga = g_star(ctx, emb.metric(), X, N[a]);
        if (ga.is_zero()) continue;
        for (size_t b = 0; b < N.size(); ++b)
            out += star_product(ctx, star_product(ctx, ga, E[a][b]), N[b]);
    }
    return out.truncated(ctx.order());
}

VectorField twisted_tangent_part(const StarContext& ctx, const Embedding& emb, const VectorField& X) {
    return X - twisted_normal_part(ctx, emb, X);
}

PForm twisted_normal_part(const StarContext& ctx, const Embedding& emb, const PForm& w) {
    if (w.degree() != 1) throw Error("twisted projection takes a 1-form");
    require_killing_twist(ctx, emb);
    const auto& K = emb.frame().K();
    int k = emb.family().codim();
    PForm out(emb.ring(), 1);
    for (int b = 0; b < k; ++b) {
        Function gb = g_inverse_star(ctx, emb.metric(), emb.family().df(b), w);
        if (gb.is_zero()) continue;
        for (int a = 0; a < k; ++a)
            out += right_multiply(ctx, right_multiply(ctx, emb.family().df(a), K[a][b]), gb);
    }
    return out.truncated(ctx.order());
}

PForm twisted_tangent_part(const StarContext& ctx, const Embedding& emb, const PForm& w) {
    return w - twisted_normal_part(ctx, emb, w);
}

// -------------------------------------------------------- tangent generators

TangentGenerators tangent_generators(const LevelSetFamily& M) {
    TangentGenerators t;
    int n = M.dim(), k = M.codim();
    const Ring& r = M.ring();
    // L_I = sum_m (-1)^m det(f^a_{I without i_m}) d_{i_m}
    std::map<IndexSet, VectorField> fields;
    for (const auto& I : subsets(n, k + 1)) {
        VectorField L(r);
        for (int i = 0; i < n; ++i) L[i] = zero_fn(r);
        for (size_t m = 0; m < I.size(); ++m) {
            IndexSet rest;
            for (size_t l = 0; l < I.size(); ++l)
                if (l != m) rest.push_back(I[l]);
            Function minor = jacobian_minor(M, rest);
            if (m % 2 == 0) minor = -minor;
            L[I[m]] += minor;
        }
        fields[I] = L;
        t.names.push_back(index_name(I, n));
        t.fields.push_back(L);
    }
    t.annihilate_f = true;
    for (const auto& L : t.fields)
        for (const auto& f : M.constraints())
            if (!L.apply(Function(f)).is_zero()) t.annihilate_f = false;
    t.dependence_ok = true;
    for (const auto& J : subsets(n, k + 2))
        for (int a = 0; a < k; ++a) {
            VectorField rel = alternating_sum(
                J, [&](int i) { return Function(M.jacobian(a, i)); },
                [&](const IndexSet& rest) { return fields.at(rest); });
            std::string label = "f" + (k > 1 ? std::to_string(a + 1) : std::string()) + "_[" +
                                std::to_string(J[0] + 1) + " " + index_name(IndexSet(J.begin() + 1, J.end()), n) + "]";
            t.dependence.push_back(label);
            if (!rel.is_zero()) t.dependence_ok = false;
        }
    try {
        t.algebra = make_generators(r, t.names, t.fields);
    } catch (const Error&) {
        t.algebra = nullptr;
    }
    return t;
}

// ---------------------------------------------------------------- relations

bool RelationReport::ok() const {
    if (central_failures) return false;
    for (const auto& r : relations)
        if (!r.holds) return false;
    return true;
}

RelationReport verify_algebra_relations(const LevelSetFamily& M, const StarContext* ctx,
                                        const std::vector<NamedRelation>& extra, int max_degree) {
    RelationReport rep;
    const Ring& r = M.ring();
    int n = M.dim(), k = M.codim();
    if (ctx) {
        if (ctx->ring() != r) throw Error("twist and level sets use different coordinates");
        std::vector<Monomial> monos{Monomial()};
        for (int d = 1, start = 0; d <= max_degree; ++d) {
            int end = static_cast<int>(monos.size());
            for (int m = start; m < end; ++m)
                for (int i = 0; i < n; ++i) {
                    Monomial next = monos[m] * Monomial::coord(i);
                    bool seen = false;
                    for (int q = end; q < static_cast<int>(monos.size()) && !seen; ++q) seen = monos[q] == next;
                    if (!seen) monos.push_back(next);
                }
            start = end;
        }
        for (const auto& mono : monos) {
            Polynomial alpha(r, FlatPoly(mono, Scalar(1)));
            for (const auto& f : M.constraints()) {
                ++rep.central_monomials;
                Polynomial plain = alpha * f;
                if (star_product(*ctx, alpha, f) != plain || star_product(*ctx, f, alpha) != plain)
                    ++rep.central_failures;
            }
        }
    }
    auto gens = tangent_generators(M);
    std::map<IndexSet, VectorField> fields;
    {
        size_t q = 0;
        for (const auto& I : subsets(n, k + 1)) fields[I] = gens.fields[q++];
    }
    size_t label = 0;
    for (const auto& J : subsets(n, k + 2))
        for (int a = 0; a < k; ++a) {
            VectorField rel = alternating_sum(
                J, [&](int i) { return Function(M.jacobian(a, i)); },
                [&](const IndexSet& rest) { return fields.at(rest); });
            if (ctx) {
                rel = VectorField(r);
                for (int i = 0; i < n; ++i) rel[i] = zero_fn(r);
                for (size_t m = 0; m < J.size(); ++m) {
                    IndexSet rest;
                    for (size_t l = 0; l < J.size(); ++l)
                        if (l != m) rest.push_back(J[l]);
                    VectorField term = star_product(*ctx, Function(M.jacobian(a, J[m])), fields.at(rest));
                    rel += m % 2 == 0 ? -term : term;
                }
            }
            RelationResult res;
            res.name = "dependence " + gens.dependence[label++];
            VectorField red = rel.reduce_mod(M.ideal());
            res.holds = red.is_zero();
            res.residual = red.str(true);
            rep.relations.push_back(std::move(res));
        }
    for (const auto& rel : extra) {
        RelationResult res;
        res.name = rel.name;
        std::visit(
            [&](const auto& v) {
                auto red = rel.modulo_ideal ? v.reduce_mod(M.ideal()) : v;
                res.holds = red.is_zero();
                res.residual = red.str(true);
            },
            rel.value);
        rep.relations.push_back(std::move(res));
    }
    return rep;
}

}  // namespace twistfold
