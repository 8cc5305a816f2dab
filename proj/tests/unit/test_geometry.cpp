#include "doctest.h"
#include "geometry_fixtures.hpp"

using namespace twistfold;
using tfh::C;
using tfh::F;
using tfh::VF;
using tfh::X;

namespace {

Polynomial P(const Ring& r, int j) { return Polynomial::param(r, j); }

Function ratio(const Polynomial& a, const Polynomial& b) { return Function(a, b); }

bool same_mod(const Embedding& emb, const VectorField& a, const VectorField& b) {
    return (a - b).reduce_mod(emb.family().ideal()).is_zero();
}

}  // namespace

TEST_CASE("metric maps") {
    Ring r = standard_ring(3);
    Metric e = Metric::euclidean(3), m = Metric::minkowski(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(e(VectorField::partial(r, i), VectorField::partial(r, j)) == Function(r, Scalar(i == j ? 1 : 0)));
    CHECK(m(VectorField::partial(r, 2), VectorField::partial(r, 2)) == Function(r, Scalar(-1)));
    CHECK(m.signature() == Signature::minkowski);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        auto Xr = tfh::random_field(rng, r, 2);
        CHECK(m.sharp(m.flat(Xr)) == Xr);
        CHECK(m(Xr, Xr) == m.inverse(m.flat(Xr), m.flat(Xr)));
    }
    CHECK_THROWS_AS(Metric::custom({{1, 2}, {3, 1}}), Error);
    CHECK_THROWS_AS(Metric::custom({{1, 1}, {1, 1}}), Error);

    // Light-cone coordinates of the Minkowski metric.
    auto ch = linear_change(r, "y", {"y1", "y2", "y3"}, {{1, 0, 1}, {0, 1, 0}, {1, 0, -1}});
    Metric lc = m.in_coordinates(ch);
    CHECK(lc.matrix() == tfh::light_cone_metric().matrix());
    CHECK(lc.inverse_matrix()[0][2] == Scalar(2));
    CHECK(lc.inverse_matrix()[1][1] == Scalar(1));
}

TEST_CASE("Killing and equivariance checks") {
    Ring r = standard_ring(3);
    Metric e = Metric::euclidean(3);
    auto z = C(r, 0);
    VectorField d3 = VectorField::partial(r, 2), L12 = VF(r, {-X(r, 2), X(r, 1), z});
    VectorField D = VF(r, {X(r, 1), X(r, 2), X(r, 3)});
    CHECK(is_killing(e, d3));
    CHECK(is_killing(e, L12));
    CHECK_FALSE(is_killing(e, D));
    auto k = killing_residual(e, D);
    for (int h = 0; h < 3; ++h)
        for (int i = 0; i < 3; ++i) CHECK(k[h][i] == Function(r, Scalar(h == i ? 2 : 0)));

    // Lorentz boost in the x1-x3 plane is Killing for Minkowski, not Euclidean.
    VectorField boost = VF(r, {X(r, 3), z, X(r, 1)});
    CHECK(is_killing(Metric::minkowski(3), boost));
    CHECK_FALSE(is_killing(e, boost));

    std::mt19937_64 rng(12);
    for (int t = 0; t < 10; ++t) {
        auto A = tfh::random_field(rng, r, 2), B = tfh::random_field(rng, r, 2);
        CHECK(equivariance_residual(L12, A, B).is_zero());
        CHECK(equivariance_residual(D, A, B).is_zero());
    }
    VectorField quad = VF(r, {X(r, 1) * X(r, 1), z, z});
    CHECK_FALSE(is_equivariant(quad));
    CHECK_FALSE(equivariance_residual(quad, VectorField::partial(r, 0), VectorField::partial(r, 0)).is_zero());
    auto rep = symmetry_check(e, L12);
    CHECK(rep.killing);
    CHECK(rep.equivariant);
    CHECK(rep.consistent());
    CHECK_FALSE(symmetry_check(e, D).killing);
}

TEST_CASE("level-set families") {
    Ring r = standard_ring(3, {"a", "c"});
    Polynomial f = (X(r, 1) * X(r, 1) + P(r, 0) * X(r, 2) * X(r, 2)) * Scalar::frac(1, 2) - P(r, 1);
    LevelSetFamily M({f}, Metric::euclidean(3));
    CHECK(M.codim() == 1);
    CHECK(M.jacobian(0, 0) == X(r, 1));
    CHECK(M.jacobian(0, 1) == P(r, 0) * X(r, 2));
    CHECK(M.jacobian(0, 2).is_zero());
    CHECK(M.hessian(0, 1, 1) == P(r, 0));

    Ring h = standard_ring(3, {"c"});
    Polynomial fh =
        (X(h, 1) * X(h, 1) + X(h, 2) * X(h, 2) - X(h, 3) * X(h, 3)) * Scalar::frac(1, 2) - P(h, 0);
    LevelSetFamily H({fh}, Metric::minkowski(3));
    CHECK(H.excluded_note().find("c = 0") != std::string::npos);

    CHECK_THROWS_AS(LevelSetFamily({C(r, 1)}, Metric::euclidean(3)), Error);
    CHECK_THROWS_AS(LevelSetFamily({f, f * Scalar(2), X(r, 3)}, Metric::euclidean(3)), Error);
    CHECK_THROWS_AS(LevelSetFamily({f}, Metric::euclidean(2)), Error);
}

TEST_CASE("tangency classification") {
    Ring r = standard_ring(3, {"c"});
    Polynomial f = (X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2)) * Scalar::frac(1, 2) - P(r, 0);
    LevelSetFamily M({f}, Metric::euclidean(3));
    auto z = C(r, 0);
    VectorField L12 = VF(r, {-X(r, 2), X(r, 1), z});
    CHECK(classify(L12, M).kind == Tangency::tangent);
    auto cc = classify(VectorField::partial(r, 0).times(F(f)), M);
    CHECK(cc.kind == Tangency::chi_cc);
    CHECK(cc.chi_c);
    auto none = classify(VectorField::partial(r, 0), M);
    CHECK(none.kind == Tangency::none);
    CHECK(none.witnesses[0] == F(X(r, 1)));
    // tangent on M only
    VectorField mixed = VectorField::partial(r, 0).times(F(f)) + L12;
    auto mc = classify(mixed, M);
    CHECK(mc.kind == Tangency::chi_c);
    CHECK_FALSE(mc.tangent);

    // Forms
    CHECK(classify(M.df(0), M).kind == FormKind::normal);
    CHECK(classify(PForm::dx(r, 2), M).kind == FormKind::tangent);
    CHECK(classify(PForm::dx(r, 0).times(F(f)), M).kind == FormKind::cc);
    auto w = PForm::dx(r, 0).times(F(X(r, 2))) - PForm::dx(r, 1).times(F(X(r, 1)));
    CHECK(classify(w, M).kind == FormKind::tangent);
    CHECK(classify(PForm::dx(r, 0), M).kind == FormKind::none);
    // Omega_C: normal pairing in the ideal, tangent pairing nonzero
    auto wc = PForm::dx(r, 2) + M.df(0).times(F(f));
    auto k = classify(wc, M);
    CHECK(k.c);
    CHECK_FALSE(k.tangent);
    CHECK(k.kind == FormKind::c);
    auto wb = M.df(0) + PForm::dx(r, 2).times(F(f));
    CHECK(classify(wb, M).kind == FormKind::box);
}

TEST_CASE("the dilatation is tangent only to the cone") {
    Ring r = standard_ring(3, {"c"});
    auto quad = (X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2) - X(r, 3) * X(r, 3)) * Scalar::frac(1, 2);
    VectorField D = VF(r, {X(r, 1), X(r, 2), X(r, 3)});
    LevelSetFamily Mc({quad - P(r, 0)}, Metric::minkowski(3));
    auto t = classify(D, Mc);
    CHECK(t.kind == Tangency::none);
    CHECK(t.witnesses[0] == F(P(r, 0) * Scalar(2)));
    Ring r0 = standard_ring(3);
    auto quad0 = (X(r0, 1) * X(r0, 1) + X(r0, 2) * X(r0, 2) - X(r0, 3) * X(r0, 3)) * Scalar::frac(1, 2);
    LevelSetFamily M0({quad0}, Metric::minkowski(3));
    auto t0 = classify(VF(r0, {X(r0, 1), X(r0, 2), X(r0, 3)}), M0);
    CHECK(t0.chi_c);
    CHECK(t0.kind == Tangency::chi_c);
    CHECK(M0.excluded_note().find("vanishes on every level set") != std::string::npos);
    CHECK_THROWS_AS(NormalFrame{M0}, Error);
}

TEST_CASE("normal frames") {
    Ring r = standard_ring(3, {"c"});
    Polynomial f = (X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2)) * Scalar::frac(1, 2) - P(r, 0);
    LevelSetFamily M({f}, Metric::euclidean(3));
    NormalFrame nf(M);
    Polynomial rho = X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2);
    CHECK(nf.E()[0][0] == F(rho));
    CHECK(nf.E_reduced()[0][0] == F(P(r, 0) * Scalar(2)));
    CHECK(nf.normals()[0] == VectorField(r, {ratio(X(r, 1), rho), ratio(X(r, 2), rho), F(C(r, 0))}));
    CHECK(pairing(nf.normals()[0], M.df(0)) == F(C(r, 1)));
    CHECK_FALSE(nf.unit().has_value());  // 2c is not a square

    Ring cr = tfh::cylinder_ring();
    auto cyl = tfh::cylinder_embedding(cr);
    const auto& u = cyl.frame().unit();
    REQUIRE(u.has_value());
    CHECK(u->scale == F(P(cr, 0)));
    CHECK(u->zeta == 1);
    auto Rinv = F(C(cr, 1)).divided_by(F(P(cr, 0)));
    CHECK(u->normal == VF(cr, {X(cr, 1), X(cr, 2), C(cr, 0)}).times(Rinv));
    CHECK(cyl.family().reduce(cyl.metric()(u->normal, u->normal)) == F(C(cr, 1)));
    CHECK(cyl.family().reduce(pairing(u->normal, u->coform)) == F(C(cr, 1)));

    Ring hr = tfh::hyperboloid_ring();
    auto hyp = tfh::hyperboloid_embedding(hr);
    CHECK(hyp.frame().E_reduced()[0][0] == F(P(hr, 0) * Scalar(2)));
    CHECK(pairing(hyp.frame().normals()[0], hyp.family().df(0)) == F(C(hr, 1)));
    CHECK(hyp.family().gradient(0) == VF(hr, {X(hr, 1), X(hr, 2), X(hr, 3)}));
}

TEST_CASE("projections") {
    Ring r = standard_ring(3, {"c"});
    Polynomial f = (X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2)) * Scalar::frac(1, 2) - P(r, 0);
    Embedding emb(LevelSetFamily({f}, Metric::euclidean(3)));
    Polynomial rho = X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2);
    CHECK(emb.normal_part(VectorField::partial(r, 0)) ==
          VectorField(r, {ratio(X(r, 1) * X(r, 1), rho), ratio(X(r, 1) * X(r, 2), rho), F(C(r, 0))}));
    auto z = C(r, 0);
    VectorField L12 = VF(r, {-X(r, 2), X(r, 1), z});
    CHECK(emb.tangent_part(L12) == L12);
    CHECK(emb.normal_part(L12).is_zero());

    std::mt19937_64 rng(21);
    for (auto* e : {&emb}) {
        for (int t = 0; t < 10; ++t) {
            auto V = tfh::random_field(rng, r, 2);
            auto Vt = e->tangent_part(V), Vn = e->normal_part(V);
            CHECK(Vt + Vn == V);
            CHECK(e->normal_part(Vn) == Vn);
            CHECK(e->tangent_part(Vt) == Vt);
            CHECK(classify(Vt, e->family()).tangent);
            auto w = tfh::random_form(rng, r, 1, 2);
            auto wt = e->tangent_part(w), wn = e->normal_part(w);
            CHECK(wt + wn == w);
            CHECK(e->normal_part(wn) == wn);
            CHECK(e->tangent_part(wt) == wt);
            CHECK(classify(wn, e->family()).normal);
            CHECK(pairing(Vt, wn).is_zero());
            // two-forms project factor by factor
            auto w2 = tfh::random_form(rng, r, 2, 1);
            CHECK(e->tangent_part(e->tangent_part(w2)) == e->tangent_part(w2));
            // mixed tensors
            auto T = tensor(TensorField::from_form(w), TensorField::from_vector(V));
            CHECK(e->tangent_part(T) == tensor(TensorField::from_form(wt), TensorField::from_vector(Vt)));
            CHECK(e->normal_part(T) == tensor(TensorField::from_form(wn), TensorField::from_vector(Vn)));
        }
    }
    // normal 2-form part of df ^ dx3 is zero: only one normal direction
    CHECK(emb.normal_part(wedge(emb.family().df(0), PForm::dx(r, 2))).is_zero());
}

TEST_CASE("tangent generators and brackets") {
    Ring r = standard_ring(3, {"c"});
    auto z = C(r, 0);
    // elliptic cylinder with a = 2
    Polynomial f = (X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2) * Scalar(2)) * Scalar::frac(1, 2) - P(r, 0);
    LevelSetFamily M({f}, Metric::euclidean(3));
    auto tg = tangent_generators(M);
    REQUIRE(tg.names == std::vector<std::string>{"L12", "L13", "L23"});
    CHECK(tg.fields[0] == VF(r, {X(r, 2) * Scalar(-2), X(r, 1), z}));
    CHECK(tg.annihilate_f);
    CHECK(tg.dependence_ok);
    REQUIRE(tg.algebra);
    const auto& g = *tg.algebra;
    CHECK(g.bracket(0, 1) == GenCombination{{2, Scalar(-1)}});
    CHECK(g.bracket(0, 2) == GenCombination{{1, Scalar(2)}});
    CHECK(g.bracket(1, 2).empty());

    // circular hyperboloid: H = 2 L13, E = L12 + L23, E' = L12 - L23 close so(2,1)
    Polynomial fh = (X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2) - X(r, 3) * X(r, 3)) * Scalar::frac(1, 2) - P(r, 0);
    LevelSetFamily Hh({fh}, Metric::minkowski(3));
    auto th = tangent_generators(Hh);
    REQUIRE(th.algebra);
    auto H = th.fields[1] * Scalar(2), E = th.fields[0] + th.fields[2], Ep = th.fields[0] - th.fields[2];
    auto so21 = make_generators(r, {"H", "E", "Ep"}, {H, E, Ep});
    CHECK(so21->bracket(0, 1) == GenCombination{{1, Scalar(2)}});
    CHECK(so21->bracket(0, 2) == GenCombination{{2, Scalar(-2)}});
    CHECK(so21->bracket(1, 2) == GenCombination{{0, Scalar(-1)}});

    // sphere in four dimensions: dependence relations
    Ring r4 = standard_ring(4, {"R"});
    Polynomial fs(r4);
    for (int i = 1; i <= 4; ++i) fs += X(r4, i) * X(r4, i);
    fs = (fs - P(r4, 0) * P(r4, 0)) * Scalar::frac(1, 2);
    auto ts = tangent_generators(LevelSetFamily({fs}, Metric::euclidean(4)));
    CHECK(ts.fields.size() == 6);
    CHECK(ts.dependence.size() == 4);
    CHECK(ts.dependence_ok);
    CHECK(ts.algebra);

    // codimension two: circle x1^2 + x2^2 = c, x3 = 0 in four dimensions
    Polynomial f1 = (X(r4, 1) * X(r4, 1) + X(r4, 2) * X(r4, 2)) * Scalar::frac(1, 2) - P(r4, 0);
    LevelSetFamily M2({f1, X(r4, 3)}, Metric::euclidean(4));
    auto t2 = tangent_generators(M2);
    CHECK(t2.annihilate_f);
    CHECK(t2.dependence_ok);
    CHECK(t2.names.size() == 4);
}

TEST_CASE("flat connection and second fundamental form on the cylinder") {
    Ring r = tfh::cylinder_ring();
    auto emb = tfh::cylinder_embedding(r);
    auto z = C(r, 0);
    CHECK(flat_nabla(VectorField::partial(r, 0), VF(r, {z, X(r, 1), z})) == VectorField::partial(r, 1));

    Function Rinv = F(C(r, 1)).divided_by(F(P(r, 0)));
    VectorField L = VF(r, {-X(r, 2), X(r, 1), z}).times(Rinv);
    VectorField d3 = VectorField::partial(r, 2);
    const auto& U = emb.frame().unit()->normal;
    CHECK(flat_nabla(L, L) == U.times(-Rinv));
    CHECK(flat_nabla(L, U) == L.times(Rinv));
    CHECK(flat_nabla(U, L).reduce_mod(emb.family().ideal()) == L.times(Rinv));
    CHECK(same_mod(emb, second_form(emb, L, L), U.times(-Rinv)));
    CHECK(second_form(emb, L, L) == second_form_closed(emb, L, L));
    CHECK(second_form(emb, d3, d3).is_zero());
    CHECK(second_form(emb, L, d3).is_zero());
    CHECK(projected_nabla(emb, L, L).reduce_mod(emb.family().ideal()).is_zero());
    CHECK_THROWS_AS(projected_nabla(emb, VectorField::partial(r, 0), L), Error);

    auto p = principal_curvatures(emb, {d3, L});
    REQUIRE(p.principal.has_value());
    CHECK((*p.principal)[0].is_zero());
    CHECK((*p.principal)[1] == -Rinv);
    CHECK(p.gauss.is_zero());
    CHECK(p.mean == Rinv * Scalar::frac(-1, 2));

    auto cd = curvature(emb, {L, d3});
    CHECK(cd.scalar.is_zero());
    for (const auto& a : cd.lowered)
        for (const auto& b : a)
            for (const auto& c : b)
                for (const auto& d : c) CHECK(d.is_zero());
    CHECK(intrinsic_curvature(emb, L, d3, L).reduce_mod(emb.family().ideal()).is_zero());
    CHECK(ambient_curvature(L, d3, U).is_zero());
}

TEST_CASE("hyperboloid curvature from the Gauss equation") {
    Ring r = tfh::hyperboloid_ring();
    auto emb = tfh::hyperboloid_embedding(r);
    auto gens = tfh::hyperboloid_gens(standard_ring(3, {}, "y"));
    auto z = C(r, 0);
    VectorField H = VF(r, {X(r, 1) * Scalar(2), z, X(r, 3) * Scalar(-2)});
    VectorField E = VF(r, {z, X(r, 1), X(r, 2) * Scalar(-2)});
    VectorField Ep = VF(r, {X(r, 2) * Scalar(-2), X(r, 3), z});
    for (const auto& v : {H, E, Ep}) CHECK(classify(v, emb.family()).tangent);
    for (const auto& v : {H, E, Ep}) CHECK(is_killing(emb.metric(), v));
    VectorField V = VF(r, {X(r, 1), X(r, 2), X(r, 3)});
    Function inv2c = F(C(r, 1)).divided_by(F(P(r, 0) * Scalar(2)));

    // II(v, w) = -g(v, w) V / (2c)
    std::vector<VectorField> frame{H, E};
    for (const auto& a : frame)
        for (const auto& b : frame)
            CHECK(same_mod(emb, second_form(emb, a, b), V.times(-emb.metric()(a, b) * inv2c)));

    auto cd = curvature(emb, frame);
    // Independent oracle: curvature of the projected connection.
    for (size_t a = 0; a < 2; ++a)
        for (size_t b = 0; b < 2; ++b)
            for (size_t c = 0; c < 2; ++c) {
                VectorField direct = intrinsic_curvature(emb, frame[a], frame[b], frame[c]);
                VectorField assembled = frame[0].times(cd.raised[a][b][c][0]) + frame[1].times(cd.raised[a][b][c][1]);
                CHECK(same_mod(emb, direct, assembled));
                // R(v_a, v_b) v_c = (g_bc v_a - g_ac v_b) / (2c)
                VectorField expect = (frame[a].times(cd.g[b][c]) - frame[b].times(cd.g[a][c])).times(inv2c);
                CHECK(same_mod(emb, direct, expect));
            }
    for (size_t b = 0; b < 2; ++b)
        for (size_t c = 0; c < 2; ++c) CHECK(emb.family().reduce(cd.ricci[b][c] - cd.g[b][c] * inv2c).is_zero());
    REQUIRE(cd.scalar_value.has_value());
    CHECK(*cd.scalar_value == F(C(r, 1)).divided_by(F(P(r, 0))));
    (void)gens;
}

TEST_CASE("Gauss equation on random tangent quadruples") {
    std::mt19937_64 rng(31);
    {
        Ring r = tfh::cylinder_ring();
        auto emb = tfh::cylinder_embedding(r);
        auto g = tfh::cylinder_killing(r);
        for (int t = 0; t < 5; ++t) {
            auto A = tfh::random_tangent(rng, g), B = tfh::random_tangent(rng, g), Cc = tfh::random_tangent(rng, g),
                 D = tfh::random_tangent(rng, g);
            CHECK(gauss_residual(emb, A, B, Cc, D).is_zero());
        }
    }
    {
        Ring r = tfh::hyperboloid_ring();
        auto emb = tfh::hyperboloid_embedding(r);
        auto z = C(r, 0);
        auto g = make_generators(r, {"H", "E", "Ep"},
                                 {VF(r, {X(r, 1) * Scalar(2), z, X(r, 3) * Scalar(-2)}),
                                  VF(r, {z, X(r, 1), X(r, 2) * Scalar(-2)}), VF(r, {X(r, 2) * Scalar(-2), X(r, 3), z})});
        for (int t = 0; t < 5; ++t) {
            auto A = tfh::random_tangent(rng, g), B = tfh::random_tangent(rng, g), Cc = tfh::random_tangent(rng, g),
                 D = tfh::random_tangent(rng, g);
            CHECK(gauss_residual(emb, A, B, Cc, D).is_zero());
        }
    }
}
