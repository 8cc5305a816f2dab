#include "doctest.h"
#include "geometry_fixtures.hpp"

using namespace twistfold;
using tfh::C;
using tfh::F;
using tfh::VF;
using tfh::X;

namespace {

constexpr int kOrder = 4;

Function inv_param(const Ring& r) { return F(C(r, 1)).divided_by(F(Polynomial::param(r, 0))); }

}  // namespace

TEST_CASE("twisted connection on flat space") {
    Ring r = tfh::cylinder_ring();
    TwistedConnection conn(tfh::cylinder_context(r, kOrder), Metric::euclidean(3));
    CHECK(conn.basis() == TwistBasis::killing);
    std::mt19937_64 rng(41);
    auto z = C(r, 0);
    VectorField d3 = VectorField::partial(r, 2);
    VectorField L = VF(r, {-X(r, 2), X(r, 1), z}).times(inv_param(r));
    VectorField U = VF(r, {X(r, 1), X(r, 2), z}).times(inv_param(r));
    for (int t = 0; t < 5; ++t) {
        auto Y = tfh::random_field(rng, r, 2);
        CHECK(conn.nabla(d3, Y) == flat_nabla(d3, Y));
        for (const auto& Xf : {VectorField::partial(r, 0), VectorField::partial(r, 1), d3, L, U})
            CHECK(conn.nabla(Xf, Y) == flat_nabla(Xf, Y));
    }
    // a field depending on x3 is deformed
    VectorField x3d1 = VF(r, {X(r, 3), z, z});
    VectorField Y = VF(r, {z, X(r, 1) * X(r, 2), z});
    CHECK_FALSE(conn.nabla(x3d1, Y) == flat_nabla(x3d1, Y));

    for (int t = 0; t < 5; ++t) {
        auto A = tfh::random_field(rng, r, 2), B = tfh::random_field(rng, r, 2), Cc = tfh::random_field(rng, r, 1);
        CHECK(conn.torsion(A, B).is_zero());
        CHECK(conn.curvature(A, B, Cc).is_zero());
        auto h = F(tfh::random_poly(rng, r, 2));
        // left star-linearity in the first slot
        CHECK((conn.nabla(star_product(conn.context(), h, A), B) -
               star_product(conn.context(), h, conn.nabla(A, B)))
                  .truncated(kOrder)
                  .is_zero());
        CHECK(conn.compatibility_residual(A, B, Cc).is_zero());
        CHECK(conn.right_linearity_residual(A, B, h).is_zero());
        CHECK(conn.g(d3, B) == Metric::euclidean(3)(d3, B));
    }
}

TEST_CASE("twisted torsion and curvature with a Jordanian twist") {
    Ring r = tfh::hyperboloid_ring();
    TwistedConnection conn(tfh::hyperboloid_context(r, kOrder), tfh::light_cone_metric());
    std::mt19937_64 rng(42);
    for (int t = 0; t < 3; ++t) {
        auto A = tfh::random_field(rng, r, 2), B = tfh::random_field(rng, r, 1), Cc = tfh::random_field(rng, r, 1);
        CHECK(conn.torsion(A, B).is_zero());
        CHECK(conn.torsion_antisymmetry(A, B).is_zero());
        CHECK(conn.curvature(A, B, Cc).is_zero());
        CHECK(conn.compatibility_residual(A, B, Cc).is_zero());
    }
    // The twisted torsion of a deformed, non-symmetric connection is still antisymmetric.
    // Check it on the pieces: nabla_X Y - nabla_{R_2 Y}(R_1 X) alone equals the star bracket.
    auto A = tfh::random_field(rng, r, 1), B = tfh::random_field(rng, r, 1);
    VectorField swapped = apply_two_leg(conn.context().twist().R(), A, B,
                                        [&](const VectorField& x, const VectorField& y) { return conn.nabla(y, x); });
    CHECK((conn.nabla(A, B) - swapped).truncated(kOrder) == star_bracket(conn.context(), A, B).truncated(kOrder));
}

TEST_CASE("twists outside the symmetry algebras are refused") {
    Ring r = tfh::cylinder_ring();
    auto z = C(r, 0);
    // x1^2 d1 is not an equivariance field of the flat connection
    auto bad = make_generators(r, {"Q", "d2"}, {VF(r, {X(r, 1) * X(r, 1), z, z}), VectorField::partial(r, 1)});
    CHECK_THROWS_WITH_AS(TwistedConnection(StarContext(build_twist(bad, tfh::abelian(bad, "Q", "d2"), 2)),
                                           Metric::euclidean(3)),
                         "twist legs not equivariant: Q", Error);
    // the dilatation is equivariant but not Killing
    auto dil = make_generators(r, {"D", "L12"}, {VF(r, {X(r, 1), X(r, 2), X(r, 3)}), VF(r, {-X(r, 2), X(r, 1), z})});
    TwistedConnection conn(StarContext(build_twist(dil, tfh::abelian(dil, "D", "L12"), 2)), Metric::euclidean(3));
    CHECK(conn.basis() == TwistBasis::equivariance);
    CHECK(conn.torsion(VectorField::partial(r, 0), VF(r, {X(r, 2), z, z})).is_zero());
    CHECK_THROWS_WITH_AS(conn.g(VectorField::partial(r, 0), VectorField::partial(r, 0)), "twist legs not Killing: D",
                         Error);
    // translations are Killing but not tangent to the cylinder
    auto tr = make_generators(r, {"d1", "d2"}, {VectorField::partial(r, 0), VectorField::partial(r, 1)});
    TwistedConnection flat(StarContext(build_twist(tr, tfh::abelian(tr, "d1", "d2"), 2)), Metric::euclidean(3));
    CHECK_THROWS_WITH_AS(TwistedSubmanifold(flat, tfh::cylinder_embedding(r)), "twist legs not tangent: d1", Error);
}

TEST_CASE("cylinder: twisted fundamental forms are undeformed") {
    Ring r = tfh::cylinder_ring();
    auto tm = tfh::twisted_cylinder(r, kOrder);
    const auto& emb = tm.embedding();
    auto z = C(r, 0);
    VectorField d3 = VectorField::partial(r, 2);
    VectorField L = VF(r, {-X(r, 2), X(r, 1), z}).times(inv_param(r));
    std::vector<VectorField> frame{L, d3};
    for (const auto& a : frame)
        for (const auto& b : frame) {
            CHECK(tm.second_form(a, b) == second_form(emb, a, b));
            CHECK(tm.nabla(a, b) == projected_nabla(emb, a, b));
            CHECK(tm.g(a, b) == emb.metric()(a, b));
            for (const auto& c : frame) CHECK(tm.curvature(a, b, c).reduce_mod(emb.family().ideal()).is_zero());
        }
    auto ric = tm.ricci(frame);
    CHECK(ric.scalar.is_zero());

    std::mt19937_64 rng(43);
    auto gens = tfh::cylinder_killing(r);
    for (int t = 0; t < 4; ++t) {
        auto A = tfh::random_tangent(rng, gens), B = tfh::random_tangent(rng, gens);
        CHECK(tm.second_form(A, B) == tm.second_form_legs(A, B));
        VectorField full = tm.connection().nabla(A, B);
        CHECK(tm.nabla(A, B) + tm.second_form(A, B) == full);
        CHECK(classify(tm.nabla(A, B), emb.family()).tangent);
    }
}

TEST_CASE("twisted projections and duality") {
    std::mt19937_64 rng(44);
    for (int which = 0; which < 2; ++which) {
        Ring r = which == 0 ? tfh::cylinder_ring() : tfh::hyperboloid_ring();
        auto tm = which == 0 ? tfh::twisted_cylinder(r, kOrder) : tfh::twisted_hyperboloid(r, kOrder);
        const auto& emb = tm.embedding();
        const auto& ctx = tm.context();
        const auto& N = emb.frame().normals()[0];
        const auto& df = emb.family().df(0);
        CHECK(emb.family().reduce(star_pairing(ctx, N, df)) == F(C(r, 1)));
        CHECK(star_pairing(ctx, N, df) == pairing(N, df));
        for (int t = 0; t < 3; ++t) {
            auto V = tfh::random_field(rng, r, 1);
            CHECK(twisted_normal_part(ctx, emb, V) == emb.normal_part(V));
            CHECK(twisted_tangent_part(ctx, emb, V) + twisted_normal_part(ctx, emb, V) == V);
            auto w = tfh::random_form(rng, r, 1, 1);
            CHECK(twisted_normal_part(ctx, emb, w) == emb.normal_part(w));
            auto wn = twisted_normal_part(ctx, emb, w);
            CHECK(twisted_normal_part(ctx, emb, wn) == wn);
        }
    }
}

TEST_CASE("twisted Levi-Civita on the level sets") {
    std::mt19937_64 rng(45);
    {
        Ring r = tfh::cylinder_ring();
        auto tm = tfh::twisted_cylinder(r, kOrder);
        auto gens = tfh::cylinder_killing(r);
        for (int t = 0; t < 4; ++t) {
            auto A = tfh::random_tangent(rng, gens), B = tfh::random_tangent(rng, gens),
                 Cc = tfh::random_tangent(rng, gens);
            CHECK(tm.connection().torsion(A, B).is_zero());
            CHECK(tm.connection().compatibility_residual(A, B, Cc).is_zero());
        }
    }
    {
        Ring r = tfh::hyperboloid_ring();
        auto tm = tfh::twisted_hyperboloid(r, kOrder);
        auto gens = tfh::hyperboloid_gens(r);
        for (int t = 0; t < 2; ++t) {
            auto A = tfh::random_tangent(rng, gens), B = tfh::random_tangent(rng, gens),
                 Cc = tfh::random_tangent(rng, gens);
            CHECK(tm.connection().torsion(A, B).is_zero());
            CHECK(tm.connection().compatibility_residual(A, B, Cc).is_zero());
        }
    }
}

TEST_CASE("twisted Gauss equation") {
    std::mt19937_64 rng(46);
    {
        Ring r = tfh::cylinder_ring();
        auto tm = tfh::twisted_cylinder(r, 3);
        auto gens = tfh::cylinder_killing(r);
        for (int t = 0; t < 3; ++t) {
            auto A = tfh::random_tangent(rng, gens), B = tfh::random_tangent(rng, gens),
                 Cc = tfh::random_tangent(rng, gens), D = tfh::random_tangent(rng, gens);
            CHECK(tm.gauss_residual(A, B, Cc, D).is_zero());
        }
    }
    {
        Ring r = tfh::hyperboloid_ring();
        auto tm = tfh::twisted_hyperboloid(r, 3);
        auto gens = tfh::hyperboloid_gens(r);
        for (int t = 0; t < 2; ++t) {
            auto A = tfh::random_tangent(rng, gens), B = tfh::random_tangent(rng, gens),
                 Cc = tfh::random_tangent(rng, gens), D = tfh::random_tangent(rng, gens);
            CHECK(tm.gauss_residual(A, B, Cc, D).is_zero());
        }
        // the deformation is not trivial on these fields
        auto A = tfh::random_tangent(rng, gens), B = tfh::random_tangent(rng, gens);
        CHECK_FALSE(tm.second_form(A, B) == second_form(tm.embedding(), A, B));
        CHECK_FALSE(tm.connection().nabla(A, B) == flat_nabla(A, B));
        // order zero is the classical Gauss equation
        auto H = gens->field(0), E = gens->field(1), Ep = gens->field(2);
        auto tm0 = tfh::twisted_hyperboloid(r, 0);
        CHECK(tm0.gauss_residual(H, E, Ep, E).is_zero());
        CHECK(gauss_residual(tm0.embedding(), H, E, Ep, E).is_zero());
    }
}

TEST_CASE("twisted Ricci scalar of the hyperboloid") {
    Ring r = tfh::hyperboloid_ring();
    auto tm = tfh::twisted_hyperboloid(r, 2);
    auto gens = tfh::hyperboloid_gens(r);
    std::vector<VectorField> frame{gens->field(0), gens->field(1)};
    auto classical = curvature(tm.embedding(), frame);
    auto twisted = tm.ricci(frame);
    REQUIRE(twisted.scalar_value.has_value());
    REQUIRE(classical.scalar_value.has_value());
    CHECK(*twisted.scalar_value == *classical.scalar_value);
    CHECK(*twisted.scalar_value == inv_param(r));
}
