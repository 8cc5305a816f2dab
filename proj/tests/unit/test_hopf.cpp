#include "doctest.h"
#include "helpers.hpp"

using namespace twistfold;
using tfh::C;
using tfh::X;

namespace {

NuSeries nu(const Scalar& c, int k, int cap) { return NuSeries::monomial(c, k, cap); }

UElement gen(const Generators& g, const std::string& n, int cap = kNoCap) { return UElement::generator(g, n, cap); }

// Word given by names, normal ordered.
UElement w(const Generators& g, std::vector<std::string> names, int cap = kNoCap) {
    Word v;
    for (const auto& n : names) v.push_back(g->index(n));
    return UElement::word(g, v, NuSeries(Scalar(1), cap));
}

// Taylor series of exp(X) by repeated multiplication, for an X of nu-valuation >= 1.
MultiLeg exp_oracle(const MultiLeg& X, int N) {
    MultiLeg out = MultiLeg::identity(X.generators(), X.legs(), N), term = out;
    for (int k = 1; k <= N; ++k) {
        term = term * X;
        Scalar inv_fact(1);
        for (int j = 2; j <= k; ++j) inv_fact *= Scalar::frac(1, j);
        out += term.scaled(NuSeries(inv_fact, N));
    }
    return out;
}

}  // namespace

TEST_CASE("generator sets solve their bracket tables") {
    Ring r = standard_ring(3);
    auto g = tfh::cylinder_gens(r);
    int L12 = g->index("L12"), L13 = g->index("L13"), L23 = g->index("L23"), d3 = g->index("d3");
    CHECK(g->bracket(L12, L13) == GenCombination{{L23, Scalar(-1)}});
    CHECK(g->bracket(L12, L23) == GenCombination{{L13, Scalar(1)}});
    CHECK(g->commute(L13, L23));
    CHECK(g->commute(d3, L12));

    Ring y = standard_ring(3, {}, "y");
    auto h = tfh::hyperboloid_gens(y);
    int H = h->index("H"), E = h->index("E"), Ep = h->index("Ep");
    CHECK(h->bracket(H, E) == GenCombination{{E, Scalar(2)}});
    CHECK(h->bracket(H, Ep) == GenCombination{{Ep, Scalar(-2)}});
    CHECK(h->bracket(E, Ep) == GenCombination{{H, Scalar(-1)}});

    auto z = C(r, 0);
    CHECK_THROWS_AS(make_generators(r, {"a", "b"}, {VectorField::partial(r, 0), VectorField::partial(r, 0) * Scalar(2)}),
                    Error);
    CHECK_THROWS_AS(make_generators(r, {"a", "b"}, {VectorField::partial(r, 0), tfh::VF(r, {z, X(r, 1), z})}), Error);
}

TEST_CASE("PBW normal ordering") {
    Ring y = standard_ring(3, {}, "y");
    auto h = tfh::hyperboloid_gens(y);
    // E H = H E - 2 E
    CHECK(w(h, {"E", "H"}) == w(h, {"H", "E"}) - gen(h, "E") * Scalar(2));
    CHECK(gen(h, "E") * gen(h, "H") == w(h, {"E", "H"}));
    CHECK(w(h, {"Ep", "E"}) == w(h, {"E", "Ep"}) + gen(h, "H"));
    CHECK((gen(h, "H") * gen(h, "E")).str() == "H*E");
}

TEST_CASE("coproduct, counit and antipode") {
    Ring r = standard_ring(3);
    auto g = tfh::cylinder_gens(r);
    auto d3 = gen(g, "d3");
    auto one = UElement::one(g);
    CHECK(coproduct(d3) == MultiLeg::pure({d3, one}) + MultiLeg::pure({one, d3}));
    CHECK(coproduct(one) == MultiLeg::identity(g, 2));

    Ring y = standard_ring(3, {}, "y");
    auto h = tfh::hyperboloid_gens(y);
    auto H = gen(h, "H"), E = gen(h, "E"), hone = UElement::one(h);
    auto HE = H * E;
    CHECK(coproduct(HE) == MultiLeg::pure({HE, hone}) + MultiLeg::pure({H, E}) + MultiLeg::pure({E, H}) +
                               MultiLeg::pure({hone, HE}));

    std::mt19937_64 rng(5);
    for (auto gs : {g, h}) {
        for (int k = 0; k < 10; ++k) {
            auto u = tfh::random_u(rng, gs, 3);
            auto du = coproduct(u);
            CHECK(du.flipped() == du);
            CHECK(du.coproduct_on(0) == du.coproduct_on(1));
            // mu (S (x) id) Delta = eta epsilon = mu (id (x) S) Delta
            auto eps = UElement::one(gs).scaled(u.counit());
            CHECK(du.antipode_on(0).multiply_legs() == eps);
            CHECK(du.antipode_on(1).multiply_legs() == eps);
            CHECK(du.counit_on(0).leg_element(0) == u);
            auto v = tfh::random_u(rng, gs, 2);
            CHECK(coproduct(u * v) == coproduct(u) * coproduct(v));
            CHECK((u * v).antipode() == v.antipode() * u.antipode());
            CHECK((u * v).star() == v.star() * u.star());
            CHECK(u.star().star() == u);
        }
    }
}

TEST_CASE("action on geometric objects") {
    Ring r = standard_ring(3);
    auto g = tfh::cylinder_gens(r);
    CHECK(hopf_act(gen(g, "d3") * gen(g, "L12"), X(r, 2) * X(r, 3)) == X(r, 1));
    std::mt19937_64 seed(3);
    Polynomial p = tfh::random_poly(seed, r, 3);
    CHECK(hopf_act(UElement::one(g), p) == p);

    Ring y = standard_ring(3, {}, "y");
    auto h = tfh::hyperboloid_gens(y);
    CHECK(hopf_act(gen(h, "H"), X(y, 1)) == X(y, 1) * Scalar(2));
    CHECK(hopf_act(gen(h, "H"), X(y, 3)) == X(y, 3) * Scalar(-2));
    CHECK(hopf_act(gen(h, "H"), X(y, 2)).is_zero());

    std::mt19937_64 rng(17);
    for (auto gs : {g, h}) {
        const Ring& ring = gs->ring();
        for (int k = 0; k < 6; ++k) {
            auto u = tfh::random_u(rng, gs, 2), v = tfh::random_u(rng, gs, 2);
            auto a = tfh::random_poly(rng, ring, 3), b = tfh::random_poly(rng, ring, 2);
            CHECK(hopf_act(u * v, a) == hopf_act(u, hopf_act(v, a)));
            // u |> (ab) = (u_(1) |> a)(u_(2) |> b)
            Polynomial rhs(ring);
            auto du = coproduct(u);
            for (const auto& [key, c] : du.terms()) {
                UElement l(gs), rr(gs);
                l.add_term(key[0], NuSeries(Scalar(1)));
                rr.add_term(key[1], NuSeries(Scalar(1)));
                rhs += (hopf_act(l, a) * hopf_act(rr, b)).scaled(c);
            }
            CHECK(hopf_act(u, a * b) == rhs);
            auto Y = tfh::random_field(rng, ring, 2);
            CHECK(hopf_act(u * v, Y) == hopf_act(u, hopf_act(v, Y)));
            auto om = tfh::random_form(rng, ring, 1, 2);
            CHECK(hopf_act(u * v, om) == hopf_act(u, hopf_act(v, om)));
        }
    }
}

TEST_CASE("twist construction examples") {
    Ring r = standard_ring(3);
    auto g = tfh::cylinder_gens(r);
    auto t = build_twist(g, tfh::abelian(g, "d3", "L12"), 2);
    auto d3 = gen(g, "d3", 2), L12 = gen(g, "L12", 2);
    MultiLeg expected = MultiLeg::identity(g, 2, 2) + MultiLeg::pure({d3, L12}).scaled(nu(Scalar::i(), 1, 2)) +
                        MultiLeg::pure({d3 * d3, L12 * L12}).scaled(nu(Scalar::frac(-1, 2), 2, 2));
    CHECK(t.F() == expected);
    CHECK(build_twist(g, tfh::abelian(g, "d3", "L12"), 0).F() == MultiLeg::identity(g, 2));

    Ring y = standard_ring(3, {}, "y");
    auto h = tfh::hyperboloid_gens(y);
    auto tj = build_twist(h, tfh::jordanian(h), 1);
    CHECK(tj.F() == MultiLeg::identity(h, 2, 1) +
                        MultiLeg::pure({gen(h, "H", 1), gen(h, "E", 1)}).scaled(nu(Scalar::frac(1, 2) * Scalar::i(), 1, 1)));
    CHECK(build_twist(h, tfh::jordanian(h), 0).F() == MultiLeg::identity(h, 2));

    // preconditions
    CHECK_THROWS_AS(build_twist(g, tfh::abelian(g, "L12", "L13"), 2), Error);
    TwistSpec bad = tfh::jordanian(h);
    std::swap(bad.h, bad.e);
    CHECK_THROWS_AS(build_twist(h, bad, 2), Error);
    CHECK_THROWS_AS(build_twist(g, tfh::abelian(g, "d3", "L12"), -1), Error);
}

TEST_CASE("twist axioms, R-matrix and beta") {
    Ring r = standard_ring(3);
    auto g = tfh::cylinder_gens(r);
    Ring y = standard_ring(3, {}, "y");
    auto h = tfh::hyperboloid_gens(y);
    const int N = 4;
    std::vector<TwistData> twists{build_twist(g, tfh::abelian(g, "d3", "L12"), N),
                                  build_twist(g, tfh::abelian(g, "L13", "L23"), N),
                                  build_twist(h, tfh::jordanian(h), N)};
    for (const auto& t : twists) {
        auto rep = check_twist_axioms(t);
        CHECK(rep.ok());
        auto tri = evaluate_on_triples(rep.cocycle_lhs, rep.cocycle_rhs, 2);
        CHECK(tri.failures == 0);
        CHECK(tri.triples == 1000);
        // compact form on inverses: Fbar_(12)3 Fbar_12 = Fbar_1(23) Fbar_23
        CHECK(t.Fbar().coproduct_on(0) * t.Fbar().insert_unit(2) ==
              t.Fbar().coproduct_on(1) * t.Fbar().insert_unit(0));
        CHECK(t.iterated(3) == rep.cocycle_rhs);
        // (Delta_F (x) id) R = R_13 R_23
        auto lhs = t.F().insert_unit(2) * t.R().coproduct_on(0) * t.Fbar().insert_unit(2);
        CHECK(lhs == t.R().insert_unit(1) * t.R().insert_unit(0));
        auto star = check_star(t);
        CHECK(star.unitary);
        // unitary twists: beta^* = S(beta^-1)
        CHECK(t.beta().star() == t.beta_inverse().antipode());
        // quasi-cocommutativity of the twisted coproduct
        std::mt19937_64 rng(23);
        auto u = tfh::random_u(rng, t.generators(), 2, 3, N);
        auto dF = twisted_coproduct(u, t.F(), t.Fbar());
        CHECK(dF.flipped() == t.R() * dF * t.Rbar());
        // antipode property of the twisted Hopf algebra
        auto eps = UElement::one(t.generators(), N).scaled(u.counit());
        UElement left(t.generators(), N);
        for (const auto& [key, c] : dF.terms()) {
            UElement a(t.generators(), N), b(t.generators(), N);
            a.add_term(key[0], NuSeries(Scalar(1)));
            b.add_term(key[1], NuSeries(Scalar(1)));
            left += (twisted_antipode(t, a) * b).scaled(c);
        }
        CHECK(left == eps);
    }
    // identity twist
    auto id = build_twist(g, TwistSpec{}, N);
    CHECK(id.R() == MultiLeg::identity(g, 2, N));
    CHECK(id.beta() == UElement::one(g, N));

    // abelian R and beta against closed forms
    const auto& t = twists[0];
    auto d3 = gen(g, "d3", N), L12 = gen(g, "L12", N);
    MultiLeg Q = (MultiLeg::pure({L12, d3}) - MultiLeg::pure({d3, L12})).scaled(nu(Scalar::i(), 1, N));
    CHECK(t.R() == exp_oracle(Q, N));
    UElement beta(g, N), term = UElement::one(g, N);
    beta += term;
    for (int l = 1; l <= N; ++l) {
        term = term * d3 * (-L12);
        Scalar c = pow(Scalar::i(), l);
        for (int j = 2; j <= l; ++j) c *= Scalar::frac(1, j);
        beta += term.scaled(nu(c, l, N));
    }
    CHECK(t.beta() == beta);
}

TEST_CASE("D isomorphism and twisted involution") {
    Ring r = standard_ring(3);
    auto g = tfh::cylinder_gens(r);
    Ring y = standard_ring(3, {}, "y");
    auto h = tfh::hyperboloid_gens(y);
    const int N = 2;
    std::mt19937_64 rng(41);
    for (const auto& t : {build_twist(g, tfh::abelian(g, "d3", "L12"), N),
                          build_twist(g, tfh::abelian(g, "L13", "L23"), N), build_twist(h, tfh::jordanian(h), N)}) {
        auto one = UElement::one(t.generators(), N);
        CHECK(D_map(t, one) == one);
        for (int k = 0; k < 5; ++k) {
            auto a = tfh::random_u(rng, t.generators(), 2, 3, N), b = tfh::random_u(rng, t.generators(), 2, 3, N);
            CHECK(D_map(t, star_product(t, a, b)) == D_map(t, a) * D_map(t, b));
            CHECK(D_map(t, a) == D_map_conjugation(t, a));
            CHECK(D_inverse(t, D_map(t, a)) == a);
        }
    }
}

TEST_CASE("cocycle evaluation detects a non-twist") {
    Ring r = standard_ring(3);
    auto g = tfh::cylinder_gens(r);
    const int N = 2;
    auto t = build_twist(g, tfh::abelian(g, "d3", "L12"), N);
    // perturb the second-order coefficient of exp(i nu P)
    MultiLeg G = t.F() + MultiLeg::pure({gen(g, "d3", N) * gen(g, "d3", N), gen(g, "L12", N) * gen(g, "L12", N)})
                             .scaled(nu(Scalar::frac(1, 3), 2, N));
    MultiLeg lhs = G.insert_unit(2) * G.coproduct_on(0);
    MultiLeg rhs = G.insert_unit(0) * G.coproduct_on(1);
    CHECK(lhs != rhs);
    auto tri = evaluate_on_triples(lhs, rhs, 2);
    CHECK(tri.failures > 0);
    CHECK(!tri.first_failure.empty());
}
