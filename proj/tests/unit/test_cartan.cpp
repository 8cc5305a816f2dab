#include "doctest.h"
#include "helpers.hpp"

using namespace twistfold;
using tfh::C;
using tfh::X;

namespace {
struct Cyl {
    Ring r = standard_ring(3);
    VectorField L12 = tfh::VF(r, {-X(r, 2), X(r, 1), C(r, 0)});
    VectorField L13 = tfh::VF(r, {C(r, 0), C(r, 0), X(r, 1)});
    VectorField L23 = tfh::VF(r, {C(r, 0), C(r, 0), X(r, 2)});
};
}  // namespace

TEST_CASE("brackets of the cylinder generators") {
    Cyl c;
    CHECK(bracket(c.L12, c.L13) == -c.L23);
    CHECK(bracket(c.L12, c.L23) == c.L13);
    CHECK(bracket(c.L13, c.L23).is_zero());
    CHECK(c.L12.str() == "-x2*d1 + x1*d2");
}

TEST_CASE("Lie derivative examples") {
    Cyl c;
    const Ring& r = c.r;
    auto d3 = VectorField::partial(r, 2);
    PForm w = PForm::dx(r, 0).times(tfh::F(X(r, 3)));
    CHECK(lie(d3, w) == PForm::dx(r, 0));
    std::mt19937_64 rng(1);
    auto Y = tfh::random_field(rng, r, 2);
    CHECK(bracket(Y, Y).is_zero());
}

TEST_CASE("exterior calculus examples") {
    Ring r = standard_ring(3, {"a", "c"});
    Polynomial a = Polynomial::param(r, 0), c = Polynomial::param(r, 1);
    Polynomial f = (X(r, 1) * X(r, 1) + a * X(r, 2) * X(r, 2)) * Scalar::frac(1, 2) - c;
    PForm df = d(tfh::F(f));
    CHECK(df == PForm::dx(r, 0).times(tfh::F(X(r, 1))) + PForm::dx(r, 1).times(tfh::F(a * X(r, 2))));
    CHECK(d(d(tfh::F(X(r, 1) * X(r, 2) * X(r, 3)))).is_zero());
    CHECK((wedge(PForm::dx(r, 0), PForm::dx(r, 1)) + wedge(PForm::dx(r, 1), PForm::dx(r, 0))).is_zero());
    CHECK(wedge(PForm::dx(r, 0), PForm::dx(r, 1)).str() == "wedge(dx1, dx2)");
}

TEST_CASE("pairing examples") {
    Ring r = standard_ring(3);
    for (int mu = 0; mu < 3; ++mu)
        for (int la = 0; la < 3; ++la)
            CHECK(pairing(VectorField::partial(r, mu), PForm::dx(r, la)).equals(tfh::F(C(r, mu == la ? 1 : 0))));
    auto lhs = tfh::VF(r, {X(r, 1), C(r, 0), C(r, 0)});
    auto rhs = PForm::dx(r, 0).times(tfh::F(X(r, 2)));
    CHECK(pairing(lhs, rhs).equals(tfh::F(X(r, 1) * X(r, 2))));
    auto vv = tensor(TensorField::from_vector(VectorField::partial(r, 1)), TensorField::from_vector(VectorField::partial(r, 0)));
    auto ww = tensor(tensor(TensorField::from_form(PForm::dx(r, 0)), TensorField::from_form(PForm::dx(r, 1))),
                     TensorField::from_form(PForm::dx(r, 2)));
    CHECK(pairing(vv, ww) == TensorField::from_form(PForm::dx(r, 2)));
    // swapped order pairs dx1 with d2: zero
    auto vv2 = tensor(TensorField::from_vector(VectorField::partial(r, 0)), TensorField::from_vector(VectorField::partial(r, 1)));
    CHECK(pairing(vv2, ww).is_zero());
    auto wv = tensor(TensorField::from_form(PForm::dx(r, 2)), tensor(TensorField::from_form(PForm::dx(r, 1)), TensorField::from_form(PForm::dx(r, 0))));
    CHECK(pairing_form_first(wv, vv2) == TensorField::from_form(PForm::dx(r, 2)));
}

TEST_CASE("Cartan calculus properties on random inputs") {
    Ring r = standard_ring(3);
    std::mt19937_64 rng(99);
    for (int k = 0; k < 8; ++k) {
        auto A = tfh::random_field(rng, r, 2), B = tfh::random_field(rng, r, 2), Cc = tfh::random_field(rng, r, 2);
        // Jacobi
        auto jac = bracket(A, bracket(B, Cc)) + bracket(B, bracket(Cc, A)) + bracket(Cc, bracket(A, B));
        CHECK(jac.is_zero());
        // L_X <Y, w> = <[X,Y], w> + <Y, L_X w>
        auto w = tfh::random_form(rng, r, 1, 2);
        CHECK(A.apply(pairing(B, w)).equals(pairing(bracket(A, B), w) + pairing(B, lie(A, w))));
        // Cartan formula on 1- and 2-forms
        for (int p = 1; p <= 2; ++p) {
            auto om = tfh::random_form(rng, r, p, 2);
            CHECK(lie(A, om) == insertion(A, d(om)) + d(insertion(A, om)));
        }
        // graded Leibniz for d
        auto a1 = tfh::random_form(rng, r, 1, 2), b1 = tfh::random_form(rng, r, 1, 2);
        CHECK(d(wedge(a1, b1)) == wedge(d(a1), b1) - wedge(a1, d(b1)));
        // tensor Lie derivative matches the form and vector versions
        CHECK(lie(A, TensorField::from_form(a1)) == TensorField::from_form(lie(A, a1)));
        auto two = tfh::random_form(rng, r, 2, 1);
        CHECK(lie(A, TensorField::from_form(two)) == TensorField::from_form(lie(A, two)));
        CHECK(lie(A, TensorField::from_vector(B)) == TensorField::from_vector(bracket(A, B)));
        // Leibniz over tensor products
        auto T = tensor(TensorField::from_form(a1), TensorField::from_vector(B));
        CHECK(lie(A, T) == tensor(TensorField::from_form(lie(A, a1)), TensorField::from_vector(B)) +
                               tensor(TensorField::from_form(a1), TensorField::from_vector(bracket(A, B))));
    }
}
