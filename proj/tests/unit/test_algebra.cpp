#include "doctest.h"
#include "helpers.hpp"
#include "twistfold/ideal.hpp"
#include "twistfold/linear_algebra.hpp"
#include "twistfold/rational_function.hpp"

using namespace twistfold;
using tfh::C;
using tfh::X;

TEST_CASE("scalar arithmetic") {
    Scalar a(mpq_class(1, 2), mpq_class(3)), b(mpq_class(-2), mpq_class(1, 3));
    CHECK((a * b) / b == a);
    CHECK(a * a.inverse() == Scalar(1));
    CHECK(a.conj().conj() == a);
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(Scalar::frac(3, 4).str() == "3/4");
    CHECK(Scalar(mpq_class(1), mpq_class(-2)).str() == "(1-2*i)");
    CHECK((-Scalar::i()).str() == "-i");
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(11);
    Ring r = standard_ring(3);
    for (int k = 0; k < 30; ++k) {
        auto a = tfh::random_poly(rng, r, 3), b = tfh::random_poly(rng, r, 3), c = tfh::random_poly(rng, r, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == Polynomial(r));
        Scalar s = tfh::random_scalar(rng), t = tfh::random_scalar(rng), u = tfh::random_scalar(rng);
        CHECK((s * t) * u == s * (t * u));
        CHECK(s * (t + u) == s * t + s * u);
    }
}

TEST_CASE("polynomial basics") {
    Ring r = standard_ring(3);
    CHECK((X(r, 1) + X(r, 2)) * (X(r, 1) - X(r, 2)) == X(r, 1) * X(r, 1) - X(r, 2) * X(r, 2));
    CHECK((X(r, 1) * X(r, 3)).partial(2) == X(r, 1));
    CHECK((X(r, 1) * X(r, 1) * Scalar::frac(1, 2) - X(r, 2)).str() == "1/2*x1^2 - x2");
    Polynomial nu = Polynomial::nu(r, 4);
    CHECK((nu * X(r, 2) * Scalar::i() + X(r, 1)).str(true) == "x1+i*nu*x2");
}

TEST_CASE("linear substitution") {
    Ring r = standard_ring(3, {"c"});
    Scalar one(1), zero(0), mone(-1);
    auto lc = linear_change(r, "y3;c", {"y1", "y2", "y3"}, {{one, zero, one}, {zero, one, zero}, {one, zero, mone}});
    Ring y = lc.target;
    Polynomial c = Polynomial::param(y, 0);
    Polynomial fy = X(y, 1) * X(y, 3) * Scalar::frac(1, 2) + X(y, 2) * X(y, 2) * Scalar::frac(1, 2) - c;
    Polynomial fx = fy.substitute(r, lc.y_in_x);
    Polynomial expect = (X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2) - X(r, 3) * X(r, 3)) * Scalar::frac(1, 2) -
                        Polynomial::param(r, 0);
    CHECK(fx == expect);

    std::mt19937_64 rng(5);
    for (int k = 0; k < 20; ++k) {
        auto p = tfh::random_poly(rng, r, 3);
        CHECK(p.substitute(y, lc.x_in_y).substitute(r, lc.y_in_x) == p);
    }
    CHECK_THROWS_AS(linear_change(r, "bad", {"a", "b", "c"}, {{one, zero, zero}, {one, zero, zero}, {zero, zero, one}}),
                    Error);
}

TEST_CASE("ideal reduction") {
    Ring r = standard_ring(3, {"c"});
    Polynomial c = Polynomial::param(r, 0);
    Polynomial f = (X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2)) * Scalar::frac(1, 2) - c;
    CHECK(ideal_reduce(X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2), {f}) == c * Scalar(2));
    CHECK(ideal_reduce(X(r, 1), {f}) == X(r, 1));
    CHECK(ideal_reduce(f * X(r, 3), {f}).is_zero());

    IdealReducer ideal({f});
    std::mt19937_64 rng(17);
    for (int k = 0; k < 25; ++k) {
        auto p = tfh::random_poly(rng, r, 4), q = tfh::random_poly(rng, r, 2);
        auto np = ideal.reduce(p);
        CHECK(ideal.reduce(p + f * q) == np);
        CHECK(ideal.reduce(np) == np);
    }
    // two generators sharing a leading variable are not self-reduced
    Polynomial g = X(r, 1) * X(r, 2) - X(r, 3);
    IdealReducer bad({f, g});
    CHECK_FALSE(bad.complete());
    CHECK_THROWS_AS(bad.reduce(X(r, 1)), Error);
}

TEST_CASE("nu-series truncation") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 30; ++k) {
        std::vector<Scalar> a(4), b(4);
        for (auto& s : a) s = tfh::random_scalar(rng);
        for (auto& s : b) s = tfh::random_scalar(rng);
        NuSeries sa, sb;
        for (int j = 0; j < 4; ++j) {
            sa += NuSeries::monomial(a[j], j);
            sb += NuSeries::monomial(b[j], j);
        }
        // full convolution oracle
        std::vector<Scalar> full(7);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) full[i + j] += a[i] * b[j];
        NuSeries prod = sa.truncated(4) * sb.truncated(4);
        for (int j = 0; j <= 4; ++j) CHECK(prod[j] == full[j]);
        CHECK(prod.degree() <= 4);
        CHECK_FALSE(prod.exact());
        NuSeries inv = sa.truncated(4).inverse();
        if (!a[0].is_zero()) {
            NuSeries one = inv * sa.truncated(4);
            CHECK(one == NuSeries(Scalar(1)));
        }
    }
    NuSeries small = NuSeries::monomial(Scalar(2), 1, 4) * NuSeries::monomial(Scalar(3), 2, 4);
    CHECK(small.exact());
    CHECK(small[3] == Scalar(6));
}

TEST_CASE("rational functions") {
    Ring r = standard_ring(3, {"c"});
    Polynomial c = Polynomial::param(r, 0);
    Polynomial e = X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2);
    RationalFunction inv_e(C(r, 1), e);
    CHECK((inv_e * RationalFunction(e)).equals(RationalFunction(C(r, 1))));
    CHECK((RationalFunction(X(r, 1), e) + RationalFunction(X(r, 2), e)).equals(RationalFunction(X(r, 1) + X(r, 2), e)));

    std::mt19937_64 rng(23);
    for (int k = 0; k < 10; ++k) {
        auto n = tfh::random_poly(rng, r, 3, 4, false);
        RationalFunction q(n, e);
        for (int i = 0; i < 3; ++i) {
            // (n/e)' * e^2 == n' e - n e'
            RationalFunction lhs = q.partial(i) * RationalFunction(e * e);
            CHECK(lhs.equals(RationalFunction(n.partial(i) * e - n * e.partial(i))));
        }
    }

    Polynomial f = e * Scalar::frac(1, 2) - c;
    IdealReducer ideal({f});
    auto v = parameter_value(inv_e, ideal);
    REQUIRE(v);
    CHECK(v->equals(RationalFunction(C(r, 1), c * Scalar(2))));
    CHECK(v->str() == "1/2/c");
    // x1/e is not a function of the parameter alone
    CHECK_FALSE(parameter_value(RationalFunction(X(r, 1), e), ideal));
}

TEST_CASE("matrix inverse and solve") {
    ScalarMatrix a{{Scalar(2), Scalar(1)}, {Scalar(1), Scalar(1)}};
    auto inv = invert(a);
    REQUIRE(inv);
    CHECK((*inv)[0][0] == Scalar(1));
    CHECK((*inv)[0][1] == Scalar(-1));
    auto x = solve({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}, {Scalar(1), Scalar(1)}}, {Scalar(1), Scalar(2), Scalar(3)});
    REQUIRE(x);
    CHECK((*x)[1] == Scalar(2));
    CHECK_FALSE(solve({{Scalar(1)}, {Scalar(1)}}, {Scalar(1), Scalar(2)}));
}
