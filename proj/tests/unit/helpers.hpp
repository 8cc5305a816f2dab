#pragma once

#include <functional>
#include <random>

#include "twistfold/polynomial.hpp"

namespace tfh {

using namespace twistfold;

inline Scalar random_scalar(std::mt19937_64& rng, bool gaussian = true) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    mpq_class re(num(rng), den(rng));
    mpq_class im = gaussian ? mpq_class(num(rng), den(rng)) : mpq_class(0);
    return Scalar(re, im);
}

// Random polynomial in the coordinates of `ring` with total degree <= deg.
inline Polynomial random_poly(std::mt19937_64& rng, const Ring& ring, int deg, int terms = 4, bool gaussian = true) {
    Polynomial p(ring);
    std::uniform_int_distribution<int> pick(0, ring->dim() - 1), dd(0, deg);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int d = dd(rng);
        for (int k = 0; k < d; ++k) m.e[pick(rng)] += 1;
        p += Polynomial(ring, FlatPoly(m, random_scalar(rng, gaussian)));
    }
    return p;
}

inline Polynomial X(const Ring& r, int i) { return Polynomial::coord(r, i - 1); }
inline Polynomial C(const Ring& r, long num, long den = 1) { return Polynomial(r, Scalar::frac(num, den)); }

}  // namespace tfh

#include "twistfold/cartan.hpp"

namespace tfh {

inline Function F(const Polynomial& p) { return Function(p); }

inline VectorField VF(const Ring& r, std::vector<Polynomial> comps) { return VectorField::from_polys(r, comps); }

inline VectorField random_field(std::mt19937_64& rng, const Ring& ring, int deg, bool gaussian = true) {
    std::vector<Polynomial> c;
    for (int i = 0; i < ring->dim(); ++i) c.push_back(random_poly(rng, ring, deg, 3, gaussian));
    return VectorField::from_polys(ring, c);
}

inline PForm random_form(std::mt19937_64& rng, const Ring& ring, int degree, int deg, bool gaussian = true) {
    PForm w(ring, degree);
    int n = ring->dim();
    std::vector<int> idx(degree);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == degree) {
            w += PForm::basis(ring, idx, Function(random_poly(rng, ring, deg, 2, gaussian)));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    return w;
}

}  // namespace tfh

#include "twistfold/hopf.hpp"

namespace tfh {

// Circular cylinder symmetries in x1, x2, x3: L12, L13, L23, d3.
inline Generators cylinder_gens(const Ring& r) {
    auto z = C(r, 0);
    return make_generators(r, {"L12", "L13", "L23", "d3"},
                           {VF(r, {-X(r, 2), X(r, 1), z}), VF(r, {z, z, X(r, 1)}), VF(r, {z, z, X(r, 2)}),
                            VectorField::partial(r, 2)});
}

// so(2,1) on the circular hyperboloid in light-cone coordinates y1, y2, y3.
inline Generators hyperboloid_gens(const Ring& r) {
    auto z = C(r, 0);
    return make_generators(r, {"H", "E", "Ep"},
                           {VF(r, {X(r, 1) * Scalar(2), z, X(r, 3) * Scalar(-2)}),
                            VF(r, {z, X(r, 1), X(r, 2) * Scalar(-2)}), VF(r, {X(r, 2) * Scalar(-2), X(r, 3), z})});
}

inline TwistSpec abelian(const Generators& g, const std::string& a, const std::string& b) {
    TwistSpec s;
    s.family = TwistFamily::abelian;
    s.pairs = {{g->index(a), g->index(b)}};
    return s;
}

inline TwistSpec jordanian(const Generators& g) {
    TwistSpec s;
    s.family = TwistFamily::jordanian;
    s.h = g->index("H");
    s.e = g->index("E");
    return s;
}

inline UElement random_u(std::mt19937_64& rng, const Generators& g, int max_len, int terms = 3, int cap = kNoCap) {
    UElement u(g, cap);
    std::uniform_int_distribution<int> len(0, max_len), pick(0, g->size() - 1);
    for (int t = 0; t < terms; ++t) {
        Word w;
        int l = len(rng);
        for (int k = 0; k < l; ++k) w.push_back(pick(rng));
        u += UElement::word(g, w, NuSeries(random_scalar(rng), cap));
    }
    return u;
}

}  // namespace tfh
