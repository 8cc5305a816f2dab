#pragma once

#include "helpers.hpp"
#include "twistfold/twisted.hpp"

namespace tfh {

// Circular cylinder of radius R: f = (x1^2 + x2^2 - R^2)/2, Euclidean metric.
inline Ring cylinder_ring() { return standard_ring(3, {"R"}); }
inline Polynomial cylinder_f(const Ring& r) {
    Polynomial R = Polynomial::param(r, 0);
    return (X(r, 1) * X(r, 1) + X(r, 2) * X(r, 2) - R * R) * Scalar::frac(1, 2);
}
inline Embedding cylinder_embedding(const Ring& r) {
    return Embedding(LevelSetFamily({cylinder_f(r)}, Metric::euclidean(3)));
}

// Circular hyperboloids in light-cone coordinates y1 = x1 + x3, y2 = x2, y3 = x1 - x3:
// f = y1 y3 / 2 + y2^2 / 2 - c with the Minkowski metric.
inline Ring hyperboloid_ring() { return standard_ring(3, {"c"}, "y"); }
inline Polynomial hyperboloid_f(const Ring& r) {
    return X(r, 1) * X(r, 3) * Scalar::frac(1, 2) + X(r, 2) * X(r, 2) * Scalar::frac(1, 2) - Polynomial::param(r, 0);
}
inline Metric light_cone_metric() {
    Scalar h = Scalar::frac(1, 2);
    return Metric::custom({{0, 0, h}, {0, 1, 0}, {h, 0, 0}});
}
inline Embedding hyperboloid_embedding(const Ring& r) {
    return Embedding(LevelSetFamily({hyperboloid_f(r)}, light_cone_metric()));
}

// sum_k h_k G_k with random polynomial coefficients of degree <= deg.
inline VectorField random_tangent(std::mt19937_64& rng, const Generators& g, int deg = 1, int terms = 2) {
    const Ring& r = g->ring();
    VectorField out = g->field(0) * Scalar(0);
    std::uniform_int_distribution<int> pick(0, g->size() - 1);
    for (int t = 0; t < terms; ++t) out += g->field(pick(rng)).times(Function(random_poly(rng, r, deg, 2)));
    return out;
}

// Cylinder symmetries L12, d3 with the parameter ring.
inline Generators cylinder_killing(const Ring& r) {
    auto z = C(r, 0);
    return make_generators(r, {"d3", "L12"}, {VectorField::partial(r, 2), VF(r, {-X(r, 2), X(r, 1), z})});
}


// exp(i nu d3 (x) L12) on the cylinder ring.
inline StarContext cylinder_context(const Ring& r, int order) {
    auto g = cylinder_killing(r);
    return StarContext(build_twist(g, abelian(g, "d3", "L12"), order));
}
// exp(H/2 (x) log(1 + i nu E)) on the hyperboloid ring.
inline StarContext hyperboloid_context(const Ring& r, int order) {
    auto g = hyperboloid_gens(r);
    return StarContext(build_twist(g, jordanian(g), order));
}
inline TwistedSubmanifold twisted_cylinder(const Ring& r, int order) {
    return TwistedSubmanifold(TwistedConnection(cylinder_context(r, order), Metric::euclidean(3)),
                              cylinder_embedding(r));
}
inline TwistedSubmanifold twisted_hyperboloid(const Ring& r, int order) {
    return TwistedSubmanifold(TwistedConnection(hyperboloid_context(r, order), light_cone_metric()),
                              hyperboloid_embedding(r));
}

}  // namespace tfh
