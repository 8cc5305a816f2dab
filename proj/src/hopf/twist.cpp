#include <algorithm>
#include <functional>
#include <set>

#include "twistfold/hopf.hpp"

namespace twistfold {

namespace {

// sum_{k=0}^{cap} X^k / k!, X of positive nu-valuation.
MultiLeg exponential(const MultiLeg& X, int cap) {
    MultiLeg out = MultiLeg::identity(X.generators(), X.legs(), cap);
    MultiLeg power = out;
    for (int k = 1; k <= cap; ++k) {
        power = (power * X).scaled(NuSeries(Scalar::frac(1, k), cap));
        if (power.is_zero()) break;
        out += power;
    }
    return out;
}

}  // namespace

TwistData build_twist(const Generators& gens, const TwistSpec& spec, int order) {
    if (order < 0) throw Error("twist order must be non-negative");
    if (!gens) throw Error("twist needs a generator set");
    TwistData t;
    t.gens_ = gens;
    t.spec_ = spec;
    t.order_ = order;
    int N = order;
    auto gen = [&](int i) { return UElement::generator(gens, i, N); };
    switch (spec.family) {
        case TwistFamily::identity:
            t.F_ = t.Fbar_ = MultiLeg::identity(gens, 2, N);
            break;
        case TwistFamily::abelian: {
            if (spec.pairs.empty()) throw Error("abelian twist needs at least one generator pair");
            std::vector<int> all;
            for (auto [a, b] : spec.pairs) {
                if (a < 0 || b < 0 || a >= gens->size() || b >= gens->size())
                    throw Error("abelian twist generator out of range");
                all.push_back(a);
                all.push_back(b);
            }
            for (int a : all)
                for (int b : all)
                    if (!gens->commute(a, b))
                        throw Error("abelian twist legs " + gens->name(a) + " and " + gens->name(b) + " do not commute");
            MultiLeg P(gens, 2, N);
            for (auto [a, b] : spec.pairs) P += MultiLeg::pure({gen(a), gen(b)});
            t.F_ = exponential(P.scaled(NuSeries::monomial(Scalar::i(), 1, N)), N);
            t.Fbar_ = exponential(P.scaled(NuSeries::monomial(-Scalar::i(), 1, N)), N);
            break;
        }
        case TwistFamily::jordanian: {
            int h = spec.h, e = spec.e;
            if (h < 0 || e < 0 || h >= gens->size() || e >= gens->size())
                throw Error("jordanian twist generator out of range");
            const auto& he = gens->bracket(h, e);
            if (he.size() != 1 || he[0].first != e || he[0].second != Scalar(2))
                throw Error("jordanian twist needs [" + gens->name(h) + ", " + gens->name(e) + "] = 2 " + gens->name(e));
            // log(1 + i nu E) = sum_k (-1)^{k+1} (i nu E)^k / k
            UElement log_leg(gens, N);
            UElement epow = UElement::one(gens, N);
            for (int k = 1; k <= N; ++k) {
                epow = epow * gen(e);
                Scalar c = pow(Scalar::i(), static_cast<unsigned>(k)) * Scalar::frac(k % 2 ? 1 : -1, k);
                log_leg += epow.scaled(NuSeries::monomial(c, k, N));
            }
            MultiLeg X = MultiLeg::pure({gen(h), log_leg}).scaled(NuSeries(Scalar::frac(1, 2), N));
            t.F_ = exponential(X, N);
            t.Fbar_ = exponential(-X, N);
            break;
        }
    }
    MultiLeg unit = MultiLeg::identity(gens, 2, N);
    if (t.F_ * t.Fbar_ != unit || t.Fbar_ * t.F_ != unit) throw Error("twist inverse verification failed");
    t.R_ = t.F_.flipped() * t.Fbar_;
    t.Rbar_ = t.F_ * t.Fbar_.flipped();
    t.beta_ = t.F_.antipode_on(1).multiply_legs();
    t.beta_inv_ = t.Fbar_.antipode_on(0).multiply_legs();
    return t;
}

MultiLeg TwistData::iterated(int n) const {
    if (n < 1) throw Error("iterated twist needs n >= 1");
    if (n == 1) return MultiLeg::identity(gens_, 1, order_);
    MultiLeg Fn = F_;
    for (int k = 2; k < n; ++k) {
        MultiLeg left = F_;
        for (int j = 0; j < k - 1; ++j) left = left.insert_unit(0);
        Fn = left * Fn.coproduct_on(k - 1);
    }
    return Fn;
}

std::vector<int> TwistData::left_nilpotent() const {
    std::vector<int> out;
    if (spec_.family == TwistFamily::abelian)
        for (auto [a, b] : spec_.pairs) out.push_back(a);
    return out;
}

std::vector<int> TwistData::right_nilpotent() const {
    std::vector<int> out;
    if (spec_.family == TwistFamily::abelian)
        for (auto [a, b] : spec_.pairs) out.push_back(b);
    if (spec_.family == TwistFamily::jordanian) out.push_back(spec_.e);
    return out;
}

std::string TwistData::family_name() const {
    switch (spec_.family) {
        case TwistFamily::identity: return "identity";
        case TwistFamily::abelian: return "abelian";
        case TwistFamily::jordanian: return "jordanian";
    }
    return "";
}

TwistAxiomReport check_twist_axioms(const TwistData& t) {
    TwistAxiomReport r;
    const auto& g = t.generators();
    int N = t.order();
    UElement one = UElement::one(g, N);
    r.counital_left = t.F().counit_on(0).leg_element(0) == one;
    r.counital_right = t.F().counit_on(1).leg_element(0) == one;
    MultiLeg unit2 = MultiLeg::identity(g, 2, N);
    r.inverse_ok = t.F() * t.Fbar() == unit2 && t.Fbar() * t.F() == unit2;
    r.cocycle_lhs = t.F().insert_unit(2) * t.F().coproduct_on(0);
    r.cocycle_rhs = t.F().insert_unit(0) * t.F().coproduct_on(1);
    r.cocycle_algebraic = r.cocycle_lhs == r.cocycle_rhs;
    r.r_inverse_ok = t.R() * t.Rbar() == unit2 && t.Rbar() == t.R().flipped();
    r.beta_inverse_ok = t.beta() * t.beta_inverse() == one && t.beta_inverse() * t.beta() == one;
    return r;
}

// ---------------------------------------------------------- tensor evaluation

Ring tensor_ring(const Ring& base, int copies) {
    if (base->dim() * copies > kMaxCoords) throw Error("too many coordinates for a tensor evaluation ring");
    std::vector<std::string> names;
    for (int c = 0; c < copies; ++c)
        for (const auto& n : base->coords) names.push_back(c == 0 ? n : n + "_" + std::to_string(c + 1));
    return make_ring(base->id + "^" + std::to_string(copies), names, base->params);
}

Polynomial embed_copy(const Polynomial& p, const Ring& big, int copy) {
    int n = p.ring()->dim();
    Polynomial out(big);
    for (int k = 0; k <= p.nu_degree(); ++k) {
        std::vector<FlatPoly::Term> terms;
        for (const auto& [m, c] : p.layer(k).terms()) {
            Monomial m2;
            for (int i = 0; i < n; ++i) m2.e[copy * n + i] = m.e[i];
            for (int j = 0; j < kMaxParams; ++j) m2.e[kMaxCoords + j] = m.e[kMaxCoords + j];
            terms.emplace_back(m2, c);
        }
        out.set_layer(k, FlatPoly::from_terms(std::move(terms)));
    }
    out = out.truncated(p.order_cap());
    return p.exact() ? out : out.with_inexact();
}

Polynomial act_on_tensor(const MultiLeg& m, const std::vector<Polynomial>& factors, const Ring& big) {
    if (static_cast<int>(factors.size()) != m.legs()) throw Error("tensor arity mismatch");
    std::vector<WordAction<Polynomial>> acts;
    for (const auto& f : factors) acts.emplace_back(m.generators(), f);
    std::vector<std::map<Word, Polynomial>> embedded(factors.size());
    Polynomial out(big);
    for (const auto& [k, c] : m.terms()) {
        Polynomial prod(big, Scalar(1));
        bool zero = false;
        for (int l = 0; l < m.legs() && !zero; ++l) {
            auto it = embedded[l].find(k[l]);
            if (it == embedded[l].end()) it = embedded[l].emplace(k[l], embed_copy(acts[l](k[l]), big, l)).first;
            if (it->second.is_zero()) zero = true;
            else prod = prod * it->second;
        }
        if (!zero) out += prod.scaled(c);
    }
    return out;
}

namespace {

std::vector<Polynomial> monomials_up_to(const Ring& ring, int max_degree) {
    std::vector<Polynomial> out;
    int n = ring->dim();
    std::vector<int> e(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            Monomial m;
            for (int j = 0; j < n; ++j) m.e[j] = static_cast<uint8_t>(e[j]);
            out.emplace_back(ring, FlatPoly(m, Scalar(1)));
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(0, max_degree);
    return out;
}

}  // namespace

TripleCheck evaluate_on_triples(const MultiLeg& lhs, const MultiLeg& rhs, int max_degree) {
    if (lhs.legs() != 3 || rhs.legs() != 3) throw Error("triple evaluation needs three-leg sums");
    const Ring& base = lhs.generators()->ring();
    Ring big = tensor_ring(base, 3);
    auto monos = monomials_up_to(base, max_degree);
    // per monomial, per leg: embedded action of each word
    std::vector<std::array<std::map<Word, Polynomial>, 3>> cache(monos.size());
    std::vector<WordAction<Polynomial>> acts;
    for (const auto& m : monos) acts.emplace_back(lhs.generators(), m);
    auto image = [&](size_t mi, int leg, const Word& w) -> const Polynomial& {
        auto& slot = cache[mi][leg];
        auto it = slot.find(w);
        if (it == slot.end()) it = slot.emplace(w, embed_copy(acts[mi](w), big, leg)).first;
        return it->second;
    };
    auto side = [&](const MultiLeg& m, size_t a, size_t b, size_t c) {
        Polynomial out(big);
        for (const auto& [k, coef] : m.terms()) {
            const Polynomial& pa = image(a, 0, k[0]);
            if (pa.is_zero()) continue;
            const Polynomial& pb = image(b, 1, k[1]);
            if (pb.is_zero()) continue;
            const Polynomial& pc = image(c, 2, k[2]);
            if (pc.is_zero()) continue;
            out += (pa * pb * pc).scaled(coef);
        }
        return out;
    };
    TripleCheck r;
    for (size_t a = 0; a < monos.size(); ++a)
        for (size_t b = 0; b < monos.size(); ++b)
            for (size_t c = 0; c < monos.size(); ++c) {
                ++r.triples;
                Polynomial d = side(lhs, a, b, c) - side(rhs, a, b, c);
                if (!d.is_zero()) {
                    if (r.failures == 0)
                        r.first_failure = monos[a].str() + " (x) " + monos[b].str() + " (x) " + monos[c].str() +
                                          ": " + d.str();
                    ++r.failures;
                }
            }
    return r;
}

// -------------------------------------------------------------- *-structures

StarReport check_star(const TwistData& t) {
    StarReport r;
    MultiLeg s = t.F().star_all();
    r.unitary = s == t.Fbar();
    r.real = s == t.F().flipped().antipode_on(0).antipode_on(1);
    return r;
}

UElement D_map(const TwistData& t, const UElement& u) {
    UElement out(t.generators(), t.order());
    for (const auto& [k, c] : t.Fbar().terms()) {
        UElement w1(t.generators(), t.order()), w2(t.generators(), t.order());
        w1.add_term(k[0], NuSeries(Scalar(1)));
        w2.add_term(k[1], NuSeries(Scalar(1)));
        out += (w1.adjoint(u) * w2).scaled(c);
    }
    return out;
}

UElement D_map_conjugation(const TwistData& t, const UElement& u) {
    UElement out(t.generators(), t.order());
    for (const auto& [k, c] : t.F().terms()) {
        UElement w1(t.generators(), t.order()), w2(t.generators(), t.order());
        w1.add_term(k[0], NuSeries(Scalar(1)));
        w2.add_term(k[1], NuSeries(Scalar(1)));
        out += (w1 * u * w2.antipode()).scaled(c);
    }
    return out * t.beta_inverse();
}

UElement D_inverse(const TwistData& t, const UElement& u) {
    UElement out(t.generators(), t.order());
    UElement ub = u * t.beta();
    for (const auto& [k, c] : t.Fbar().terms()) {
        UElement w1(t.generators(), t.order()), w2(t.generators(), t.order());
        w1.add_term(k[0], NuSeries(Scalar(1)));
        w2.add_term(k[1], NuSeries(Scalar(1)));
        out += (w1 * ub * w2.antipode()).scaled(c);
    }
    return out;
}

UElement star_product(const TwistData& t, const UElement& u, const UElement& v) {
    UElement out(t.generators(), t.order());
    std::map<Word, UElement> left, right;
    for (const auto& [k, c] : t.Fbar().terms()) {
        auto li = left.find(k[0]);
        if (li == left.end()) {
            UElement w(t.generators(), t.order());
            w.add_term(k[0], NuSeries(Scalar(1)));
            li = left.emplace(k[0], w.adjoint(u)).first;
        }
        auto ri = right.find(k[1]);
        if (ri == right.end()) {
            UElement w(t.generators(), t.order());
            w.add_term(k[1], NuSeries(Scalar(1)));
            ri = right.emplace(k[1], w.adjoint(v)).first;
        }
        out += (li->second * ri->second).scaled(c);
    }
    return out;
}

UElement twisted_antipode(const TwistData& t, const UElement& u) {
    return t.beta() * u.antipode() * t.beta_inverse();
}

UElement twisted_star(const TwistData& t, const UElement& u) { return t.beta() * u.star() * t.beta_inverse(); }

}  // namespace twistfold
