#include "twistfold/ideal.hpp"

namespace twistfold {

namespace {
Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}
}  // namespace

IdealReducer::IdealReducer(std::vector<Polynomial> generators) : gens_(std::move(generators)) {
    for (const auto& g : gens_) {
        if (!g.is_nu_free()) throw Error("ideal generators must be nu-free");
        if (g.is_zero()) throw Error("zero ideal generator");
        if (g.is_constant()) throw Error("constant ideal generator");
        flat_.push_back(g.layer(0));
    }
    for (size_t a = 0; a < flat_.size() && complete_; ++a)
        for (size_t b = a + 1; b < flat_.size() && complete_; ++b) {
            const auto& [ma, ca] = flat_[a].leading();
            const auto& [mb, cb] = flat_[b].leading();
            if (coprime(ma, mb)) continue;
            Monomial l = lcm(ma, mb);
            FlatPoly s = flat_[a].mul_monomial(l / ma, ca.inverse()) - flat_[b].mul_monomial(l / mb, cb.inverse());
            if (!reduce_unchecked(s).is_zero()) {
                complete_ = false;
                diagnostic_ = "reduction incomplete: generators " + std::to_string(a + 1) + " and " +
                              std::to_string(b + 1) + " are not self-reduced";
            }
        }
}

FlatPoly IdealReducer::reduce_unchecked(const FlatPoly& p) const {
    FlatPoly rem = p, out;
    while (!rem.is_zero()) {
        auto lt = rem.leading();
        bool hit = false;
        for (const auto& g : flat_) {
            const auto& [mg, cg] = g.leading();
            if (!mg.divides(lt.first)) continue;
            rem -= g.mul_monomial(lt.first / mg, lt.second / cg);
            hit = true;
            break;
        }
        if (!hit) {
            FlatPoly t(lt.first, lt.second);
            out += t;
            rem -= t;
        }
    }
    return out;
}

FlatPoly IdealReducer::reduce(const FlatPoly& p) const {
    if (!complete_) throw Error(diagnostic_);
    return reduce_unchecked(p);
}

Polynomial IdealReducer::reduce(const Polynomial& p) const {
    if (!complete_) throw Error(diagnostic_);
    return p.map_layers([this](const FlatPoly& l) { return reduce_unchecked(l); });
}

Polynomial ideal_reduce(const Polynomial& p, const std::vector<Polynomial>& f) {
    return IdealReducer(f).reduce(p);
}

}  // namespace twistfold
