#include "twistfold/rational_function.hpp"

#include <algorithm>

namespace twistfold {

namespace {
// Scales d to leading coefficient one and returns the factor removed.
Scalar make_monic(FlatPoly& d) {
    Scalar lc = d.leading().second;
    d *= lc.inverse();
    return lc;
}

bool has_coords(const FlatPoly& p) {
    for (const auto& [m, c] : p.terms())
        if (m.coord_degree() > 0) return true;
    return false;
}

FlatPoly flat_pow(const FlatPoly& p, int e) {
    FlatPoly r(Scalar(1));
    for (int k = 0; k < e; ++k) r = r * p;
    return r;
}
}  // namespace

RationalFunction::RationalFunction(Polynomial num, const Polynomial& den) : num_(std::move(num)) {
    if (den.is_zero()) throw Error("zero denominator");
    if (!den.is_nu_free()) throw Error("denominator must be nu-free");
    add_factor(den.layer(0), 1);
    normalize();
}

void RationalFunction::add_factor(FlatPoly d, int e) {
    if (d.is_zero()) throw Error("zero denominator");
    if (e == 0) return;
    Scalar lc = make_monic(d);
    num_ *= pow(lc, e).inverse();
    if (d.is_constant()) return;
    for (auto& f : den_)
        if (f.first == d) {
            f.second += e;
            return;
        }
    den_.emplace_back(std::move(d), e);
    std::sort(den_.begin(), den_.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& f : den_) {
        while (f.second > 0) {
            auto q = num_.divide_exact(f.first);
            if (!q) break;
            num_ = std::move(*q);
            --f.second;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& f) { return f.second == 0; }),
               den_.end());
}

Polynomial RationalFunction::denominator() const {
    Polynomial d(num_.ring(), Scalar(1));
    for (const auto& [f, e] : den_)
        for (int k = 0; k < e; ++k) d = d * Polynomial(num_.ring(), f);
    return d;
}

Polynomial RationalFunction::lifted(const std::vector<Factor>& target) const {
    Polynomial n = num_;
    for (const auto& [f, e] : target) {
        int have = 0;
        for (const auto& [g, ge] : den_)
            if (g == f) have = ge;
        if (e > have) n = n * Polynomial(num_.ring(), flat_pow(f, e - have));
    }
    return n;
}

namespace {
std::vector<RationalFunction::Factor> merged(const std::vector<RationalFunction::Factor>& a,
                                             const std::vector<RationalFunction::Factor>& b, bool sum) {
    std::vector<RationalFunction::Factor> out = a;
    for (const auto& [f, e] : b) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& x) { return x.first == f; });
        if (it == out.end())
            out.emplace_back(f, e);
        else
            it->second = sum ? it->second + e : std::max(it->second, e);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}
}  // namespace

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (den_.empty() && o.den_.empty()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    auto common = merged(den_, o.den_, false);
    num_ = lifted(common) + o.lifted(common);
    den_ = std::move(common);
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    num_ = num_ * o.num_;
    if (!o.den_.empty()) {
        den_ = merged(den_, o.den_, true);
        normalize();
    } else if (!den_.empty()) {
        normalize();
    }
    return *this;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::scaled(const NuSeries& s) const {
    RationalFunction r = *this;
    r.num_ = num_.scaled(s);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
}

RationalFunction RationalFunction::divided_by(const RationalFunction& d) const {
    if (d.is_zero()) throw Error("division by zero");
    if (!d.num_.is_nu_free()) throw Error("division by a nu-dependent function is not supported");
    RationalFunction r = *this;
    for (const auto& [f, e] : d.den_) r.num_ = r.num_ * Polynomial(num_.ring(), flat_pow(f, e));
    r.add_factor(d.num_.layer(0), 1);
    r.normalize();
    return r;
}

RationalFunction RationalFunction::inverse() const {
    return RationalFunction(Polynomial(num_.ring(), Scalar(1))).divided_by(*this);
}

RationalFunction RationalFunction::partial(int i) const {
    if (den_.empty()) return RationalFunction(num_.partial(i));
    const Ring& ring = num_.ring();
    Polynomial all(ring, Scalar(1));
    for (const auto& [f, e] : den_) all = all * Polynomial(ring, f);
    Polynomial top = num_.partial(i) * all;
    for (size_t k = 0; k < den_.size(); ++k) {
        Polynomial others(ring, Scalar(1));
        for (size_t j = 0; j < den_.size(); ++j)
            if (j != k) others = others * Polynomial(ring, den_[j].first);
        FlatPoly df = den_[k].first.partial(i);
        if (df.is_zero()) continue;
        top -= num_ * Polynomial(ring, df) * others * Scalar(static_cast<long>(den_[k].second));
    }
    RationalFunction r;
    r.num_ = std::move(top);
    r.den_ = den_;
    for (auto& f : r.den_) ++f.second;
    r.normalize();
    return r;
}

RationalFunction RationalFunction::truncated(int cap) const {
    RationalFunction r = *this;
    r.num_ = num_.truncated(cap);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
}

RationalFunction RationalFunction::conj() const {
    RationalFunction r = *this;
    r.num_ = num_.conj();
    for (auto& f : r.den_) f.first = f.first.conj();
    return r;
}

bool RationalFunction::equals(const RationalFunction& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    auto common = merged(den_, o.den_, false);
    return lifted(common) == o.lifted(common);
}

RationalFunction RationalFunction::reduce_mod(const IdealReducer& ideal) const {
    if (ideal.empty()) return *this;
    RationalFunction r;
    r.num_ = ideal.reduce(num_);
    for (const auto& [f, e] : den_) {
        FlatPoly g = ideal.reduce(f);
        if (g.is_zero()) throw Error("denominator vanishes on the level set");
        r.add_factor(g, e);
    }
    r.num_ = ideal.reduce(r.num_);
    r.normalize();
    return r;
}

std::string RationalFunction::str(bool compact) const {
    if (den_.empty()) return num_.str(compact);
    std::string d;
    for (const auto& [f, e] : den_) {
        if (!d.empty()) d += "*";
        std::string fs = flat_str(f, *num_.ring(), compact);
        bool atom = f.size() == 1 && f.leading().second.is_one();
        if (!atom) fs = "(" + fs + ")";
        if (e > 1) fs += "^" + std::to_string(e);
        d += fs;
    }
    if (den_.size() > 1 || den_[0].second > 1) d = "(" + d + ")";
    std::string n = num_.str(compact);
    bool n_atom = n.find_first_of("+- ") == std::string::npos || (n[0] == '-' && n.find_first_of("+- ", 1) == std::string::npos);
    if (!n_atom) n = "(" + n + ")";
    return n + "/" + d;
}

// ----------------------------------------------------------- parameter value

namespace {
// Splits p into coordinate monomial -> parameter-only coefficient.
std::vector<std::pair<Monomial, FlatPoly>> split_coords(const FlatPoly& p) {
    std::vector<std::pair<Monomial, FlatPoly>> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial xm, pm;
        for (int i = 0; i < kMaxCoords; ++i) xm.e[i] = m.e[i];
        for (int i = kMaxCoords; i < kMaxCoords + kMaxParams; ++i) pm.e[i] = m.e[i];
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& x) { return x.first == xm; });
        if (it == out.end())
            out.emplace_back(xm, FlatPoly(pm, c));
        else
            it->second += FlatPoly(pm, c);
    }
    return out;
}

// Variable index of a univariate parameter polynomial, -1 if constant,
// -2 if it involves several parameters.
int single_param(const FlatPoly& p) {
    int v = -1;
    for (const auto& [m, c] : p.terms())
        for (int i = kMaxCoords; i < kMaxCoords + kMaxParams; ++i)
            if (m.e[i]) {
                if (v >= 0 && v != i) return -2;
                v = i;
            }
    return v;
}

FlatPoly univariate_gcd(FlatPoly a, FlatPoly b) {
    while (!b.is_zero()) {
        FlatPoly r = a;
        const auto& [mb, cb] = b.leading();
        while (!r.is_zero() && mb.divides(r.leading().first)) {
            auto lt = r.leading();
            r -= b.mul_monomial(lt.first / mb, lt.second / cb);
        }
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a *= a.leading().second.inverse();
    return a;
}
}  // namespace

std::optional<RationalFunction> parameter_value(const RationalFunction& r, const IdealReducer& ideal) {
    const Ring& ring = r.ring();
    RationalFunction red = r.reduce_mod(ideal);
    if (!red.numerator().is_nu_free()) return std::nullopt;
    FlatPoly n = red.numerator().layer(0);
    FlatPoly d = red.denominator().layer(0);
    FlatPoly num, den;
    if (!has_coords(d)) {
        if (has_coords(n)) return std::nullopt;
        num = n;
        den = d;
    } else {
        auto dparts = split_coords(d);
        auto nparts = split_coords(n);
        const auto& [mu, dmu] = dparts.front();
        FlatPoly nmu;
        for (const auto& [m, c] : nparts)
            if (m == mu) nmu = c;
        FlatPoly check = ideal.reduce(n * dmu - nmu * d);
        if (!check.is_zero()) return std::nullopt;
        num = nmu;
        den = dmu;
    }
    if (num.is_zero()) return RationalFunction(Polynomial(ring));
    int vn = single_param(num), vd = single_param(den);
    if (vn != -2 && vd != -2 && (vn == vd || vn == -1 || vd == -1)) {
        FlatPoly g = univariate_gcd(num, den);
        if (!g.is_constant()) {
            num = *num.divide_exact(g);
            den = *den.divide_exact(g);
        }
    }
    return RationalFunction(Polynomial(ring, num), Polynomial(ring, den));
}

}  // namespace twistfold
