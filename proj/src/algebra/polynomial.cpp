#include "twistfold/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "twistfold/linear_algebra.hpp"

namespace twistfold {

int Monomial::coord_degree() const {
    int d = 0;
    for (int i = 0; i < kMaxCoords; ++i) d += e[i];
    return d;
}

int Monomial::param_degree() const {
    int d = 0;
    for (int i = kMaxCoords; i < kMaxCoords + kMaxParams; ++i) d += e[i];
    return d;
}

bool Monomial::is_one() const {
    for (auto v : e)
        if (v) return false;
    return true;
}

bool Monomial::divides(const Monomial& o) const {
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    for (size_t i = 0; i < e.size(); ++i) {
        int s = e[i] + o.e[i];
        if (s > 255) throw Error("monomial exponent overflow");
        r.e[i] = static_cast<uint8_t>(s);
    }
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = static_cast<uint8_t>(e[i] - o.e[i]);
    return r;
}

size_t Monomial::hash() const {
    size_t h = 1469598103934665603ull;
    for (auto v : e) h = (h ^ v) * 1099511628211ull;
    return h;
}

bool term_greater(const Monomial& a, const Monomial& b) {
    int da = a.coord_degree(), db = b.coord_degree();
    if (da != db) return da > db;
    for (int i = 0; i < kMaxCoords; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    da = a.param_degree();
    db = b.param_degree();
    if (da != db) return da > db;
    for (int i = kMaxCoords; i < kMaxCoords + kMaxParams; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
}

Ring make_ring(std::string id, std::vector<std::string> coords, std::vector<std::string> params) {
    if (coords.size() > static_cast<size_t>(kMaxCoords)) throw Error("too many coordinates");
    if (params.size() > static_cast<size_t>(kMaxParams)) throw Error("too many parameters");
    return std::make_shared<const CoordinateSystem>(
        CoordinateSystem{std::move(id), std::move(coords), std::move(params)});
}

Ring standard_ring(int n, std::vector<std::string> params, const std::string& prefix) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
    std::string id = prefix + std::to_string(n);
    for (const auto& p : params) id += ";" + p;
    return make_ring(id, std::move(names), std::move(params));
}

// ---------------------------------------------------------------- FlatPoly

namespace {
bool term_less_desc(const FlatPoly::Term& a, const FlatPoly::Term& b) {
    return term_greater(a.first, b.first);
}
}  // namespace

FlatPoly::FlatPoly(Scalar c) {
    if (!c.is_zero()) terms_.emplace_back(Monomial{}, std::move(c));
}

FlatPoly::FlatPoly(Monomial m, Scalar c) {
    if (!c.is_zero()) terms_.emplace_back(m, std::move(c));
}

FlatPoly FlatPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_less_desc);
    FlatPoly r;
    for (auto& t : terms) {
        if (!r.terms_.empty() && r.terms_.back().first == t.first)
            r.terms_.back().second += t.second;
        else {
            if (!r.terms_.empty() && r.terms_.back().second.is_zero()) r.terms_.pop_back();
            r.terms_.push_back(std::move(t));
        }
    }
    if (!r.terms_.empty() && r.terms_.back().second.is_zero()) r.terms_.pop_back();
    return r;
}

bool FlatPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

Scalar FlatPoly::constant_term() const {
    if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
    return Scalar();
}

Scalar FlatPoly::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return term_greater(t.first, k); });
    if (it != terms_.end() && it->first == m) return it->second;
    return Scalar();
}

int FlatPoly::coord_degree() const {
    return terms_.empty() ? -1 : terms_.front().first.coord_degree();
}

namespace {
template <bool Subtract>
std::vector<FlatPoly::Term> merge(const std::vector<FlatPoly::Term>& a, const std::vector<FlatPoly::Term>& b) {
    std::vector<FlatPoly::Term> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && term_greater(a[i].first, b[j].first))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || term_greater(b[j].first, a[i].first)) {
            out.emplace_back(b[j].first, Subtract ? -b[j].second : b[j].second);
            ++j;
        } else {
            Scalar s = Subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
            if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}
}  // namespace

FlatPoly& FlatPoly::operator+=(const FlatPoly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge<false>(terms_, o.terms_);
    return *this;
}

FlatPoly& FlatPoly::operator-=(const FlatPoly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge<true>(terms_, o.terms_);
    return *this;
}

FlatPoly& FlatPoly::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    if (s.is_one()) return *this;
    for (auto& t : terms_) t.second *= s;
    return *this;
}

FlatPoly operator*(const FlatPoly& a, const FlatPoly& b) {
    if (a.terms_.empty() || b.terms_.empty()) return FlatPoly();
    if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].first, a.terms_[0].second);
    if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].first, b.terms_[0].second);
    std::unordered_map<Monomial, Scalar, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            auto [it, fresh] = acc.try_emplace(ma * mb, ca);
            if (fresh)
                it->second *= cb;
            else
                it->second += ca * cb;
        }
    FlatPoly r;
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) r.terms_.emplace_back(m, std::move(c));
    std::sort(r.terms_.begin(), r.terms_.end(), term_less_desc);
    return r;
}

FlatPoly FlatPoly::operator-() const {
    FlatPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

FlatPoly FlatPoly::mul_monomial(const Monomial& m, const Scalar& c) const {
    FlatPoly r;
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [mm, cc] : terms_) r.terms_.emplace_back(mm * m, cc * c);
    return r;  // multiplication by a monomial preserves the term order
}

FlatPoly FlatPoly::partial(int i) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
        if (m.e[i] == 0) continue;
        Monomial d = m;
        d.e[i] -= 1;
        out.emplace_back(d, c * Scalar(static_cast<long>(m.e[i])));
    }
    return from_terms(std::move(out));
}

FlatPoly FlatPoly::conj() const {
    FlatPoly r = *this;
    for (auto& t : r.terms_) t.second = t.second.conj();
    return r;
}

std::optional<FlatPoly> FlatPoly::divide_exact(const FlatPoly& d) const {
    if (d.is_zero()) throw Error("division by zero polynomial");
    if (terms_.empty()) return FlatPoly();
    const auto& [ld, cd] = d.leading();
    Scalar inv = cd.inverse();
    FlatPoly rem = *this, quot;
    while (!rem.is_zero()) {
        const auto& [lr, cr] = rem.leading();
        if (!ld.divides(lr)) return std::nullopt;
        Monomial q = lr / ld;
        Scalar c = cr * inv;
        quot += FlatPoly(q, c);
        rem -= d.mul_monomial(q, c);
    }
    return quot;
}

bool operator<(const FlatPoly& a, const FlatPoly& b) {
    size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t k = 0; k < n; ++k) {
        if (a.terms_[k].first != b.terms_[k].first) return term_greater(b.terms_[k].first, a.terms_[k].first);
        if (a.terms_[k].second != b.terms_[k].second) return a.terms_[k].second < b.terms_[k].second;
    }
    return a.terms_.size() < b.terms_.size();
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(Ring ring, Scalar c) : ring_(std::move(ring)) {
    if (!c.is_zero()) layers_.emplace_back(std::move(c));
}

Polynomial::Polynomial(Ring ring, FlatPoly p, int nu_power, int cap) : ring_(std::move(ring)), cap_(cap) {
    if (nu_power > cap) {
        exact_ = p.is_zero();
        return;
    }
    if (p.is_zero()) return;
    layers_.resize(nu_power + 1);
    layers_[nu_power] = std::move(p);
}

Polynomial Polynomial::coord(Ring ring, int i) {
    if (i < 0 || i >= ring->dim()) throw Error("coordinate index out of range");
    return Polynomial(std::move(ring), FlatPoly(Monomial::coord(i), Scalar(1)));
}

Polynomial Polynomial::param(Ring ring, int j) {
    if (j < 0 || j >= static_cast<int>(ring->params.size())) throw Error("parameter index out of range");
    return Polynomial(std::move(ring), FlatPoly(Monomial::param(j), Scalar(1)));
}

Polynomial Polynomial::nu(Ring ring, int cap, int power) {
    return Polynomial(std::move(ring), FlatPoly(Scalar(1)), power, cap);
}

void Polynomial::check_ring(const Polynomial& o) const {
    if (ring_ && o.ring_ && ring_ != o.ring_ && ring_->id != o.ring_->id)
        throw Error("coordinate-system mismatch: " + ring_->id + " vs " + o.ring_->id);
}

void Polynomial::trim() {
    while (!layers_.empty() && layers_.back().is_zero()) layers_.pop_back();
}

void Polynomial::clip(int cap) {
    cap_ = std::min(cap_, cap);
    if (static_cast<int>(layers_.size()) > cap_ + 1) {
        for (size_t k = cap_ + 1; k < layers_.size(); ++k)
            if (!layers_[k].is_zero()) exact_ = false;
        layers_.resize(cap_ + 1);
        trim();
    }
}

Polynomial Polynomial::truncated(int cap) const {
    Polynomial r = *this;
    r.clip(cap);
    return r;
}

bool Polynomial::is_constant() const {
    for (const auto& l : layers_)
        if (!l.is_constant()) return false;
    return true;
}

const FlatPoly& Polynomial::layer(int k) const {
    static const FlatPoly empty;
    if (k < 0 || k >= static_cast<int>(layers_.size())) return empty;
    return layers_[k];
}

NuSeries Polynomial::constant_series() const { return coefficient(Monomial{}); }

NuSeries Polynomial::coefficient(const Monomial& m) const {
    NuSeries s;
    for (size_t k = 0; k < layers_.size(); ++k) s += NuSeries::monomial(layers_[k].coefficient(m), static_cast<int>(k));
    return s.truncated(cap_);
}

int Polynomial::coord_degree() const {
    int d = -1;
    for (const auto& l : layers_) d = std::max(d, l.coord_degree());
    return d;
}

void Polynomial::set_layer(int k, FlatPoly p) {
    if (k > cap_) {
        if (!p.is_zero()) exact_ = false;
        return;
    }
    if (static_cast<int>(layers_.size()) <= k) layers_.resize(k + 1);
    layers_[k] = std::move(p);
    trim();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_ring(o);
    if (!ring_) ring_ = o.ring_;
    exact_ = exact_ && o.exact_;
    if (o.layers_.size() > layers_.size()) layers_.resize(o.layers_.size());
    for (size_t k = 0; k < o.layers_.size(); ++k) layers_[k] += o.layers_[k];
    trim();
    clip(o.cap_);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_ring(o);
    if (!ring_) ring_ = o.ring_;
    exact_ = exact_ && o.exact_;
    if (o.layers_.size() > layers_.size()) layers_.resize(o.layers_.size());
    for (size_t k = 0; k < o.layers_.size(); ++k) layers_[k] -= o.layers_[k];
    trim();
    clip(o.cap_);
    return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& s) {
    for (auto& l : layers_) l *= s;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    Polynomial r(a.ring_ ? a.ring_ : b.ring_);
    r.cap_ = std::min(a.cap_, b.cap_);
    r.exact_ = a.exact_ && b.exact_;
    if (a.layers_.empty() || b.layers_.empty()) return r;
    size_t full = a.layers_.size() + b.layers_.size() - 1;
    r.layers_.resize(std::min<size_t>(full, static_cast<size_t>(r.cap_) + 1));
    for (size_t i = 0; i < a.layers_.size(); ++i) {
        if (a.layers_[i].is_zero()) continue;
        for (size_t j = 0; j < b.layers_.size(); ++j) {
            if (b.layers_[j].is_zero()) continue;
            if (static_cast<int>(i + j) > r.cap_) {
                r.exact_ = false;  // dropped contribution, not evaluated
                continue;
            }
            r.layers_[i + j] += a.layers_[i] * b.layers_[j];
        }
    }
    r.trim();
    r.clip(r.cap_);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& l : r.layers_) l = -l;
    return r;
}

Polynomial Polynomial::scaled(const NuSeries& s) const {
    Polynomial r(ring_);
    r.cap_ = std::min(cap_, s.order_cap());
    r.exact_ = exact_ && s.exact();
    if (layers_.empty() || s.is_zero()) return r;
    r.layers_.resize(std::min<size_t>(layers_.size() + s.coeffs().size() - 1, static_cast<size_t>(r.cap_) + 1));
    for (size_t i = 0; i < layers_.size(); ++i) {
        if (layers_[i].is_zero()) continue;
        for (size_t j = 0; j < s.coeffs().size(); ++j) {
            if (s.coeffs()[j].is_zero()) continue;
            if (static_cast<int>(i + j) > r.cap_) {
                r.exact_ = false;
                continue;
            }
            r.layers_[i + j] += layers_[i] * s.coeffs()[j];
        }
    }
    r.trim();
    r.clip(r.cap_);
    return r;
}

Polynomial Polynomial::partial(int i) const {
    if (ring_ && (i < 0 || i >= ring_->dim())) throw Error("partial derivative index out of range");
    return map_layers([i](const FlatPoly& l) { return l.partial(i); });
}

Polynomial Polynomial::conj() const {
    return map_layers([](const FlatPoly& l) { return l.conj(); });
}

std::optional<Polynomial> Polynomial::divide_exact(const FlatPoly& d) const {
    Polynomial r(ring_);
    r.cap_ = cap_;
    r.exact_ = exact_;
    for (const auto& l : layers_) {
        auto q = l.divide_exact(d);
        if (!q) return std::nullopt;
        r.layers_.push_back(std::move(*q));
    }
    r.trim();
    return r;
}

Polynomial Polynomial::substitute(const Ring& target, const std::vector<Polynomial>& images) const {
    if (static_cast<int>(images.size()) != ring_->dim()) throw Error("substitution arity mismatch");
    std::vector<int> param_map;
    for (const auto& p : ring_->params) {
        auto it = std::find(target->params.begin(), target->params.end(), p);
        if (it == target->params.end()) throw Error("parameter " + p + " missing in target coordinates");
        param_map.push_back(static_cast<int>(it - target->params.begin()));
    }
    Polynomial out(target);
    out.cap_ = cap_;
    for (size_t k = 0; k < layers_.size(); ++k) {
        for (const auto& [m, c] : layers_[k].terms()) {
            Monomial pm;
            for (size_t j = 0; j < param_map.size(); ++j) pm.e[kMaxCoords + param_map[j]] = m.e[kMaxCoords + j];
            Polynomial term(target, FlatPoly(pm, c), static_cast<int>(k), cap_);
            for (int i = 0; i < ring_->dim(); ++i)
                for (int p = 0; p < m.e[i]; ++p) term = term * images[i];
            out += term;
        }
    }
    out.exact_ = out.exact_ && exact_;
    return out;
}

// ---------------------------------------------------------------- printing

std::string monomial_str(const Monomial& m, const CoordinateSystem& cs) {
    std::string out;
    auto add = [&](const std::string& name, int e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (e > 1) out += "^" + std::to_string(e);
    };
    for (int i = 0; i < cs.dim(); ++i) add(cs.coords[i], m.e[i]);
    for (size_t j = 0; j < cs.params.size(); ++j) add(cs.params[j], m.e[kMaxCoords + j]);
    return out;
}

namespace {
std::string term_str(const Scalar& c, const std::string& factor) {
    if (factor.empty()) return c.str();
    if (c.is_one()) return factor;
    if (c == Scalar(-1)) return "-" + factor;
    return c.str() + "*" + factor;
}

void append_term(std::string& out, const std::string& t, bool compact) {
    if (out.empty())
        out = t;
    else if (t[0] == '-')
        out += (compact ? "-" : " - ") + t.substr(1);
    else
        out += (compact ? "+" : " + ") + t;
}
}  // namespace

std::string flat_str(const FlatPoly& p, const CoordinateSystem& cs, bool compact) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) append_term(out, term_str(c, monomial_str(m, cs)), compact);
    return out;
}

std::string Polynomial::str(bool compact) const {
    if (layers_.empty()) return "0";
    static const CoordinateSystem empty_cs;
    const CoordinateSystem& cs = ring_ ? *ring_ : empty_cs;
    std::string out;
    for (size_t k = 0; k < layers_.size(); ++k) {
        std::string nu = k == 0 ? "" : (k == 1 ? "nu" : "nu^" + std::to_string(k));
        for (const auto& [m, c] : layers_[k].terms()) {
            std::string mono = monomial_str(m, cs);
            std::string factor = nu.empty() ? mono : (mono.empty() ? nu : nu + "*" + mono);
            append_term(out, term_str(c, factor), compact);
        }
    }
    return out;
}

// ------------------------------------------------------------ linear change

LinearChange linear_change(const Ring& source, const std::string& target_id,
                           const std::vector<std::string>& target_names,
                           const std::vector<std::vector<Scalar>>& matrix, const std::vector<Scalar>& shift) {
    int n = source->dim();
    if (static_cast<int>(matrix.size()) != n || static_cast<int>(target_names.size()) != n)
        throw Error("substitution matrix must be square of the coordinate dimension");
    std::vector<Scalar> b = shift.empty() ? std::vector<Scalar>(n) : shift;
    auto inv = invert(matrix);
    if (!inv) throw Error("non-invertible substitution matrix");
    LinearChange lc;
    lc.source = source;
    lc.target = make_ring(target_id, target_names, source->params);
    lc.matrix = matrix;
    lc.shift = b;
    for (int i = 0; i < n; ++i) {
        Polynomial y(source, b[i]);
        for (int j = 0; j < n; ++j) y += Polynomial::coord(source, j) * matrix[i][j];
        lc.y_in_x.push_back(y);
    }
    // x = A^{-1}(y - b)
    for (int j = 0; j < n; ++j) {
        Polynomial x(lc.target);
        for (int i = 0; i < n; ++i) {
            x += Polynomial::coord(lc.target, i) * (*inv)[j][i];
            x -= Polynomial(lc.target, (*inv)[j][i] * b[i]);
        }
        lc.x_in_y.push_back(x);
    }
    return lc;
}

}  // namespace twistfold
