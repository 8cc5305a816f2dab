#include <algorithm>

#include "twistfold/cartan.hpp"
#include "twistfold/format.hpp"

namespace twistfold {

// ------------------------------------------------------------ VectorField

VectorField::VectorField(Ring ring) : ring_(std::move(ring)) {
    comps_.assign(ring_->dim(), Function(Polynomial(ring_)));
}

VectorField::VectorField(Ring ring, std::vector<Function> comps) : ring_(std::move(ring)), comps_(std::move(comps)) {
    if (static_cast<int>(comps_.size()) != ring_->dim()) throw Error("vector field dimension mismatch");
}

VectorField VectorField::partial(const Ring& ring, int i) {
    VectorField X(ring);
    X.comps_[i] = Function(Polynomial(ring, Scalar(1)));
    return X;
}

VectorField VectorField::from_polys(const Ring& ring, const std::vector<Polynomial>& comps) {
    std::vector<Function> c(comps.begin(), comps.end());
    return VectorField(ring, std::move(c));
}

bool VectorField::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Function& f) { return f.is_zero(); });
}

bool VectorField::is_polynomial() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Function& f) { return f.is_polynomial(); });
}

bool VectorField::exact() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Function& f) { return f.exact(); });
}

Function VectorField::apply(const Function& h) const {
    if (h.is_polynomial() && is_polynomial()) return Function(apply(h.numerator()));
    Function out{Polynomial(ring_)};
    for (int i = 0; i < dim(); ++i) {
        if (comps_[i].is_zero()) continue;
        out += comps_[i] * h.partial(i);
    }
    return out;
}

Polynomial VectorField::apply(const Polynomial& h) const {
    if (!is_polynomial()) throw Error("polynomial action needs polynomial components");
    Polynomial out(ring_);
    for (int i = 0; i < dim(); ++i) {
        if (comps_[i].is_zero()) continue;
        Polynomial dh = h.partial(i);
        if (!dh.is_zero()) out += comps_[i].numerator() * dh;
    }
    return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    if (o.dim() != dim()) throw Error("vector field dimension mismatch");
    for (int i = 0; i < dim(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    if (o.dim() != dim()) throw Error("vector field dimension mismatch");
    for (int i = 0; i < dim(); ++i) comps_[i] -= o.comps_[i];
    return *this;
}

VectorField VectorField::operator-() const {
    VectorField r = *this;
    for (auto& c : r.comps_) c = -c;
    return r;
}

VectorField VectorField::operator*(const Scalar& s) const {
    VectorField r = *this;
    for (auto& c : r.comps_) c *= s;
    return r;
}

VectorField VectorField::times(const Function& h) const {
    VectorField r = *this;
    for (auto& c : r.comps_) c = h * c;
    return r;
}

VectorField VectorField::scaled(const NuSeries& s) const {
    VectorField r = *this;
    for (auto& c : r.comps_) c = c.scaled(s);
    return r;
}

VectorField VectorField::truncated(int cap) const {
    VectorField r = *this;
    for (auto& c : r.comps_) c = c.truncated(cap);
    return r;
}

VectorField VectorField::reduce_mod(const IdealReducer& ideal) const {
    VectorField r = *this;
    for (auto& c : r.comps_) c = c.reduce_mod(ideal);
    return r;
}

bool VectorField::equals(const VectorField& o) const {
    if (o.dim() != dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (!comps_[i].equals(o.comps_[i])) return false;
    return true;
}

std::string VectorField::str(bool compact) const {
    std::vector<std::pair<std::string, std::string>> parts;
    for (int i = 0; i < dim(); ++i)
        if (!comps_[i].is_zero()) parts.emplace_back(comps_[i].str(compact), "d" + std::to_string(i + 1));
    return join_terms(parts, compact);
}

// ------------------------------------------------------------------ PForm

namespace {
// Sorts idx in place; returns the permutation sign or 0 on a repeated index.
int sort_sign(IndexSet& idx) {
    int sign = 1;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    for (size_t j = 0; j + 1 < idx.size(); ++j)
        if (idx[j] == idx[j + 1]) return 0;
    return sign;
}
}  // namespace

PForm::PForm(Ring ring, int degree) : ring_(std::move(ring)), degree_(degree) {
    if (degree < 0 || degree > ring_->dim()) throw Error("form degree overflow");
}

PForm PForm::scalar(const Function& h) {
    PForm w(h.ring(), 0);
    w.add_term({}, h);
    return w;
}

PForm PForm::basis(const Ring& ring, const IndexSet& idx, Function coeff) {
    PForm w(ring, static_cast<int>(idx.size()));
    w.add_term(idx, coeff);
    return w;
}

PForm PForm::dx(const Ring& ring, int i) { return basis(ring, {i}, Function(Polynomial(ring, Scalar(1)))); }

PForm PForm::one_form(const Ring& ring, const std::vector<Function>& comps) {
    PForm w(ring, 1);
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) w.add_term({i}, comps[i]);
    return w;
}

void PForm::add_term(const IndexSet& idx, const Function& c) {
    if (c.is_zero()) return;
    IndexSet s = idx;
    int sign = sort_sign(s);
    if (sign == 0) return;
    auto it = comps_.find(s);
    if (it == comps_.end()) {
        comps_.emplace(s, sign > 0 ? c : -c);
        return;
    }
    if (sign > 0)
        it->second += c;
    else
        it->second -= c;
    if (it->second.is_zero()) comps_.erase(it);
}

Function PForm::component(const IndexSet& idx) const {
    IndexSet s = idx;
    int sign = sort_sign(s);
    auto it = comps_.find(s);
    if (sign == 0 || it == comps_.end()) return Function(Polynomial(ring_));
    return sign > 0 ? it->second : -it->second;
}

bool PForm::exact() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const auto& kv) { return kv.second.exact(); });
}

PForm& PForm::operator+=(const PForm& o) {
    if (o.comps_.empty()) return *this;
    if (!ring_) *this = PForm(o.ring_, o.degree_);
    if (o.degree_ != degree_) throw Error("form degree mismatch");
    for (const auto& [k, v] : o.comps_) add_term(k, v);
    return *this;
}

PForm& PForm::operator-=(const PForm& o) { return *this += -o; }

PForm PForm::operator-() const {
    PForm r = *this;
    for (auto& [k, v] : r.comps_) v = -v;
    return r;
}

PForm PForm::operator*(const Scalar& s) const {
    PForm r(ring_, degree_);
    for (const auto& [k, v] : comps_) r.add_term(k, v * s);
    return r;
}

PForm PForm::times(const Function& h) const {
    PForm r(ring_, degree_);
    for (const auto& [k, v] : comps_) r.add_term(k, h * v);
    return r;
}

PForm PForm::scaled(const NuSeries& s) const {
    PForm r(ring_, degree_);
    for (const auto& [k, v] : comps_) r.add_term(k, v.scaled(s));
    return r;
}

PForm PForm::truncated(int cap) const {
    PForm r(ring_, degree_);
    for (const auto& [k, v] : comps_) r.add_term(k, v.truncated(cap));
    return r;
}

PForm PForm::reduce_mod(const IdealReducer& ideal) const {
    PForm r(ring_, degree_);
    for (const auto& [k, v] : comps_) r.add_term(k, v.reduce_mod(ideal));
    return r;
}

bool PForm::equals(const PForm& o) const {
    if (comps_.empty() && o.comps_.empty()) return true;
    if (o.degree_ != degree_) return false;
    for (const auto& [k, v] : comps_)
        if (!v.equals(o.component(k))) return false;
    for (const auto& [k, v] : o.comps_)
        if (!comps_.count(k)) return false;
    return true;
}

std::string PForm::str(bool compact) const {
    auto dx = [&](int i) { return "d" + ring_->coords[i]; };
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [k, v] : comps_) {
        std::string atom;
        if (!k.empty()) {
            atom = dx(k[0]);
            for (size_t j = 1; j < k.size(); ++j) atom = "wedge(" + atom + (compact ? "," : ", ") + dx(k[j]) + ")";
        }
        parts.emplace_back(v.str(compact), atom);
    }
    return join_terms(parts, compact);
}

// ------------------------------------------------------------ TensorField

TensorField::TensorField(Ring ring, int p, int r) : ring_(std::move(ring)), p_(p), r_(r), n_(ring_->dim()) {
    size_t size = 1;
    for (int k = 0; k < p + r; ++k) size *= n_;
    comps_.assign(size, Function(Polynomial(ring_)));
}

TensorField TensorField::from_function(const Function& h) {
    TensorField t(h.ring(), 0, 0);
    t.comps_[0] = h;
    return t;
}

TensorField TensorField::from_vector(const VectorField& X) {
    TensorField t(X.ring(), 0, 1);
    for (int i = 0; i < X.dim(); ++i) t.comps_[i] = X[i];
    return t;
}

TensorField TensorField::from_form(const PForm& w) {
    TensorField t(w.ring(), w.degree(), 0);
    for (const auto& [idx, c] : w.components()) {
        std::vector<int> perm(idx.size());
        for (size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
        do {
            int inv = 0;
            for (size_t a = 0; a < perm.size(); ++a)
                for (size_t b = a + 1; b < perm.size(); ++b)
                    if (perm[a] > perm[b]) ++inv;
            std::vector<int> at(idx.size());
            for (size_t k = 0; k < perm.size(); ++k) at[k] = idx[perm[k]];
            t.at(at) += inv % 2 ? -c : c;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return t;
}

std::vector<int> TensorField::unflatten(size_t k) const {
    std::vector<int> idx(rank());
    for (int s = rank() - 1; s >= 0; --s) {
        idx[s] = static_cast<int>(k % n_);
        k /= n_;
    }
    return idx;
}

size_t TensorField::offset(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != rank()) throw Error("tensor index arity mismatch");
    size_t k = 0;
    for (int v : idx) k = k * n_ + v;
    return k;
}

bool TensorField::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Function& f) { return f.is_zero(); });
}

bool TensorField::exact() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Function& f) { return f.exact(); });
}

Function TensorField::as_function() const {
    if (rank() != 0) throw Error("tensor is not a function");
    return comps_[0];
}

VectorField TensorField::as_vector() const {
    if (p_ != 0 || r_ != 1) throw Error("tensor is not a vector field");
    return VectorField(ring_, comps_);
}

PForm TensorField::as_one_form() const {
    if (p_ != 1 || r_ != 0) throw Error("tensor is not a one-form");
    return PForm::one_form(ring_, comps_);
}

void TensorField::check_shape(const TensorField& o) const {
    if (o.p_ != p_ || o.r_ != r_ || o.n_ != n_) throw Error("tensor type mismatch");
}

TensorField& TensorField::operator+=(const TensorField& o) {
    check_shape(o);
    for (size_t k = 0; k < comps_.size(); ++k) comps_[k] += o.comps_[k];
    return *this;
}

TensorField& TensorField::operator-=(const TensorField& o) {
    check_shape(o);
    for (size_t k = 0; k < comps_.size(); ++k) comps_[k] -= o.comps_[k];
    return *this;
}

TensorField TensorField::operator-() const {
    TensorField t = *this;
    for (auto& c : t.comps_) c = -c;
    return t;
}

TensorField TensorField::operator*(const Scalar& s) const {
    TensorField t = *this;
    for (auto& c : t.comps_) c *= s;
    return t;
}

TensorField TensorField::times(const Function& h) const {
    TensorField t = *this;
    for (auto& c : t.comps_) c = h * c;
    return t;
}

TensorField TensorField::scaled(const NuSeries& s) const {
    TensorField t = *this;
    for (auto& c : t.comps_) c = c.scaled(s);
    return t;
}

TensorField TensorField::truncated(int cap) const {
    TensorField t = *this;
    for (auto& c : t.comps_) c = c.truncated(cap);
    return t;
}

TensorField TensorField::reduce_mod(const IdealReducer& ideal) const {
    TensorField t = *this;
    for (auto& c : t.comps_) c = c.reduce_mod(ideal);
    return t;
}

bool TensorField::equals(const TensorField& o) const {
    if (o.p_ != p_ || o.r_ != r_ || o.n_ != n_) return false;
    for (size_t k = 0; k < comps_.size(); ++k)
        if (!comps_[k].equals(o.comps_[k])) return false;
    return true;
}

std::string TensorField::str(bool compact) const {
    if (rank() == 0) return comps_[0].str(compact);
    std::string out;
    for (size_t k = 0; k < comps_.size(); ++k) {
        if (comps_[k].is_zero()) continue;
        auto idx = unflatten(k);
        std::string key = "[";
        for (size_t j = 0; j < idx.size(); ++j) key += (j ? "," : "") + std::to_string(idx[j] + 1);
        key += "]";
        if (!out.empty()) out += compact ? ";" : "; ";
        out += key + (compact ? "=" : " = ") + comps_[k].str(compact);
    }
    return "T(" + std::to_string(p_) + "," + std::to_string(r_) + "){" + out + "}";
}

}  // namespace twistfold
