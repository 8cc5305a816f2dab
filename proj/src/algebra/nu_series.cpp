#include "twistfold/nu_series.hpp"

#include <algorithm>

namespace twistfold {

NuSeries::NuSeries(Scalar c, int cap) : cap_(cap) {
    if (!c.is_zero()) coeffs_.push_back(std::move(c));
}

NuSeries NuSeries::monomial(Scalar c, int power, int cap) {
    NuSeries r;
    r.cap_ = cap;
    if (power > cap) {
        r.exact_ = c.is_zero();
        return r;
    }
    if (c.is_zero()) return r;
    r.coeffs_.assign(power + 1, Scalar());
    r.coeffs_[power] = std::move(c);
    return r;
}

int NuSeries::valuation() const {
    for (size_t k = 0; k < coeffs_.size(); ++k)
        if (!coeffs_[k].is_zero()) return static_cast<int>(k);
    return -1;
}

Scalar NuSeries::operator[](int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Scalar();
    return coeffs_[k];
}

void NuSeries::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void NuSeries::clip(int cap) {
    cap_ = std::min(cap_, cap);
    if (static_cast<int>(coeffs_.size()) > cap_ + 1) {
        for (size_t k = cap_ + 1; k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero()) exact_ = false;
        coeffs_.resize(cap_ + 1);
        trim();
    }
}

NuSeries NuSeries::truncated(int cap) const {
    NuSeries r = *this;
    r.clip(cap);
    return r;
}

NuSeries NuSeries::conj() const {
    NuSeries r = *this;
    for (auto& c : r.coeffs_) c = c.conj();
    return r;
}

NuSeries NuSeries::inverse() const {
    if (coeffs_.empty() || coeffs_[0].is_zero())
        throw Error("nu-series without constant term is not invertible");
    if (cap_ == kNoCap && coeffs_.size() > 1)
        throw Error("inverse of a non-constant series needs a truncation order");
    NuSeries r;
    r.cap_ = cap_;
    r.exact_ = exact_;
    Scalar inv0 = coeffs_[0].inverse();
    int n = cap_ == kNoCap ? 0 : cap_;
    r.coeffs_.assign(n + 1, Scalar());
    r.coeffs_[0] = inv0;
    for (int k = 1; k <= n; ++k) {
        Scalar acc;
        for (int j = 1; j <= k && j < static_cast<int>(coeffs_.size()); ++j)
            acc += coeffs_[j] * r.coeffs_[k - j];
        r.coeffs_[k] = -(acc * inv0);
    }
    r.trim();
    return r;
}

NuSeries& NuSeries::operator+=(const NuSeries& o) {
    exact_ = exact_ && o.exact_;
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    clip(o.cap_);
    return *this;
}

NuSeries& NuSeries::operator-=(const NuSeries& o) {
    exact_ = exact_ && o.exact_;
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    clip(o.cap_);
    return *this;
}

NuSeries& NuSeries::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
}

NuSeries operator*(const NuSeries& a, const NuSeries& b) {
    NuSeries r;
    r.cap_ = std::min(a.cap_, b.cap_);
    r.exact_ = a.exact_ && b.exact_;
    if (a.coeffs_.empty() || b.coeffs_.empty()) return r;
    size_t full = a.coeffs_.size() + b.coeffs_.size() - 1;
    r.coeffs_.assign(full, Scalar());
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    r.trim();
    r.clip(r.cap_);
    return r;
}

NuSeries NuSeries::operator-() const {
    NuSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

std::string NuSeries::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        std::string c = coeffs_[k].str();
        std::string term;
        if (k == 0)
            term = c;
        else {
            std::string nu = k == 1 ? "nu" : "nu^" + std::to_string(k);
            if (c == "1")
                term = nu;
            else if (c == "-1")
                term = "-" + nu;
            else
                term = c + "*" + nu;
        }
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

}  // namespace twistfold
