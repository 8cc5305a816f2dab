#include "twistfold/scalar.hpp"

namespace twistfold {

Scalar& Scalar::operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division by zero scalar");
    if (sgn(im_) == 0) return Scalar(1 / re_);
    mpq_class n = re_ * re_ + im_ * im_;
    return Scalar(re_ / n, -im_ / n);
}

namespace {
std::string rat_str(const mpq_class& q) { return q.get_str(); }
}  // namespace

std::string Scalar::str() const {
    if (sgn(im_) == 0) return rat_str(re_);
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = rat_str(im_) + "*i";
    if (sgn(re_) == 0) return imag;
    std::string out = "(" + rat_str(re_);
    if (imag[0] != '-') out += "+";
    return out + imag + ")";
}

size_t Scalar::hash() const {
    std::hash<std::string> h;
    return h(re_.get_str()) * 31 + h(im_.get_str());
}

Scalar pow(const Scalar& s, unsigned e) {
    Scalar r(1), b = s;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace twistfold
