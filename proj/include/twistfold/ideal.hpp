#pragma once

#include <string>
#include <vector>

#include "twistfold/polynomial.hpp"

namespace twistfold {

// Normal-form reduction modulo an ideal given by nu-free generators that form
// a Groebner basis for the block term order. Generators that fail the S-pair
// test leave the reducer marked incomplete; reduce() then refuses to answer.
class IdealReducer {
public:
    IdealReducer() = default;
    explicit IdealReducer(std::vector<Polynomial> generators);

    const std::vector<Polynomial>& generators() const { return gens_; }
    bool complete() const { return complete_; }
    const std::string& diagnostic() const { return diagnostic_; }
    bool empty() const { return gens_.empty(); }

    FlatPoly reduce(const FlatPoly& p) const;
    Polynomial reduce(const Polynomial& p) const;
    bool contains(const Polynomial& p) const { return reduce(p).is_zero(); }

private:
    FlatPoly reduce_unchecked(const FlatPoly& p) const;

    std::vector<Polynomial> gens_;
    std::vector<FlatPoly> flat_;
    bool complete_ = true;
    std::string diagnostic_;
};

Polynomial ideal_reduce(const Polynomial& p, const std::vector<Polynomial>& f);

}  // namespace twistfold
