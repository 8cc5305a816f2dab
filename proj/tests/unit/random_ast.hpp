#pragma once

#include <random>

#include "twistfold/expr.hpp"

namespace tfh {

// Random expression tree of bounded depth over symbols, literals, operators
// and every known function.
inline twistfold::ExprPtr random_ast(std::mt19937_64& rng, int depth) {
    using namespace twistfold;
    static const std::vector<std::string> symbols{"x1", "x2", "y3", "nu", "i", "d1", "dx2", "L12", "H", "c"};
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    switch (pick(rng)) {
        case 0: return make_number(std::to_string(std::uniform_int_distribution<int>(0, 120)(rng)));
        case 1: return make_symbol(symbols[std::uniform_int_distribution<size_t>(0, symbols.size() - 1)(rng)]);
        case 2: return make_unary(random_ast(rng, depth - 1));
        case 3: return make_binary(NodeKind::add, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
        case 4: return make_binary(NodeKind::sub, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
        case 5: return make_binary(NodeKind::mul, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
        case 6: return make_binary(NodeKind::div, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
        case 7: return make_binary(NodeKind::pow, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
        default: {
            const auto& table = function_arities();
            auto it = table.begin();
            std::advance(it, std::uniform_int_distribution<size_t>(0, table.size() - 1)(rng));
            std::vector<ExprPtr> args;
            for (int k = 0; k < it->second; ++k) args.push_back(random_ast(rng, depth - 1));
            return make_call(it->first, std::move(args));
        }
    }
}

}  // namespace tfh
