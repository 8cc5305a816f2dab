#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twistfold/expr.hpp"
#include "twistfold/twisted.hpp"

namespace twistfold {

using Value = std::variant<Function, VectorField, PForm>;

// Everything an expression can refer to. Optional parts are filled by the
// scenario setup; operations that need a missing part raise EvalError.
struct Workspace {
    Ring ring;
    Generators gens;
    std::optional<StarContext> ctx;
    std::optional<Metric> metric;
    std::optional<LevelSetFamily> family;
    std::optional<Embedding> emb;  // absent when the normal frame degenerates
    std::optional<TwistedConnection> conn;
    std::optional<TwistedSubmanifold> twisted;
    std::vector<VectorField> frame;  // tangent frame for curvature
    std::map<std::string, Value> names;

    int order() const { return ctx ? ctx->order() : 0; }
};

class EvalError : public Error {
public:
    EvalError(const Span& span, const std::string& message);
    const Span& span() const { return span_; }

private:
    Span span_;
};

Value evaluate(const Workspace& ws, const Expr& e);
Value evaluate(const Workspace& ws, std::string_view src);

const char* value_kind(const Value& v);
bool is_zero(const Value& v);
Value subtract(const Value& a, const Value& b);
Value truncate(const Value& v, int order);
// Reduces modulo the ideal of the level sets.
Value reduce(const Workspace& ws, const Value& v);
// Printed in the expression grammar; compact output has no spaces.
std::string value_str(const Value& v, bool compact = false);

}  // namespace twistfold
