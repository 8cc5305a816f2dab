#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "twistfold/scalar.hpp"

namespace twistfold {

struct Span {
    int line = 1;
    int column = 1;  // 1-based
    int length = 0;
};

enum class NodeKind { number, symbol, neg, add, sub, mul, div, pow, call };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Numbers are unsigned integer literals; negation and fractions are operators.
struct Expr {
    NodeKind kind = NodeKind::number;
    std::string text;  // digits, symbol name or function name
    std::vector<ExprPtr> args;
    Span span;
};

ExprPtr make_number(std::string digits);
ExprPtr make_symbol(std::string name);
ExprPtr make_unary(ExprPtr operand);
ExprPtr make_binary(NodeKind kind, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_call(std::string name, std::vector<ExprPtr> args);

// Structural equality, spans ignored.
bool same_tree(const Expr& a, const Expr& b);

enum class ParseErrorKind { lexical, unbalanced, arity, syntax };

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, int line, int column, const std::string& message);
    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    ParseErrorKind kind_;
    int line_, column_;
    std::string detail_;
};

// Known functions and their arities. [a, b] is read as bracket(a, b).
const std::map<std::string, int>& function_arities();

// Precedence: ^ (right associative) > unary - > * / > + -.
ExprPtr parse_expression(std::string_view src);
// Canonical text: minimal parentheses, ", " between arguments, spaces around + and -.
std::string print_expression(const Expr& e);

}  // namespace twistfold
