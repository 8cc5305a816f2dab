#include "twistfold/expr.hpp"

#include <cctype>

namespace twistfold {

ExprPtr make_number(std::string digits) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::number;
    e->text = std::move(digits);
    return e;
}

ExprPtr make_symbol(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::symbol;
    e->text = std::move(name);
    return e;
}

ExprPtr make_unary(ExprPtr operand) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::neg;
    e->args = {std::move(operand)};
    return e;
}

ExprPtr make_binary(NodeKind kind, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = {std::move(lhs), std::move(rhs)};
    return e;
}

ExprPtr make_call(std::string name, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::call;
    e->text = std::move(name);
    e->args = std::move(args);
    return e;
}

bool same_tree(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.text != b.text || a.args.size() != b.args.size()) return false;
    for (size_t k = 0; k < a.args.size(); ++k)
        if (!same_tree(*a.args[k], *b.args[k])) return false;
    return true;
}

ParseError::ParseError(ParseErrorKind kind, int line, int column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(message) {}

const std::map<std::string, int>& function_arities() {
    static const std::map<std::string, int> table{
        {"star", 2},        {"bracket", 2},      {"sbracket", 2},      {"wedge", 2},         {"swedge", 2},
        {"pair", 2},        {"spair", 2},        {"d", 1},             {"act", 2},           {"slie", 2},
        {"g", 2},           {"gs", 2},           {"ginv", 2},          {"proj_t", 1},        {"proj_n", 1},
        {"sproj_t", 1},     {"sproj_n", 1},      {"nabla", 2},         {"nabla_t", 2},       {"snabla", 2},
        {"snabla_t", 2},    {"II", 2},           {"sII", 2},           {"storsion", 2},      {"curvature", 3},
        {"curvature_t", 3}, {"scurvature", 3},   {"scurvature_t", 3},  {"reduce", 1},        {"truncate", 2},
        {"kappa", 1},       {"gauss_curvature", 0}, {"mean_curvature", 0}, {"ricci_scalar", 0}, {"sricci_scalar", 0},
        {"normal", 1},      {"unit_normal", 0},  {"normal_matrix", 2}, {"grad", 1},
    };
    return table;
}

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, lbracket, rbracket, comma, end };

struct Token {
    Tok kind;
    std::string text;
    int line, column;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t k = 0;
    while (k < src.size()) {
        char ch = src[k];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++k;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++k;
            continue;
        }
        int start = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = k;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && (src[j] == '.' || std::isalpha(static_cast<unsigned char>(src[j]))))
                throw ParseError(ParseErrorKind::lexical, line, col + static_cast<int>(j - k),
                                 std::string("malformed number near '") + src[j] + "'");
            out.push_back({Tok::number, std::string(src.substr(k, j - k)), line, start});
            col += static_cast<int>(j - k);
            k = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = k;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::ident, std::string(src.substr(k, j - k)), line, start});
            col += static_cast<int>(j - k);
            k = j;
            continue;
        }
        Tok t;
        switch (ch) {
            case '+': t = Tok::plus; break;
            case '-': t = Tok::minus; break;
            case '*': t = Tok::star; break;
            case '/': t = Tok::slash; break;
            case '^': t = Tok::caret; break;
            case '(': t = Tok::lparen; break;
            case ')': t = Tok::rparen; break;
            case '[': t = Tok::lbracket; break;
            case ']': t = Tok::rbracket; break;
            case ',': t = Tok::comma; break;
            default:
                throw ParseError(ParseErrorKind::lexical, line, col, std::string("unexpected character '") + ch + "'");
        }
        out.push_back({t, std::string(1, ch), line, start});
        ++col;
        ++k;
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        const Token& t = peek();
        if (t.kind == Tok::rparen || t.kind == Tok::rbracket)
            throw ParseError(ParseErrorKind::unbalanced, t.line, t.column,
                             "unbalanced delimiter: unmatched '" + t.text + "'");
        if (t.kind != Tok::end) throw ParseError(ParseErrorKind::syntax, t.line, t.column, "unexpected '" + t.text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    static std::shared_ptr<Expr> at(ExprPtr e, const Token& t) {
        auto m = std::const_pointer_cast<Expr>(e);
        m->span = {t.line, t.column, static_cast<int>(t.text.size())};
        return m;
    }

    ExprPtr sum() {
        ExprPtr lhs = product();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            Token op = take();
            ExprPtr rhs = product();
            lhs = at(make_binary(op.kind == Tok::plus ? NodeKind::add : NodeKind::sub, lhs, rhs), op);
        }
        return lhs;
    }

    ExprPtr product() {
        ExprPtr lhs = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            Token op = take();
            ExprPtr rhs = unary();
            lhs = at(make_binary(op.kind == Tok::star ? NodeKind::mul : NodeKind::div, lhs, rhs), op);
        }
        return lhs;
    }

    ExprPtr unary() {
        if (peek().kind == Tok::minus) {
            Token op = take();
            return at(make_unary(unary()), op);
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (peek().kind == Tok::caret) {
            Token op = take();
            return at(make_binary(NodeKind::pow, base, unary()), op);
        }
        return base;
    }

    void close(Tok want, const Token& open) {
        const Token& t = peek();
        if (t.kind == want) {
            take();
            return;
        }
        std::string closer = want == Tok::rparen ? ")" : "]";
        if (t.kind == Tok::end || t.kind == Tok::rparen || t.kind == Tok::rbracket)
            throw ParseError(ParseErrorKind::unbalanced, t.line, t.column,
                             "unbalanced delimiter: expected '" + closer + "' to close '" + open.text + "' at column " +
                                 std::to_string(open.column));
        throw ParseError(ParseErrorKind::syntax, t.line, t.column,
                         "expected '" + closer + "' or ',' but found '" + t.text + "'");
    }

    std::vector<ExprPtr> arguments(Tok closer, const Token& open) {
        std::vector<ExprPtr> args;
        if (peek().kind == closer) {
            take();
            return args;
        }
        args.push_back(sum());
        while (peek().kind == Tok::comma) {
            take();
            args.push_back(sum());
        }
        close(closer, open);
        return args;
    }

    ExprPtr primary() {
        Token t = take();
        switch (t.kind) {
            case Tok::number: return at(make_number(t.text), t);
            case Tok::ident: {
                if (peek().kind != Tok::lparen) return at(make_symbol(t.text), t);
                Token open = take();
                auto it = function_arities().find(t.text);
                if (it == function_arities().end())
                    throw ParseError(ParseErrorKind::syntax, t.line, t.column, "unknown function '" + t.text + "'");
                auto args = arguments(Tok::rparen, open);
                if (static_cast<int>(args.size()) != it->second)
                    throw ParseError(ParseErrorKind::arity, t.line, t.column,
                                     t.text + " takes " + std::to_string(it->second) + " argument" +
                                         (it->second == 1 ? "" : "s") + ", got " + std::to_string(args.size()));
                return at(make_call(t.text, std::move(args)), t);
            }
            case Tok::lparen: {
                ExprPtr e = sum();
                close(Tok::rparen, t);
                return e;
            }
            case Tok::lbracket: {
                auto args = arguments(Tok::rbracket, t);
                if (args.size() != 2)
                    throw ParseError(ParseErrorKind::arity, t.line, t.column,
                                     "bracket takes 2 arguments, got " + std::to_string(args.size()));
                return at(make_call("bracket", std::move(args)), t);
            }
            case Tok::rparen:
            case Tok::rbracket:
                throw ParseError(ParseErrorKind::unbalanced, t.line, t.column,
                                 "unbalanced delimiter: unmatched '" + t.text + "'");
            case Tok::end: throw ParseError(ParseErrorKind::syntax, t.line, t.column, "unexpected end of input");
            default: throw ParseError(ParseErrorKind::syntax, t.line, t.column, "unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case NodeKind::add:
        case NodeKind::sub: return 1;
        case NodeKind::mul:
        case NodeKind::div: return 2;
        case NodeKind::neg: return 3;
        case NodeKind::pow: return 4;
        default: return 5;
    }
}

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + print_expression(e) + ")" : print_expression(e); }

}  // namespace

ExprPtr parse_expression(std::string_view src) { return Parser(lex(src)).parse(); }

std::string print_expression(const Expr& e) {
    switch (e.kind) {
        case NodeKind::number:
        case NodeKind::symbol: return e.text;
        case NodeKind::call: {
            std::string s = e.text + "(";
            for (size_t k = 0; k < e.args.size(); ++k) s += (k ? ", " : "") + print_expression(*e.args[k]);
            return s + ")";
        }
        case NodeKind::neg: return "-" + wrap(*e.args[0], precedence(*e.args[0]) < 3);
        case NodeKind::pow:
            return wrap(*e.args[0], precedence(*e.args[0]) < 5) + "^" + wrap(*e.args[1], precedence(*e.args[1]) < 3);
        default: {
            int p = precedence(e);
            const char* op = e.kind == NodeKind::add ? " + " : e.kind == NodeKind::sub ? " - "
                             : e.kind == NodeKind::mul ? "*" : "/";
            return wrap(*e.args[0], precedence(*e.args[0]) < p) + op + wrap(*e.args[1], precedence(*e.args[1]) <= p);
        }
    }
}

}  // namespace twistfold
