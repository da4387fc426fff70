#pragma once

#include <memory>

#include "boundary.hpp"

namespace halfspace {

// Tiny expression grammar for custom boundary symbols, evaluated over
// (xi, tau) with xi = |xi|:
//
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := unary ('^' integer)?
//   unary   := '-' unary | primary
//   primary := number | 'xi' | 'tau' | 'i' | '(' expr ')' | 'sqrt_minus' '(' expr ')'
//
// Example (transparent): b1 = "1", b2 = "-1 / sqrt_minus(xi^2 - i*tau)".
struct symbol_parse_error : std::runtime_error {
    std::size_t column;
    symbol_parse_error(const std::string& what, std::size_t col)
        : std::runtime_error(what + " (column " + std::to_string(col + 1) + ")"), column(col) {}
};

namespace expr {

struct Node {
    virtual ~Node() = default;
    virtual cx eval(double xi, cx tau) const = 0;
};
using NodePtr = std::unique_ptr<Node>;

struct Const : Node {
    cx v;
    explicit Const(cx z) : v(z) {}
    cx eval(double, cx) const override { return v; }
};
struct Var : Node {
    bool is_tau;
    explicit Var(bool t) : is_tau(t) {}
    cx eval(double xi, cx tau) const override { return is_tau ? tau : cx{xi, 0.0}; }
};
struct Binary : Node {
    char op;
    NodePtr a, b;
    Binary(char o, NodePtr x, NodePtr y) : op(o), a(std::move(x)), b(std::move(y)) {}
    cx eval(double xi, cx tau) const override {
        cx u = a->eval(xi, tau), v = b->eval(xi, tau);
        switch (op) {
            case '+': return u + v;
            case '-': return u - v;
            case '*': return u * v;
            default: return u / v;
        }
    }
};
struct Neg : Node {
    NodePtr a;
    explicit Neg(NodePtr x) : a(std::move(x)) {}
    cx eval(double xi, cx tau) const override { return -a->eval(xi, tau); }
};
struct Pow : Node {
    NodePtr a;
    int k;
    Pow(NodePtr x, int kk) : a(std::move(x)), k(kk) {}
    cx eval(double xi, cx tau) const override {
        cx b = a->eval(xi, tau), r{1.0, 0.0};
        int n = k < 0 ? -k : k;
        for (int j = 0; j < n; ++j) r *= b;
        return k < 0 ? 1.0 / r : r;
    }
};
struct SqrtMinus : Node {
    NodePtr a;
    explicit SqrtMinus(NodePtr x) : a(std::move(x)) {}
    cx eval(double xi, cx tau) const override { return sqrt_minus(a->eval(xi, tau)); }
};

class Parser {
  public:
    explicit Parser(std::string s) : s_(std::move(s)) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) throw symbol_parse_error("trailing input", pos_);
        return e;
    }

  private:
    std::string s_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr a = term();
        for (;;) {
            if (eat('+'))
                a = std::make_unique<Binary>('+', std::move(a), term());
            else if (eat('-'))
                a = std::make_unique<Binary>('-', std::move(a), term());
            else
                return a;
        }
    }
    NodePtr term() {
        NodePtr a = factor();
        for (;;) {
            if (eat('*'))
                a = std::make_unique<Binary>('*', std::move(a), factor());
            else if (eat('/'))
                a = std::make_unique<Binary>('/', std::move(a), factor());
            else
                return a;
        }
    }
    NodePtr factor() {
        NodePtr a = unary();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            std::size_t c = pos_;
            long k = 0;
            bool any = false;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                k = 10 * k + (s_[pos_] - '0');
                ++pos_;
                any = true;
            }
            if (!any) throw symbol_parse_error("integer exponent expected", c);
            a = std::make_unique<Pow>(std::move(a), static_cast<int>(neg ? -k : k));
        }
        return a;
    }
    NodePtr unary() {
        if (eat('-')) return std::make_unique<Neg>(unary());
        return primary();
    }
    std::string ident() {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(b, pos_ - b);
    }
    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) throw symbol_parse_error("unexpected end of expression", pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v = std::stod(s_.substr(pos_), &used);
            pos_ += used;
            return std::make_unique<Const>(cx{v, 0.0});
        }
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')')) throw symbol_parse_error("expected ')'", pos_);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            std::string id = ident();
            if (id == "xi") return std::make_unique<Var>(false);
            if (id == "tau") return std::make_unique<Var>(true);
            if (id == "i") return std::make_unique<Const>(iu);
            if (id == "sqrt_minus") {
                if (!eat('(')) throw symbol_parse_error("expected '(' after sqrt_minus", pos_);
                NodePtr e = expr();
                if (!eat(')')) throw symbol_parse_error("expected ')'", pos_);
                return std::make_unique<SqrtMinus>(std::move(e));
            }
            throw symbol_parse_error("unknown identifier '" + id + "'", at);
        }
        throw symbol_parse_error(std::string("unexpected character '") + c + "'", pos_);
    }
};

}  // namespace expr

// Build a boundary symbol from two expression strings.
inline BoundarySymbol parse_symbol(const std::string& name, const std::string& b1_src,
                                   const std::string& b2_src) {
    auto b1 = std::shared_ptr<expr::Node>(expr::Parser(b1_src).parse());
    auto b2 = std::shared_ptr<expr::Node>(expr::Parser(b2_src).parse());
    BoundarySymbol sym;
    sym.name = name;
    sym.b1 = [b1](double xi, cx tau) { return b1->eval(xi, tau); };
    sym.b2 = [b2](double xi, cx tau) { return b2->eval(xi, tau); };
    return sym;
}

inline const char* symbol_grammar_help() {
    return "custom symbol grammar: expressions over xi (=|xi|), tau, i, numbers,\n"
           "  + - * / ^int, parentheses, sqrt_minus(.). The stable-eigenvector root\n"
           "  is sqrt_minus(xi^2 - i*tau). Examples:\n"
           "    dirichlet:    b1 = 1,  b2 = 0\n"
           "    neumann:      b1 = 0,  b2 = 1 / sqrt_minus(xi^2 - i*tau)\n"
           "    transparent:  b1 = 1,  b2 = -1 / sqrt_minus(xi^2 - i*tau)\n";
}

}  // namespace halfspace
