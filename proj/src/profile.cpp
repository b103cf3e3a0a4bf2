#include "torussym/profile.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace torussym {
namespace detail {

enum class NodeKind { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Exp };

struct ProfileNode {
    NodeKind kind;
    double value = 0.0;  // Number only
    std::shared_ptr<const ProfileNode> lhs, rhs;
};

using NodePtr = std::shared_ptr<const ProfileNode>;

namespace {

NodePtr make(NodeKind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<ProfileNode>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<ProfileNode>();
    n->kind = NodeKind::Number;
    n->value = v;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr run() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    // expression := term (('+'|'-') term)*
    NodePtr expression() {
        NodePtr lhs = term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                lhs = make(NodeKind::Add, lhs, term());
            else if (accept('-'))
                lhs = make(NodeKind::Sub, lhs, term());
            else
                return lhs;
        }
    }

    // term := unary (('*'|'/') unary)*
    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            skip_ws();
            if (accept('*'))
                lhs = make(NodeKind::Mul, lhs, unary());
            else if (accept('/'))
                lhs = make(NodeKind::Div, lhs, unary());
            else
                return lhs;
        }
    }

    // unary := '-' unary | power
    NodePtr unary() {
        skip_ws();
        if (accept('-')) return make(NodeKind::Neg, unary());
        return power();
    }

    // power := atom ('^' unary)?   (right associative)
    NodePtr power() {
        NodePtr base = atom();
        skip_ws();
        if (accept('^')) return make(NodeKind::Pow, base, unary());
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == 'r') {
            ++pos_;
            return make(NodeKind::Var);
        }
        if (src_.compare(pos_, 3, "exp") == 0) {
            pos_ += 3;
            skip_ws();
            expect('(');
            NodePtr e = expression();
            expect(')');
            return make(NodeKind::Exp, e);
        }
        fail("expected number, 'r', 'exp' or '('");
    }

    NodePtr number() {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        try {
            size_t used = 0;
            double v = std::stod(src_.substr(start, pos_ - start), &used);
            if (used != pos_ - start) throw std::invalid_argument("partial");
            return make_number(v);
        } catch (const std::exception&) {
            pos_ = start;
            fail("malformed numeric literal");
        }
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_ws();
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& msg) { throw ProfileParseError(pos_, msg); }

    const std::string& src_;
    size_t pos_ = 0;
};

double eval(const ProfileNode& n, double r) {
    switch (n.kind) {
        case NodeKind::Number: return n.value;
        case NodeKind::Var: return r;
        case NodeKind::Add: return eval(*n.lhs, r) + eval(*n.rhs, r);
        case NodeKind::Sub: return eval(*n.lhs, r) - eval(*n.rhs, r);
        case NodeKind::Mul: return eval(*n.lhs, r) * eval(*n.rhs, r);
        case NodeKind::Div: return eval(*n.lhs, r) / eval(*n.rhs, r);
        case NodeKind::Pow: return std::pow(eval(*n.lhs, r), eval(*n.rhs, r));
        case NodeKind::Neg: return -eval(*n.lhs, r);
        case NodeKind::Exp: return std::exp(eval(*n.lhs, r));
    }
    return 0.0;
}

void print(const ProfileNode& n, std::ostream& os) {
    switch (n.kind) {
        case NodeKind::Number: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.value;
            os << tmp.str();
            return;
        }
        case NodeKind::Var: os << 'r'; return;
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div:
        case NodeKind::Pow: {
            char op = n.kind == NodeKind::Add   ? '+'
                      : n.kind == NodeKind::Sub ? '-'
                      : n.kind == NodeKind::Mul ? '*'
                      : n.kind == NodeKind::Div ? '/'
                                                : '^';
            os << '(';
            print(*n.lhs, os);
            os << op;
            print(*n.rhs, os);
            os << ')';
            return;
        }
        case NodeKind::Neg:
            os << "(-";
            print(*n.lhs, os);
            os << ')';
            return;
        case NodeKind::Exp:
            os << "exp(";
            print(*n.lhs, os);
            os << ')';
            return;
    }
}

}  // namespace
}  // namespace detail

ProfileFunction ProfileFunction::parse(const std::string& source) {
    if (source.empty()) throw ProfileParseError(0, "empty profile expression");
    detail::NodePtr root = detail::Parser(source).run();
    ProfileFunction f(source, root);
    for (double probe : {0.0, 1.0, 10.0}) {
        double v = f(probe);
        if (!std::isfinite(v) || v <= 0.0)
            throw ProfileEvalError("profile not strictly positive and finite at r = " +
                                   std::to_string(probe));
    }
    return f;
}

double ProfileFunction::operator()(double r) const { return detail::eval(*root_, r); }

std::string ProfileFunction::pretty() const {
    std::ostringstream os;
    detail::print(*root_, os);
    return os.str();
}

}  // namespace torussym
