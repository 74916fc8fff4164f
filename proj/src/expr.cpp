#include "tbvp/expr.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <sstream>

namespace tbvp {

namespace {

const std::map<std::string, int> kFunctions = {
    {"exp", 1}, {"log", 1}, {"sin", 1}, {"cos", 1}, {"sqrt", 1},
    {"abs", 1}, {"min", 2}, {"max", 2}, {"pow", 2},
};

struct Parser {
    const std::string& src;
    const std::set<std::string>& vars;
    std::size_t at = 0;

    void skip_ws() {
        while (at < src.size() && std::isspace(static_cast<unsigned char>(src[at]))) ++at;
    }

    char peek() {
        skip_ws();
        return at < src.size() ? src[at] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) { ++at; return true; }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, at);
    }

    Expr::Ptr make_number(double x) {
        auto e = std::make_shared<Expr>();
        e->node = Expr::Node::Number;
        e->number = x;
        return e;
    }

    Expr::Ptr parse_number() {
        skip_ws();
        const char* begin = src.data() + at;
        const char* end = src.data() + src.size();
        double value = 0.0;
        auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc())
            throw ParseError("malformed number", at);
        at += static_cast<std::size_t>(res.ptr - begin);
        return make_number(value);
    }

    Expr::Ptr parse_identifier() {
        skip_ws();
        std::size_t start = at;
        std::string name;
        while (at < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[at])) || src[at] == '_'))
            name += src[at++];
        if (peek() == '(') {
            auto it = kFunctions.find(name);
            if (it == kFunctions.end())
                throw ParseError("unknown function '" + name + "'", start);
            ++at;
            auto e = std::make_shared<Expr>();
            e->node = Expr::Node::Call;
            e->name = name;
            e->args.push_back(parse_expression());
            while (accept(',')) e->args.push_back(parse_expression());
            expect(')', "')'");
            if (static_cast<int>(e->args.size()) != it->second)
                throw ParseError("function '" + name + "' takes " +
                                     std::to_string(it->second) + " argument(s), got " +
                                     std::to_string(e->args.size()),
                                 start);
            return e;
        }
        if (name == "pi") return make_number(3.14159265358979323846);
        if (name == "e") return make_number(2.71828182845904523536);
        if (!vars.count(name))
            throw ParseError("unknown identifier '" + name + "'", start);
        auto e = std::make_shared<Expr>();
        e->node = Expr::Node::Variable;
        e->name = name;
        return e;
    }

    Expr::Ptr parse_primary() {
        const char c = peek();
        if (c == '(') {
            ++at;
            auto e = parse_expression();
            expect(')', "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw ParseError("expected a number, identifier or '('", at);
    }

    // ^ binds tighter than unary minus and is right-associative; a unary
    // minus is allowed in the exponent ("2^-3").
    Expr::Ptr parse_power() {
        auto base = parse_primary();
        if (accept('^')) {
            auto e = std::make_shared<Expr>();
            e->node = Expr::Node::Binary;
            e->name = "^";
            e->args = {base, parse_unary()};
            return e;
        }
        return base;
    }

    Expr::Ptr parse_unary() {
        if (accept('-')) {
            auto e = std::make_shared<Expr>();
            e->node = Expr::Node::Unary;
            e->name = "-";
            e->args = {parse_unary()};
            return e;
        }
        return parse_power();
    }

    Expr::Ptr parse_term() {
        auto left = parse_unary();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return left;
            ++at;
            auto e = std::make_shared<Expr>();
            e->node = Expr::Node::Binary;
            e->name = std::string(1, c);
            e->args = {left, parse_unary()};
            left = e;
        }
    }

    Expr::Ptr parse_expression() {
        auto left = parse_term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return left;
            ++at;
            auto e = std::make_shared<Expr>();
            e->node = Expr::Node::Binary;
            e->name = std::string(1, c);
            e->args = {left, parse_term()};
            left = e;
        }
    }
};

double call_function(const std::string& name, const std::vector<double>& a,
                     const Expr& e) {
    if (name == "exp") return std::exp(a[0]);
    if (name == "log") {
        if (a[0] <= 0.0) throw EvalError("log of a nonpositive value in " + to_string(e));
        return std::log(a[0]);
    }
    if (name == "sin") return std::sin(a[0]);
    if (name == "cos") return std::cos(a[0]);
    if (name == "sqrt") {
        if (a[0] < 0.0) throw EvalError("sqrt of a negative value in " + to_string(e));
        return std::sqrt(a[0]);
    }
    if (name == "abs") return std::abs(a[0]);
    if (name == "min") return std::min(a[0], a[1]);
    if (name == "max") return std::max(a[0], a[1]);
    if (name == "pow") return std::pow(a[0], a[1]);
    throw EvalError("unknown function '" + name + "'");
}

} // namespace

Expr::Ptr parse(const std::string& source, const std::set<std::string>& variables) {
    if (source.empty()) throw ParseError("empty expression", 0);
    Parser p{source, variables};
    auto e = p.parse_expression();
    p.skip_ws();
    if (p.at != source.size())
        throw ParseError("unexpected trailing input", p.at);
    return e;
}

double eval_expr(const Expr& e, const std::map<std::string, double>& bindings) {
    switch (e.node) {
    case Expr::Node::Number:
        return e.number;
    case Expr::Node::Variable: {
        auto it = bindings.find(e.name);
        if (it == bindings.end())
            throw EvalError("missing binding for variable '" + e.name + "'");
        return it->second;
    }
    case Expr::Node::Unary:
        return -eval_expr(*e.args[0], bindings);
    case Expr::Node::Binary: {
        const double l = eval_expr(*e.args[0], bindings);
        const double r = eval_expr(*e.args[1], bindings);
        double res;
        if (e.name == "+") res = l + r;
        else if (e.name == "-") res = l - r;
        else if (e.name == "*") res = l * r;
        else if (e.name == "/") {
            if (r == 0.0) throw EvalError("division by zero in " + to_string(e));
            res = l / r;
        } else {
            res = std::pow(l, r);
        }
        if (!std::isfinite(res))
            throw EvalError("non-finite result in " + to_string(e));
        return res;
    }
    case Expr::Node::Call: {
        std::vector<double> a;
        a.reserve(e.args.size());
        for (const auto& arg : e.args) a.push_back(eval_expr(*arg, bindings));
        const double res = call_function(e.name, a, e);
        if (!std::isfinite(res))
            throw EvalError("non-finite result in " + to_string(e));
        return res;
    }
    }
    throw EvalError("corrupt expression node");
}

std::string to_string(const Expr& e) {
    switch (e.node) {
    case Expr::Node::Number: {
        std::ostringstream os;
        os.precision(17);
        os << e.number;
        return os.str();
    }
    case Expr::Node::Variable:
        return e.name;
    case Expr::Node::Unary:
        return "(-" + to_string(*e.args[0]) + ")";
    case Expr::Node::Binary:
        return "(" + to_string(*e.args[0]) + e.name + to_string(*e.args[1]) + ")";
    case Expr::Node::Call: {
        std::string s = e.name + "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i) s += ",";
            s += to_string(*e.args[i]);
        }
        return s + ")";
    }
    }
    return "?";
}

bool structurally_equal(const Expr& x, const Expr& y) {
    if (x.node != y.node || x.name != y.name || x.args.size() != y.args.size())
        return false;
    if (x.node == Expr::Node::Number && x.number != y.number) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!structurally_equal(*x.args[i], *y.args[i])) return false;
    return true;
}

} // namespace tbvp
