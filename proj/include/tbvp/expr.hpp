#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbvp {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

/// Immutable AST over numeric literals, declared variables, + - * / ^,
/// unary minus and the calls exp, log, sin, cos, sqrt, abs, min, max, pow.
/// pi and e are predefined identifiers.
struct Expr {
    using Ptr = std::shared_ptr<const Expr>;
    enum class Node { Number, Variable, Unary, Binary, Call };

    Node node;
    double number = 0.0;      // Number
    std::string name;         // Variable / Call / Binary operator symbol
    std::vector<Ptr> args;    // Unary: 1, Binary: 2, Call: arity of the function
};

/// Recursive-descent parse with standard precedence
/// (^ right-associative, then unary minus, then * /, then + -).
/// Variables must belong to the declared set.
Expr::Ptr parse(const std::string& source, const std::set<std::string>& variables);

/// IEEE double evaluation; domain errors (log of a nonpositive value,
/// division by zero, ...) raise EvalError rather than returning NaN.
double eval_expr(const Expr& e, const std::map<std::string, double>& bindings);

/// Fully parenthesized rendering; parse(print(e)) is structurally equal to e.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& x, const Expr& y);

} // namespace tbvp
