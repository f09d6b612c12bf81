#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace confrac {

enum class NodeKind { Number, Variable, Alpha, Constant, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Exp, Ln, Sqrt, Abs };

enum class NamedConstant { Pi, E };

std::string_view func_name(Func f) noexcept;
std::optional<Func> func_from_name(std::string_view name) noexcept;

/// Immutable expression tree in one real variable `t`, optionally referencing the
/// parameter `alpha`. Copies share structure; safe to share between threads.
class Expr {
public:
    static Expr number(double v);
    static Expr variable();
    static Expr alpha();
    static Expr constant(NamedConstant c);
    static Expr neg(Expr operand);
    static Expr binary(NodeKind kind, Expr lhs, Expr rhs);
    static Expr call(Func f, Expr arg);

    NodeKind kind() const noexcept;
    double value() const;          // Number only
    Func func() const;             // Call only
    NamedConstant named() const;   // Constant only
    std::span<const Expr> children() const noexcept;

    const Expr& operand() const { return children()[0]; }
    const Expr& lhs() const { return children()[0]; }
    const Expr& rhs() const { return children()[1]; }

    bool is_number() const noexcept { return kind() == NodeKind::Number; }
    bool is_number(double v) const noexcept;

    /// Total node count (shared subtrees counted once per occurrence).
    std::size_t size() const noexcept;

    friend bool operator==(const Expr& a, const Expr& b) noexcept;

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Point of evaluation. `alpha` substitutes the `alpha` token.
struct EvalEnv {
    double t = 0.0;
    double alpha = 1.0;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?
///   atom   := NUMBER | 't' | 'alpha' | 'pi' | 'e' | IDENT '(' expr ')' | '(' expr ')'
/// with IDENT one of sin, cos, exp, ln, sqrt, abs. `^` is right-associative and binds
/// tighter than unary minus, so "-t^2" is -(t^2) and "t^-1" is t^(-1).
/// Throws ParseError carrying the byte offset of the failure.
Expr parse(std::string_view text);

/// Fully parenthesized text; parse(to_text(e)) == e for every tree the parser can produce.
/// Negative literals (which only arise from construction) print as "(-x)".
std::string to_text(const Expr& e);

/// IEEE double evaluation. Throws DomainError for ln/sqrt outside their domain,
/// division by zero, zero to a negative power and a negative base raised to a
/// non-integer power.
double eval(const Expr& e, const EvalEnv& env);

/// Exact symbolic d/dt; `alpha` is treated as a constant. abs(u) differentiates to
/// u/abs(u)*u', so the derivative evaluates to a DomainError where u = 0.
Expr diff_classical(const Expr& e);

/// Chain-rule derivative in which the variable t differentiates to `dt` instead of 1.
/// With dt = t^(1-alpha) this is D_alpha, and the weight merges with powers of t at the leaves.
Expr diff_with(const Expr& e, const Expr& dt);

/// Replaces `alpha` by a number and folds constants, merging powers of t in products.
Expr bind_alpha(const Expr& e, double alpha);

bool depends_on_t(const Expr& e) noexcept;
bool depends_on_alpha(const Expr& e) noexcept;

/// Value of an expression free of both `t` and `alpha`, if it evaluates finitely.
std::optional<double> constant_value(const Expr& e) noexcept;

/// Smart constructors used for derivative construction. Each returns an expression equal
/// in value to the plain node wherever the plain node is defined, folding numeric
/// subexpressions and collecting powers of t inside products.
namespace build {
Expr sum(const Expr& a, const Expr& b);
Expr difference(const Expr& a, const Expr& b);
Expr product(const Expr& a, const Expr& b);
Expr quotient(const Expr& a, const Expr& b);
Expr power(const Expr& base, const Expr& exponent);
Expr negate(const Expr& a);
Expr apply(Func f, const Expr& arg);
}  // namespace build

}  // namespace confrac
