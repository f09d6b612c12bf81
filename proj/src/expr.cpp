#include "confrac/expr.hpp"

#include "confrac/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace confrac {

struct Expr::Node {
    NodeKind kind = NodeKind::Number;
    double value = 0.0;
    Func func = Func::Sin;
    NamedConstant named = NamedConstant::Pi;
    std::vector<Expr> children;
};

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 6> kFuncNames{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"exp", Func::Exp},
    {"ln", Func::Ln},
    {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},
}};

double named_value(NamedConstant c) noexcept {
    return c == NamedConstant::Pi ? std::numbers::pi : std::numbers::e;
}

double checked_pow(double base, double exponent) {
    if (base < 0.0 && exponent != std::floor(exponent)) {
        throw DomainError("negative base raised to a non-integer power");
    }
    if (base == 0.0 && exponent < 0.0) {
        throw DomainError("zero raised to a negative power");
    }
    return std::pow(base, exponent);
}

double checked_div(double num, double den) {
    if (den == 0.0) throw DomainError("division by zero");
    return num / den;
}

double apply_func(Func f, double x) {
    switch (f) {
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Exp: return std::exp(x);
        case Func::Ln:
            if (x <= 0.0) throw DomainError("ln of a nonpositive value");
            return std::log(x);
        case Func::Sqrt:
            if (x < 0.0) throw DomainError("sqrt of a negative value");
            return std::sqrt(x);
        case Func::Abs: return std::fabs(x);
    }
    throw std::logic_error("unknown function");
}

}  // namespace

std::string_view func_name(Func f) noexcept {
    for (const auto& [name, fn] : kFuncNames) {
        if (fn == f) return name;
    }
    return "?";
}

std::optional<Func> func_from_name(std::string_view name) noexcept {
    for (const auto& [n, fn] : kFuncNames) {
        if (n == name) return fn;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Construction and inspection

Expr Expr::number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Number;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::variable() {
    static const Expr t = [] {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Variable;
        return Expr(std::move(n));
    }();
    return t;
}

Expr Expr::alpha() {
    static const Expr a = [] {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Alpha;
        return Expr(std::move(n));
    }();
    return a;
}

Expr Expr::constant(NamedConstant c) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Constant;
    n->named = c;
    return Expr(std::move(n));
}

Expr Expr::neg(Expr operand) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Neg;
    n->children.push_back(std::move(operand));
    return Expr(std::move(n));
}

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs) {
    switch (kind) {
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div:
        case NodeKind::Pow: break;
        default: throw std::invalid_argument("Expr::binary: not a binary node kind");
    }
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children.reserve(2);
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Call;
    n->func = f;
    n->children.push_back(std::move(arg));
    return Expr(std::move(n));
}

NodeKind Expr::kind() const noexcept { return node_->kind; }

double Expr::value() const {
    if (node_->kind != NodeKind::Number) throw std::logic_error("Expr::value on a non-number");
    return node_->value;
}

Func Expr::func() const {
    if (node_->kind != NodeKind::Call) throw std::logic_error("Expr::func on a non-call");
    return node_->func;
}

NamedConstant Expr::named() const {
    if (node_->kind != NodeKind::Constant) throw std::logic_error("Expr::named on a non-constant");
    return node_->named;
}

std::span<const Expr> Expr::children() const noexcept { return node_->children; }

bool Expr::is_number(double v) const noexcept {
    return node_->kind == NodeKind::Number && node_->value == v;
}

std::size_t Expr::size() const noexcept {
    std::size_t n = 1;
    for (const auto& c : node_->children) n += c.size();
    return n;
}

bool operator==(const Expr& a, const Expr& b) noexcept {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.children.size() != y.children.size()) return false;
    switch (x.kind) {
        case NodeKind::Number:
            if (x.value != y.value) return false;
            break;
        case NodeKind::Constant:
            if (x.named != y.named) return false;
            break;
        case NodeKind::Call:
            if (x.func != y.func) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < x.children.size(); ++i) {
        if (!(x.children[i] == y.children[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        }
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(NodeKind::Add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = Expr::binary(NodeKind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(NodeKind::Mul, lhs, parse_factor());
            } else if (accept('/')) {
                lhs = Expr::binary(NodeKind::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_factor() {
        if (accept('-')) return Expr::neg(parse_factor());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (accept('^')) return Expr::binary(NodeKind::Pow, base, parse_factor());
        return base;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw ParseError("malformed number", start);
        // Exponent only when digits follow; otherwise "2e" leaves the 'e' for the caller.
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double v = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) throw ParseError("malformed number", start);
        return Expr::number(v);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "t") return Expr::variable();
        if (name == "alpha") return Expr::alpha();
        if (name == "pi") return Expr::constant(NamedConstant::Pi);
        if (name == "e") return Expr::constant(NamedConstant::E);
        const auto f = func_from_name(name);
        if (!f) throw ParseError("unknown function '" + std::string(name) + "'", start);
        if (!accept('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
        Expr arg = parse_expr();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        return Expr::call(*f, std::move(arg));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::fabs(v));
    std::string s(buf.data(), ptr);
    if (std::signbit(v)) return "(-" + s + ")";
    return s;
}

void print(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case NodeKind::Number: out += format_number(e.value()); return;
        case NodeKind::Variable: out += 't'; return;
        case NodeKind::Alpha: out += "alpha"; return;
        case NodeKind::Constant: out += e.named() == NamedConstant::Pi ? "pi" : "e"; return;
        case NodeKind::Neg:
            out += "(-";
            print(e.operand(), out);
            out += ')';
            return;
        case NodeKind::Call:
            out += func_name(e.func());
            out += '(';
            print(e.operand(), out);
            out += ')';
            return;
        default: break;
    }
    const char* op = nullptr;
    switch (e.kind()) {
        case NodeKind::Add: op = " + "; break;
        case NodeKind::Sub: op = " - "; break;
        case NodeKind::Mul: op = "*"; break;
        case NodeKind::Div: op = "/"; break;
        case NodeKind::Pow: op = "^"; break;
        default: throw std::logic_error("to_text: unexpected node");
    }
    out += '(';
    print(e.lhs(), out);
    out += op;
    print(e.rhs(), out);
    out += ')';
}

}  // namespace

std::string to_text(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double eval_node(const Expr& e, const EvalEnv& env) {
    switch (e.kind()) {
        case NodeKind::Number: return e.value();
        case NodeKind::Variable: return env.t;
        case NodeKind::Alpha: return env.alpha;
        case NodeKind::Constant: return named_value(e.named());
        case NodeKind::Neg: return -eval_node(e.operand(), env);
        case NodeKind::Add: return eval_node(e.lhs(), env) + eval_node(e.rhs(), env);
        case NodeKind::Sub: return eval_node(e.lhs(), env) - eval_node(e.rhs(), env);
        case NodeKind::Mul: return eval_node(e.lhs(), env) * eval_node(e.rhs(), env);
        case NodeKind::Div: return checked_div(eval_node(e.lhs(), env), eval_node(e.rhs(), env));
        case NodeKind::Pow: return checked_pow(eval_node(e.lhs(), env), eval_node(e.rhs(), env));
        case NodeKind::Call: return apply_func(e.func(), eval_node(e.operand(), env));
    }
    throw std::logic_error("eval: unexpected node");
}

}  // namespace

double eval(const Expr& e, const EvalEnv& env) {
    if (!(env.alpha > 0.0 && env.alpha <= 1.0)) {
        throw InvalidArgument("alpha must lie in (0, 1]");
    }
    if (!std::isfinite(env.t)) throw InvalidArgument("evaluation point must be finite");
    return eval_node(e, env);
}

bool depends_on_t(const Expr& e) noexcept {
    if (e.kind() == NodeKind::Variable) return true;
    for (const auto& c : e.children()) {
        if (depends_on_t(c)) return true;
    }
    return false;
}

bool depends_on_alpha(const Expr& e) noexcept {
    if (e.kind() == NodeKind::Alpha) return true;
    for (const auto& c : e.children()) {
        if (depends_on_alpha(c)) return true;
    }
    return false;
}

std::optional<double> constant_value(const Expr& e) noexcept {
    if (depends_on_t(e) || depends_on_alpha(e)) return std::nullopt;
    try {
        const double v = eval_node(e, EvalEnv{});
        if (std::isfinite(v)) return v;
    } catch (const Error&) {
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Smart constructors

namespace build {

namespace {

bool is_t_power(const Expr& e) {
    return e.kind() == NodeKind::Pow && e.lhs().kind() == NodeKind::Variable && e.rhs().is_number();
}

// Exponents built by repeated alpha arithmetic, e.g. (3a-1) + (1-a) + (a-1) + (1-a), miss
// their integer value by a few ulps; t^1e-16 would then vanish at t = 0 instead of being 1.
double snap_exponent(double p) {
    const double r = std::round(p);
    return std::fabs(p - r) <= 1e-12 * std::max(1.0, std::fabs(p)) ? r : p;
}

Expr t_power(double p) {
    p = snap_exponent(p);
    if (p == 0.0) return Expr::number(1.0);
    if (p == 1.0) return Expr::variable();
    return Expr::binary(NodeKind::Pow, Expr::variable(), Expr::number(p));
}

struct Monomial {
    double coef = 1.0;
    double t_exponent = 0.0;
    std::vector<Expr> others;
};

void collect(const Expr& e, Monomial& m) {
    switch (e.kind()) {
        case NodeKind::Number: m.coef *= e.value(); return;
        case NodeKind::Variable: m.t_exponent += 1.0; return;
        case NodeKind::Neg:
            m.coef = -m.coef;
            collect(e.operand(), m);
            return;
        case NodeKind::Mul:
            collect(e.lhs(), m);
            collect(e.rhs(), m);
            return;
        default: break;
    }
    if (is_t_power(e)) {
        m.t_exponent += e.rhs().value();
        return;
    }
    m.others.push_back(e);
}

Expr rebuild(const Monomial& m) {
    if (m.coef == 0.0) return Expr::number(0.0);
    std::optional<Expr> prod;
    if (snap_exponent(m.t_exponent) != 0.0) prod = t_power(m.t_exponent);
    for (const auto& f : m.others) {
        prod = prod ? Expr::binary(NodeKind::Mul, *prod, f) : f;
    }
    if (!prod) return Expr::number(m.coef);
    if (m.coef == 1.0) return *prod;
    if (m.coef == -1.0) return Expr::neg(*prod);
    return Expr::binary(NodeKind::Mul, Expr::number(m.coef), *prod);
}

std::optional<Expr> fold(const Expr& candidate) {
    try {
        const double v = eval_node(candidate, EvalEnv{});
        if (std::isfinite(v)) return Expr::number(v);
    } catch (const DomainError&) {
    }
    return std::nullopt;
}

}  // namespace

Expr sum(const Expr& a, const Expr& b) {
    if (a.is_number(0.0)) return b;
    if (b.is_number(0.0)) return a;
    if (a.is_number() && b.is_number()) return Expr::number(a.value() + b.value());
    if (b.is_number() && b.value() < 0.0) {
        return Expr::binary(NodeKind::Sub, a, Expr::number(-b.value()));
    }
    if (b.kind() == NodeKind::Neg) return Expr::binary(NodeKind::Sub, a, b.operand());
    return Expr::binary(NodeKind::Add, a, b);
}

Expr difference(const Expr& a, const Expr& b) {
    if (b.is_number(0.0)) return a;
    if (a.is_number(0.0)) return negate(b);
    if (a.is_number() && b.is_number()) return Expr::number(a.value() - b.value());
    if (a == b) return Expr::number(0.0);
    if (b.kind() == NodeKind::Neg) return Expr::binary(NodeKind::Add, a, b.operand());
    return Expr::binary(NodeKind::Sub, a, b);
}

Expr negate(const Expr& a) {
    if (a.is_number()) return Expr::number(-a.value());
    if (a.kind() == NodeKind::Neg) return a.operand();
    if (a.kind() == NodeKind::Mul) return product(Expr::number(-1.0), a);
    return Expr::neg(a);
}

Expr product(const Expr& a, const Expr& b) {
    Monomial m;
    collect(a, m);
    collect(b, m);
    return rebuild(m);
}

Expr quotient(const Expr& a, const Expr& b) {
    if (b.is_number(1.0)) return a;
    if (a.is_number(0.0) && !b.is_number(0.0)) return Expr::number(0.0);
    if (a.is_number() && b.is_number() && b.value() != 0.0) {
        return Expr::number(a.value() / b.value());
    }
    if (b.is_number() && b.value() != 0.0) return product(Expr::number(1.0 / b.value()), a);
    if (b.kind() == NodeKind::Variable) return product(a, t_power(-1.0));
    if (is_t_power(b)) return product(a, t_power(-b.rhs().value()));
    return Expr::binary(NodeKind::Div, a, b);
}

Expr power(const Expr& base, const Expr& exponent) {
    if (exponent.is_number(0.0)) return Expr::number(1.0);
    if (exponent.is_number(1.0)) return base;
    if (base.is_number(1.0)) return Expr::number(1.0);
    if (base.is_number() && exponent.is_number()) {
        if (auto folded = fold(Expr::binary(NodeKind::Pow, base, exponent))) return *folded;
    }
    if (exponent.is_number()) {
        const double q = exponent.value();
        if (base.kind() == NodeKind::Variable) return t_power(q);
        if (is_t_power(base)) return t_power(base.rhs().value() * q);
        if (base.kind() == NodeKind::Mul || base.kind() == NodeKind::Neg) {
            Monomial m;
            collect(base, m);
            if (m.others.empty() && (m.coef > 0.0 || q == std::floor(q))) {
                Monomial out;
                out.coef = std::pow(m.coef, q);
                out.t_exponent = m.t_exponent * q;
                if (std::isfinite(out.coef)) return rebuild(out);
            }
        }
    }
    return Expr::binary(NodeKind::Pow, base, exponent);
}

Expr apply(Func f, const Expr& arg) {
    Expr node = Expr::call(f, arg);
    if (arg.is_number()) {
        if (auto folded = fold(node)) return *folded;
    }
    return node;
}

}  // namespace build

// ---------------------------------------------------------------------------
// Differentiation

Expr diff_with(const Expr& e, const Expr& dt) {
    using namespace build;
    const auto d = [&dt](const Expr& x) { return diff_with(x, dt); };
    switch (e.kind()) {
        case NodeKind::Number:
        case NodeKind::Alpha:
        case NodeKind::Constant: return Expr::number(0.0);
        case NodeKind::Variable: return dt;
        case NodeKind::Neg: return negate(d(e.operand()));
        case NodeKind::Add: return sum(d(e.lhs()), d(e.rhs()));
        case NodeKind::Sub: return difference(d(e.lhs()), d(e.rhs()));
        case NodeKind::Mul: {
            const Expr& u = e.lhs();
            const Expr& v = e.rhs();
            return sum(product(d(u), v), product(u, d(v)));
        }
        case NodeKind::Div: {
            const Expr& u = e.lhs();
            const Expr& v = e.rhs();
            if (!depends_on_t(v)) return quotient(d(u), v);
            Expr num = difference(product(d(u), v), product(u, d(v)));
            return quotient(num, power(v, Expr::number(2.0)));
        }
        case NodeKind::Pow: {
            const Expr& u = e.lhs();
            const Expr& v = e.rhs();
            const bool u_varies = depends_on_t(u);
            const bool v_varies = depends_on_t(v);
            if (!u_varies && !v_varies) return Expr::number(0.0);
            if (!v_varies) {
                // c * u^(c-1) * u'
                Expr reduced = power(u, difference(v, Expr::number(1.0)));
                return product(product(v, reduced), d(u));
            }
            if (!u_varies) {
                return product(product(e, apply(Func::Ln, u)), d(v));
            }
            // u^v * (v' ln u + v u'/u)
            Expr inner = sum(product(d(v), apply(Func::Ln, u)),
                             quotient(product(v, d(u)), u));
            return product(e, inner);
        }
        case NodeKind::Call: {
            const Expr& u = e.operand();
            Expr du = d(u);
            if (du.is_number(0.0)) return Expr::number(0.0);
            switch (e.func()) {
                case Func::Sin: return product(apply(Func::Cos, u), du);
                case Func::Cos: return negate(product(apply(Func::Sin, u), du));
                case Func::Exp: return product(e, du);
                case Func::Ln: return quotient(du, u);
                case Func::Sqrt: return quotient(du, product(Expr::number(2.0), e));
                case Func::Abs: return product(quotient(u, e), du);
            }
            break;
        }
    }
    throw std::logic_error("diff_with: unexpected node");
}

Expr diff_classical(const Expr& e) { return diff_with(e, Expr::number(1.0)); }

Expr bind_alpha(const Expr& e, double alpha) {
    using namespace build;
    switch (e.kind()) {
        case NodeKind::Number:
        case NodeKind::Variable: return e;
        case NodeKind::Alpha: return Expr::number(alpha);
        case NodeKind::Constant: return Expr::number(named_value(e.named()));
        case NodeKind::Neg: return negate(bind_alpha(e.operand(), alpha));
        case NodeKind::Add: return sum(bind_alpha(e.lhs(), alpha), bind_alpha(e.rhs(), alpha));
        case NodeKind::Sub: return difference(bind_alpha(e.lhs(), alpha), bind_alpha(e.rhs(), alpha));
        case NodeKind::Mul: return product(bind_alpha(e.lhs(), alpha), bind_alpha(e.rhs(), alpha));
        case NodeKind::Div: return quotient(bind_alpha(e.lhs(), alpha), bind_alpha(e.rhs(), alpha));
        case NodeKind::Pow: return power(bind_alpha(e.lhs(), alpha), bind_alpha(e.rhs(), alpha));
        case NodeKind::Call: return apply(e.func(), bind_alpha(e.operand(), alpha));
    }
    throw std::logic_error("bind_alpha: unexpected node");
}

}  // namespace confrac
