#pragma once

// Small expression language for user-supplied closed forms in JSON
// descriptors: numbers, named variables, the constants pi, e and i,
// + - * / ^, unary minus and the functions exp log sqrt sin cos tan sinh cosh
// tanh. Parsed once into a tree and evaluated with any scalar or jet type.

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "error.hpp"
#include "jet.hpp"

namespace zmc {

namespace detail {

template <typename T>
struct is_complex_scalar : std::false_type {};
template <typename R>
struct is_complex_scalar<std::complex<R>> : std::true_type {};

template <typename T>
struct scalar_of {
    using type = T;
};
template <typename S, int N>
struct scalar_of<Jet<S, N>> {
    using type = S;
};

} // namespace detail

class Expression {
public:
    enum class Op { Number, Imag, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };
    enum class Fn { Exp, Log, Sqrt, Sin, Cos, Tan, Sinh, Cosh, Tanh };

    struct Node {
        Op op = Op::Number;
        double number = 0.0;
        int var = 0;
        Fn fn = Fn::Exp;
        std::unique_ptr<Node> a;
        std::unique_ptr<Node> b;
    };

    /// `variables` lists the accepted identifiers in argument order.
    static Expression parse(const std::string& text, std::vector<std::string> variables)
    {
        Parser p{text, 0, variables};
        auto root = p.expr();
        p.skip_ws();
        if (p.pos != text.size()) p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
        Expression e;
        e.root_ = std::shared_ptr<Node>(root.release());
        e.vars_ = std::move(variables);
        e.text_ = text;
        return e;
    }

    [[nodiscard]] const std::string& text() const noexcept { return text_; }

    /// Evaluates with args[k] bound to variables[k]. T may be double,
    /// std::complex<double> or a Jet over either.
    template <typename T>
    [[nodiscard]] T eval(const std::vector<T>& args) const
    {
        if (args.size() != vars_.size()) throw Error(ErrorCode::InvalidArgument, "wrong number of expression arguments");
        return eval_node<T>(*root_, args);
    }

private:
    struct Parser {
        const std::string& s;
        std::size_t pos;
        const std::vector<std::string>& vars;

        [[noreturn]] void fail(const std::string& what) const
        {
            throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos) + " in \"" + s + "\"");
        }
        void skip_ws()
        {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool accept(char c)
        {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        static std::unique_ptr<Node> binary(Op op, std::unique_ptr<Node> a, std::unique_ptr<Node> b)
        {
            auto n = std::make_unique<Node>();
            n->op = op;
            n->a = std::move(a);
            n->b = std::move(b);
            return n;
        }
        std::unique_ptr<Node> expr()
        {
            auto lhs = term();
            for (;;) {
                if (accept('+')) {
                    lhs = binary(Op::Add, std::move(lhs), term());
                } else if (accept('-')) {
                    lhs = binary(Op::Sub, std::move(lhs), term());
                } else {
                    return lhs;
                }
            }
        }
        std::unique_ptr<Node> term()
        {
            auto lhs = unary();
            for (;;) {
                if (accept('*')) {
                    lhs = binary(Op::Mul, std::move(lhs), unary());
                } else if (accept('/')) {
                    lhs = binary(Op::Div, std::move(lhs), unary());
                } else {
                    return lhs;
                }
            }
        }
        std::unique_ptr<Node> unary()
        {
            if (accept('-')) {
                auto n = std::make_unique<Node>();
                n->op = Op::Neg;
                n->a = unary();
                return n;
            }
            if (accept('+')) return unary();
            return power();
        }
        std::unique_ptr<Node> power()
        {
            auto base = primary();
            if (accept('^')) return binary(Op::Pow, std::move(base), unary()); // right associative
            return base;
        }
        std::unique_ptr<Node> primary()
        {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end of expression");
            if (accept('(')) {
                auto e = expr();
                if (!accept(')')) fail("expected ')'");
                return e;
            }
            const char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                const char* begin = s.c_str() + pos;
                char* end = nullptr;
                const double v = std::strtod(begin, &end);
                if (end == begin) fail("bad number");
                pos += static_cast<std::size_t>(end - begin);
                auto n = std::make_unique<Node>();
                n->number = v;
                return n;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                const std::size_t start = pos;
                while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
                const std::string id = s.substr(start, pos - start);
                for (std::size_t k = 0; k < vars.size(); ++k) {
                    if (vars[k] == id) {
                        auto n = std::make_unique<Node>();
                        n->op = Op::Variable;
                        n->var = static_cast<int>(k);
                        return n;
                    }
                }
                if (id == "pi" || id == "e") {
                    auto n = std::make_unique<Node>();
                    n->number = id == "pi" ? std::numbers::pi : std::numbers::e;
                    return n;
                }
                if (id == "i") {
                    auto n = std::make_unique<Node>();
                    n->op = Op::Imag;
                    return n;
                }
                static const std::pair<const char*, Fn> table[] = {
                    {"exp", Fn::Exp},   {"log", Fn::Log},   {"sqrt", Fn::Sqrt}, {"sin", Fn::Sin},  {"cos", Fn::Cos},
                    {"tan", Fn::Tan},   {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh}, {"tanh", Fn::Tanh}};
                for (const auto& [name, fn] : table) {
                    if (id == name) {
                        if (!accept('(')) fail("expected '(' after " + id);
                        auto n = std::make_unique<Node>();
                        n->op = Op::Call;
                        n->fn = fn;
                        n->a = expr();
                        if (!accept(')')) fail("expected ')'");
                        return n;
                    }
                }
                pos = start;
                fail("unknown identifier '" + id + "'");
            }
            fail("unexpected '" + std::string(1, c) + "'");
        }
    };

    template <typename T>
    static T eval_node(const Node& n, const std::vector<T>& args)
    {
        using std::cos;
        using std::cosh;
        using std::exp;
        using std::log;
        using std::sin;
        using std::sinh;
        using std::sqrt;
        using std::tan;
        using std::tanh;
        using S = typename detail::scalar_of<T>::type;
        switch (n.op) {
        case Op::Number: return T(S(n.number));
        case Op::Imag:
            if constexpr (detail::is_complex_scalar<S>::value) {
                return T(S(0.0, 1.0));
            } else {
                throw Error(ErrorCode::ParseError, "the imaginary unit is not allowed in a real expression");
            }
        case Op::Variable: return args[static_cast<std::size_t>(n.var)];
        case Op::Add: return eval_node<T>(*n.a, args) + eval_node<T>(*n.b, args);
        case Op::Sub: return eval_node<T>(*n.a, args) - eval_node<T>(*n.b, args);
        case Op::Mul: return eval_node<T>(*n.a, args) * eval_node<T>(*n.b, args);
        case Op::Div: return eval_node<T>(*n.a, args) / eval_node<T>(*n.b, args);
        case Op::Neg: return T(S(0.0)) - eval_node<T>(*n.a, args);
        case Op::Pow: {
            const T base = eval_node<T>(*n.a, args);
            const Node& ex = *n.b;
            if (ex.op == Op::Number && ex.number == std::round(ex.number) && std::abs(ex.number) <= 64) {
                return ipow(base, static_cast<int>(ex.number));
            }
            return exp(eval_node<T>(ex, args) * log(base));
        }
        case Op::Call: {
            const T x = eval_node<T>(*n.a, args);
            switch (n.fn) {
            case Fn::Exp: return exp(x);
            case Fn::Log: return log(x);
            case Fn::Sqrt: return sqrt(x);
            case Fn::Sin: return sin(x);
            case Fn::Cos: return cos(x);
            case Fn::Tan: return tan(x);
            case Fn::Sinh: return sinh(x);
            case Fn::Cosh: return cosh(x);
            case Fn::Tanh: return tanh(x);
            }
        }
        }
        throw Error(ErrorCode::ParseError, "corrupt expression tree");
    }

    std::shared_ptr<Node> root_;
    std::vector<std::string> vars_;
    std::string text_;
};

} // namespace zmc
