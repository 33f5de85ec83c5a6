#include <cctype>
#include <utility>

#include "fairdiv/errors.hpp"
#include "fairdiv/welfare.hpp"

namespace fairdiv {

namespace {

ExprPtr make_constant(Rational value) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::constant;
    node->constant = std::move(value);
    return node;
}

ExprPtr make_coordinate() {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::coordinate;
    return node;
}

ExprPtr make_aggregate(AggOp agg, ExprPtr child) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::aggregate;
    node->agg = agg;
    node->child = std::move(child);
    return node;
}

ExprPtr make_fn(FnOp fn, ExprPtr child) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::fn;
    node->fn = fn;
    node->child = std::move(child);
    return node;
}

ExprPtr make_power(ExprPtr base, Rational exponent) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::power;
    node->child = std::move(base);
    node->exponent = std::move(exponent);
    return node;
}

ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::binary;
    node->op = op;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

// Recursive descent over two contexts: scalar expressions (aggregates,
// constants, arithmetic) and elementwise expressions under an aggregate
// (where 'u' is in scope and further aggregators are rejected).
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        ExprPtr root = scalar_expr();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return root;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, pos_);
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    std::string identifier() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Rational number() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number");
        }
        return Rational(boost::multiprecision::cpp_int(
            std::string(text_.substr(start, pos_ - start))));
    }

    // '^' exponent: digits, '-' digits, or a parenthesized rational
    // '(' ['-'] digits ['/' digits] ')'.
    Rational exponent() {
        if (consume('(')) {
            const bool negative = consume('-');
            Rational num = number();
            Rational result = num;
            if (consume('/')) {
                Rational den = number();
                if (den == 0) fail("zero denominator in exponent");
                result = num / den;
            }
            expect(')');
            return negative ? -result : result;
        }
        const bool negative = consume('-');
        Rational value = number();
        return negative ? -value : value;
    }

    BinOp to_bin_op(char c) {
        switch (c) {
            case '+': return BinOp::add;
            case '-': return BinOp::sub;
            case '*': return BinOp::mul;
            default: return BinOp::div;
        }
    }

    // --- scalar context ---------------------------------------------------

    ExprPtr scalar_expr() {
        ExprPtr lhs = scalar_term();
        while (true) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = make_binary(to_bin_op(c), std::move(lhs), scalar_term());
        }
    }

    ExprPtr scalar_term() {
        ExprPtr lhs = scalar_factor();
        while (true) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            lhs = make_binary(to_bin_op(c), std::move(lhs), scalar_factor());
        }
    }

    ExprPtr scalar_factor() {
        ExprPtr base = scalar_primary();
        if (consume('^')) {
            return make_power(std::move(base), exponent());
        }
        return base;
    }

    ExprPtr scalar_primary() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr inner = scalar_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return make_constant(number());
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            fail("expected an expression");
        }

        const std::size_t ident_pos = pos_;
        const std::string name = identifier();
        if (name == "sum" || name == "prod" || name == "min" || name == "max") {
            const AggOp agg = name == "sum"    ? AggOp::sum
                              : name == "prod" ? AggOp::prod
                              : name == "min"  ? AggOp::min
                                               : AggOp::max;
            expect('(');
            ExprPtr body = elem_expr();
            expect(')');
            return make_aggregate(agg, std::move(body));
        }
        if (name == "log" || name == "exp") {
            expect('(');
            ExprPtr body = scalar_expr();
            expect(')');
            return make_fn(name == "log" ? FnOp::log : FnOp::exp, std::move(body));
        }
        // Named shortcuts.
        if (name == "nash") return make_aggregate(AggOp::prod, make_coordinate());
        if (name == "util") return make_aggregate(AggOp::sum, make_coordinate());
        if (name == "egal") return make_aggregate(AggOp::min, make_coordinate());
        if (name == "lognash") {
            return make_aggregate(AggOp::sum, make_fn(FnOp::log, make_coordinate()));
        }
        if (name == "u") {
            throw StructuralError("'u' is only valid inside an aggregator", ident_pos);
        }
        throw ParseError("unknown identifier \"" + name + "\"", ident_pos);
    }

    // --- elementwise context ----------------------------------------------

    ExprPtr elem_expr() {
        ExprPtr lhs = elem_term();
        while (true) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = make_binary(to_bin_op(c), std::move(lhs), elem_term());
        }
    }

    ExprPtr elem_term() {
        ExprPtr lhs = elem_factor();
        while (true) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            lhs = make_binary(to_bin_op(c), std::move(lhs), elem_factor());
        }
    }

    ExprPtr elem_factor() {
        ExprPtr base = elem_primary();
        if (consume('^')) {
            return make_power(std::move(base), exponent());
        }
        return base;
    }

    ExprPtr elem_primary() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr inner = elem_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return make_constant(number());
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            fail("expected an elementwise expression");
        }

        const std::size_t ident_pos = pos_;
        const std::string name = identifier();
        if (name == "u") {
            return make_coordinate();
        }
        if (name == "log" || name == "exp") {
            expect('(');
            ExprPtr body = elem_expr();
            expect(')');
            return make_fn(name == "log" ? FnOp::log : FnOp::exp, std::move(body));
        }
        if (name == "sum" || name == "prod" || name == "min" || name == "max") {
            throw StructuralError("aggregator \"" + name +
                                  "\" nested inside an aggregator", ident_pos);
        }
        throw ParseError("unknown identifier \"" + name + "\"", ident_pos);
    }
};

bool is_rational_closed(const ExprNode& node) {
    switch (node.kind) {
        case ExprNode::Kind::constant:
        case ExprNode::Kind::coordinate:
            return true;
        case ExprNode::Kind::aggregate:
            return is_rational_closed(*node.child);
        case ExprNode::Kind::fn:
            return false;
        case ExprNode::Kind::power:
            return denominator(node.exponent) == 1 && is_rational_closed(*node.child);
        case ExprNode::Kind::binary:
            return is_rational_closed(*node.lhs) && is_rational_closed(*node.rhs);
    }
    return false;
}

} // namespace

WelfareExpr parse_welfare(std::string_view text) {
    Parser parser(text);
    WelfareExpr expr;
    expr.root = parser.parse();
    expr.rational_closed = is_rational_closed(*expr.root);

    // Keep the original text, trimmed, for reports.
    std::size_t first = 0, last = text.size();
    while (first < last && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
    while (last > first && std::isspace(static_cast<unsigned char>(text[last - 1]))) --last;
    expr.source = std::string(text.substr(first, last - first));
    return expr;
}

} // namespace fairdiv
