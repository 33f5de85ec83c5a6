#ifndef FAIRDIV_WELFARE_HPP
#define FAIRDIV_WELFARE_HPP

#include <memory>
#include <string>
#include <string_view>

#include "fairdiv/model.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

enum class AggOp { sum, prod, min, max };
enum class FnOp { log, exp };
enum class BinOp { add, sub, mul, div };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// One node of a welfare expression. Aggregate nodes apply sum/prod/min/max
// to an elementwise child evaluated at each coordinate of u; coordinate
// nodes are only reachable through an aggregate.
struct ExprNode {
    enum class Kind { constant, coordinate, aggregate, fn, power, binary };

    Kind kind;
    Rational constant;  // Kind::constant
    AggOp agg{};        // Kind::aggregate
    FnOp fn{};          // Kind::fn
    Rational exponent;  // Kind::power
    BinOp op{};         // Kind::binary
    ExprPtr child;      // aggregate / fn / power operand
    ExprPtr lhs, rhs;   // binary operands
};

// A welfare function over the utility vector: scalar arithmetic over
// aggregates of elementwise expressions in u, with a single aggregation
// level. rational_closed marks trees built only from +, -, *, /, min, max
// and integer powers; such trees evaluate exactly.
struct WelfareExpr {
    ExprPtr root;
    bool rational_closed = false;
    std::string source;
};

// Parses the expression grammar (see README). Named shortcuts resolve:
// "nash" -> prod(u), "lognash" -> sum(log(u)), "util" -> sum(u),
// "egal" -> min(u). Throws ParseError with a byte offset on syntax errors
// and StructuralError on an aggregator nested inside another.
WelfareExpr parse_welfare(std::string_view text);

enum class Backend { exact, floating };

// A value in [-inf, inf): either NEG_INFINITY or a finite number carried by
// the backend that produced it. NEG_INFINITY compares below every finite
// value; finite exact values compare exactly.
class ExtendedValue {
public:
    ExtendedValue() : backend_(Backend::exact), neg_inf_(false) {}

    static ExtendedValue neg_infinity(Backend backend);
    static ExtendedValue exact(Rational value);
    static ExtendedValue floating(BigFloat value);

    Backend backend() const { return backend_; }
    bool is_neg_infinity() const { return neg_inf_; }
    bool is_finite() const { return !neg_inf_; }

    // Finite accessors; throw InputError when misused.
    const Rational& exact_value() const;
    const BigFloat& floating_value() const;
    BigFloat as_float() const;

    // "-inf", exact "p/q", or the 40-digit float rendering.
    std::string str() const;

private:
    Backend backend_;
    bool neg_inf_;
    Rational rat_;
    BigFloat flt_;
};

enum class Ordering { less, equal, greater };

// Relative tolerance used to call two floating welfare values equal.
const BigFloat& default_compare_tolerance(); // 2^-64

// Three-way comparison. Under the floating backend, equal means
// |a - b| <= tolerance * max(1, |a|, |b|); mixed backends are compared by
// converting the exact side.
Ordering compare_values(const ExtendedValue& a, const ExtendedValue& b);
Ordering compare_values(const ExtendedValue& a, const ExtendedValue& b,
                        const BigFloat& tolerance);

struct ComparisonResult {
    Ordering ordering;
    ExtendedValue left;
    ExtendedValue right;
    Backend backend;
    BigFloat tolerance; // zero under the exact backend
};

// Evaluates f at x (n >= 2 nonnegative entries). Picks the exact backend
// iff f.rational_closed; log(0) yields NEG_INFINITY, which absorbs through
// sum. Throws DomainError on division by zero and on operations that would
// leave [-inf, inf).
ExtendedValue evaluate(const WelfareExpr& f, const UtilityVector& x);

// Same evaluation forced onto the floating backend regardless of
// rational_closed (used to audit backend agreement).
ExtendedValue evaluate_floating(const WelfareExpr& f, const UtilityVector& x);

// Evaluates f at both vectors and compares, recording the backend and the
// tolerance in effect.
ComparisonResult compare(const WelfareExpr& f, const UtilityVector& x,
                         const UtilityVector& y);

// Tie-breaking key for maximum Nash welfare on degenerate profiles: first
// the number of agents with positive utility, then the product over those
// agents (empty product = 1). Keys order lexicographically.
struct MnwKey {
    int positive_count = 0;
    Rational positive_product = 1;

    bool operator==(const MnwKey&) const = default;
};

Ordering compare_keys(const MnwKey& a, const MnwKey& b);
MnwKey mnw_key(const UtilityVector& x);

} // namespace fairdiv

#endif
