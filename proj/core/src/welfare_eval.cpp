#include <cassert>

#include "fairdiv/errors.hpp"
#include "fairdiv/welfare.hpp"

namespace fairdiv {

// --- ExtendedValue ----------------------------------------------------------

ExtendedValue ExtendedValue::neg_infinity(Backend backend) {
    ExtendedValue v;
    v.backend_ = backend;
    v.neg_inf_ = true;
    return v;
}

ExtendedValue ExtendedValue::exact(Rational value) {
    ExtendedValue v;
    v.backend_ = Backend::exact;
    v.rat_ = std::move(value);
    return v;
}

ExtendedValue ExtendedValue::floating(BigFloat value) {
    ExtendedValue v;
    v.backend_ = Backend::floating;
    v.flt_ = std::move(value);
    return v;
}

const Rational& ExtendedValue::exact_value() const {
    if (neg_inf_ || backend_ != Backend::exact) {
        throw InputError("value is not a finite exact rational");
    }
    return rat_;
}

const BigFloat& ExtendedValue::floating_value() const {
    if (neg_inf_ || backend_ != Backend::floating) {
        throw InputError("value is not a finite float");
    }
    return flt_;
}

BigFloat ExtendedValue::as_float() const {
    if (neg_inf_) {
        throw InputError("NEG_INFINITY has no float form");
    }
    return backend_ == Backend::exact ? to_bigfloat(rat_) : flt_;
}

std::string ExtendedValue::str() const {
    if (neg_inf_) return "-inf";
    return backend_ == Backend::exact ? to_string(rat_) : to_string(flt_);
}

const BigFloat& default_compare_tolerance() {
    static const BigFloat tol = ldexp(BigFloat(1), -64);
    return tol;
}

Ordering compare_values(const ExtendedValue& a, const ExtendedValue& b) {
    return compare_values(a, b, default_compare_tolerance());
}

Ordering compare_values(const ExtendedValue& a, const ExtendedValue& b,
                        const BigFloat& tolerance) {
    if (a.is_neg_infinity() || b.is_neg_infinity()) {
        if (a.is_neg_infinity() && b.is_neg_infinity()) return Ordering::equal;
        return a.is_neg_infinity() ? Ordering::less : Ordering::greater;
    }
    if (a.backend() == Backend::exact && b.backend() == Backend::exact) {
        const Rational& x = a.exact_value();
        const Rational& y = b.exact_value();
        if (x < y) return Ordering::less;
        if (y < x) return Ordering::greater;
        return Ordering::equal;
    }
    const BigFloat x = a.as_float();
    const BigFloat y = b.as_float();
    BigFloat scale = abs(x);
    if (abs(y) > scale) scale = abs(y);
    if (scale < 1) scale = 1;
    if (abs(x - y) <= tolerance * scale) return Ordering::equal;
    return x < y ? Ordering::less : Ordering::greater;
}

// --- evaluation -------------------------------------------------------------

namespace {

// A rational_closed tree evaluates to plain rationals: log/exp never occur,
// so NEG_INFINITY cannot arise.
struct ExactPolicy {
    using Value = Rational;

    static Value from_rational(const Rational& r) { return r; }

    static Value add(const Value& a, const Value& b) { return a + b; }
    static Value sub(const Value& a, const Value& b) { return a - b; }
    static Value mul(const Value& a, const Value& b) { return a * b; }
    static Value div(const Value& a, const Value& b) {
        if (b == 0) throw DomainError("division by zero");
        return a / b;
    }
    static Value min(const Value& a, const Value& b) { return a < b ? a : b; }
    static Value max(const Value& a, const Value& b) { return a < b ? b : a; }

    static Value pow(const Value& base, const Rational& exponent) {
        assert(denominator(exponent) == 1);
        return pow_rational(base, static_cast<long>(numerator(exponent)));
    }
    [[noreturn]] static Value log(const Value&) {
        throw DomainError("log has no exact form");
    }
    [[noreturn]] static Value exp(const Value&) {
        throw DomainError("exp has no exact form");
    }
};

// Extended float in [-inf, inf). Operations that would produce +inf or an
// indeterminate form raise DomainError.
struct ExtFloat {
    bool neg_inf = false;
    BigFloat value;
};

struct FloatPolicy {
    using Value = ExtFloat;

    static Value from_rational(const Rational& r) {
        return {false, to_bigfloat(r)};
    }
    static Value finite(BigFloat v) { return {false, std::move(v)}; }

    static Value add(const Value& a, const Value& b) {
        if (a.neg_inf || b.neg_inf) return {true, {}};
        return finite(a.value + b.value);
    }
    static Value sub(const Value& a, const Value& b) {
        if (b.neg_inf) throw DomainError("subtracting -inf leaves [-inf, inf)");
        if (a.neg_inf) return {true, {}};
        return finite(a.value - b.value);
    }
    static Value mul(const Value& a, const Value& b) {
        if (a.neg_inf || b.neg_inf) {
            if (a.neg_inf && b.neg_inf) {
                throw DomainError("(-inf) * (-inf) leaves [-inf, inf)");
            }
            const BigFloat& other = a.neg_inf ? b.value : a.value;
            if (other > 0) return {true, {}};
            throw DomainError("multiplying -inf by a nonpositive value");
        }
        return finite(a.value * b.value);
    }
    static Value div(const Value& a, const Value& b) {
        if (b.neg_inf) {
            if (a.neg_inf) throw DomainError("(-inf) / (-inf) is indeterminate");
            return finite(BigFloat(0));
        }
        if (b.value == 0) throw DomainError("division by zero");
        if (a.neg_inf) {
            if (b.value > 0) return {true, {}};
            throw DomainError("dividing -inf by a negative value");
        }
        return finite(a.value / b.value);
    }
    static Value min(const Value& a, const Value& b) {
        if (a.neg_inf) return a;
        if (b.neg_inf) return b;
        return a.value < b.value ? a : b;
    }
    static Value max(const Value& a, const Value& b) {
        if (a.neg_inf) return b;
        if (b.neg_inf) return a;
        return a.value < b.value ? b : a;
    }

    static Value pow(const Value& base, const Rational& exponent) {
        if (base.neg_inf) throw DomainError("power of -inf");
        const bool integral = denominator(exponent) == 1;
        if (base.value == 0) {
            if (exponent < 0) throw DomainError("zero base with negative exponent");
            return finite(BigFloat(exponent == 0 ? 1 : 0));
        }
        if (base.value < 0 && !integral) {
            throw DomainError("fractional power of a negative value");
        }
        return finite(boost::multiprecision::pow(base.value, to_bigfloat(exponent)));
    }
    static Value log(const Value& a) {
        if (a.neg_inf || a.value < 0) throw DomainError("log of a negative value");
        if (a.value == 0) return {true, {}};
        return finite(boost::multiprecision::log(a.value));
    }
    static Value exp(const Value& a) {
        if (a.neg_inf) return finite(BigFloat(0));
        return finite(boost::multiprecision::exp(a.value));
    }
};

template <typename Policy>
typename Policy::Value eval_node(const ExprNode& node,
                                 const std::vector<typename Policy::Value>& coords,
                                 const typename Policy::Value* coordinate) {
    using Value = typename Policy::Value;
    switch (node.kind) {
        case ExprNode::Kind::constant:
            return Policy::from_rational(node.constant);
        case ExprNode::Kind::coordinate:
            assert(coordinate != nullptr);
            return *coordinate;
        case ExprNode::Kind::aggregate: {
            Value acc = eval_node<Policy>(*node.child, coords, &coords[0]);
            for (std::size_t i = 1; i < coords.size(); ++i) {
                Value v = eval_node<Policy>(*node.child, coords, &coords[i]);
                switch (node.agg) {
                    case AggOp::sum: acc = Policy::add(acc, v); break;
                    case AggOp::prod: acc = Policy::mul(acc, v); break;
                    case AggOp::min: acc = Policy::min(acc, v); break;
                    case AggOp::max: acc = Policy::max(acc, v); break;
                }
            }
            return acc;
        }
        case ExprNode::Kind::fn: {
            Value v = eval_node<Policy>(*node.child, coords, coordinate);
            return node.fn == FnOp::log ? Policy::log(v) : Policy::exp(v);
        }
        case ExprNode::Kind::power:
            return Policy::pow(eval_node<Policy>(*node.child, coords, coordinate),
                               node.exponent);
        case ExprNode::Kind::binary: {
            Value a = eval_node<Policy>(*node.lhs, coords, coordinate);
            Value b = eval_node<Policy>(*node.rhs, coords, coordinate);
            switch (node.op) {
                case BinOp::add: return Policy::add(a, b);
                case BinOp::sub: return Policy::sub(a, b);
                case BinOp::mul: return Policy::mul(a, b);
                case BinOp::div: return Policy::div(a, b);
            }
        }
    }
    throw InputError("malformed expression tree");
}

void check_input(const WelfareExpr& f, const UtilityVector& x) {
    if (!f.root) throw InputError("empty welfare expression");
    if (x.size() < 2) throw InputError("utility vector needs at least 2 entries");
    for (const Rational& v : x) {
        if (v < 0) throw InputError("negative entry in utility vector");
    }
}

} // namespace

ExtendedValue evaluate(const WelfareExpr& f, const UtilityVector& x) {
    check_input(f, x);
    if (f.rational_closed) {
        return ExtendedValue::exact(eval_node<ExactPolicy>(*f.root, x, nullptr));
    }
    std::vector<ExtFloat> coords;
    coords.reserve(x.size());
    for (const Rational& v : x) coords.push_back(FloatPolicy::from_rational(v));
    const ExtFloat result = eval_node<FloatPolicy>(*f.root, coords, nullptr);
    return result.neg_inf ? ExtendedValue::neg_infinity(Backend::floating)
                          : ExtendedValue::floating(result.value);
}

ExtendedValue evaluate_floating(const WelfareExpr& f, const UtilityVector& x) {
    check_input(f, x);
    std::vector<ExtFloat> coords;
    coords.reserve(x.size());
    for (const Rational& v : x) coords.push_back(FloatPolicy::from_rational(v));
    const ExtFloat result = eval_node<FloatPolicy>(*f.root, coords, nullptr);
    return result.neg_inf ? ExtendedValue::neg_infinity(Backend::floating)
                          : ExtendedValue::floating(result.value);
}

ComparisonResult compare(const WelfareExpr& f, const UtilityVector& x,
                         const UtilityVector& y) {
    if (x.size() != y.size()) {
        throw InputError("compared vectors must have equal length");
    }
    ComparisonResult result{Ordering::equal, evaluate(f, x), evaluate(f, y),
                            f.rational_closed ? Backend::exact : Backend::floating,
                            BigFloat(0)};
    if (!f.rational_closed) {
        result.tolerance = default_compare_tolerance();
    }
    result.ordering = compare_values(result.left, result.right);
    return result;
}

// --- MNW key ----------------------------------------------------------------

Ordering compare_keys(const MnwKey& a, const MnwKey& b) {
    if (a.positive_count != b.positive_count) {
        return a.positive_count < b.positive_count ? Ordering::less : Ordering::greater;
    }
    if (a.positive_product != b.positive_product) {
        return a.positive_product < b.positive_product ? Ordering::less
                                                       : Ordering::greater;
    }
    return Ordering::equal;
}

MnwKey mnw_key(const UtilityVector& x) {
    MnwKey key;
    for (const Rational& v : x) {
        if (v < 0) throw InputError("negative entry in utility vector");
        if (v > 0) {
            ++key.positive_count;
            key.positive_product *= v;
        }
    }
    return key;
}

} // namespace fairdiv
