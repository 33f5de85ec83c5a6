#include <doctest.h>

#include <random>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/welfare.hpp"
#include "oracle.hpp"

using namespace fairdiv;

namespace {

UtilityVector vec(std::initializer_list<Rational> values) { return values; }

Rational exact_of(const WelfareExpr& f, const UtilityVector& x) {
    return evaluate(f, x).exact_value();
}

UtilityVector random_positive(std::mt19937_64& rng, int n) {
    UtilityVector x(n);
    for (Rational& v : x) {
        v = Rational(1 + oracle::below(rng, 10), 1 + oracle::below(rng, 4));
    }
    return x;
}

} // namespace

TEST_CASE("parsing structure and rational_closed") {
    const WelfareExpr sum = parse_welfare("sum(u)");
    CHECK(sum.root->kind == ExprNode::Kind::aggregate);
    CHECK(sum.root->agg == AggOp::sum);
    CHECK(sum.root->child->kind == ExprNode::Kind::coordinate);
    CHECK(sum.rational_closed);

    CHECK_FALSE(parse_welfare("sum(log(u))").rational_closed);
    CHECK(parse_welfare("prod(u) + min(u)").rational_closed);
    CHECK(parse_welfare("prod(u)^3").rational_closed);
    CHECK(parse_welfare("sum(u^2)").rational_closed);
    CHECK(parse_welfare("sum(u^(-2))").rational_closed);
    CHECK_FALSE(parse_welfare("sum(u^(1/2))").rational_closed);
    CHECK_FALSE(parse_welfare("log(prod(u))").rational_closed);
    CHECK_FALSE(parse_welfare("exp(sum(log(u)))").rational_closed);
    CHECK(parse_welfare("  sum( u )  ").source == "sum( u )");
}

TEST_CASE("named shortcuts") {
    CHECK(exact_of(parse_welfare("nash"), vec({2, 3})) == 6);
    CHECK(exact_of(parse_welfare("util"), vec({2, 3})) == 5);
    CHECK(exact_of(parse_welfare("egal"), vec({2, 3})) == 2);
    CHECK(evaluate(parse_welfare("lognash"), vec({1, 0})).is_neg_infinity());
    CHECK_FALSE(parse_welfare("lognash").rational_closed);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_welfare("sum(min(u))"), StructuralError);
    CHECK_THROWS_AS(parse_welfare("prod(sum(u) + u)"), StructuralError);
    CHECK_THROWS_AS(parse_welfare("u + 1"), StructuralError);
    CHECK_THROWS_AS(parse_welfare("min(u"), ParseError);
    CHECK_THROWS_AS(parse_welfare("sum(u))"), ParseError);
    CHECK_THROWS_AS(parse_welfare("bogus(u)"), ParseError);
    CHECK_THROWS_AS(parse_welfare(""), ParseError);
    CHECK_THROWS_AS(parse_welfare("sum()"), ParseError);
    CHECK_THROWS_AS(parse_welfare("sum(u) ^"), ParseError);
    CHECK_THROWS_AS(parse_welfare("sum(u^(1/0))"), ParseError);

    try {
        parse_welfare("sum(u) + bogus");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 9);
    }
}

TEST_CASE("evaluation on the exact backend") {
    CHECK(exact_of(parse_welfare("prod(u)"), vec({2, 3})) == 6);
    CHECK(exact_of(parse_welfare("sum(u^2)"), vec({Rational(1, 2), 2})) ==
          Rational(17, 4));
    CHECK(exact_of(parse_welfare("sum(u)"), vec({Rational(1, 3), Rational(1, 6)})) ==
          Rational(1, 2));
    CHECK(exact_of(parse_welfare("prod(u)^3"), vec({2, 3})) == 216);
    CHECK(exact_of(parse_welfare("max(u)"), vec({1, 7, 2})) == 7);
    CHECK(exact_of(parse_welfare("sum(2*u + 1)"), vec({1, 2})) == 8);
    CHECK(exact_of(parse_welfare("sum(u^(-1))"), vec({2, 4})) == Rational(3, 4));
    CHECK(exact_of(parse_welfare("(sum(u) + prod(u)) / 2"), vec({2, 3})) ==
          Rational(11, 2));
    CHECK(exact_of(parse_welfare("3"), vec({5, 9})) == 3);

    const ExtendedValue v = evaluate(parse_welfare("prod(u)"), vec({2, 3}));
    CHECK(v.backend() == Backend::exact);
    CHECK(v.str() == "6");
    CHECK(evaluate(parse_welfare("sum(u)"), vec({Rational(1, 3), 1})).str() == "4/3");
}

TEST_CASE("evaluation on the floating backend and extended reals") {
    const WelfareExpr lognash = parse_welfare("sum(log(u))");
    const ExtendedValue bottom = evaluate(lognash, vec({1, 0}));
    CHECK(bottom.is_neg_infinity());
    CHECK(bottom.str() == "-inf");
    CHECK(bottom.backend() == Backend::floating);

    const ExtendedValue finite = evaluate(lognash, vec({2, 3}));
    CHECK(finite.backend() == Backend::floating);
    CHECK(abs(finite.floating_value() - log(BigFloat(6))) < ldexp(BigFloat(1), -100));

    // exp(-inf) collapses back to 0.
    const ExtendedValue zero = evaluate(parse_welfare("exp(sum(log(u)))"), vec({1, 0}));
    CHECK(zero.is_finite());
    CHECK(zero.floating_value() == 0);

    // -inf absorbs through sums but must not escape through subtraction.
    CHECK(evaluate(parse_welfare("sum(log(u)) + 5"), vec({1, 0})).is_neg_infinity());
    CHECK_THROWS_AS(evaluate(parse_welfare("5 - sum(log(u))"), vec({1, 0})),
                    DomainError);
    CHECK_THROWS_AS(evaluate(parse_welfare("log(0 - 1)"), vec({1, 1})), DomainError);

    CHECK(evaluate(parse_welfare("sum(u^(1/2))"), vec({4, 9})).backend() ==
          Backend::floating);
    const BigFloat roots =
        evaluate(parse_welfare("sum(u^(1/2))"), vec({4, 9})).floating_value();
    CHECK(abs(roots - 5) < ldexp(BigFloat(1), -100));
}

TEST_CASE("evaluation domain errors and input checks") {
    CHECK_THROWS_AS(exact_of(parse_welfare("sum(u) / min(u)"), vec({0, 3})),
                    DomainError);
    CHECK_THROWS_AS(exact_of(parse_welfare("sum(u^(-1))"), vec({0, 1})), DomainError);
    CHECK_THROWS_AS(evaluate(parse_welfare("sum(u^(-1/2))"), vec({0, 1})), DomainError);
    CHECK_THROWS_AS(evaluate(parse_welfare("sum(u)"), vec({1})), InputError);
    CHECK_THROWS_AS(evaluate(parse_welfare("sum(u)"), vec({Rational(-1), 1})),
                    InputError);
}

TEST_CASE("comparison") {
    const ComparisonResult eq = compare(parse_welfare("prod(u)"), vec({2, 3}), vec({6, 1}));
    CHECK(eq.ordering == Ordering::equal);
    CHECK(eq.backend == Backend::exact);
    CHECK(eq.tolerance == 0);

    CHECK(compare(parse_welfare("sum(u)"), vec({2, 3}), vec({6, 1})).ordering ==
          Ordering::less);
    CHECK(compare(parse_welfare("min(u)"), vec({2, 2}), vec({1, 4})).ordering ==
          Ordering::greater);

    const ComparisonResult fl =
        compare(parse_welfare("sum(log(u))"), vec({2, 3}), vec({6, 1}));
    CHECK(fl.ordering == Ordering::equal);
    CHECK(fl.backend == Backend::floating);
    CHECK(fl.tolerance == default_compare_tolerance());

    CHECK(compare(parse_welfare("sum(log(u))"), vec({1, 0}), vec({1, 1})).ordering ==
          Ordering::less);
    CHECK(compare(parse_welfare("sum(log(u))"), vec({1, 0}), vec({2, 0})).ordering ==
          Ordering::equal);

    CHECK_THROWS_AS(compare(parse_welfare("sum(u)"), vec({1, 2}), vec({1, 2, 3})),
                    InputError);
}

TEST_CASE("comparison tolerance boundary") {
    CHECK(default_compare_tolerance() == ldexp(BigFloat(1), -64));
    const ExtendedValue one = ExtendedValue::floating(BigFloat(1));
    const ExtendedValue near =
        ExtendedValue::floating(BigFloat(1) + ldexp(BigFloat(1), -65));
    const ExtendedValue far =
        ExtendedValue::floating(BigFloat(1) + ldexp(BigFloat(1), -60));
    CHECK(compare_values(one, near) == Ordering::equal);
    CHECK(compare_values(one, far) == Ordering::less);
    CHECK(compare_values(one, near, BigFloat(0)) == Ordering::less);

    // Mixed backends compare by converting the exact side.
    CHECK(compare_values(ExtendedValue::exact(Rational(1, 2)),
                         ExtendedValue::floating(BigFloat(0.5))) == Ordering::equal);
    CHECK(compare_values(ExtendedValue::neg_infinity(Backend::floating),
                         ExtendedValue::exact(Rational(-1000000))) == Ordering::less);
    CHECK(compare_values(ExtendedValue::neg_infinity(Backend::exact),
                         ExtendedValue::neg_infinity(Backend::floating)) ==
          Ordering::equal);
}

TEST_CASE("mnw key") {
    CHECK(mnw_key(vec({0, 0})) == MnwKey{0, 1});
    CHECK(mnw_key(vec({2, 3})) == MnwKey{2, 6});
    CHECK(mnw_key(vec({0, 5, 4})) == MnwKey{2, 20});
    CHECK(mnw_key(vec({Rational(1, 2), Rational(2, 3)})) == MnwKey{2, Rational(1, 3)});

    CHECK(compare_keys(MnwKey{1, 1}, MnwKey{0, 1}) == Ordering::greater);
    CHECK(compare_keys(MnwKey{1, 100}, MnwKey{2, Rational(1, 100)}) == Ordering::less);
    CHECK(compare_keys(MnwKey{2, 6}, MnwKey{2, 6}) == Ordering::equal);
    CHECK(compare_keys(MnwKey{2, 5}, MnwKey{2, 6}) == Ordering::less);

    CHECK_THROWS_AS(mnw_key(vec({Rational(-1), 1})), InputError);
}

TEST_CASE("built-in families are non-decreasing coordinatewise") {
    const char* families[] = {"sum(u)",     "prod(u)",    "min(u)",
                              "max(u)",     "sum(log(u))", "sum(u^2)",
                              "prod(u)^3",  "log(prod(u))", "exp(sum(log(u)))",
                              "sum(u^(1/2))"};
    std::mt19937_64 rng(101);
    for (const char* text : families) {
        const WelfareExpr f = parse_welfare(text);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 2 + static_cast<int>(oracle::below(rng, 3));
            UtilityVector x = random_positive(rng, n);
            UtilityVector bumped = x;
            bumped[oracle::below(rng, n)] += Rational(1, 3);
            const Ordering order = compare(f, bumped, x).ordering;
            CAPTURE(text);
            CHECK(order != Ordering::less);
        }
    }
}

TEST_CASE("product welfare is permutation invariant") {
    const WelfareExpr f = parse_welfare("prod(u)");
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(oracle::below(rng, 3));
        UtilityVector x = random_positive(rng, n);
        UtilityVector shuffled = x;
        for (int a = n - 1; a > 0; --a) {
            std::swap(shuffled[a], shuffled[oracle::below(rng, a + 1)]);
        }
        CHECK(exact_of(f, x) == exact_of(f, shuffled));
    }
}

TEST_CASE("floating backend agrees with exact within 2^-100") {
    const char* closed[] = {"sum(u)", "prod(u)", "min(u)", "sum(u^2)",
                            "prod(u)^3", "(sum(u) + prod(u)) / 2", "sum(u^(-1))"};
    const BigFloat bound = ldexp(BigFloat(1), -100);
    std::mt19937_64 rng(107);
    for (const char* text : closed) {
        const WelfareExpr f = parse_welfare(text);
        REQUIRE(f.rational_closed);
        for (int trial = 0; trial < 25; ++trial) {
            const int n = 2 + static_cast<int>(oracle::below(rng, 3));
            const UtilityVector x = random_positive(rng, n);
            const BigFloat exact = to_bigfloat(exact_of(f, x));
            const BigFloat approx = evaluate_floating(f, x).floating_value();
            BigFloat scale = abs(exact);
            if (scale < 1) scale = 1;
            CAPTURE(text);
            CHECK(abs(exact - approx) <= bound * scale);
        }
    }
}

TEST_CASE("zero domination for the product family") {
    const char* product_family[] = {"prod(u)", "sum(log(u))", "prod(u)^3"};
    std::mt19937_64 rng(109);
    for (const char* text : product_family) {
        const WelfareExpr f = parse_welfare(text);
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 2 + static_cast<int>(oracle::below(rng, 3));
            const UtilityVector x = random_positive(rng, n);
            UtilityVector y = random_positive(rng, n);
            const std::size_t zeros = 1 + oracle::below(rng, n);
            for (std::size_t z = 0; z < zeros; ++z) y[oracle::below(rng, n)] = 0;
            CAPTURE(text);
            CHECK(compare(f, x, y).ordering == Ordering::greater);
        }
    }
}

TEST_CASE("extended value accessors guard their backend") {
    const ExtendedValue bottom = ExtendedValue::neg_infinity(Backend::exact);
    CHECK_THROWS_AS(bottom.exact_value(), InputError);
    CHECK_THROWS_AS(bottom.as_float(), InputError);
    const ExtendedValue exact = ExtendedValue::exact(Rational(1, 2));
    CHECK_THROWS_AS(exact.floating_value(), InputError);
    CHECK(exact.as_float() == BigFloat(0.5));
}
