#include <gtest/gtest.h>

#include "symhom/error.hpp"
#include "symhom/exactnum.hpp"

using namespace symhom;

namespace {

SparsePolynomial var(const char* name) { return SparsePolynomial::variable(name); }

}  // namespace

TEST(Rational, CanonicalForm) {
    Rational q = make_rational(6, -4);
    EXPECT_EQ(q.get_num(), -3);
    EXPECT_EQ(q.get_den(), 2);
    EXPECT_EQ(to_string(q), "-3/2");
    EXPECT_EQ(make_rational("10", "4"), make_rational(5, 2));
}

TEST(Rational, JsonRoundTrip) {
    Rational q = make_rational(-7, 12);
    EXPECT_EQ(rational_from_json(rational_to_json(q)), q);
    EXPECT_EQ(rational_from_json(nlohmann::json("3/9")), make_rational(1, 3));
    EXPECT_EQ(rational_from_json(nlohmann::json(5)), Rational(5));
}

TEST(Rational, Power) {
    EXPECT_EQ(pow(make_rational(3, 2), 2), make_rational(9, 4));
    EXPECT_EQ(pow(Rational(0), 0), Rational(1));
}

TEST(PolyEval, SumOfVariables) {
    auto p = var("x") + var("y");
    EXPECT_EQ(poly_eval(p, {{"x", 1}, {"y", 1}}), 2);
}

TEST(PolyEval, ZeroPolynomial) {
    SparsePolynomial zero;
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(poly_eval(zero, {{"z", 5}}), 0);
}

TEST(PolyEval, SquareAtHalfInteger) {
    EXPECT_EQ(poly_eval(var("x").pow(2), {{"x", make_rational(3, 2)}}), make_rational(9, 4));
}

TEST(PolyEval, PartialAssignmentThrows) {
    auto p = var("x") * var("y");
    try {
        poly_eval(p, {{"x", 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingVariable);
    }
}

TEST(PolySymbolic, Commutativity) { EXPECT_TRUE(poly_equal_symbolic(var("x") + var("y"), var("y") + var("x"))); }

TEST(PolySymbolic, ZeroTermsDropped) {
    auto p = var("x") + var("y").scaled(0);
    EXPECT_TRUE(poly_equal_symbolic(var("x"), p));
    EXPECT_EQ(p.num_terms(), 1u);
}

TEST(PolySymbolic, ScalarMultipleDiffers) { EXPECT_FALSE(poly_equal_symbolic(var("x"), var("x").scaled(2))); }

TEST(PolySymbolic, Cancellation) {
    auto x = var("x");
    auto p = (x + SparsePolynomial::constant(1)) * (x - SparsePolynomial::constant(1));
    EXPECT_TRUE(poly_equal_symbolic(p, x * x - SparsePolynomial::constant(1)));
    EXPECT_EQ(p.degree(), 2u);
}

TEST(PolySymbolic, FromTermsMergesDuplicates) {
    auto p = SparsePolynomial::from_terms({"y", "x", "y"}, {{{1, 0, 0}, 2}, {{0, 0, 1}, 3}, {{0, 1, 0}, -1}});
    EXPECT_TRUE(poly_equal_symbolic(p, var("y").scaled(5) - var("x")));
}

TEST(PolySymbolic, JsonRoundTrip) {
    auto p = (var("a") + var("b").scaled(make_rational(-2, 3))).pow(3);
    EXPECT_TRUE(poly_equal_symbolic(SparsePolynomial::from_json(p.to_json()), p));
}

TEST(PolyRandomized, EqualSquares) {
    EvaluationOracle f = [](const Assignment& a) -> Rational { return pow(a.at("x") + 1, 2); };
    EvaluationOracle g = [](const Assignment& a) -> Rational { return a.at("x") * a.at("x") + 2 * a.at("x") + 1; };
    EXPECT_TRUE(poly_equal_randomized({"x"}, f, g, 2, 5, 11));
}

TEST(PolyRandomized, SquareVersusIdentity) {
    EvaluationOracle f = [](const Assignment& a) -> Rational { return Rational(a.at("x") * a.at("x")); };
    EvaluationOracle g = [](const Assignment& a) -> Rational { return a.at("x"); };
    EXPECT_FALSE(poly_equal_randomized({"x"}, f, g, 2, 5, 11));
}

TEST(PolyRandomized, NeedsATrial) {
    EvaluationOracle f = [](const Assignment&) -> Rational { return Rational(0); };
    EXPECT_THROW(poly_equal_randomized({"x"}, f, f, 1, 0, 1), Error);
}

TEST(PolyRandomized, DeterministicGivenSeed) {
    EXPECT_EQ(random_assignment({"x", "y"}, 42), random_assignment({"x", "y"}, 42));
    EXPECT_NE(random_assignment({"x", "y"}, 42), random_assignment({"x", "y"}, 43));
}

TEST(Linear, SolveAndDeterminant) {
    RationalMatrix a = {{2, 1}, {1, 3}};
    auto x = solve_linear_system(a, {3, 5});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ((*x)[0], make_rational(4, 5));
    EXPECT_EQ((*x)[1], make_rational(7, 5));
    EXPECT_EQ(determinant(a), 5);
    EXPECT_FALSE(solve_linear_system({{1, 2}, {2, 4}}, {1, 1}).has_value());
}

TEST(CheckedInt, OverflowIsReported) {
    CheckedInt big(std::int64_t{1} << 62);
    EXPECT_THROW(big * CheckedInt(4), Error);
    EXPECT_EQ((CheckedInt(6) * CheckedInt(7)).value(), 42);
}
