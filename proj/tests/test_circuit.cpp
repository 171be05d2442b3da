#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "symhom/circuit.hpp"
#include "symhom/compile.hpp"
#include "symhom/error.hpp"
#include "symhom/suite.hpp"

using namespace symhom;

namespace {

Circuit plus_xy() {
    CircuitBuilder b;
    auto x = b.add_var("x");
    auto y = b.add_var("y");
    return b.build(b.add_plus({{x, 1}, {y, 1}}));
}

Circuit single_wire(GateKind kind, int mult) {
    CircuitBuilder b;
    auto x = b.add_var("x");
    return b.build(b.add_internal(kind, {{x, mult}}));
}

Assignment at(std::initializer_list<std::pair<const std::string, long>> values) {
    Assignment a;
    for (const auto& [k, v] : values) a[k] = make_rational(v);
    return a;
}

int count_lines(const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) n += line.find(needle) != std::string::npos;
    return n;
}

}  // namespace

TEST(Shape, SingleVarIsFormula) {
    CircuitBuilder b;
    auto c = b.build(b.add_var("x_1_1"));
    EXPECT_TRUE(validate(c, CircuitShape::Formula).ok);
    EXPECT_EQ(circuit_size(c), 1);
}

TEST(Shape, TimesOfTwoSumsIsNotSkew) {
    CircuitBuilder b;
    auto x = b.add_var("x");
    auto one = b.add_const(1);
    auto p = b.add_internal(GateKind::Plus, {{x, 1}, {one, 1}});
    auto q = b.add_internal(GateKind::Plus, {{x, 1}, {b.add_const(2), 1}});
    auto c = b.build(b.add_internal(GateKind::Times, {{p, 1}, {q, 1}}));
    EXPECT_FALSE(validate(c, CircuitShape::Skew).ok);
    EXPECT_TRUE(validate(c, CircuitShape::General).ok);
    EXPECT_TRUE(validate(c, CircuitShape::Formula).ok);
}

TEST(Shape, SharedSumIsNotFormula) {
    CircuitBuilder b;
    auto x = b.add_var("x");
    auto y = b.add_var("y");
    auto p = b.add_internal(GateKind::Plus, {{x, 1}, {y, 1}});
    auto t1 = b.add_internal(GateKind::Times, {{p, 1}, {x, 1}});
    auto t2 = b.add_internal(GateKind::Times, {{p, 1}, {y, 1}});
    auto c = b.build(b.add_internal(GateKind::Plus, {{t1, 1}, {t2, 1}}));
    EXPECT_FALSE(validate(c, CircuitShape::Formula).ok);
    EXPECT_FALSE(validate(c, CircuitShape::FormulaMulti).ok);
    EXPECT_TRUE(validate(c, CircuitShape::General).ok);
    EXPECT_TRUE(validate(c, CircuitShape::Skew).ok);
}

TEST(Shape, MultiedgeSeparatesFormulaKinds) {
    CircuitBuilder b;
    auto x = b.add_var("x");
    auto p = b.add_internal(GateKind::Plus, {{x, 1}});
    auto c = b.build(b.add_internal(GateKind::Times, {{p, 2}}));
    EXPECT_FALSE(validate(c, CircuitShape::Formula).ok);
    EXPECT_TRUE(validate(c, CircuitShape::FormulaMulti).ok);
}

TEST(Size, Examples) {
    EXPECT_EQ(circuit_size(plus_xy()), 5);
    EXPECT_EQ(circuit_size(single_wire(GateKind::Plus, 2)), 4);
}

TEST(Evaluate, Examples) {
    EXPECT_EQ(evaluate(plus_xy(), at({{"x", 2}, {"y", 3}})), 5);
    EXPECT_EQ(evaluate(single_wire(GateKind::Times, 2), at({{"x", 3}})), 9);
    EXPECT_EQ(evaluate(single_wire(GateKind::Plus, 2), at({{"x", 3}})), 6);
}

TEST(Evaluate, MissingVariable) {
    try {
        evaluate(plus_xy(), at({{"x", 2}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingVariable);
    }
}

TEST(Builder, CollapsesTrivialGates) {
    CircuitBuilder b;
    auto x = b.add_var("x");
    EXPECT_EQ(b.add_var("x"), x);
    EXPECT_EQ(b.add_plus({{x, 1}}), x);
    auto zero = b.add_plus({});
    auto one = b.add_times({});
    EXPECT_EQ(b.add_const(0), zero);
    EXPECT_EQ(b.add_const(make_rational(2, 2)), one);
    auto p = b.add_plus({{x, 1}, {x, 2}});
    auto c = b.build(p);
    ASSERT_EQ(c.gate(c.output()).children.size(), 1u);
    EXPECT_EQ(c.gate(c.output()).children[0].mult, 3);
}

TEST(Builder, PrunesUnreachable) {
    CircuitBuilder b;
    auto x = b.add_var("x");
    b.add_var("unused");
    auto c = b.build(b.add_times({{x, 2}}));
    EXPECT_EQ(c.num_gates(), 2u);
    EXPECT_EQ(c.variables(), std::vector<std::string>{"x"});
}

TEST(Expand, Examples) {
    auto x = SparsePolynomial::variable("x");
    auto y = SparsePolynomial::variable("y");
    EXPECT_TRUE(poly_equal_symbolic(expand_symbolic(plus_xy()), x + y));

    CircuitBuilder b;
    auto xv = b.add_var("x");
    auto p = b.add_plus({{xv, 1}, {b.add_const(1), 1}});
    auto q = b.add_plus({{xv, 1}, {b.add_const(-1), 1}});
    auto c = b.build(b.add_times({{p, 1}, {q, 1}}));
    EXPECT_TRUE(poly_equal_symbolic(expand_symbolic(c), x * x - SparsePolynomial::constant(1)));
}

TEST(Expand, CompiledEdgeCount) {
    auto rep = compile_pattern(make_path(2), 2, 2, CompileShape::Td);
    SparsePolynomial want;
    for (const char* v : {"x_1_1", "x_1_2", "x_2_1", "x_2_2"}) want = want + SparsePolynomial::variable(v);
    EXPECT_TRUE(poly_equal_symbolic(expand_symbolic(rep.circuit), want));
}

TEST(Expand, MonomialCap) {
    CircuitBuilder b;
    std::vector<Wire> sum;
    for (int i = 0; i < 10; ++i) sum.push_back({b.add_var("v" + std::to_string(i)), 1});
    auto p = b.add_plus(sum);
    auto c = b.build(b.add_times({{p, 6}}));
    try {
        expand_symbolic(c, 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SizeCap);
    }
}

TEST(Serialize, ConstantRoundTrip) {
    CircuitBuilder b;
    auto c = b.build(b.add_const(make_rational(-3, 7)));
    auto back = circuit_from_json(circuit_to_json(c));
    EXPECT_EQ(circuit_to_json(back), circuit_to_json(c));
    EXPECT_EQ(evaluate(back, {}), make_rational(-3, 7));
}

TEST(Serialize, RejectsMalformed) {
    auto bad = [](const nlohmann::json& j) {
        try {
            circuit_from_json(j);
        } catch (const Error& e) {
            return e.code() == ErrorCode::ParseError;
        }
        return false;
    };
    EXPECT_TRUE(bad(nlohmann::json::object()));
    auto j = circuit_to_json(plus_xy());
    auto cyclic = j;
    cyclic["wires"].push_back({j["wires"][0][1], j["output"], 1});
    EXPECT_TRUE(bad(cyclic));
    auto zero = j;
    zero["wires"][0][2] = 0;
    EXPECT_TRUE(bad(zero));
}

TEST(Serialize, DotOutput) {
    auto dot = to_dot(plus_xy());
    EXPECT_EQ(count_lines(dot, "[label="), 5);
    EXPECT_EQ(count_lines(dot, "->"), 2);
}

TEST(Properties, RandomCircuits) {
    std::mt19937_64 rng(11);
    const RandomCircuitMode modes[] = {RandomCircuitMode::General, RandomCircuitMode::Skew,
                                       RandomCircuitMode::Formula};
    for (int k = 0; k < 100; ++k) {
        auto mode = modes[k % 3];
        auto c = random_symmetric_circuit(2, 2, mode, rng, 20);
        auto j = circuit_to_json(c);
        auto back = circuit_from_json(j);
        EXPECT_EQ(circuit_to_json(back), j);
        EXPECT_EQ(circuit_size(back), circuit_size(c));

        bool formula = validate(c, CircuitShape::Formula).ok;
        bool multi = validate(c, CircuitShape::FormulaMulti).ok;
        bool skew = validate(c, CircuitShape::Skew).ok;
        bool general = validate(c, CircuitShape::General).ok;
        EXPECT_TRUE(general);
        if (formula) EXPECT_TRUE(multi);
        if (multi || skew) EXPECT_TRUE(general);
        if (mode == RandomCircuitMode::Skew) EXPECT_TRUE(skew);
        if (mode == RandomCircuitMode::Formula) EXPECT_TRUE(multi);

        if (k % 4 == 0) {
            auto p = expand_symbolic(c);
            for (int t = 0; t < 20; ++t) {
                Assignment a;
                for (const auto& v : c.variables()) a[v] = random_rational(rng);
                EXPECT_EQ(evaluate(c, a), poly_eval(p, a));
            }
        }
    }
}

TEST(Metrics, DepthCounts) {
    auto rep = compile_pattern(make_path(3), 2, 2, CompileShape::Td);
    EXPECT_EQ(circuit_depth(rep.circuit), rep.depth);
    EXPECT_EQ(circuit_sum_depth(rep.circuit), rep.sum_depth);
    EXPECT_GE(rep.depth, rep.sum_depth);
    EXPECT_EQ(circuit_depth(single_wire(GateKind::Plus, 1)), 1);
    EXPECT_EQ(circuit_sum_depth(single_wire(GateKind::Times, 1)), 0);
}

TEST(Shape, NamesRoundTrip) {
    for (auto s : {CircuitShape::General, CircuitShape::Skew, CircuitShape::Formula, CircuitShape::FormulaMulti}) {
        EXPECT_EQ(shape_from_name(shape_name(s)), s);
    }
}
