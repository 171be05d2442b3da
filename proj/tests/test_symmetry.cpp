#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symhom/compile.hpp"
#include "symhom/error.hpp"
#include "symhom/suite.hpp"
#include "symhom/symmetry.hpp"

using namespace symhom;

namespace {

Circuit single_var(const std::string& v) {
    CircuitBuilder b;
    return b.build(b.add_var(v));
}

Assignment random_point(const Circuit& c, std::mt19937_64& rng) {
    Assignment a;
    for (const auto& v : c.variables()) a[v] = random_rational(rng);
    return a;
}

GateId gate_of(const Circuit& c, const std::string& v) { return c.var_gate(v); }

}  // namespace

TEST(Permutations, ActOnVariables) {
    auto g = PermutationPair::row_transposition(3, 2, 0, 2);
    EXPECT_EQ(apply(g, "x_1_2"), "x_3_2");
    EXPECT_EQ(apply(g, "x_2_1"), "x_2_1");
    auto h = PermutationPair::column_transposition(3, 2, 0, 1);
    EXPECT_EQ(apply(g.compose(h), "x_1_1"), "x_3_2");
    EXPECT_TRUE(g.is_valid());
    PermutationPair bad{{0, 0}, {0}};
    EXPECT_FALSE(bad.is_valid());
    int i = -1, j = -1;
    EXPECT_TRUE(parse_matrix_variable(matrix_variable(4, 0), i, j));
    EXPECT_EQ(i, 4);
    EXPECT_EQ(j, 0);
    EXPECT_FALSE(parse_matrix_variable("y_1_1", i, j));
}

TEST(Extend, IdentityGivesIdentity) {
    auto c = compile_pattern(make_path(3), 2, 2, CompileShape::Td).circuit;
    auto e = extend_to_automorphism(c, PermutationPair::identity(2, 2));
    ASSERT_TRUE(e.has_value());
    for (std::size_t g = 0; g < c.num_gates(); ++g) EXPECT_EQ((*e)[g], static_cast<GateId>(g));
}

TEST(Extend, RowSwapOnEdgeCount) {
    auto c = compile_pattern(make_path(2), 2, 2, CompileShape::Td).circuit;
    auto e = extend_to_automorphism(c, PermutationPair::row_transposition(2, 2, 0, 1));
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ((*e)[gate_of(c, "x_1_1")], gate_of(c, "x_2_1"));
    EXPECT_EQ((*e)[gate_of(c, "x_2_2")], gate_of(c, "x_1_2"));
    EXPECT_EQ((*e)[c.output()], c.output());
}

TEST(Extend, MissingImageVariable) {
    auto c = single_var("x_1_1");
    EXPECT_FALSE(extend_to_automorphism(c, PermutationPair::row_transposition(2, 2, 0, 1)).has_value());
    EXPECT_FALSE(is_symmetric(c, 2, 2));
}

TEST(Symmetric, Examples) {
    EXPECT_TRUE(is_symmetric(compile_pattern(make_path(3), 2, 2, CompileShape::Td).circuit, 2, 2));
    CircuitBuilder b;
    EXPECT_TRUE(is_symmetric(b.build(b.add_const(7)), 2, 2));
}

TEST(Symmetric, AsymmetricSum) {
    CircuitBuilder b;
    auto x11 = b.add_var("x_1_1");
    auto x12 = b.add_var("x_1_2");
    auto x21 = b.add_var("x_2_1");
    auto x22 = b.add_var("x_2_2");
    // x11 x22 + x12 x21 is invariant under row swaps and column swaps,
    // x11 x12 + x21 x22 only under row swaps.
    auto d1 = b.add_times({{x11, 1}, {x22, 1}});
    auto d2 = b.add_times({{x12, 1}, {x21, 1}});
    EXPECT_TRUE(is_symmetric(b.build(b.add_plus({{d1, 1}, {d2, 1}})), 2, 2));
    auto r1 = b.add_times({{x11, 1}, {x12, 1}});
    auto r2 = b.add_times({{x21, 1}, {x22, 1}});
    EXPECT_TRUE(is_symmetric(b.build(b.add_plus({{r1, 1}, {r2, 1}})), 2, 2));
    auto mixed = b.add_plus({{r1, 1}, {d1, 1}});
    EXPECT_FALSE(is_symmetric(b.build(mixed), 2, 2));
}

TEST(Rigidify, RigidInputUnchangedInSize) {
    auto c = compile_pattern(make_path(3), 2, 2, CompileShape::Td).circuit;
    EXPECT_TRUE(is_rigid(c));
    auto r = rigidify(c, 2, 2);
    EXPECT_EQ(circuit_size(r), circuit_size(c));
    EXPECT_EQ(r.num_gates(), c.num_gates());
}

TEST(Rigidify, DuplicateSubcircuitsMerge) {
    CircuitBuilder b;
    std::vector<Wire> sum;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            auto u = b.add_var(matrix_variable(i, j));
            auto v = b.add_var(matrix_variable(1 - i, 1 - j));
            // two separate copies of the same product
            sum.push_back({b.add_internal(GateKind::Times, {{u, 1}, {v, 1}}), 1});
            sum.push_back({b.add_internal(GateKind::Times, {{u, 1}, {v, 1}}), 1});
        }
    }
    auto c = b.build(b.add_internal(GateKind::Plus, sum));
    EXPECT_TRUE(is_symmetric(c, 2, 2));
    EXPECT_FALSE(is_rigid(c));
    auto r = rigidify(c, 2, 2);
    EXPECT_LT(circuit_size(r), circuit_size(c));
    EXPECT_TRUE(is_rigid(r));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        auto a = random_point(c, rng);
        EXPECT_EQ(evaluate(r, a), evaluate(c, a));
    }
}

TEST(Rigidify, SwappedSumsBecomeOneSquaredChild) {
    CircuitBuilder b;
    auto x = b.add_var("x_1_1");
    auto y = b.add_var("x_2_2");
    auto w = b.add_var("x_1_2");
    auto z = b.add_var("x_2_1");
    // Plus(x,y) twice and Plus(w,z) twice under one product, as separate gates.
    auto p1 = b.add_internal(GateKind::Plus, {{x, 1}, {y, 1}});
    auto p2 = b.add_internal(GateKind::Plus, {{y, 1}, {x, 1}});
    auto q1 = b.add_internal(GateKind::Plus, {{w, 1}, {z, 1}});
    auto q2 = b.add_internal(GateKind::Plus, {{z, 1}, {w, 1}});
    auto c = b.build(b.add_internal(GateKind::Times, {{p1, 1}, {p2, 1}, {q1, 1}, {q2, 1}}));
    auto r = rigidify(c, 2, 2);
    const auto& out = r.gate(r.output());
    ASSERT_EQ(out.children.size(), 2u);
    EXPECT_EQ(out.children[0].mult, 2);
    EXPECT_EQ(out.children[1].mult, 2);
    EXPECT_TRUE(validate(r, CircuitShape::FormulaMulti).ok);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        auto a = random_point(c, rng);
        EXPECT_EQ(evaluate(r, a), evaluate(c, a));
    }
}

TEST(Rigidify, RejectsAsymmetric) {
    try {
        rigidify(single_var("x_1_1"), 2, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
    }
}

TEST(Rigidify, RandomCircuitProperties) {
    std::mt19937_64 rng(21);
    const RandomCircuitMode modes[] = {RandomCircuitMode::General, RandomCircuitMode::Skew,
                                       RandomCircuitMode::Formula};
    for (int k = 0; k < 45; ++k) {
        auto c = random_symmetric_circuit(2, 2, modes[k % 3], rng, 25);
        auto r = rigidify(c, 2, 2);
        EXPECT_TRUE(is_rigid(r));
        EXPECT_TRUE(is_symmetric(r, 2, 2));
        EXPECT_LE(circuit_size(r), circuit_size(c));
        if (validate(c, CircuitShape::Skew).ok) EXPECT_TRUE(validate(r, CircuitShape::Skew).ok);
        if (validate(c, CircuitShape::FormulaMulti).ok) EXPECT_TRUE(validate(r, CircuitShape::FormulaMulti).ok);
        for (int t = 0; t < 10; ++t) {
            auto a = random_point(c, rng);
            EXPECT_EQ(evaluate(r, a), evaluate(c, a));
        }
    }
}

TEST(Orbits, EdgeCountFormula) {
    auto c = compile_pattern(make_path(2), 2, 2, CompileShape::Td).circuit;
    SymmetryAnalysis s(c, 2, 2);
    auto x = gate_of(c, "x_1_1");
    EXPECT_EQ(s.orbits()[s.orbit_of(x)].size(), 4u);
    EXPECT_EQ(s.orbits()[s.orbit_of(c.output())].size(), 1u);
    EXPECT_EQ(s.max_orbit(), 4);
}

TEST(Orbits, ConstantGate) {
    CircuitBuilder b;
    auto c = b.build(b.add_const(1));
    SymmetryAnalysis s(c, 3, 3);
    EXPECT_EQ(s.max_orbit(), 1);
    EXPECT_EQ(s.support_depth(), 0);
    EXPECT_TRUE(s.minimal_support(c.output()).left.empty());
}

TEST(Orbits, ExtensionIsHomomorphism) {
    auto c = compile_pattern(make_path(3), 3, 3, CompileShape::Pw).circuit;
    SymmetryAnalysis s(c, 3, 3);
    auto g = PermutationPair::row_transposition(3, 3, 0, 1);
    auto h = PermutationPair::column_transposition(3, 3, 1, 2);
    auto k = PermutationPair::row_transposition(3, 3, 1, 2);
    for (const auto& [p, q] : std::vector<std::pair<PermutationPair, PermutationPair>>{{g, h}, {h, k}, {g, k}}) {
        auto ip = s.image(p);
        auto iq = s.image(q);
        auto ipq = s.image(p.compose(q));
        for (std::size_t x = 0; x < c.num_gates(); ++x) EXPECT_EQ(ipq[x], iq[ip[x]]);
    }
}

TEST(Supports, Examples) {
    auto c = compile_pattern(make_path(3), 3, 3, CompileShape::Pw).circuit;
    SymmetryAnalysis s(c, 3, 3);
    auto out = s.minimal_support(c.output());
    EXPECT_TRUE(out.left.empty());
    EXPECT_TRUE(out.right.empty());
    auto in = s.minimal_support(gate_of(c, "x_2_3"));
    EXPECT_EQ(in.left, std::vector<int>{1});
    EXPECT_EQ(in.right, std::vector<int>{2});
}

TEST(Supports, UniquenessNeedsSmallSides) {
    auto c = compile_pattern(make_path(2), 2, 2, CompileShape::Td).circuit;
    SymmetryAnalysis s(c, 2, 2);
    auto x = gate_of(c, "x_1_1");
    EXPECT_FALSE(s.try_minimal_support(x).has_value());
    EXPECT_EQ(s.min_support_size(x), 2);
    try {
        s.minimal_support(x);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UniquenessUnavailable);
    }
}

TEST(Supports, SkewGatesSupportedByBag) {
    // Every internal gate of the pathwidth compiler for P3 depends on at most
    // the two currently placed vertices.
    auto c = compile_pattern(make_path(3), 5, 5, CompileShape::Pw).circuit;
    SymmetryAnalysis s(c, 5, 5);
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        auto sup = s.minimal_support(static_cast<GateId>(g));
        EXPECT_LE(sup.left.size(), 2u);
        EXPECT_LE(sup.right.size(), 1u);
    }
    EXPECT_LE(s.max_support(), 3);
}

// Supports grow from {} to {i} to {i, j} along every root-to-input path of
// P2, one step per elimination level, so both paths reach their treedepth.
TEST(SupportDepth, CompiledPaths) {
    for (int n : {5, 6}) {
        auto p2 = compile_pattern(make_path(2), n, n, CompileShape::Td).circuit;
        auto p3 = compile_pattern(make_path(3), n, n, CompileShape::Td).circuit;
        SymmetryAnalysis s2(p2, n, n), s3(p3, n, n);
        EXPECT_EQ(s2.support_depth(), 2);
        EXPECT_EQ(s3.support_depth(), 2);
        EXPECT_LE(s2.support_depth(), treedepth_exact(make_path(2)).depth);
        EXPECT_LE(s3.support_depth(), treedepth_exact(make_path(3)).depth);
    }
}

TEST(SupportDepth, OrbitLowerBound) {
    for (const auto& f : {make_path(4), make_star(3), make_cycle(4), make_path(5)}) {
        auto c = compile_pattern(f, 8, 8, CompileShape::Td).circuit;
        SymmetryAnalysis s(c, 8, 8);
        if (s.max_support() > 4) continue;
        int d = s.support_depth();
        double lhs = static_cast<double>(s.max_orbit()) * std::pow(2.0, d);
        EXPECT_GE(lhs, std::pow(8.0, d));
    }
}

TEST(SupportReport, Json) {
    auto c = compile_pattern(make_path(3), 5, 5, CompileShape::Td).circuit;
    SymmetryAnalysis s(c, 5, 5);
    auto j = s.report().to_json();
    EXPECT_EQ(j["maxOrb"], s.max_orbit());
    EXPECT_EQ(j["maxSup"], s.max_support());
}

TEST(StableColouring, DiscreteImpliesRigid) {
    auto c = compile_pattern(make_path(2), 2, 2, CompileShape::Td).circuit;
    auto col = stable_colouring(c);
    EXPECT_EQ(col.size(), c.num_gates());
    auto merged = merge_equivalent_gates(c);
    EXPECT_LE(merged.num_gates(), c.num_gates());
}
