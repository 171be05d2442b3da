#include <gtest/gtest.h>

#include <random>

#include "symhom/error.hpp"
#include "symhom/reduce.hpp"
#include "symhom/suite.hpp"

using namespace symhom;

namespace {

RationalMatrix filled(int size, const std::function<Rational(int, int)>& entry) {
    RationalMatrix y(size, std::vector<Rational>(size));
    for (int u = 0; u < size; ++u)
        for (int v = 0; v < size; ++v) y[u][v] = entry(u, v);
    return y;
}

RationalMatrix random_symmetric(int size, std::mt19937_64& rng) {
    RationalMatrix y(size, std::vector<Rational>(size));
    for (int u = 0; u < size; ++u)
        for (int v = u; v < size; ++v) y[u][v] = y[v][u] = random_rational(rng);
    return y;
}

std::vector<Rational> random_vector(int size, std::mt19937_64& rng) {
    std::vector<Rational> x(size);
    for (auto& v : x) v = random_rational(rng);
    return x;
}

BipartiteMultigraph doubled_middle_p3() {
    BipartiteMultigraph f(2, 1);
    f.add_edge(0, 0);
    f.add_edge(1, 0, 2);
    return f;
}

ColouredGraph single_pair(const Rational& w) {
    auto f = make_path(2);
    return make_f_coloured(f, identity_colour_names(f), 1, [&](int, int, int, int) { return w; });
}

}  // namespace

TEST(Clique, Examples) {
    auto one = filled(2, [](int, int) { return Rational(1); });
    EXPECT_EQ(colhom_eval(make_grid(1, 1), clique_grid_gadget(1, one)), 2);
    auto ones = filled(4, [](int, int) { return Rational(1); });
    EXPECT_EQ(colhom_eval(make_grid(2, 2), clique_grid_gadget(2, ones)), 6);
    EXPECT_EQ(clique_polynomial(2, ones), 6);
    auto probe = filled(4, [](int u, int v) { return Rational(u == 0 && v == 1 ? 0 : 1); });
    EXPECT_EQ(colhom_eval(make_grid(2, 2), clique_grid_gadget(2, probe)), 5);
}

TEST(Clique, RandomWeights) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 5; ++t) {
        auto y = filled(4, [&](int, int) { return random_rational(rng); });
        EXPECT_EQ(colhom_eval(make_grid(2, 2), clique_grid_gadget(2, y)), clique_polynomial(2, y));
    }
}

TEST(Clique, InvalidParameter) {
    try {
        clique_grid_gadget(0, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
    }
}

TEST(Btree, SingleVertex) {
    std::vector<Rational> x = {make_rational(5, 2)};
    RationalMatrix y = {{3}};
    auto g = btree_vp_gadget(1, x, y);
    EXPECT_EQ(colhom_eval(make_complete_binary_tree(1), g), btree_target(1, x, y));
    EXPECT_EQ(btree_target(1, x, y), 1);
}

TEST(Btree, FrozenValues) {
    std::vector<Rational> x(64, 1);
    RationalMatrix y = filled(64, [](int, int) { return Rational(1); });
    auto b2 = make_complete_binary_tree(2);
    EXPECT_EQ(colhom_eval(b2, btree_vp_gadget(2, x, y)), 262144);
    x[0] = 2;
    EXPECT_EQ(btree_target(2, x, y), 266240);
    EXPECT_EQ(colhom_eval(b2, btree_vp_gadget(2, x, y)), 266240);
}

TEST(Btree, RandomWeights) {
    std::mt19937_64 rng(2);
    auto b2 = make_complete_binary_tree(2);
    for (int t = 0; t < 2; ++t) {
        auto x = random_vector(64, rng);
        auto y = random_symmetric(64, rng);
        EXPECT_EQ(colhom_eval(b2, btree_vp_gadget(2, x, y)), btree_target(2, x, y));
    }
}

TEST(Path, Examples) {
    std::vector<Rational> x1 = {make_rational(-3, 2)};
    RationalMatrix y1 = {{7}};
    EXPECT_EQ(colhom_eval(make_path(3), path_vbp_gadget(1, x1, y1)), make_rational(9, 4));
    EXPECT_EQ(path_target(1, x1, y1), make_rational(9, 4));

    std::vector<Rational> ones(4, 1);
    auto offdiag = filled(4, [](int u, int v) { return Rational(u == v ? 0 : 1); });
    EXPECT_EQ(colhom_eval(make_path(4), path_vbp_gadget(2, ones, offdiag)), 12);
    EXPECT_EQ(path_target(2, ones, offdiag), 12);

    std::vector<Rational> zeros(4, 0);
    EXPECT_EQ(colhom_eval(make_path(4), path_vbp_gadget(2, zeros, offdiag)), 0);
}

TEST(Path, RandomWeights) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        auto x = random_vector(4, rng);
        auto y = random_symmetric(4, rng);
        EXPECT_EQ(colhom_eval(make_path(4), path_vbp_gadget(2, x, y)), path_target(2, x, y));
    }
}

TEST(Minor, Projections) {
    std::mt19937_64 rng(4);
    struct Case {
        BipartiteMultigraph s, f;
        int trials;
    };
    for (const auto& c : {Case{make_path(3), make_path(3), 5}, Case{make_path(2), make_path(3), 5},
                          Case{make_cycle(4), make_grid(2, 3), 3}}) {
        auto branch = find_minor(c.s, c.f);
        ASSERT_TRUE(branch.has_value());
        for (int t = 0; t < c.trials; ++t) {
            auto y = random_coloured_host(c.s, 2, rng);
            EXPECT_EQ(colhom_eval(c.f, minor_gadget(c.s, c.f, *branch, 2, y)), colhom_eval(c.s, y));
        }
    }
}

TEST(Minor, InvalidBranchSets) {
    std::mt19937_64 rng(5);
    auto s = make_path(2);
    BranchSets bad;
    bad.sets = {{}, {0}, {0}};
    try {
        minor_gadget(s, make_path(3), bad, 1, random_coloured_host(s, 1, rng));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidBranchSets);
    }
}

TEST(Uncolour, Identity) {
    std::mt19937_64 rng(6);
    for (const auto& f : {make_path(2), make_path(3), doubled_middle_p3()}) {
        auto names = identity_colour_names(f);
        auto g = random_coloured_host(f, 1, rng);
        EXPECT_TRUE(uncolour_expand(f, g).holds());
    }
    auto one = random_colour_set_host(1, 3, rng);
    auto v = uncolour_expand(make_path(3), one);
    EXPECT_TRUE(v.holds());
}

TEST(Product, Examples) {
    auto f = make_path(2);
    auto g = single_pair(2);
    auto h = single_pair(3);
    auto gh = tensor_product(g, h);
    EXPECT_EQ(colhom_eval(f, gh), 6);

    std::mt19937_64 rng(7);
    auto r = random_coloured_host(f, 2, rng);
    EXPECT_EQ(coloured_graph_to_json(tensor_product(r, single_pair(1))), coloured_graph_to_json(r));

    auto p3 = make_path(3);
    for (int t = 0; t < 5; ++t) {
        auto a = random_coloured_host(p3, 2, rng);
        auto b = random_coloured_host(p3, 2, rng);
        EXPECT_EQ(colhom_eval(p3, tensor_product(a, b)), colhom_eval(p3, a) * colhom_eval(p3, b));
    }
}

TEST(Product, ColourMismatch) {
    std::mt19937_64 rng(8);
    try {
        tensor_product(random_coloured_host(make_path(2), 1, rng), random_coloured_host(make_path(3), 1, rng));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ColourMismatch);
    }
}

TEST(Product, UncolouredHosts) {
    std::mt19937_64 rng(9);
    auto g = random_host(2, 1, rng);
    auto h = random_host(1, 3, rng);
    auto gh = tensor_product(g, h);
    EXPECT_EQ(gh.n, 2);
    EXPECT_EQ(gh.m, 3);
    for (const auto& f : {make_path(3), make_cycle(4)}) EXPECT_EQ(hom_count(f, gh), hom_count(f, g) * hom_count(f, h));
}

TEST(Slice, Examples) {
    std::mt19937_64 rng(10);
    // P2 and P3 share the colour set of P3 when P2 uses the first edge.
    auto p3 = make_path(3);
    auto p2 = make_path(2);
    std::vector<int> c2 = {0, 2};
    auto g = random_coloured_host(p3, 2, rng);
    ColouredOracle p = [&](const ColouredGraph& x) -> Rational { return coloured_hom_eval(p2, c2, x) + colhom_eval(p3, x); };
    EXPECT_EQ(degree_slice(p, 1, 2, g), coloured_hom_eval(p2, c2, g));
    EXPECT_EQ(degree_slice(p, 2, 2, g), colhom_eval(p3, g));
    EXPECT_EQ(degree_slice(p, 0, 2, g), 0);

    auto fn = [](const Rational& t) -> Rational { return 3 * t * t + 5; };
    EXPECT_EQ(interpolate_coefficient(fn, 3, 2), 3);
    EXPECT_EQ(interpolate_coefficient(fn, 3, 0), 5);
    EXPECT_EQ(interpolate_coefficient(fn, 3, 3), 0);
}

TEST(Cfi, SingleEdge) {
    auto pair = cfi_pair(make_path(2));
    auto f = make_path(2);
    std::vector<int> id = {0, 1};
    EXPECT_EQ(coloured_hom_eval(f, id, pair.even), 1);
    EXPECT_EQ(coloured_hom_eval(f, id, pair.odd), 0);
}

TEST(Cfi, PathDistinguished) {
    auto s = make_path(3);
    auto pair = cfi_pair(s);
    EXPECT_NE(colhom_eval(s, pair.even), colhom_eval(s, pair.odd));
    for (int size : pair.even.class_size) EXPECT_LE(size, 2);
}

TEST(Cfi, SwappedSquareNotDistinguished) {
    // Two parallel edges over a1-b1 and a2-b2: same edge count as the
    // square, but not isomorphic to it as a coloured graph.
    auto s = make_cycle(4);
    auto pair = cfi_pair(s);
    BipartiteMultigraph h(2, 2);
    h.add_edge(0, 0, 2);
    h.add_edge(1, 1, 2);
    std::vector<int> c = {0, 1, 2, 3};
    EXPECT_EQ(coloured_hom_eval(h, c, pair.even), coloured_hom_eval(h, c, pair.odd));
    EXPECT_NE(colhom_eval(s, pair.even), colhom_eval(s, pair.odd));
}

TEST(Cfi, RequiresConnectedBase) {
    try {
        cfi_pair(disjoint_union(make_path(2), make_path(2)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotConnected);
    }
}

TEST(Quotient, WorkedCase) {
    WeightedHost g(1, 1);
    g.at(0, 0) = make_rational(4, 3);
    auto v = quotient_identity(make_path(2), g);
    EXPECT_EQ(v.lhs, 2 + 2 * g.at(0, 0));
    EXPECT_EQ(v.rhs, v.lhs);
}

TEST(Quotient, EdgelessAndRandom) {
    std::mt19937_64 rng(11);
    auto g = random_host(2, 2, rng);
    auto v = quotient_identity(BipartiteMultigraph(2, 1), g);
    EXPECT_EQ(v.lhs, 64);
    EXPECT_TRUE(v.holds());
    for (int t = 0; t < 5; ++t) EXPECT_TRUE(quotient_identity(make_path(3), random_host(2, 2, rng)).holds());
}

TEST(Quotient, NotSquare) {
    try {
        bipartite_double(WeightedHost(2, 3, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSquare);
    }
}

TEST(Extraction, ViaSubgraph) {
    std::mt19937_64 rng(12);
    struct Case {
        BipartiteMultigraph f, s;
    };
    for (const auto& c : {Case{make_path(2), make_path(2)}, Case{make_path(3), make_path(2)},
                          Case{doubled_middle_p3(), make_path(2)}}) {
        auto ex = extract_colhom_via_subgraph(c.f, c.s, 1, brute_force_hom_oracle(c.f));
        EXPECT_EQ(ex.oracle_size, subgraph_oracle_size(c.s, 1));
        EXPECT_GT(ex.normalizer, 0);
        for (int t = 0; t < 5; ++t) {
            auto g = random_coloured_host(c.s, 1, rng);
            EXPECT_EQ(ex.evaluate(g), colhom_eval(c.s, g));
        }
    }
}

TEST(Extraction, ViaMinor) {
    std::mt19937_64 rng(13);
    auto ex = extract_colhom_via_minor(make_path(3), make_path(2), 1, brute_force_hom_oracle(make_path(3)));
    EXPECT_EQ(ex.oracle_size, minor_oracle_size(make_path(2), 1));
    for (int t = 0; t < 5; ++t) {
        auto g = random_coloured_host(make_path(2), 1, rng);
        EXPECT_EQ(ex.evaluate(g), colhom_eval(make_path(2), g));
    }
}

TEST(Extraction, FromLinearCombination) {
    std::vector<BipartiteMultigraph> patterns = {make_path(2), make_path(3)};
    std::vector<Rational> alphas = {1, 2};
    HostOracle combined = [&](const WeightedHost& w) -> Rational {
        return alphas[0] * hom_count(patterns[0], w) + alphas[1] * hom_count(patterns[1], w);
    };
    std::mt19937_64 rng(14);
    for (int ell = 0; ell < 2; ++ell) {
        auto ex = extract_single_from_lincomb(combined, patterns, alphas, ell, 3, 1);
        for (int t = 0; t < 5; ++t) {
            auto g = random_host(2, 2, rng);
            EXPECT_EQ(ex.evaluate(g), hom_count(patterns[ell], g));
        }
    }
    try {
        extract_single_from_lincomb(combined, patterns, {1, 0}, 1, 3, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroCoefficient);
    }
}

TEST(Extraction, SinglePatternIsIdentity) {
    std::vector<BipartiteMultigraph> patterns = {make_cycle(4)};
    HostOracle direct = [&](const WeightedHost& w) -> Rational { return hom_count(patterns[0], w); };
    auto ex = extract_single_from_lincomb(direct, patterns, {1}, 0, 2, 3);
    std::mt19937_64 rng(15);
    auto g = random_host(2, 2, rng);
    EXPECT_EQ(ex.evaluate(g), hom_count(patterns[0], g));
}
