#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "symhom/error.hpp"
#include "symhom/pattern.hpp"
#include "symhom/width.hpp"

using namespace symhom;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidParameter;
}

LabelledPattern labelled_edge() {
    LabelledPattern p;
    p.graph = make_path(2);
    p.a_labels = {0};
    p.b_labels = {0};
    return p;
}

// Applies independent random permutations to both sides.
BipartiteMultigraph shuffled(const BipartiteMultigraph& f, std::mt19937_64& rng) {
    std::vector<int> pa(f.a_count()), pb(f.b_count());
    std::iota(pa.begin(), pa.end(), 0);
    std::iota(pb.begin(), pb.end(), 0);
    std::shuffle(pa.begin(), pa.end(), rng);
    std::shuffle(pb.begin(), pb.end(), rng);
    BipartiteMultigraph g(f.a_count(), f.b_count());
    for (const auto& [e, mult] : f.edges()) g.add_edge(pa[e.first], pb[e.second], mult);
    return g;
}

}  // namespace

TEST(Generators, Paths) {
    auto p1 = make_path(1);
    EXPECT_EQ(p1.a_count(), 1);
    EXPECT_EQ(p1.edge_count(), 0);
    EXPECT_EQ(make_path(2).edge_count(), 1);
    auto p5 = make_path(5);
    EXPECT_EQ(p5.a_count(), 3);
    EXPECT_EQ(p5.b_count(), 2);
    EXPECT_EQ(p5.edge_count(), 4);
    EXPECT_EQ(code_of([] { make_path(0); }), ErrorCode::InvalidParameter);
}

TEST(Generators, Grids) {
    EXPECT_EQ(make_grid(1, 1).num_vertices(), 1);
    auto g22 = make_grid(2, 2);
    EXPECT_EQ(g22.num_vertices(), 4);
    EXPECT_EQ(g22.edge_count(), 4);
    EXPECT_TRUE(are_isomorphic(g22, make_cycle(4)));
    auto g33 = make_grid(3, 3);
    EXPECT_EQ(g33.num_vertices(), 9);
    EXPECT_EQ(g33.edge_count(), 12);
    EXPECT_EQ(g33.a_count(), 5);  // (i+j) even
}

TEST(Generators, CompleteBinaryTrees) {
    EXPECT_EQ(make_complete_binary_tree(1).num_vertices(), 1);
    auto b2 = make_complete_binary_tree(2);
    EXPECT_EQ(b2.num_vertices(), 3);
    EXPECT_EQ(b2.edge_count(), 2);
    EXPECT_EQ(make_complete_binary_tree(7).num_vertices(), 7);
    EXPECT_EQ(complete_binary_tree_height(7), 2);
    EXPECT_EQ(make_complete_binary_tree(8).num_vertices(), 15);
    EXPECT_EQ(code_of([] { make_complete_binary_tree(0); }), ErrorCode::InvalidParameter);
}

TEST(Generators, CyclesNeedEvenLength) {
    EXPECT_EQ(make_cycle(6).edge_count(), 6);
    EXPECT_EQ(code_of([] { make_cycle(5); }), ErrorCode::InvalidParameter);
}

TEST(Graph, JsonIsOneBased) {
    auto p3 = make_path(3);
    auto j = p3.to_json();
    EXPECT_EQ(j["a"], 2);
    EXPECT_EQ(j["b"], 1);
    EXPECT_EQ(j["edges"][0][0], 1);
    EXPECT_EQ(BipartiteMultigraph::from_json(j), p3);
}

TEST(Graph, MultiplicityCountsTowardsNorm) {
    BipartiteMultigraph f(1, 1);
    f.add_edge(0, 0, 2);
    EXPECT_FALSE(f.is_simple());
    EXPECT_EQ(f.edge_count(), 2);
    EXPECT_EQ(f.size_norm(), 4);
    EXPECT_EQ(code_of([&] { f.add_edge(1, 0); }), ErrorCode::IndexOutOfRange);
}

TEST(Isomorphism, RelabelledPath) {
    BipartiteMultigraph p(2, 1);
    p.add_edge(1, 0);
    p.add_edge(0, 0);
    EXPECT_TRUE(are_isomorphic(make_path(3), p));
}

TEST(Isomorphism, MultiplicityMatters) {
    BipartiteMultigraph doubled(1, 1);
    doubled.add_edge(0, 0, 2);
    EXPECT_FALSE(are_isomorphic(make_path(2), doubled));
}

TEST(Isomorphism, PathVersusStar) { EXPECT_FALSE(are_isomorphic(make_path(4), make_star(3))); }

TEST(Isomorphism, SidesAreFixed) {
    // P3 with its middle vertex in A is not P3 with its middle in B.
    EXPECT_FALSE(are_isomorphic(make_path(3), make_star(2)));
}

TEST(Isomorphism, InvariantUnderSidePermutations) {
    std::mt19937_64 rng(5);
    for (const auto& f : enumerate_bipartite(3, 3, 2, 5)) {
        auto g = shuffled(f, rng);
        EXPECT_TRUE(are_isomorphic(f, g));
        EXPECT_TRUE(are_isomorphic(g, f));
    }
}

TEST(Isomorphism, EnumerationIsUpToIsomorphism) {
    auto all = enumerate_bipartite(2, 2, 1);
    // Simple bipartite graphs on 2+2 vertices with fixed sides.
    EXPECT_EQ(all.size(), 7u);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_FALSE(are_isomorphic(all[i], all[j]));
}

TEST(Isomorphism, ColouredVersion) {
    auto p3 = make_path(3);
    EXPECT_TRUE(are_isomorphic_coloured(p3, {0, 1, 2}, p3, {1, 0, 2}));
    EXPECT_FALSE(are_isomorphic_coloured(p3, {0, 0, 2}, p3, {0, 1, 2}));
}

TEST(Minor, SubgraphIsMinor) {
    auto branch = find_minor(make_path(2), make_path(4));
    ASSERT_TRUE(branch.has_value());
    EXPECT_EQ(check_branch_sets(make_path(2), make_path(4), *branch), "");
}

TEST(Minor, CycleNotInPath) { EXPECT_FALSE(find_minor(make_cycle(4), make_path(4)).has_value()); }

TEST(Minor, PathInSquare) {
    auto branch = find_minor(make_path(3), make_grid(2, 2));
    ASSERT_TRUE(branch.has_value());
    EXPECT_EQ(check_branch_sets(make_path(3), make_grid(2, 2), *branch), "");
}

TEST(Minor, CycleInLargerGrid) {
    auto branch = find_minor(make_cycle(4), make_grid(2, 3));
    ASSERT_TRUE(branch.has_value());
    EXPECT_EQ(check_branch_sets(make_cycle(4), make_grid(2, 3), *branch), "");
}

TEST(Minor, InvalidBranchSetsAreRejected) {
    BranchSets bad;
    bad.sets = {{}, {0}, {0}};
    EXPECT_NE(check_branch_sets(make_path(2), make_path(2), bad), "");
}

TEST(Quotient, MonochromaticEdgeContracts) {
    auto q = quotient(make_path(2), {Side::A, Side::A});
    EXPECT_EQ(q.num_vertices(), 1);
    EXPECT_EQ(q.edge_count(), 0);
}

TEST(Quotient, ProperColouringKeepsGraph) {
    EXPECT_EQ(quotient(make_path(2), {Side::A, Side::B}), make_path(2));
}

TEST(Quotient, PathWithTwoInA) {
    // make_path(3) has global ids u=0 (A), w=1 (A), v=2 (B); contract u-v.
    auto q = quotient(make_path(3), {Side::A, Side::B, Side::A});
    EXPECT_EQ(q.a_count(), 1);
    EXPECT_EQ(q.b_count(), 1);
    EXPECT_EQ(q.edge_count(), 1);
}

TEST(Quotient, SurvivingEdgesCrossTheColouring) {
    auto f = make_grid(2, 3);
    for (unsigned mask = 0; mask < (1u << f.num_vertices()); ++mask) {
        std::vector<Side> s;
        for (int v = 0; v < f.num_vertices(); ++v) s.push_back(mask >> v & 1 ? Side::B : Side::A);
        std::vector<int> map;
        auto q = quotient(f, s, map);
        int a = 0;
        for (int v = 0; v < f.num_vertices(); ++v) {
            EXPECT_EQ(q.side_of(map[v]), s[v]);
            a += s[v] == Side::A;
        }
        EXPECT_LE(q.a_count(), a);
    }
}

TEST(Labelled, TensorUnion) {
    LabelledPattern j;
    j.graph = BipartiteMultigraph(1, 0);
    j.a_labels = {0};
    auto u = tensor_union(j, labelled_edge());
    EXPECT_EQ(u.graph.num_vertices(), 3);
    EXPECT_EQ(u.a_labels.size() + u.b_labels.size(), 3u);
    EXPECT_EQ(tensor_union(labelled_edge(), LabelledPattern{}), labelled_edge());
    auto two = tensor_union(labelled_edge(), labelled_edge());
    EXPECT_EQ(two.graph.num_vertices(), 4);
    EXPECT_EQ(two.graph.edge_count(), 2);
    EXPECT_EQ(two.a_labels.size() + two.b_labels.size(), 4u);
}

TEST(Labelled, GlueParallelEdges) {
    auto g = glue(labelled_edge(), labelled_edge());
    EXPECT_EQ(g.graph.num_vertices(), 2);
    EXPECT_EQ(g.graph.multiplicity(0, 0), 2);
}

TEST(Labelled, GlueWithLabelledEdgelessPattern) {
    LabelledPattern j;
    j.graph = BipartiteMultigraph(1, 1);
    j.a_labels = {0};
    j.b_labels = {0};
    EXPECT_EQ(glue(labelled_edge(), j), labelled_edge());
}

TEST(Labelled, GlueTwoPathsGivesSquare) {
    LabelledPattern p;
    p.graph = make_path(3);
    p.a_labels = {0, 1};
    auto g = glue(p, p);
    EXPECT_TRUE(are_isomorphic(g.graph, make_cycle(4)));
}

TEST(Labelled, GlueArityMismatch) {
    LabelledPattern j;
    j.graph = BipartiteMultigraph(1, 0);
    j.a_labels = {0};
    EXPECT_EQ(code_of([&] { glue(labelled_edge(), j); }), ErrorCode::ArityMismatch);
}

TEST(Labelled, DropAndAddLabels) {
    LabelledPattern e;
    e.graph = make_path(2);
    e.a_labels = {0};
    auto dropped = drop_label(e, 0);
    EXPECT_TRUE(dropped.a_labels.empty());
    EXPECT_EQ(add_label(dropped, Side::A, 0), e);
    LabelledPattern j;
    j.graph = BipartiteMultigraph(2, 0);
    j.a_labels = {0, 1};
    EXPECT_EQ(drop_label(j, 1).a_labels, std::vector<int>{0});
    EXPECT_EQ(code_of([&] { drop_label(e, 1); }), ErrorCode::IndexOutOfRange);
}

TEST(Labelled, UnionWidthBound) {
    // Recomputed widths of a disjoint union stay within max(k, k', labels).
    auto all = enumerate_bipartite(2, 2, 1, 3);
    for (const auto& f : all) {
        for (const auto& g : all) {
            LabelledPattern lf{f, {0}, {}}, lg{g, {}, {0}};
            auto u = tensor_union(lf, lg);
            int k = std::max({treewidth_exact(f).width, treewidth_exact(g).width, 2});
            EXPECT_LE(treewidth_exact(u.graph).width, k);
        }
    }
}

TEST(Labelled, JsonRoundTrip) {
    LabelledPattern p;
    p.graph = make_path(4);
    p.a_labels = {1, 0};
    p.b_labels = {1};
    EXPECT_EQ(LabelledPattern::from_json(p.to_json()), p);
}

TEST(Operations, RemoveIsolatedAndDisjointUnion) {
    auto f = disjoint_union(make_path(2), BipartiteMultigraph(1, 2));
    EXPECT_EQ(f.isolated_vertices().size(), 3u);
    EXPECT_EQ(remove_isolated(f), make_path(2));
    EXPECT_FALSE(f.is_connected());
}
