#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "symhom/error.hpp"
#include "symhom/pattern.hpp"
#include "symhom/width.hpp"

using namespace symhom;

namespace {

struct Expected {
    const char* name;
    BipartiteMultigraph graph;
    int tw, pw, td;
};

std::vector<Expected> table() {
    return {
        {"single", make_path(1), 0, 0, 1},
        {"P2", make_path(2), 1, 1, 2},
        {"P4", make_path(4), 1, 1, 3},
        {"P7", make_path(7), 1, 1, 3},
        {"star3", make_star(3), 1, 1, 2},
        {"B7", make_complete_binary_tree(7), 1, 1, 3},
        {"C4", make_cycle(4), 2, 2, 3},
        {"C6", make_cycle(6), 2, 2, 4},
        {"K22", make_complete_bipartite(2, 2), 2, 2, 3},
        {"K33", make_complete_bipartite(3, 3), 3, 3, 4},
        {"grid2x3", make_grid(2, 3), 2, 2, 4},
    };
}

}  // namespace

TEST(Width, KnownValues) {
    for (const auto& e : table()) {
        SCOPED_TRACE(e.name);
        auto tw = treewidth_exact(e.graph);
        auto pw = pathwidth_exact(e.graph);
        auto td = treedepth_exact(e.graph);
        EXPECT_EQ(tw.width, e.tw);
        EXPECT_EQ(pw.width, e.pw);
        EXPECT_EQ(td.depth, e.td);
        EXPECT_TRUE(validate_decomposition(e.graph, tw.decomposition).ok);
        EXPECT_TRUE(validate_decomposition(e.graph, pw.decomposition).ok);
        EXPECT_TRUE(validate_decomposition(e.graph, td.tree).ok);
        EXPECT_EQ(tw.decomposition.width(), e.tw);
        EXPECT_EQ(pw.decomposition.width(), e.pw);
        EXPECT_EQ(td.tree.height(), e.td);
    }
}

TEST(Width, MultiplicityIsIgnored) {
    BipartiteMultigraph f(1, 1);
    f.add_edge(0, 0, 3);
    EXPECT_EQ(treewidth_exact(f).width, 1);
    EXPECT_EQ(treedepth_exact(f).depth, 2);
}

TEST(Width, ChainOfInequalities) {
    for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
            for (const auto& f : enumerate_bipartite(a, b, 1)) {
                int tw = treewidth_exact(f).width;
                int pw = pathwidth_exact(f).width;
                int td = treedepth_exact(f).depth;
                EXPECT_LE(tw, pw);
                EXPECT_LE(pw, td - 1);
                if (f.num_vertices() >= 2) EXPECT_LE(std::pow(2.0, td), std::pow(f.num_vertices(), tw + 1));
            }
        }
    }
}

TEST(Width, EdgelessGraphs) {
    BipartiteMultigraph f(2, 3);
    EXPECT_EQ(treewidth_exact(f).width, 0);
    EXPECT_EQ(pathwidth_exact(f).width, 0);
    auto td = treedepth_exact(f);
    EXPECT_EQ(td.depth, 1);
    EXPECT_EQ(td.tree.roots().size(), 5u);
}

TEST(Width, LabelsInOneBag) {
    WidthOptions opts;
    opts.labels_in_one_bag = true;
    auto p4 = make_path(4);
    opts.labels = {path_vertex(4, 0), path_vertex(4, 3)};
    auto tw = treewidth_exact(p4, opts);
    EXPECT_EQ(tw.width, 2);
    EXPECT_TRUE(validate_decomposition(p4, tw.decomposition).ok);
    bool together = false;
    for (const auto& bag : tw.decomposition.bags) {
        together |= std::count(bag.begin(), bag.end(), opts.labels[0]) &&
                    std::count(bag.begin(), bag.end(), opts.labels[1]);
    }
    EXPECT_TRUE(together);
    auto pw = pathwidth_exact(p4, opts);
    const auto& first = pw.decomposition.bags.front();
    EXPECT_TRUE(std::count(first.begin(), first.end(), opts.labels[0]));
    EXPECT_TRUE(std::count(first.begin(), first.end(), opts.labels[1]));
}

TEST(Width, VertexCap) {
    WidthOptions opts;
    opts.vertex_cap = 4;
    try {
        treewidth_exact(make_grid(2, 3), opts);
        FAIL() << "expected SizeCap";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SizeCap);
    }
}

TEST(Validation, RejectsMissingEdge) {
    TreeDecomposition d;
    d.parent = {-1, 0};
    d.bags = {{0}, {1}};
    EXPECT_FALSE(validate_decomposition(make_path(2), d).ok);
}

TEST(Validation, RejectsDisconnectedOccurrence) {
    // Vertex 0 appears in bags 0 and 2 but not in bag 1.
    PathDecomposition p;
    p.bags = {{0, 2}, {1, 2}, {0, 1}};
    auto f = make_path(3);
    auto r = validate_decomposition(f, p);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.violation.empty());
}

TEST(Validation, EliminationTreeNeedsAncestry) {
    // P3 with both endpoints as roots and the middle below one of them.
    EliminationTree t;
    t.parent = {-1, -1, 0};
    EXPECT_FALSE(validate_decomposition(make_path(3), t).ok);
    t.parent = {2, 2, -1};
    EXPECT_TRUE(validate_decomposition(make_path(3), t).ok);
    EXPECT_EQ(t.height(), 2);
}

TEST(Validation, JsonRoundTrips) {
    auto f = make_grid(2, 3);
    auto tw = treewidth_exact(f).decomposition;
    auto back = TreeDecomposition::from_json(tw.to_json());
    EXPECT_EQ(back.bags, tw.bags);
    EXPECT_EQ(back.parent, tw.parent);
    auto pw = pathwidth_exact(f).decomposition;
    EXPECT_EQ(PathDecomposition::from_json(pw.to_json()).bags, pw.bags);
    auto td = treedepth_exact(f).tree;
    EXPECT_EQ(EliminationTree::from_json(td.to_json()).parent, td.parent);
}

TEST(Validation, PathAsTree) {
    auto pw = pathwidth_exact(make_cycle(6)).decomposition;
    auto t = pw.as_tree();
    EXPECT_TRUE(validate_decomposition(make_cycle(6), t).ok);
    EXPECT_EQ(t.width(), pw.width());
}

TEST(Validation, RootedDepthCountsAncestorUnion) {
    PathDecomposition p;
    p.bags = {{0, 2}, {1, 2}};
    EXPECT_EQ(rooted_depth(p.as_tree()), 3);
}
