#include <algorithm>
#include <string>
#include <vector>

#include "symhom/reduce.hpp"
#include "symhom/width.hpp"
#include "tally.hpp"

namespace symhom::suite_detail {

namespace {

BipartiteMultigraph spider() {
    // Centre a1, legs a1-b(k)-a(k+1).
    BipartiteMultigraph f(4, 3);
    for (int k = 0; k < 3; ++k) {
        f.add_edge(0, k);
        f.add_edge(1 + k, k);
    }
    return f;
}

struct Golden {
    std::string name;
    BipartiteMultigraph graph;
    int tw, pw, td;
};

std::vector<Golden> golden_widths() {
    return {
        {"P2", make_path(2), 1, 1, 2},
        {"P4", make_path(4), 1, 1, 3},
        {"P7", make_path(7), 1, 1, 3},
        {"star3", make_star(3), 1, 1, 2},
        {"star5", make_star(5), 1, 1, 2},
        {"B4", make_complete_binary_tree(4), 1, 1, 3},
        {"spider", spider(), 1, 2, 3},
        {"C4", make_cycle(4), 2, 2, 3},
        {"C6", make_cycle(6), 2, 2, 4},
        {"C8", make_cycle(8), 2, 2, 4},
        {"K22", make_complete_bipartite(2, 2), 2, 2, 3},
        {"grid2x3", make_grid(2, 3), 2, 2, 4},
    };
}

Integer power(long base, int e) {
    Integer r = 1;
    for (int k = 0; k < e; ++k) r *= base;
    return r;
}

}  // namespace

CheckResult criterion_width(const SuiteOptions&) {
    Tally tally;
    for (const auto& g : golden_widths()) {
        auto tw = treewidth_exact(g.graph);
        auto pw = pathwidth_exact(g.graph);
        auto td = treedepth_exact(g.graph);
        auto got = [&] {
            return g.name + " gave tw/pw/td " + std::to_string(tw.width) + "/" + std::to_string(pw.width) + "/" +
                   std::to_string(td.depth);
        };
        tally.expect(tw.width == g.tw && pw.width == g.pw && td.depth == g.td, got);
        tally.expect(validate_decomposition(g.graph, tw.decomposition).ok &&
                         validate_decomposition(g.graph, pw.decomposition).ok &&
                         validate_decomposition(g.graph, td.tree).ok &&
                         tw.decomposition.width() == tw.width && pw.decomposition.width() == pw.width &&
                         td.tree.height() == td.depth,
                     [&] { return g.name + " certificate invalid"; });
    }
    int graphs = 0;
    for (int a = 0; a <= 8; ++a) {
        for (int b = 0; a + b <= 8; ++b) {
            if (a + b == 0) continue;
            for (const auto& f : enumerate_bipartite(a, b, 1)) {
                ++graphs;
                auto tw = treewidth_exact(f);
                auto pw = pathwidth_exact(f);
                auto td = treedepth_exact(f);
                auto where = [&] { return f.to_json().dump(); };
                tally.expect(validate_decomposition(f, tw.decomposition).ok &&
                                 validate_decomposition(f, pw.decomposition).ok &&
                                 validate_decomposition(f, td.tree).ok,
                             [&] { return "invalid certificate for " + where(); });
                tally.expect(tw.width <= pw.width && pw.width <= td.depth - 1,
                             [&] { return "tw <= pw <= td-1 fails for " + where(); });
                int nv = f.num_vertices();
                if (nv >= 2) {
                    // td <= (tw+1) log2 |V|  <=>  2^td <= |V|^(tw+1)
                    tally.expect(power(2, td.depth) <= power(nv, tw.width + 1),
                                 [&] { return "td <= (tw+1) log|V| fails for " + where(); });
                }
            }
        }
    }
    return tally.result("criterion-09", std::to_string(graphs) + " graphs up to 8 vertices");
}

CheckResult criterion_separation(const SuiteOptions&) {
    Tally tally;
    CfiPair pair = cfi_pair(make_cycle(4));
    int size = 0;
    for (int s : pair.even.class_size) size = std::max(size, s);
    for (int s : pair.odd.class_size) size = std::max(size, s);
    WeightedHost g = flatten(pad_classes(pair.even, size));
    WeightedHost h = flatten(pad_classes(pair.odd, size));
    std::vector<BipartiteMultigraph> forests;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b) {
            if (a + b == 0) continue;
            for (const auto& f : enumerate_bipartite(a, b, 2))
                if (treewidth_exact(f).width <= 1) forests.push_back(f);
        }
    for (const auto& f : forests) {
        tally.expect(hom_count(f, g) == hom_count(f, h), [&] { return "distinguished by " + f.to_json().dump(); });
    }
    Rational even = hom_count(make_cycle(4), g), odd = hom_count(make_cycle(4), h);
    tally.expect(even != odd, [&] { return "the 4-cycle does not distinguish the pair"; });
    return tally.result("criterion-10", std::to_string(forests.size()) + " forest patterns agree, C4 counts " +
                                            to_string(even) + " vs " + to_string(odd));
}

namespace {

// All S-coloured H with exactly |E(S)| edges (counted with multiplicity),
// no isolated vertices, each H-edge lying over an S-edge. Enumerated by a
// nondecreasing sequence of S-edges with each endpoint either an existing
// vertex of the right colour or a fresh one.
template <class Visit>
void enumerate_coloured(const BipartiteMultigraph& s, Visit visit) {
    std::vector<std::pair<int, int>> s_edges;
    for (const auto& [e, mult] : s.edges())
        for (int k = 0; k < mult; ++k) s_edges.push_back(e);
    int k = static_cast<int>(s_edges.size());
    std::vector<int> a_col, b_col;
    std::vector<std::pair<int, int>> h_edges;
    auto rec = [&](auto&& self, int t, int min_edge) -> void {
        if (t == k) {
            BipartiteMultigraph h(static_cast<int>(a_col.size()), static_cast<int>(b_col.size()));
            for (const auto& [x, y] : h_edges) h.add_edge(x, y);
            std::vector<int> colour;
            for (int c : a_col) colour.push_back(c);
            for (int c : b_col) colour.push_back(s.a_count() + c);
            visit(h, colour);
            return;
        }
        for (int e = min_edge; e < k; ++e) {
            auto [sa, sb] = s_edges[e];
            int na = static_cast<int>(a_col.size()), nb = static_cast<int>(b_col.size());
            for (int x = 0; x <= na; ++x) {
                if (x < na && a_col[x] != sa) continue;
                for (int y = 0; y <= nb; ++y) {
                    if (y < nb && b_col[y] != sb) continue;
                    if (x == na) a_col.push_back(sa);
                    if (y == nb) b_col.push_back(sb);
                    h_edges.push_back({x, y});
                    self(self, t + 1, e);
                    h_edges.pop_back();
                    if (y == nb) b_col.pop_back();
                    if (x == na) a_col.pop_back();
                }
            }
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

CheckResult criterion_cfi(const SuiteOptions&) {
    Tally tally;
    std::vector<std::pair<std::string, BipartiteMultigraph>> bases = {
        {"P2", make_path(2)}, {"P3", make_path(3)}, {"P4", make_path(4)}, {"C4", make_cycle(4)}};
    long candidates = 0, distinguishing = 0;
    for (const auto& [name, s] : bases) {
        CfiPair pair = cfi_pair(s);
        auto names = identity_colour_names(s);
        std::vector<int> s_identity(s.num_vertices());
        for (int v = 0; v < s.num_vertices(); ++v) s_identity[v] = v;
        enumerate_coloured(s, [&](const BipartiteMultigraph& h, const std::vector<int>& colour) {
            ++candidates;
            std::vector<int> even_c, odd_c;
            for (int c : colour) {
                even_c.push_back(pair.even.colour_index(names[c]));
                odd_c.push_back(pair.odd.colour_index(names[c]));
            }
            bool differs = coloured_hom_eval(h, even_c, pair.even) != coloured_hom_eval(h, odd_c, pair.odd);
            bool iso = are_isomorphic_coloured(h, colour, s, s_identity);
            distinguishing += differs;
            tally.expect(differs == iso, [&] {
                return "S=" + name + " H=" + h.to_json().dump() + (iso ? " is a copy but not distinguished"
                                                                        : " is distinguished but not a copy");
            });
        });
    }
    return tally.result("cfi", std::to_string(candidates) + " coloured candidates, " +
                                   std::to_string(distinguishing) + " distinguishing");
}

}  // namespace symhom::suite_detail
