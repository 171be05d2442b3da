#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "symhom/reduce.hpp"
#include "tally.hpp"

namespace symhom {

using suite_detail::stream;
using suite_detail::Tally;

namespace {

BipartiteMultigraph doubled_p3() {
    BipartiteMultigraph f(2, 1);
    f.add_edge(0, 0, 1);
    f.add_edge(1, 0, 2);
    return f;
}

int edge_index(const BipartiteMultigraph& f, int a, int b_global) {
    int k = 0;
    for (const auto& [e, mult] : f.edges()) {
        if (e.first == a && f.a_count() + e.second == b_global) return k;
        ++k;
    }
    throw Error(ErrorCode::IndexOutOfRange, "not an edge");
}

// F-coloured host with class size n whose entries are the bits of `bits`,
// edge blocks in edges() order, row-major within a block.
ColouredGraph bit_host(const BipartiteMultigraph& f, int n, unsigned long bits) {
    return make_f_coloured(f, identity_colour_names(f), n, [&](int a, int i, int b, int j) {
        int pos = edge_index(f, a, b) * n * n + i * n + j;
        return Rational(static_cast<long>((bits >> pos) & 1));
    });
}

WeightedHost bit_matrix(int n, int m, unsigned long bits) {
    WeightedHost h(n, m);
    for (int e = 0; e < n * m; ++e) h.w[e] = static_cast<long>((bits >> e) & 1);
    return h;
}

std::vector<int> identity_colouring(const BipartiteMultigraph& f) {
    std::vector<int> c(f.num_vertices());
    for (int v = 0; v < f.num_vertices(); ++v) c[v] = v;
    return c;
}

std::string name_of(const BipartiteMultigraph& f) { return f.to_json().dump(); }

// ---- uncolour ------------------------------------------------------------

CheckResult check_uncolour(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "uncolour");
    for (const auto& f : {make_path(3), make_cycle(4), doubled_p3()}) {
        auto where = [&] { return "F=" + name_of(f); };
        for (int t = 0; t < o.trials; ++t) {
            auto v = uncolour_expand(f, random_colour_set_host(2, 2, rng));
            tally.expect(v.holds(), where);
        }
        for (unsigned long bits = 0; bits < 16; ++bits) {
            ColouredGraph g = random_colour_set_host(2, 1, rng);
            int e = 0;
            for (auto& [key, block] : g.blocks) block.data[0] = static_cast<long>((bits >> e++) & 1);
            tally.expect(uncolour_expand(f, g).holds(), where);
        }
    }
    return tally.result("uncolour", "");
}

// ---- product -------------------------------------------------------------

CheckResult check_product(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "product");
    for (const auto& f : {make_path(3), make_cycle(4), doubled_p3()}) {
        auto where = [&] { return "F=" + name_of(f); };
        for (int t = 0; t < o.trials; ++t) {
            auto g = random_coloured_host(f, 2, rng);
            auto h = random_coloured_host(f, 2, rng);
            auto k = random_coloured_host(f, 1 + t % 2, rng);
            tally.expect(colhom_eval(f, tensor_product(g, h)) == colhom_eval(f, g) * colhom_eval(f, h), where);
            auto left = tensor_product(tensor_product(g, h), k);
            auto right = tensor_product(g, tensor_product(h, k));
            tally.expect(coloured_graph_to_json(left) == coloured_graph_to_json(right),
                         [&] { return "associativity, " + where(); });
        }
        int e = static_cast<int>(f.edges().size());
        for (unsigned long bits = 0; bits < (1UL << (2 * e)); ++bits) {
            auto g = bit_host(f, 1, bits & ((1UL << e) - 1));
            auto h = bit_host(f, 1, bits >> e);
            tally.expect(colhom_eval(f, tensor_product(g, h)) == colhom_eval(f, g) * colhom_eval(f, h), where);
        }
    }
    return tally.result("product", "");
}

// ---- interpolation slices ------------------------------------------------

ColouredGraph shifted(const BipartiteMultigraph& f, const ColouredGraph& g) {
    ColouredGraph out = g;
    for (const auto& [e, mult] : f.edges())
        for (auto& w : out.block(e.first, f.a_count() + e.second).data) w += 1;
    return out;
}

long binomial(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Sum over sub-multigraphs F' of F with k edges of C(mult, r) colhom_{F'}(G).
Rational slice_by_subgraphs(const BipartiteMultigraph& f, const ColouredGraph& g, int k) {
    std::vector<std::pair<std::pair<int, int>, int>> edges(f.edges().begin(), f.edges().end());
    std::vector<int> r(edges.size(), 0);
    Rational total = 0;
    auto rec = [&](auto&& self, std::size_t idx, int left) -> void {
        if (idx == edges.size()) {
            if (left != 0) return;
            BipartiteMultigraph sub(f.a_count(), f.b_count());
            long weight = 1;
            for (std::size_t q = 0; q < edges.size(); ++q) {
                weight *= binomial(edges[q].second, r[q]);
                if (r[q] > 0) sub.add_edge(edges[q].first.first, edges[q].first.second, r[q]);
            }
            total += Rational(weight) * coloured_hom_eval(sub, identity_colouring(f), g);
            return;
        }
        for (int x = 0; x <= std::min(edges[idx].second, left); ++x) {
            r[idx] = x;
            self(self, idx + 1, left - x);
        }
    };
    rec(rec, 0, k);
    return total;
}

CheckResult check_slices(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "slices");
    for (const auto& f : {doubled_p3(), make_cycle(4)}) {
        int ne = f.edge_count();
        ColouredOracle p = [&](const ColouredGraph& g) { return colhom_eval(f, shifted(f, g)); };
        auto run = [&](const ColouredGraph& g) {
            for (int k = 0; k <= ne; ++k) {
                tally.expect(degree_slice(p, k, ne, g) == slice_by_subgraphs(f, g, k),
                             [&] { return "k=" + std::to_string(k) + " F=" + name_of(f); });
            }
        };
        for (int t = 0; t < o.trials; ++t) run(random_coloured_host(f, 2, rng));
        int e = static_cast<int>(f.edges().size());
        for (unsigned long bits = 0; bits < (1UL << e); ++bits) run(bit_host(f, 1, bits));
    }
    return tally.result("slices", "");
}

// ---- minor projection ----------------------------------------------------

CheckResult check_minor_projection(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "minor-projection");
    std::vector<std::pair<BipartiteMultigraph, BipartiteMultigraph>> cases = {{make_path(2), make_path(3)},
                                                                              {make_cycle(4), make_grid(2, 3)}};
    for (const auto& [s, fp] : cases) {
        auto branch = find_minor(s, fp);
        auto where = [&] { return "S=" + name_of(s) + " F'=" + name_of(fp); };
        tally.expect(branch.has_value(), [&] { return "no minor model, " + where(); });
        if (!branch) continue;
        auto run = [&](const ColouredGraph& y, int n) {
            tally.expect(colhom_eval(fp, minor_gadget(s, fp, *branch, n, y)) == colhom_eval(s, y), where);
        };
        for (int t = 0; t < o.trials; ++t) run(random_coloured_host(s, 2, rng), 2);
        int e = static_cast<int>(s.edges().size());
        for (unsigned long bits = 0; bits < (1UL << e); ++bits) run(bit_host(s, 1, bits), 1);
    }
    return tally.result("minor-projection", "");
}

// ---- quotient ------------------------------------------------------------

CheckResult check_quotient(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "quotient");
    for (const auto& f : {make_path(2), make_path(3), make_cycle(4), doubled_p3()}) {
        auto where = [&] { return "F=" + name_of(f); };
        for (int t = 0; t < o.trials; ++t) tally.expect(quotient_identity(f, random_host(2, 2, rng)).holds(), where);
        for (unsigned long bits = 0; bits < 16; ++bits)
            tally.expect(quotient_identity(f, bit_matrix(2, 2, bits)).holds(), where);
    }
    // Single edge into the 1 x 1 host x: both sides equal 2 + 2x.
    for (int t = 0; t < o.trials; ++t) {
        WeightedHost g(1, 1);
        g.at(0, 0) = random_rational(rng);
        auto v = quotient_identity(make_path(2), g);
        Rational expected = 2 + 2 * g.at(0, 0);
        tally.expect(v.lhs == expected && v.rhs == expected,
                     [&] { return "worked case gave " + to_string(v.lhs) + " and " + to_string(v.rhs); });
    }
    return tally.result("quotient", "");
}

// ---- hom to emb ----------------------------------------------------------

CheckResult check_hom_to_emb(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "hom-to-emb");
    std::vector<WeightedHost> hosts;
    for (int t = 0; t < o.trials; ++t) hosts.push_back(random_host(3, 3, rng));
    for (unsigned long bits = 0; bits < 16; ++bits) hosts.push_back(bit_matrix(2, 2, bits));
    int patterns = 0;
    for (int a = 0; a <= 3; ++a) {
        for (int b = 0; b <= 3; ++b) {
            if (a + b == 0) continue;
            for (const auto& f : enumerate_bipartite(a, b, 2)) {
                ++patterns;
                auto terms = hom_to_emb_terms(f);
                for (const auto& h : hosts) {
                    Rational sum = 0;
                    for (const auto& q : terms) sum += emb_eval(q, h);
                    tally.expect(sum == hom_count(f, h), [&] { return "F=" + name_of(f); });
                }
            }
        }
    }
    return tally.result("hom-to-emb", std::to_string(patterns) + " patterns");
}

// ---- gadgets -------------------------------------------------------------

RationalMatrix matrix_of(int size, const std::function<Rational(int, int)>& entry) {
    RationalMatrix y(size, std::vector<Rational>(size));
    for (int u = 0; u < size; ++u)
        for (int v = 0; v < size; ++v) y[u][v] = entry(u, v);
    return y;
}

CheckResult check_clique(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "clique");
    for (int n = 1; n <= 2; ++n) {
        auto grid = make_grid(n, n);
        int k = 2 * n;
        auto where = [&] { return "n=" + std::to_string(n); };
        auto agree = [&](const RationalMatrix& y) {
            Rational lhs = colhom_eval(grid, clique_grid_gadget(n, y));
            tally.expect(lhs == clique_polynomial(n, y), where);
            return lhs;
        };
        Rational ones = agree(matrix_of(k, [](int, int) { return Rational(1); }));
        long central = n == 1 ? 2 : 6;
        tally.expect(ones == central, [&] { return "all-ones value " + to_string(ones) + ", " + where(); });
        if (n == 2) {
            Rational probe = agree(matrix_of(k, [](int u, int v) { return Rational(u == 0 && v == 1 ? 0 : 1); }));
            tally.expect(probe == 5, [&] { return "zeroed probe gave " + to_string(probe); });
        }
        for (int t = 0; t < o.trials; ++t) agree(matrix_of(k, [&](int, int) { return random_rational(rng); }));
        std::vector<std::pair<int, int>> slots;
        for (int u = 0; u < k; ++u)
            for (int v = u + 1; v < k; ++v) slots.push_back({u, v});
        for (unsigned long bits = 0; bits < (1UL << slots.size()); ++bits) {
            RationalMatrix y = matrix_of(k, [](int, int) { return Rational(0); });
            for (std::size_t s = 0; s < slots.size(); ++s) y[slots[s].first][slots[s].second] = static_cast<long>((bits >> s) & 1);
            agree(y);
        }
    }
    return tally.result("clique", "");
}

// Gadgets over x (length dom) and symmetric y (dom x dom).
using GadgetFn = ColouredGraph (*)(int, const std::vector<Rational>&, const RationalMatrix&);
using TargetFn = Rational (*)(int, const std::vector<Rational>&, const RationalMatrix&);

void check_vector_gadget(Tally& tally, std::mt19937_64& rng, const SuiteOptions& o, const std::string& label,
                         const BipartiteMultigraph& pattern, int m, int dom, bool diagonal, GadgetFn gadget,
                         TargetFn target, bool sweep) {
    auto agree = [&](const std::vector<Rational>& x, const RationalMatrix& y) {
        tally.expect(colhom_eval(pattern, gadget(m, x, y)) == target(m, x, y),
                     [&] { return label + " m=" + std::to_string(m); });
    };
    for (int t = 0; t < o.trials; ++t) {
        std::vector<Rational> x(dom);
        for (auto& v : x) v = random_rational(rng);
        RationalMatrix y(dom, std::vector<Rational>(dom));
        for (int u = 0; u < dom; ++u)
            for (int v = u; v < dom; ++v) y[u][v] = y[v][u] = random_rational(rng);
        agree(x, y);
    }
    if (!sweep) return;
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < dom; ++u)
        for (int v = diagonal ? u : u + 1; v < dom; ++v) slots.push_back({u, v});
    int bits_needed = dom + static_cast<int>(slots.size());
    for (unsigned long bits = 0; bits < (1UL << bits_needed); ++bits) {
        std::vector<Rational> x(dom);
        for (int u = 0; u < dom; ++u) x[u] = static_cast<long>((bits >> u) & 1);
        RationalMatrix y(dom, std::vector<Rational>(dom, 0));
        for (std::size_t s = 0; s < slots.size(); ++s) {
            Rational b = static_cast<long>((bits >> (dom + s)) & 1);
            y[slots[s].first][slots[s].second] = y[slots[s].second][slots[s].first] = b;
        }
        agree(x, y);
    }
}

CheckResult check_btree(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "btree");
    check_vector_gadget(tally, rng, o, "btree", make_complete_binary_tree(1), 1, 1, true, btree_vp_gadget,
                        btree_target, true);
    check_vector_gadget(tally, rng, o, "btree", make_complete_binary_tree(2), 2, 64, true, btree_vp_gadget,
                        btree_target, false);
    return tally.result("btree", "");
}

CheckResult check_path(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "path");
    check_vector_gadget(tally, rng, o, "path", make_path(3), 1, 1, false, path_vbp_gadget, path_target, true);
    check_vector_gadget(tally, rng, o, "path", make_path(4), 2, 4, false, path_vbp_gadget, path_target, true);
    return tally.result("path", "");
}

// ---- extraction ----------------------------------------------------------

struct ExtractionCase {
    std::string name;
    BipartiteMultigraph s;
    BipartiteMultigraph f;
};

std::vector<ExtractionCase> extraction_cases() {
    return {{"P2 in P3", make_path(2), make_path(3)},
            {"P2 in doubled P3", make_path(2), doubled_p3()},
            {"P3 in 2x2 grid", make_path(3), make_grid(2, 2)}};
}

CheckResult check_extraction(const SuiteOptions& o, bool minor) {
    std::string id = minor ? "extract-minor" : "extract-subgraph";
    Tally tally;
    auto rng = stream(o.seed, id);
    for (const auto& c : extraction_cases()) {
        for (int n = 1; n <= 2; ++n) {
            auto oracle = brute_force_hom_oracle(c.f);
            Extraction ex = minor ? extract_colhom_via_minor(c.f, c.s, n, oracle)
                                  : extract_colhom_via_subgraph(c.f, c.s, n, oracle);
            for (int t = 0; t < o.trials; ++t) {
                auto g = random_coloured_host(c.s, n, rng);
                tally.expect(ex.evaluate(g) == colhom_eval(c.s, g),
                             [&] { return c.name + " n=" + std::to_string(n); });
            }
        }
    }
    return tally.result(id, "");
}

CheckResult check_lincomb(const SuiteOptions& o) {
    Tally tally;
    auto rng = stream(o.seed, "extract-lincomb");
    std::vector<BipartiteMultigraph> patterns = {make_path(2), make_path(3)};
    std::vector<Rational> alphas = {1, 2};
    HostOracle combined = [&](const WeightedHost& w) -> Rational {
        return alphas[0] * hom_count(patterns[0], w) + alphas[1] * hom_count(patterns[1], w);
    };
    for (int ell = 0; ell < 2; ++ell) {
        auto ex = extract_single_from_lincomb(combined, patterns, alphas, ell, 3, o.seed);
        for (int t = 0; t < o.trials; ++t) {
            auto g = random_host(2, 2, rng);
            tally.expect(ex.evaluate(g) == hom_count(patterns[ell], g), [&] { return "term " + std::to_string(ell); });
        }
    }
    return tally.result("extract-lincomb", "");
}

using IdentityFn = std::function<CheckResult(const SuiteOptions&)>;

const std::map<std::string, IdentityFn>& identity_table() {
    static const std::map<std::string, IdentityFn> table = {
        {"uncolour", check_uncolour},
        {"product", check_product},
        {"slices", check_slices},
        {"minor-projection", check_minor_projection},
        {"quotient", check_quotient},
        {"hom-to-emb", check_hom_to_emb},
        {"clique", check_clique},
        {"btree", check_btree},
        {"path", check_path},
        {"cfi", suite_detail::criterion_cfi},
        {"extract-subgraph", [](const SuiteOptions& o) { return check_extraction(o, false); }},
        {"extract-minor", [](const SuiteOptions& o) { return check_extraction(o, true); }},
        {"extract-lincomb", check_lincomb},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : identity_table()) out.push_back(name);
        return out;
    }();
    return names;
}

CheckResult verify_identity(const std::string& name, const SuiteOptions& options) {
    auto it = identity_table().find(name);
    if (it == identity_table().end()) throw Error(ErrorCode::InvalidParameter, "unknown identity: " + name);
    return it->second(options);
}

}  // namespace symhom
