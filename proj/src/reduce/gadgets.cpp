#include <algorithm>
#include <cmath>
#include <map>

#include "symhom/reduce.hpp"

namespace symhom {

namespace {

void require(bool ok, ErrorCode code, const std::string& msg) {
    if (!ok) throw Error(code, msg);
}

const Rational& sym(const RationalMatrix& y, int u, int v) {
    return u <= v ? y.at(u).at(v) : y.at(v).at(u);
}

// F-coloured host with the given per-vertex class sizes and empty blocks.
ColouredGraph empty_host(const BipartiteMultigraph& f, const std::vector<int>& class_size) {
    ColouredGraph g;
    g.colours = identity_colour_names(f);
    g.class_size = class_size;
    return g;
}

// Fills the block of F-edge uv (global ids, either orientation) with w(iu, iv).
template <class Fn>
void fill_edge(ColouredGraph& g, const BipartiteMultigraph& f, int u, int v, Fn w) {
    bool u_is_a = f.side_of(u) == Side::A;
    auto& blk = u_is_a ? g.block(u, v) : g.block(v, u);
    for (int iu = 0; iu < g.class_size[u]; ++iu) {
        for (int iv = 0; iv < g.class_size[v]; ++iv) {
            Rational val = w(iu, iv);
            if (u_is_a) {
                blk.at(iu, iv) = val;
            } else {
                blk.at(iv, iu) = val;
            }
        }
    }
}

int ipow(int base, int exp) {
    long long r = 1;
    for (int k = 0; k < exp; ++k) {
        r *= base;
        if (r > 1'000'000) throw Error(ErrorCode::SizeCap, "gadget class size too large");
    }
    return static_cast<int>(r);
}

}  // namespace

ColouredGraph clique_grid_gadget(int n, const RationalMatrix& y) {
    require(n >= 1, ErrorCode::InvalidParameter, "clique grid needs n >= 1");
    require(static_cast<int>(y.size()) >= 2 * n, ErrorCode::InvalidParameter, "y must be 2n x 2n");
    auto grid = make_grid(n, n);
    int k = 2 * n;
    // states[cell] lists (row value, column value); diagonal cells carry (v, v).
    std::vector<std::vector<std::pair<int, int>>> states(grid.num_vertices());
    std::vector<int> size(grid.num_vertices());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            auto& st = states[grid_vertex(n, n, i, j)];
            for (int u = 0; u < k; ++u)
                for (int v = 0; v < k; ++v)
                    if ((i == j) == (u == v)) st.push_back({u, v});
            size[grid_vertex(n, n, i, j)] = static_cast<int>(st.size());
        }
    }
    auto g = empty_host(grid, size);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int here = grid_vertex(n, n, i, j);
            if (j + 1 < n) {
                int right = grid_vertex(n, n, i, j + 1);
                // Entering a strictly upper-triangular cell (i, j+1) records the pair (v_i, v_{j+1}).
                bool upper = i < j + 1;
                fill_edge(g, grid, here, right, [&](int s, int t) -> Rational {
                    auto [u, v] = states[here][s];
                    auto [u2, v2] = states[right][t];
                    if (u != u2 || v >= v2) return 0;
                    return upper ? y.at(u2).at(v2) : Rational(1);
                });
            }
            if (i + 1 < n) {
                int down = grid_vertex(n, n, i + 1, j);
                fill_edge(g, grid, here, down, [&](int s, int t) -> Rational {
                    auto [u, v] = states[here][s];
                    auto [u2, v2] = states[down][t];
                    return (v == v2 && u < u2) ? 1 : 0;
                });
            }
        }
    }
    return g;
}

Rational clique_polynomial(int n, const RationalMatrix& y) {
    require(n >= 1, ErrorCode::InvalidParameter, "clique polynomial needs n >= 1");
    int k = 2 * n;
    Rational total = 0;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (__builtin_popcount(mask) != n) continue;
        Rational term = 1;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if ((mask >> i & 1) && (mask >> j & 1)) term *= y.at(i).at(j);
        total += term;
    }
    return total;
}

ColouredGraph btree_vp_gadget(int m, const std::vector<Rational>& x, const RationalMatrix& y) {
    require(m >= 1, ErrorCode::InvalidParameter, "btree gadget needs m >= 1");
    int dom = ipow(m, 6);
    require(static_cast<int>(x.size()) >= dom && static_cast<int>(y.size()) >= dom, ErrorCode::InvalidParameter,
            "X and Y must be indexed by [m^6]");
    auto tree = make_complete_binary_tree(m);
    auto g = empty_host(tree, std::vector<int>(tree.num_vertices(), dom));
    for (int k = 1; k < tree.num_vertices(); ++k) {
        bool right = k % 2 == 0;
        fill_edge(g, tree, tree_vertex(m, (k - 1) / 2), tree_vertex(m, k), [&](int u, int v) -> Rational {
            return right ? x[v] * sym(y, u, v) : sym(y, u, v);
        });
    }
    return g;
}

Rational btree_target(int m, const std::vector<Rational>& x, const RationalMatrix& y) {
    require(m >= 1, ErrorCode::InvalidParameter, "btree target needs m >= 1");
    int dom = ipow(m, 6);
    int h = complete_binary_tree_height(m);
    int count = (1 << (h + 1)) - 1;
    double maps = std::pow(static_cast<double>(dom), count);
    require(maps <= static_cast<double>(kBruteForceCap), ErrorCode::SizeCap, "btree target expansion too large");
    // Heap-indexed maps, enumerated directly.
    std::vector<int> hmap(count, 0);
    Rational total = 0;
    auto rec = [&](auto&& self, int k, const Rational& partial) -> void {
        if (k == count) {
            total += partial;
            return;
        }
        for (int v = 0; v < dom; ++v) {
            hmap[k] = v;
            Rational p = partial;
            if (k > 0) {
                p *= sym(y, hmap[(k - 1) / 2], v);
                if (k % 2 == 0) p *= x[v];
            }
            if (sgn(p) != 0) self(self, k + 1, p);
        }
    };
    rec(rec, 0, Rational(1));
    return total;
}

ColouredGraph path_vbp_gadget(int m, const std::vector<Rational>& x, const RationalMatrix& y) {
    require(m >= 1, ErrorCode::InvalidParameter, "path gadget needs m >= 1");
    int dom = m * m;
    require(static_cast<int>(x.size()) >= dom && static_cast<int>(y.size()) >= dom, ErrorCode::InvalidParameter,
            "X and Y must be indexed by [m^2]");
    int len = m + 2;
    auto path = make_path(len);
    auto g = empty_host(path, std::vector<int>(len, dom));
    for (int k = 0; k + 1 < len; ++k) {
        bool end = k == 0 || k == m;
        fill_edge(g, path, path_vertex(len, k), path_vertex(len, k + 1), [&](int u, int v) -> Rational {
            if (end) return u == v ? x[u] : Rational(0);
            return u != v ? sym(y, u, v) : Rational(0);
        });
    }
    return g;
}

Rational path_target(int m, const std::vector<Rational>& x, const RationalMatrix& y) {
    require(m >= 1, ErrorCode::InvalidParameter, "path target needs m >= 1");
    int dom = m * m;
    require(std::pow(static_cast<double>(dom), m) <= static_cast<double>(kBruteForceCap), ErrorCode::SizeCap,
            "path target expansion too large");
    std::vector<int> walk(m, 0);
    Rational total = 0;
    auto rec = [&](auto&& self, int k, const Rational& partial) -> void {
        if (k == m) {
            total += partial * x[walk[0]] * x[walk[m - 1]];
            return;
        }
        for (int v = 0; v < dom; ++v) {
            walk[k] = v;
            Rational p = partial;
            if (k > 0) p *= walk[k - 1] != v ? sym(y, walk[k - 1], v) : Rational(0);
            if (sgn(p) != 0) self(self, k + 1, p);
        }
    };
    rec(rec, 0, Rational(1));
    return total;
}

ColouredGraph minor_gadget(const BipartiteMultigraph& s, const BipartiteMultigraph& f_prime,
                           const BranchSets& branch, int n, const ColouredGraph& y) {
    require(n >= 1, ErrorCode::InvalidParameter, "minor gadget needs n >= 1");
    if (auto why = check_branch_sets(s, f_prime, branch); !why.empty()) {
        throw Error(ErrorCode::InvalidBranchSets, why);
    }
    require(static_cast<int>(y.colours.size()) == s.num_vertices(), ErrorCode::ColourMismatch,
            "y must be coloured by V(S)");
    for (int c : y.class_size) require(c == n, ErrorCode::ColourMismatch, "y must have class size n");

    std::vector<int> owner(f_prime.num_vertices(), -1);
    for (std::size_t i = 1; i < branch.sets.size(); ++i)
        for (int v : branch.sets[i]) owner[v] = static_cast<int>(i) - 1;
    std::vector<int> size(f_prime.num_vertices());
    for (int v = 0; v < f_prime.num_vertices(); ++v) size[v] = owner[v] >= 0 ? n : 1;

    // One representative F'-edge per S-edge carries the y weight.
    std::map<std::pair<int, int>, std::pair<int, int>> representative;
    for (const auto& [e, mult] : f_prime.edges()) {
        int u = e.first, v = f_prime.a_count() + e.second;
        int i = owner[u], j = owner[v];
        if (i < 0 || j < 0 || i == j) continue;
        int sa = std::min(i, j), sb = std::max(i, j);  // A ids precede B ids in S
        if (s.side_of(sa) != Side::A || s.side_of(sb) != Side::B) continue;
        if (s.multiplicity(sa, s.local_index(sb)) == 0) continue;
        representative.emplace(std::make_pair(sa, sb), std::make_pair(u, v));
    }

    auto g = empty_host(f_prime, size);
    for (const auto& [e, mult] : f_prime.edges()) {
        int u = e.first, v = f_prime.a_count() + e.second;
        int i = owner[u], j = owner[v];
        fill_edge(g, f_prime, u, v, [&](int iu, int iv) -> Rational {
            if (i < 0 || j < 0) return 1;
            if (i == j) return iu == iv ? 1 : 0;
            int sa = std::min(i, j), sb = std::max(i, j);
            auto rep = representative.find({sa, sb});
            if (rep == representative.end() || rep->second != std::make_pair(u, v)) return 1;
            auto blk = y.blocks.find({sa, sb});
            if (blk == y.blocks.end()) return 0;
            return i == sa ? blk->second.at(iu, iv) : blk->second.at(iv, iu);
        });
    }
    return g;
}

}  // namespace symhom
