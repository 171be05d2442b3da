#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "symhom/error.hpp"
#include "symhom/pattern.hpp"

namespace symhom {

namespace {

// Multiplicity matrix over global ids (symmetric, zero within a side).
std::vector<std::vector<int>> global_matrix(const BipartiteMultigraph& f) {
    int n = f.num_vertices();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& [e, mult] : f.edges()) {
        int u = e.first;
        int v = f.a_count() + e.second;
        m[u][v] = m[v][u] = mult;
    }
    return m;
}

std::vector<int> bfs_order(const BipartiteMultigraph& f) {
    auto adj = f.adjacency();
    int n = f.num_vertices();
    std::vector<bool> seen(n, false);
    std::vector<int> order;
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        seen[start] = true;
        std::size_t head = order.size();
        order.push_back(start);
        while (head < order.size()) {
            int u = order[head++];
            for (int v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    order.push_back(v);
                }
            }
        }
    }
    return order;
}

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent_[std::max(x, y)] = std::min(x, y);
    }

private:
    std::vector<int> parent_;
};

}  // namespace

bool are_isomorphic_coloured(const BipartiteMultigraph& f, const std::vector<int>& f_colours,
                             const BipartiteMultigraph& g, const std::vector<int>& g_colours,
                             const Caps& caps) {
    for (const auto* h : {&f, &g}) {
        if (h->a_count() > caps.isomorphism_side || h->b_count() > caps.isomorphism_side) {
            throw Error(ErrorCode::SizeCap, "isomorphism side cap exceeded");
        }
    }
    if (f.a_count() != g.a_count() || f.b_count() != g.b_count() || f.edge_count() != g.edge_count()) {
        return false;
    }
    int n = f.num_vertices();
    auto mf = global_matrix(f);
    auto mg = global_matrix(g);
    auto invariant = [](const BipartiteMultigraph& h, const std::vector<std::vector<int>>& m,
                        const std::vector<int>& colours, int v) {
        std::vector<int> key{static_cast<int>(h.side_of(v)), colours.empty() ? 0 : colours[v]};
        std::vector<int> mults;
        for (int w = 0; w < h.num_vertices(); ++w) {
            if (m[v][w] > 0) mults.push_back(m[v][w]);
        }
        std::sort(mults.begin(), mults.end());
        key.push_back(static_cast<int>(mults.size()));
        key.insert(key.end(), mults.begin(), mults.end());
        return key;
    };
    std::vector<std::vector<int>> inv_f(n), inv_g(n);
    for (int v = 0; v < n; ++v) {
        inv_f[v] = invariant(f, mf, f_colours, v);
        inv_g[v] = invariant(g, mg, g_colours, v);
    }
    {
        auto sf = inv_f, sg = inv_g;
        std::sort(sf.begin(), sf.end());
        std::sort(sg.begin(), sg.end());
        if (sf != sg) return false;
    }
    auto order = bfs_order(f);
    std::vector<int> image(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> extend = [&](int pos) {
        if (pos == n) return true;
        int v = order[pos];
        for (int w = 0; w < n; ++w) {
            if (used[w] || inv_f[v] != inv_g[w]) continue;
            bool ok = true;
            for (int q = 0; q < pos && ok; ++q) {
                int u = order[q];
                ok = mf[v][u] == mg[w][image[u]];
            }
            if (!ok) continue;
            image[v] = w;
            used[w] = true;
            if (extend(pos + 1)) return true;
            used[w] = false;
            image[v] = -1;
        }
        return false;
    };
    return extend(0);
}

bool are_isomorphic(const BipartiteMultigraph& f, const BipartiteMultigraph& g, const Caps& caps) {
    return are_isomorphic_coloured(f, {}, g, {}, caps);
}

std::string check_branch_sets(const BipartiteMultigraph& s, const BipartiteMultigraph& f,
                              const BranchSets& branch) {
    int k = s.num_vertices();
    if (static_cast<int>(branch.sets.size()) != k + 1) return "expected |V(S)|+1 sets";
    std::vector<int> owner(f.num_vertices(), -1);
    for (int i = 0; i <= k; ++i) {
        for (int v : branch.sets[i]) {
            if (v < 0 || v >= f.num_vertices()) return "vertex out of range";
            if (owner[v] != -1) return "sets overlap";
            owner[v] = i;
        }
    }
    if (std::count(owner.begin(), owner.end(), -1) > 0) return "sets do not cover V(F)";
    auto adj = f.adjacency();
    for (int i = 1; i <= k; ++i) {
        const auto& set = branch.sets[i];
        if (set.empty()) return "empty branch set";
        std::vector<int> stack{set[0]};
        std::set<int> seen{set[0]};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u]) {
                if (owner[w] == i && seen.insert(w).second) stack.push_back(w);
            }
        }
        if (seen.size() != set.size()) return "branch set not connected";
    }
    for (const auto& [e, mult] : s.edges()) {
        int i = 1 + e.first;
        int j = 1 + s.a_count() + e.second;
        bool found = false;
        for (int u : branch.sets[i]) {
            for (int w : adj[u]) found = found || owner[w] == j;
        }
        if (!found) return "missing edge between branch sets";
    }
    return {};
}

std::optional<BranchSets> find_minor(const BipartiteMultigraph& s, const BipartiteMultigraph& f,
                                     const Caps& caps) {
    if (!s.is_simple()) throw Error(ErrorCode::InvalidParameter, "minor must be simple");
    if (f.size_norm() > caps.minor_norm) throw Error(ErrorCode::SizeCap, "minor search cap exceeded");
    int k = s.num_vertices();
    int n = f.num_vertices();
    if (k > n) return std::nullopt;
    std::vector<int> assign(n, 0);
    std::vector<int> count(k + 1, 0);
    long long nodes = 0;
    std::optional<BranchSets> result;

    auto finish = [&]() {
        BranchSets b;
        b.sets.assign(k + 1, {});
        for (int v = 0; v < n; ++v) b.sets[assign[v]].push_back(v);
        if (check_branch_sets(s, f, b).empty()) result = b;
    };
    std::function<void(int)> rec = [&](int v) {
        if (result) return;
        if (++nodes > caps.minor_nodes) throw Error(ErrorCode::SizeCap, "minor search node budget");
        int empty = 0;
        for (int i = 1; i <= k; ++i) empty += count[i] == 0;
        if (empty > n - v) return;
        if (v == n) {
            finish();
            return;
        }
        // Real branch sets first, so witnesses use few remainder vertices.
        for (int i = 1; i <= k; ++i) {
            assign[v] = i;
            ++count[i];
            rec(v + 1);
            --count[i];
            if (result) return;
        }
        assign[v] = 0;
        rec(v + 1);
    };
    rec(0);
    return result;
}

BipartiteMultigraph quotient(const BipartiteMultigraph& f, const std::vector<Side>& s,
                             std::vector<int>& vertex_map) {
    int n = f.num_vertices();
    if (static_cast<int>(s.size()) != n) throw Error(ErrorCode::InvalidParameter, "side map not total");
    UnionFind uf(n);
    for (const auto& [e, mult] : f.edges()) {
        int u = e.first;
        int v = f.a_count() + e.second;
        if (s[u] == s[v]) uf.unite(u, v);
    }
    std::vector<int> class_index(n, -1);
    int a = 0, b = 0;
    for (int v = 0; v < n; ++v) {
        int r = uf.find(v);
        if (r == v) class_index[v] = s[v] == Side::A ? a++ : b++;
    }
    BipartiteMultigraph q(a, b);
    vertex_map.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        int r = uf.find(v);
        vertex_map[v] = s[r] == Side::A ? class_index[r] : a + class_index[r];
    }
    for (const auto& [e, mult] : f.edges()) {
        int u = e.first;
        int v = f.a_count() + e.second;
        if (s[u] == s[v]) continue;
        int qu = vertex_map[u];
        int qv = vertex_map[v];
        if (s[u] == Side::B) std::swap(qu, qv);
        q.add_edge(qu, qv - a, mult);
    }
    return q;
}

BipartiteMultigraph quotient(const BipartiteMultigraph& f, const std::vector<Side>& s) {
    std::vector<int> unused;
    return quotient(f, s, unused);
}

LabelledPattern tensor_union(const LabelledPattern& f, const LabelledPattern& g) {
    LabelledPattern out;
    out.graph = disjoint_union(f.graph, g.graph);
    out.a_labels = f.a_labels;
    out.b_labels = f.b_labels;
    for (int x : g.a_labels) out.a_labels.push_back(f.graph.a_count() + x);
    for (int x : g.b_labels) out.b_labels.push_back(f.graph.b_count() + x);
    return out;
}

LabelledPattern glue(const LabelledPattern& f, const LabelledPattern& g) {
    if (f.a_labels.size() != g.a_labels.size() || f.b_labels.size() != g.b_labels.size()) {
        throw Error(ErrorCode::ArityMismatch, "gluing needs equal label arities");
    }
    LabelledPattern u = tensor_union(f, g);
    const auto& graph = u.graph;
    UnionFind uf(graph.num_vertices());
    std::size_t la = f.a_labels.size(), lb = f.b_labels.size();
    for (std::size_t i = 0; i < la; ++i) uf.unite(u.a_labels[i], u.a_labels[la + i]);
    for (std::size_t i = 0; i < lb; ++i) {
        uf.unite(graph.a_count() + u.b_labels[i], graph.a_count() + u.b_labels[lb + i]);
    }
    std::vector<int> index(graph.num_vertices(), -1);
    int a = 0, b = 0;
    for (int v = 0; v < graph.num_vertices(); ++v) {
        if (uf.find(v) == v) index[v] = graph.side_of(v) == Side::A ? a++ : b++;
    }
    auto local = [&](int v) { return index[uf.find(v)]; };
    LabelledPattern out;
    out.graph = BipartiteMultigraph(a, b);
    for (const auto& [e, mult] : graph.edges()) {
        out.graph.add_edge(local(e.first), local(graph.a_count() + e.second), mult);
    }
    for (std::size_t i = 0; i < la; ++i) out.a_labels.push_back(local(u.a_labels[i]));
    for (std::size_t i = 0; i < lb; ++i) out.b_labels.push_back(local(graph.a_count() + u.b_labels[i]));
    return out;
}

LabelledPattern drop_label(const LabelledPattern& f, int i) {
    if (i < 0 || i >= static_cast<int>(f.a_labels.size())) {
        throw Error(ErrorCode::IndexOutOfRange, "no such left label");
    }
    LabelledPattern out = f;
    out.a_labels.erase(out.a_labels.begin() + i);
    return out;
}

LabelledPattern drop_right_label(const LabelledPattern& f, int i) {
    if (i < 0 || i >= static_cast<int>(f.b_labels.size())) {
        throw Error(ErrorCode::IndexOutOfRange, "no such right label");
    }
    LabelledPattern out = f;
    out.b_labels.erase(out.b_labels.begin() + i);
    return out;
}

LabelledPattern add_label(const LabelledPattern& f, Side side, int vertex) {
    int limit = side == Side::A ? f.graph.a_count() : f.graph.b_count();
    if (vertex < 0 || vertex >= limit) throw Error(ErrorCode::IndexOutOfRange, "label vertex");
    LabelledPattern out = f;
    (side == Side::A ? out.a_labels : out.b_labels).push_back(vertex);
    return out;
}

namespace {

// Canonical form of an r x c matrix under row and column permutations:
// minimum over column permutations of the row-sorted matrix.
std::vector<int> canonical_matrix(const std::vector<int>& mat, int rows, int cols) {
    std::vector<int> perm(cols);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    std::vector<std::vector<int>> r(rows, std::vector<int>(cols));
    do {
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) r[i][j] = mat[i * cols + perm[j]];
        }
        std::sort(r.begin(), r.end());
        std::vector<int> flat;
        flat.reserve(rows * cols);
        for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
        if (best.empty() || flat < best) best = std::move(flat);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<BipartiteMultigraph> enumerate_bipartite(int a_count, int b_count, int max_mult,
                                                     int max_total_edges) {
    int slots = a_count * b_count;
    std::vector<BipartiteMultigraph> out;
    std::set<std::vector<int>> seen;
    std::vector<int> mat(slots, 0);
    while (true) {
        int total = std::accumulate(mat.begin(), mat.end(), 0);
        if (max_total_edges < 0 || total <= max_total_edges) {
            std::vector<int> key;
            if (a_count == 0 || b_count == 0) {
                key = {};
            } else if (b_count <= a_count) {
                key = canonical_matrix(mat, a_count, b_count);
            } else {
                std::vector<int> t(slots);
                for (int i = 0; i < a_count; ++i) {
                    for (int j = 0; j < b_count; ++j) t[j * a_count + i] = mat[i * b_count + j];
                }
                key = canonical_matrix(t, b_count, a_count);
            }
            if (seen.insert(key).second) {
                BipartiteMultigraph g(a_count, b_count);
                for (int i = 0; i < a_count; ++i) {
                    for (int j = 0; j < b_count; ++j) {
                        if (mat[i * b_count + j] > 0) g.add_edge(i, j, mat[i * b_count + j]);
                    }
                }
                out.push_back(std::move(g));
            }
        }
        int pos = 0;
        while (pos < slots && mat[pos] == max_mult) mat[pos++] = 0;
        if (pos == slots) break;
        ++mat[pos];
    }
    return out;
}

}  // namespace symhom
