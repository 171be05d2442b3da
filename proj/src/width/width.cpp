#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>

#include "symhom/error.hpp"
#include "symhom/width.hpp"

namespace symhom {

namespace {

using Mask = std::uint32_t;

int popcount(Mask m) { return std::popcount(m); }

std::vector<Mask> neighbour_masks(const BipartiteMultigraph& f, const WidthOptions& options,
                                  bool add_label_clique) {
    int n = f.num_vertices();
    if (n > options.vertex_cap) throw Error(ErrorCode::SizeCap, "width solver vertex cap exceeded");
    std::vector<Mask> adj(n, 0);
    for (const auto& [e, mult] : f.edges()) {
        int u = e.first;
        int v = f.a_count() + e.second;
        adj[u] |= Mask{1} << v;
        adj[v] |= Mask{1} << u;
    }
    if (add_label_clique && options.labels_in_one_bag) {
        for (int u : options.labels) {
            for (int v : options.labels) {
                if (u != v) adj[u] |= Mask{1} << v;
            }
        }
    }
    return adj;
}

Mask label_mask(const BipartiteMultigraph& f, const WidthOptions& options) {
    Mask m = 0;
    if (!options.labels_in_one_bag) return m;
    for (int v : options.labels) {
        if (v < 0 || v >= f.num_vertices()) throw Error(ErrorCode::IndexOutOfRange, "label vertex");
        m |= Mask{1} << v;
    }
    return m;
}

std::vector<int> mask_to_vector(Mask m) {
    std::vector<int> out;
    for (int v = 0; m != 0; ++v, m >>= 1) {
        if (m & 1U) out.push_back(v);
    }
    return out;
}

// Vertices outside S and v reachable from v through S.
Mask q_set(const std::vector<Mask>& adj, Mask s, int v) {
    Mask reached = Mask{1} << v;
    Mask frontier = reached;
    while (frontier != 0) {
        Mask next = 0;
        for (Mask f = frontier; f != 0; f &= f - 1) next |= adj[std::countr_zero(f)];
        next &= s & ~reached;
        reached |= next;
        frontier = next;
    }
    Mask out = 0;
    for (Mask r = reached; r != 0; r &= r - 1) out |= adj[std::countr_zero(r)];
    return out & ~s & ~(Mask{1} << v);
}

Mask boundary(const std::vector<Mask>& adj, Mask s) {
    Mask out = 0;
    for (Mask r = s; r != 0; r &= r - 1) {
        int v = std::countr_zero(r);
        if (adj[v] & ~s) out |= Mask{1} << v;
    }
    return out;
}

}  // namespace

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
}

std::vector<std::vector<int>> TreeDecomposition::children() const {
    std::vector<std::vector<int>> out(parent.size());
    for (std::size_t t = 0; t < parent.size(); ++t) {
        if (parent[t] >= 0) out[parent[t]].push_back(static_cast<int>(t));
    }
    return out;
}

int PathDecomposition::width() const {
    int w = -1;
    for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
}

TreeDecomposition PathDecomposition::as_tree() const {
    TreeDecomposition t;
    t.bags = bags;
    t.root = 0;
    for (std::size_t i = 0; i < bags.size(); ++i) t.parent.push_back(static_cast<int>(i) - 1);
    return t;
}

int EliminationTree::height() const {
    int best = 0;
    for (std::size_t v = 0; v < parent.size(); ++v) {
        int h = 0;
        for (int u = static_cast<int>(v); u >= 0 && h <= static_cast<int>(parent.size()); u = parent[u]) ++h;
        best = std::max(best, h);
    }
    return best;
}

std::vector<std::vector<int>> EliminationTree::children() const {
    std::vector<std::vector<int>> out(parent.size());
    for (std::size_t v = 0; v < parent.size(); ++v) {
        if (parent[v] >= 0) out[parent[v]].push_back(static_cast<int>(v));
    }
    return out;
}

std::vector<int> EliminationTree::roots() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < parent.size(); ++v) {
        if (parent[v] < 0) out.push_back(static_cast<int>(v));
    }
    return out;
}

TreewidthResult treewidth_exact(const BipartiteMultigraph& f, const WidthOptions& options) {
    auto adj = neighbour_masks(f, options, true);
    int n = f.num_vertices();
    if (n == 0) return {-1, TreeDecomposition{{-1}, {{}}, 0}};
    Mask full = (Mask{1} << n) - 1;
    std::vector<int> dp(std::size_t{1} << n, 0);
    std::vector<signed char> choice(std::size_t{1} << n, -1);
    dp[0] = -1;
    for (Mask s = 1; s <= full; ++s) {
        int best = n + 1;
        for (Mask r = s; r != 0; r &= r - 1) {
            int v = std::countr_zero(r);
            Mask rest = s & ~(Mask{1} << v);
            int value = std::max(dp[rest], popcount(q_set(adj, rest, v)));
            if (value < best) {
                best = value;
                choice[s] = static_cast<signed char>(v);
            }
        }
        dp[s] = best;
    }
    // Recover the elimination order (last chosen vertex is eliminated last).
    std::vector<int> order(n);
    Mask s = full;
    for (int i = n - 1; i >= 0; --i) {
        order[i] = choice[s];
        s &= ~(Mask{1} << order[i]);
    }
    std::vector<int> position(n);
    for (int i = 0; i < n; ++i) position[order[i]] = i;
    TreeDecomposition d;
    d.bags.resize(n);
    d.parent.assign(n, -1);
    Mask eliminated = 0;
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        Mask q = q_set(adj, eliminated, v);
        d.bags[i] = mask_to_vector(q | (Mask{1} << v));
        int parent = -1;
        for (Mask r = q; r != 0; r &= r - 1) {
            int w = std::countr_zero(r);
            if (parent < 0 || position[w] < parent) parent = position[w];
        }
        d.parent[i] = parent;
        eliminated |= Mask{1} << v;
    }
    // Connect the components below the last bag.
    d.root = n - 1;
    for (int i = 0; i < n - 1; ++i) {
        if (d.parent[i] < 0) d.parent[i] = n - 1;
    }
    return {dp[full], d};
}

PathwidthResult pathwidth_exact(const BipartiteMultigraph& f, const WidthOptions& options) {
    auto adj = neighbour_masks(f, options, false);
    Mask labels = label_mask(f, options);
    int n = f.num_vertices();
    if (n == 0) return {-1, PathDecomposition{{{}}}};
    Mask full = (Mask{1} << n) - 1;
    const int inf = n + 1;
    std::vector<int> dp(std::size_t{1} << n, inf);
    std::vector<signed char> choice(std::size_t{1} << n, -1);
    dp[labels] = popcount(boundary(adj, labels));
    for (Mask s = 0; s <= full; ++s) {
        if ((s & labels) != labels || s == labels) continue;
        int best = inf;
        for (Mask r = s & ~labels; r != 0; r &= r - 1) {
            int v = std::countr_zero(r);
            int value = dp[s & ~(Mask{1} << v)];
            if (value < best) {
                best = value;
                choice[s] = static_cast<signed char>(v);
            }
        }
        dp[s] = std::max(best, popcount(boundary(adj, s)));
    }
    std::vector<int> order;
    for (Mask s = full; s != labels;) {
        int v = choice[s];
        order.push_back(v);
        s &= ~(Mask{1} << v);
    }
    std::reverse(order.begin(), order.end());
    PathDecomposition d;
    if (labels != 0) d.bags.push_back(mask_to_vector(labels));
    Mask placed = labels;
    for (int v : order) {
        d.bags.push_back(mask_to_vector(boundary(adj, placed) | (Mask{1} << v)));
        placed |= Mask{1} << v;
    }
    int width = std::max(dp[full], popcount(labels) - 1);
    return {width, d};
}

TreedepthResult treedepth_exact(const BipartiteMultigraph& f, const WidthOptions& options) {
    auto adj = neighbour_masks(f, options, false);
    int n = f.num_vertices();
    std::vector<int> memo(std::size_t{1} << n, -1);
    std::vector<signed char> root_choice(std::size_t{1} << n, -1);

    auto components = [&](Mask s) {
        std::vector<Mask> out;
        Mask left = s;
        while (left != 0) {
            Mask comp = left & (~left + 1);
            Mask frontier = comp;
            while (frontier != 0) {
                Mask next = 0;
                for (Mask r = frontier; r != 0; r &= r - 1) next |= adj[std::countr_zero(r)];
                next &= s & ~comp;
                comp |= next;
                frontier = next;
            }
            out.push_back(comp);
            left &= ~comp;
        }
        return out;
    };

    std::function<int(Mask)> td = [&](Mask s) -> int {
        if (s == 0) return 0;
        if (memo[s] >= 0) return memo[s];
        auto comps = components(s);
        int result = 0;
        if (comps.size() > 1) {
            for (Mask c : comps) result = std::max(result, td(c));
        } else {
            result = n + 1;
            for (Mask r = s; r != 0; r &= r - 1) {
                int v = std::countr_zero(r);
                int value = 1 + td(s & ~(Mask{1} << v));
                if (value < result) {
                    result = value;
                    root_choice[s] = static_cast<signed char>(v);
                }
            }
        }
        memo[s] = result;
        return result;
    };

    Mask full = n == 0 ? 0 : (Mask{1} << n) - 1;
    int depth = td(full);
    EliminationTree tree;
    tree.parent.assign(n, -1);
    std::function<void(Mask, int)> build = [&](Mask s, int parent) {
        for (Mask c : components(s)) {
            td(c);
            int v = root_choice[c];
            tree.parent[v] = parent;
            build(c & ~(Mask{1} << v), v);
        }
    };
    build(full, -1);
    return {depth, tree};
}

namespace {

ValidationResult fail(std::string why) { return {false, std::move(why)}; }

// Checks that parent links form a single tree rooted at root.
std::string tree_shape_violation(const std::vector<int>& parent, int root) {
    int n = static_cast<int>(parent.size());
    if (n == 0) return "no nodes";
    if (root < 0 || root >= n || parent[root] != -1) return "root has a parent";
    for (int t = 0; t < n; ++t) {
        int steps = 0;
        int u = t;
        while (u != root) {
            if (u < 0 || u >= n || parent[u] < 0 || ++steps > n) return "parent links do not reach the root";
            u = parent[u];
        }
    }
    return {};
}

}  // namespace

ValidationResult validate_decomposition(const BipartiteMultigraph& f, const TreeDecomposition& d) {
    if (d.bags.size() != d.parent.size()) return fail("bag/parent size mismatch");
    if (auto why = tree_shape_violation(d.parent, d.root); !why.empty()) return fail(why);
    int n = f.num_vertices();
    std::vector<std::set<int>> bags;
    for (const auto& bag : d.bags) {
        for (int v : bag) {
            if (v < 0 || v >= n) return fail("bag vertex out of range");
        }
        bags.emplace_back(bag.begin(), bag.end());
    }
    for (int v = 0; v < n; ++v) {
        int occurrences = 0, tops = 0;
        for (std::size_t t = 0; t < bags.size(); ++t) {
            if (!bags[t].count(v)) continue;
            ++occurrences;
            int p = d.parent[t];
            if (p < 0 || !bags[p].count(v)) ++tops;
        }
        if (occurrences == 0) return fail("vertex " + std::to_string(v) + " in no bag");
        if (tops != 1) return fail("occurrences of vertex " + std::to_string(v) + " not connected");
    }
    for (const auto& [e, mult] : f.edges()) {
        int u = e.first;
        int v = f.a_count() + e.second;
        bool covered = std::any_of(bags.begin(), bags.end(),
                                   [&](const std::set<int>& b) { return b.count(u) && b.count(v); });
        if (!covered) return fail("edge " + std::to_string(u) + "-" + std::to_string(v) + " not covered");
    }
    return {};
}

ValidationResult validate_decomposition(const BipartiteMultigraph& f, const PathDecomposition& d) {
    return validate_decomposition(f, d.as_tree());
}

ValidationResult validate_decomposition(const BipartiteMultigraph& f, const EliminationTree& t) {
    int n = f.num_vertices();
    if (static_cast<int>(t.parent.size()) != n) return fail("elimination tree must span V(F)");
    for (int v = 0; v < n; ++v) {
        int steps = 0;
        for (int u = v; u >= 0; u = t.parent[u]) {
            if (u >= n || ++steps > n) return fail("elimination tree has a cycle");
        }
    }
    auto is_ancestor = [&](int u, int v) {
        for (int w = v; w >= 0; w = t.parent[w]) {
            if (w == u) return true;
        }
        return false;
    };
    for (const auto& [e, mult] : f.edges()) {
        int u = e.first;
        int v = f.a_count() + e.second;
        if (!is_ancestor(u, v) && !is_ancestor(v, u)) {
            return fail("edge " + std::to_string(u) + "-" + std::to_string(v) + " not ancestor-related");
        }
    }
    return {};
}

int rooted_depth(const TreeDecomposition& d) {
    if (d.bags.size() != d.parent.size() || !tree_shape_violation(d.parent, d.root).empty()) {
        throw Error(ErrorCode::InvalidDecomposition, "not a rooted tree");
    }
    int best = 0;
    for (std::size_t t = 0; t < d.bags.size(); ++t) {
        std::set<int> seen;
        for (int u = static_cast<int>(t); u >= 0; u = d.parent[u]) seen.insert(d.bags[u].begin(), d.bags[u].end());
        best = std::max(best, static_cast<int>(seen.size()));
    }
    return best;
}

nlohmann::json TreeDecomposition::to_json() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t t = 0; t < bags.size(); ++t) {
        std::vector<int> bag;
        for (int v : bags[t]) bag.push_back(v + 1);
        nodes.push_back({{"bag", bag}, {"parent", parent[t]}});
    }
    return {{"kind", "tree"}, {"root", root}, {"nodes", nodes}};
}

TreeDecomposition TreeDecomposition::from_json(const nlohmann::json& j) {
    try {
        TreeDecomposition d;
        d.root = j.value("root", 0);
        for (const auto& node : j.at("nodes")) {
            std::vector<int> bag;
            for (int v : node.at("bag").get<std::vector<int>>()) bag.push_back(v - 1);
            d.bags.push_back(bag);
            d.parent.push_back(node.at("parent").get<int>());
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

nlohmann::json PathDecomposition::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& bag : bags) {
        std::vector<int> b;
        for (int v : bag) b.push_back(v + 1);
        out.push_back(b);
    }
    return {{"kind", "path"}, {"bags", out}};
}

PathDecomposition PathDecomposition::from_json(const nlohmann::json& j) {
    try {
        PathDecomposition d;
        for (const auto& bag : j.at("bags")) {
            std::vector<int> b;
            for (int v : bag.get<std::vector<int>>()) b.push_back(v - 1);
            d.bags.push_back(b);
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

nlohmann::json EliminationTree::to_json() const {
    std::vector<int> p;
    for (int x : parent) p.push_back(x < 0 ? 0 : x + 1);
    return {{"kind", "elimination"}, {"parent", p}};
}

EliminationTree EliminationTree::from_json(const nlohmann::json& j) {
    try {
        EliminationTree t;
        for (int x : j.at("parent").get<std::vector<int>>()) t.parent.push_back(x - 1);
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

}  // namespace symhom
