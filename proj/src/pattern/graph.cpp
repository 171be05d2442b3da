#include <algorithm>
#include <numeric>

#include "symhom/error.hpp"
#include "symhom/pattern.hpp"

namespace symhom {

BipartiteMultigraph::BipartiteMultigraph(int a_count, int b_count) : a_count_(a_count), b_count_(b_count) {
    if (a_count < 0 || b_count < 0) throw Error(ErrorCode::InvalidParameter, "negative side size");
}

void BipartiteMultigraph::add_edge(int a, int b, int mult) {
    if (a < 0 || a >= a_count_ || b < 0 || b >= b_count_) {
        throw Error(ErrorCode::IndexOutOfRange, "edge endpoint out of range");
    }
    if (mult < 1) throw Error(ErrorCode::InvalidParameter, "edge multiplicity must be >= 1");
    edges_[{a, b}] += mult;
}

int BipartiteMultigraph::multiplicity(int a, int b) const {
    auto it = edges_.find({a, b});
    return it == edges_.end() ? 0 : it->second;
}

int BipartiteMultigraph::edge_count() const {
    int total = 0;
    for (const auto& [e, mult] : edges_) total += mult;
    return total;
}

bool BipartiteMultigraph::is_simple() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const auto& e) { return e.second == 1; });
}

std::vector<std::vector<int>> BipartiteMultigraph::adjacency() const {
    std::vector<std::vector<int>> adj(num_vertices());
    for (const auto& [e, mult] : edges_) {
        int u = e.first;
        int v = a_count_ + e.second;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

std::vector<int> BipartiteMultigraph::degrees() const {
    std::vector<int> deg(num_vertices(), 0);
    for (const auto& [e, mult] : edges_) {
        deg[e.first] += mult;
        deg[a_count_ + e.second] += mult;
    }
    return deg;
}

std::vector<int> BipartiteMultigraph::isolated_vertices() const {
    std::vector<int> out;
    auto deg = degrees();
    for (int v = 0; v < num_vertices(); ++v) {
        if (deg[v] == 0) out.push_back(v);
    }
    return out;
}

bool BipartiteMultigraph::is_connected() const {
    int n = num_vertices();
    if (n == 0) return true;
    auto adj = adjacency();
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n;
}

nlohmann::json BipartiteMultigraph::to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [e, mult] : edges_) edges.push_back({e.first + 1, e.second + 1, mult});
    return {{"a", a_count_}, {"b", b_count_}, {"edges", edges}};
}

BipartiteMultigraph BipartiteMultigraph::from_json(const nlohmann::json& j) {
    try {
        BipartiteMultigraph g(j.at("a").get<int>(), j.at("b").get<int>());
        for (const auto& e : j.at("edges")) {
            int mult = e.size() > 2 ? e.at(2).get<int>() : 1;
            g.add_edge(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1, mult);
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

nlohmann::json LabelledPattern::to_json() const {
    nlohmann::json j = graph.to_json();
    std::vector<int> a, b;
    for (int x : a_labels) a.push_back(x + 1);
    for (int x : b_labels) b.push_back(x + 1);
    j["a_labels"] = a;
    j["b_labels"] = b;
    return j;
}

LabelledPattern LabelledPattern::from_json(const nlohmann::json& j) {
    LabelledPattern p;
    p.graph = BipartiteMultigraph::from_json(j);
    try {
        for (int x : j.value("a_labels", std::vector<int>{})) p.a_labels.push_back(x - 1);
        for (int x : j.value("b_labels", std::vector<int>{})) p.b_labels.push_back(x - 1);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    for (int x : p.a_labels) {
        if (x < 0 || x >= p.graph.a_count()) throw Error(ErrorCode::IndexOutOfRange, "a_label");
    }
    for (int x : p.b_labels) {
        if (x < 0 || x >= p.graph.b_count()) throw Error(ErrorCode::IndexOutOfRange, "b_label");
    }
    return p;
}

BipartiteMultigraph disjoint_union(const BipartiteMultigraph& f, const BipartiteMultigraph& g) {
    BipartiteMultigraph out(f.a_count() + g.a_count(), f.b_count() + g.b_count());
    for (const auto& [e, mult] : f.edges()) out.add_edge(e.first, e.second, mult);
    for (const auto& [e, mult] : g.edges()) {
        out.add_edge(f.a_count() + e.first, f.b_count() + e.second, mult);
    }
    return out;
}

BipartiteMultigraph remove_isolated(const BipartiteMultigraph& f) {
    auto deg = f.degrees();
    std::vector<int> a_map(f.a_count(), -1), b_map(f.b_count(), -1);
    int a = 0, b = 0;
    for (int i = 0; i < f.a_count(); ++i) {
        if (deg[i] > 0) a_map[i] = a++;
    }
    for (int j = 0; j < f.b_count(); ++j) {
        if (deg[f.a_count() + j] > 0) b_map[j] = b++;
    }
    BipartiteMultigraph out(a, b);
    for (const auto& [e, mult] : f.edges()) out.add_edge(a_map[e.first], b_map[e.second], mult);
    return out;
}

std::vector<std::string> identity_colour_names(const BipartiteMultigraph& f) {
    std::vector<std::string> out;
    for (int a = 0; a < f.a_count(); ++a) out.push_back("a" + std::to_string(a + 1));
    for (int b = 0; b < f.b_count(); ++b) out.push_back("b" + std::to_string(b + 1));
    return out;
}

}  // namespace symhom
