#include <algorithm>
#include <numeric>

#include "symhom/symmetry.hpp"

namespace symhom {

namespace {

int pair_index(int size, int i, int j) {
    // index of {i < j} among all pairs of [size] in lexicographic order
    return i * size - i * (i + 1) / 2 + (j - i - 1);
}

struct CoverResult {
    int size = 0;                           // minimum cover size
    std::optional<std::vector<int>> unique; // the cover, if unique and < size/2
};

// Minimum vertex covers of the graph on [size] whose edges are the
// transpositions that move the gate. Covers are exactly the supports on
// this side, so the minimum size is always defined; the set itself is only
// reported when it is unique and below half of the side.
CoverResult min_cover(int size, const std::vector<std::pair<int, int>>& edges) {
    for (int k = 0; k <= size; ++k) {
        std::vector<int> chosen(k);
        std::iota(chosen.begin(), chosen.end(), 0);
        std::optional<std::vector<int>> found;
        int count = 0;
        while (true) {
            std::vector<bool> in(size, false);
            for (int v : chosen) in[v] = true;
            bool covers = std::all_of(edges.begin(), edges.end(),
                                      [&](const auto& e) { return in[e.first] || in[e.second]; });
            if (covers) {
                if (++count == 1) found = chosen;
            }
            int p = k - 1;
            while (p >= 0 && chosen[p] == size - k + p) --p;
            if (p < 0) break;
            ++chosen[p];
            for (int q = p + 1; q < k; ++q) chosen[q] = chosen[q - 1] + 1;
        }
        if (count > 0) {
            CoverResult r;
            r.size = k;
            if (count == 1 && (k == 0 || 2 * k < size)) r.unique = found;
            return r;
        }
    }
    return {};
}

}  // namespace

SymmetryAnalysis::SymmetryAnalysis(const Circuit& c, int n, int m, SearchCaps caps)
    : circuit_(c), n_(n), m_(m), caps_(caps), search_(c, caps) {
    for (const auto& v : c.variables()) {
        int i = 0, j = 0;
        if (!parse_matrix_variable(v, i, j) || i >= n || j >= m) {
            throw Error(ErrorCode::InvalidParameter, "variable " + v + " is not in X_{n,m}");
        }
    }
    auto colour = stable_colouring(c);
    std::vector<int> sorted = colour;
    std::sort(sorted.begin(), sorted.end());
    bool discrete = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (!discrete && search_.nontrivial_input_fixing()) {
        throw Error(ErrorCode::NotRigid, "circuit has a nontrivial input-fixing automorphism");
    }
    std::size_t size = c.num_gates();
    std::vector<int> parent(size);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto absorb = [&](const PermutationPair& p) {
        auto img = search_.extend(p);
        if (!img) throw Error(ErrorCode::NotSymmetric, "generator does not extend");
        for (std::size_t g = 0; g < size; ++g) {
            int a = find(static_cast<int>(g)), b = find((*img)[g]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    };
    for (int i = 0; i + 1 < n; ++i) absorb(PermutationPair::row_transposition(n, m, i, i + 1));
    for (int j = 0; j + 1 < m; ++j) absorb(PermutationPair::column_transposition(n, m, j, j + 1));
    orbit_id_.assign(size, -1);
    for (std::size_t g = 0; g < size; ++g) {
        int r = find(static_cast<int>(g));
        if (orbit_id_[r] < 0) {
            orbit_id_[r] = static_cast<int>(orbits_.size());
            orbits_.emplace_back();
        }
        orbit_id_[g] = orbit_id_[r];
        orbits_[orbit_id_[g]].push_back(static_cast<GateId>(g));
    }
    support_cache_.assign(size, std::nullopt);
    support_size_.assign(size, -1);
}

GateBijection SymmetryAnalysis::image(const PermutationPair& g) const {
    auto img = search_.extend(g);
    if (!img) throw Error(ErrorCode::NotSymmetric, "permutation does not extend");
    return *img;
}

std::int64_t SymmetryAnalysis::max_orbit() const {
    std::int64_t best = 0;
    for (const auto& o : orbits_) best = std::max<std::int64_t>(best, static_cast<std::int64_t>(o.size()));
    return best;
}

std::optional<Support> SymmetryAnalysis::try_minimal_support(GateId g) const {
    if (support_cache_.at(g)) return *support_cache_[g];
    if (n_ > caps_.support_side || m_ > caps_.support_side) {
        throw Error(ErrorCode::SizeCap, "support computation side cap exceeded");
    }
    if (row_swaps_.empty() && col_swaps_.empty()) {
        for (int i = 0; i < n_; ++i) {
            for (int j = i + 1; j < n_; ++j) row_swaps_.push_back(image(PermutationPair::row_transposition(n_, m_, i, j)));
        }
        for (int i = 0; i < m_; ++i) {
            for (int j = i + 1; j < m_; ++j) col_swaps_.push_back(image(PermutationPair::column_transposition(n_, m_, i, j)));
        }
    }
    auto side = [&](int size, const std::vector<GateBijection>& swaps) {
        std::vector<std::pair<int, int>> moving;
        for (int i = 0; i < size; ++i) {
            for (int j = i + 1; j < size; ++j) {
                if (swaps[pair_index(size, i, j)][g] != g) moving.emplace_back(i, j);
            }
        }
        return min_cover(size, moving);
    };
    std::optional<Support> result;
    auto left = side(n_, row_swaps_);
    auto right = side(m_, col_swaps_);
    if (left.unique && right.unique) result = Support{*left.unique, *right.unique};
    support_cache_[g] = result;
    support_size_[g] = left.size + right.size;
    return result;
}

Support SymmetryAnalysis::minimal_support(GateId g) const {
    auto s = try_minimal_support(g);
    if (!s) throw Error(ErrorCode::UniquenessUnavailable, "gate " + std::to_string(g));
    return *s;
}

int SymmetryAnalysis::min_support_size(GateId g) const {
    if (support_size_.at(g) < 0) try_minimal_support(g);
    return support_size_[g];
}

int SymmetryAnalysis::max_support() const {
    int best = 0;
    for (std::size_t g = 0; g < circuit_.num_gates(); ++g) {
        best = std::max(best, min_support_size(static_cast<GateId>(g)));
    }
    return best;
}

int SymmetryAnalysis::support_depth() const {
    const auto& gates = circuit_.gates();
    std::size_t size = gates.size();
    std::vector<Support> sup(size);
    for (std::size_t g = 0; g < size; ++g) sup[g] = minimal_support(static_cast<GateId>(g));
    auto escapes = [&](GateId child, GateId parent) {
        auto outside = [](const std::vector<int>& a, const std::vector<int>& b) {
            return std::any_of(a.begin(), a.end(), [&](int x) { return !std::binary_search(b.begin(), b.end(), x); });
        };
        return outside(sup[child].left, sup[parent].left) || outside(sup[child].right, sup[parent].right);
    };
    // Depth-first enumeration of root-to-input paths.
    std::vector<int> on_path(size, -1);
    std::vector<bool> counted;
    std::vector<std::pair<GateId, std::size_t>> stack;
    std::vector<std::vector<GateId>> newly;  // gates counted when entering each path position
    int current = 0, best = 0;
    std::int64_t paths = 0;
    auto enter = [&](GateId g) {
        std::vector<GateId> added;
        for (const auto& w : circuit_.parents()[g]) {
            GateId p = w.child;
            if (on_path[p] >= 0 && !counted[on_path[p]] && escapes(g, p)) {
                counted[on_path[p]] = true;
                added.push_back(p);
                ++current;
            }
        }
        on_path[g] = static_cast<int>(stack.size());
        stack.push_back({g, 0});
        counted.push_back(false);
        newly.push_back(std::move(added));
    };
    enter(circuit_.output());
    while (!stack.empty()) {
        auto& [g, next] = stack.back();
        if (next < gates[g].children.size()) {
            GateId child = gates[g].children[next++].child;
            enter(child);
            continue;
        }
        if (gates[g].children.empty()) {
            if (++paths > caps_.path_budget) throw Error(ErrorCode::SizeCap, "path enumeration budget");
            best = std::max(best, current);
        }
        for (GateId p : newly.back()) {
            counted[on_path[p]] = false;
            --current;
        }
        on_path[g] = -1;
        newly.pop_back();
        counted.pop_back();
        stack.pop_back();
    }
    return best;
}

SupportReport SymmetryAnalysis::report() const {
    SupportReport r;
    r.max_orbit = max_orbit();
    bool all = true;
    for (std::size_t g = 0; g < circuit_.num_gates(); ++g) {
        GateSupportInfo info;
        info.orbit_size = static_cast<int>(orbits_[orbit_id_[g]].size());
        info.support = try_minimal_support(static_cast<GateId>(g));
        info.support_size = min_support_size(static_cast<GateId>(g));
        r.max_support = std::max(r.max_support, info.support_size);
        if (!info.support) all = false;
        r.per_gate.push_back(info);
    }
    if (all) r.support_depth = support_depth();
    return r;
}

nlohmann::json SupportReport::to_json() const {
    nlohmann::json gates = nlohmann::json::array();
    for (std::size_t g = 0; g < per_gate.size(); ++g) {
        nlohmann::json entry{
            {"gate", g}, {"orbit", per_gate[g].orbit_size}, {"supportSize", per_gate[g].support_size}};
        if (per_gate[g].support) {
            std::vector<int> l, r;
            for (int x : per_gate[g].support->left) l.push_back(x + 1);
            for (int x : per_gate[g].support->right) r.push_back(x + 1);
            entry["support"] = {{"left", l}, {"right", r}};
        } else {
            entry["support"] = nullptr;
        }
        gates.push_back(entry);
    }
    nlohmann::json depth = support_depth ? nlohmann::json(*support_depth) : nlohmann::json(nullptr);
    return {{"maxOrb", max_orbit}, {"maxSup", max_support}, {"supportDepth", depth}, {"perGate", gates}};
}

}  // namespace symhom
