#include <algorithm>
#include <cctype>
#include <map>

#include "symhom/symmetry.hpp"

namespace symhom {

PermutationPair PermutationPair::identity(int n, int m) {
    PermutationPair p;
    for (int i = 0; i < n; ++i) p.pi.push_back(i);
    for (int j = 0; j < m; ++j) p.sigma.push_back(j);
    return p;
}

PermutationPair PermutationPair::row_transposition(int n, int m, int i, int j) {
    PermutationPair p = identity(n, m);
    std::swap(p.pi.at(i), p.pi.at(j));
    return p;
}

PermutationPair PermutationPair::column_transposition(int n, int m, int i, int j) {
    PermutationPair p = identity(n, m);
    std::swap(p.sigma.at(i), p.sigma.at(j));
    return p;
}

PermutationPair PermutationPair::compose(const PermutationPair& after) const {
    PermutationPair p;
    for (int x : pi) p.pi.push_back(after.pi.at(x));
    for (int x : sigma) p.sigma.push_back(after.sigma.at(x));
    return p;
}

bool PermutationPair::is_valid() const {
    auto check = [](const std::vector<int>& perm) {
        std::vector<bool> seen(perm.size(), false);
        for (int x : perm) {
            if (x < 0 || x >= static_cast<int>(perm.size()) || seen[x]) return false;
            seen[x] = true;
        }
        return true;
    };
    return check(pi) && check(sigma);
}

std::string matrix_variable(int i, int j) {
    return "x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

bool parse_matrix_variable(const std::string& name, int& i, int& j) {
    if (name.size() < 5 || name[0] != 'x' || name[1] != '_') return false;
    auto sep = name.find('_', 2);
    if (sep == std::string::npos || sep == 2 || sep + 1 >= name.size()) return false;
    auto digits = [&](std::size_t from, std::size_t to) {
        for (std::size_t k = from; k < to; ++k) {
            if (!std::isdigit(static_cast<unsigned char>(name[k]))) return false;
        }
        return to > from;
    };
    if (!digits(2, sep) || !digits(sep + 1, name.size())) return false;
    i = std::stoi(name.substr(2, sep - 2)) - 1;
    j = std::stoi(name.substr(sep + 1)) - 1;
    return i >= 0 && j >= 0;
}

std::string apply(const PermutationPair& g, const std::string& variable) {
    int i = 0, j = 0;
    if (!parse_matrix_variable(variable, i, j)) return variable;
    if (i >= static_cast<int>(g.pi.size()) || j >= static_cast<int>(g.sigma.size())) {
        throw Error(ErrorCode::InvalidParameter, "variable " + variable + " outside the permuted range");
    }
    return matrix_variable(g.pi[i], g.sigma[j]);
}

namespace {

std::vector<std::int64_t> signature(GateKind kind, std::vector<Wire> children) {
    std::sort(children.begin(), children.end());
    std::vector<std::int64_t> key{static_cast<std::int64_t>(kind)};
    for (const auto& w : children) {
        key.push_back(w.child);
        key.push_back(w.mult);
    }
    return key;
}

// Colour refinement run on two copies of the circuit at once: in `left`
// every input is individualized by its own id, in `right` by the id of its
// preimage. An automorphism extending input_image maps each gate to a gate
// whose right colour equals its left colour.
void joint_refinement(const Circuit& c, const std::vector<GateId>& input_image, std::vector<int>& left,
                      std::vector<int>& right) {
    const auto& gates = c.gates();
    std::size_t n = gates.size();
    std::vector<std::int64_t> preimage(n, -1);
    for (std::size_t g = 0; g < n; ++g)
        if (gates[g].is_input() && input_image[g] >= 0) preimage[input_image[g]] = static_cast<std::int64_t>(g);
    left.assign(n, 0);
    right.assign(n, 0);
    {
        std::map<std::vector<std::int64_t>, int> ids;
        auto initial = [&](std::size_t g, std::int64_t tag) {
            std::vector<std::int64_t> key{static_cast<std::int64_t>(gates[g].kind)};
            if (gates[g].is_input()) key.push_back(tag);
            return ids.emplace(key, static_cast<int>(ids.size())).first->second;
        };
        for (std::size_t g = 0; g < n; ++g) left[g] = initial(g, static_cast<std::int64_t>(g));
        for (std::size_t g = 0; g < n; ++g) right[g] = initial(g, preimage[g]);
    }
    std::size_t classes = 0;
    while (true) {
        std::map<std::vector<std::int64_t>, int> ids;
        auto refine = [&](const std::vector<int>& colour) {
            std::vector<int> next(n);
            for (std::size_t g = 0; g < n; ++g) {
                std::map<int, std::int64_t> down, up;
                for (const auto& w : gates[g].children) down[colour[w.child]] += w.mult;
                for (const auto& w : c.parents()[g]) up[colour[w.child]] += w.mult;
                std::vector<std::int64_t> key{colour[g], static_cast<std::int64_t>(down.size())};
                for (const auto& [k, v] : down) {
                    key.push_back(k);
                    key.push_back(v);
                }
                for (const auto& [k, v] : up) {
                    key.push_back(k);
                    key.push_back(v);
                }
                next[g] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
            }
            return next;
        };
        left = refine(left);
        right = refine(right);
        if (ids.size() == classes) return;
        classes = ids.size();
    }
}

}  // namespace

AutomorphismSearch::AutomorphismSearch(const Circuit& c, SearchCaps caps) : circuit_(c), caps_(caps) {
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        const Gate& gate = c.gates()[g];
        if (gate.is_input()) continue;
        internal_.push_back(static_cast<GateId>(g));
        by_signature_[signature(gate.kind, gate.children)].push_back(static_cast<GateId>(g));
    }
}

std::optional<GateBijection> AutomorphismSearch::search(const std::vector<GateId>& input_image,
                                                        bool want_nontrivial) const {
    const auto& gates = circuit_.gates();
    std::vector<int> left, right;
    joint_refinement(circuit_, input_image, left, right);
    {
        std::map<int, int> balance;
        for (std::size_t g = 0; g < gates.size(); ++g) {
            ++balance[left[g]];
            --balance[right[g]];
        }
        for (const auto& [colour, count] : balance)
            if (count != 0) return std::nullopt;
    }
    GateBijection image = input_image;
    std::vector<bool> used(gates.size(), false);
    std::size_t k = internal_.size();
    std::vector<std::vector<GateId>> candidates(k);
    std::vector<std::size_t> choice(k, 0);
    std::int64_t nodes = 0;
    std::size_t pos = 0;
    bool fresh = true;
    while (true) {
        if (pos == k) {
            bool trivial = true;
            for (GateId g : internal_) trivial = trivial && image[g] == g;
            if (!want_nontrivial || !trivial) return image;
            if (k == 0) return std::nullopt;
            pos = k - 1;
            fresh = false;
            used[image[internal_[pos]]] = false;
            image[internal_[pos]] = -1;
            ++choice[pos];
        }
        GateId g = internal_[pos];
        if (fresh) {
            std::vector<Wire> mapped;
            for (const auto& w : gates[g].children) mapped.push_back({image[w.child], w.mult});
            candidates[pos].clear();
            auto it = by_signature_.find(signature(gates[g].kind, mapped));
            if (it != by_signature_.end()) {
                for (GateId h : it->second) {
                    if (!used[h] && right[h] == left[g]) candidates[pos].push_back(h);
                }
                // Trying the gate itself first makes the identity the first solution.
                auto self = std::find(candidates[pos].begin(), candidates[pos].end(), g);
                if (self != candidates[pos].end()) std::rotate(candidates[pos].begin(), self, self + 1);
            }
            choice[pos] = 0;
        }
        if (choice[pos] < candidates[pos].size()) {
            if (++nodes > caps_.node_budget) throw Error(ErrorCode::SizeCap, "automorphism search budget");
            GateId h = candidates[pos][choice[pos]];
            image[g] = h;
            used[h] = true;
            ++pos;
            fresh = true;
            continue;
        }
        if (pos == 0) return std::nullopt;
        --pos;
        fresh = false;
        used[image[internal_[pos]]] = false;
        image[internal_[pos]] = -1;
        ++choice[pos];
    }
}

std::optional<GateBijection> AutomorphismSearch::extend(const PermutationPair& g) const {
    const auto& gates = circuit_.gates();
    GateBijection image(gates.size(), -1);
    for (std::size_t q = 0; q < gates.size(); ++q) {
        const Gate& gate = gates[q];
        if (gate.kind == GateKind::Const) {
            image[q] = static_cast<GateId>(q);
        } else if (gate.kind == GateKind::Var) {
            GateId target = circuit_.var_gate(apply(g, gate.var));
            if (target < 0) return std::nullopt;
            image[q] = target;
        }
    }
    return search(image, false);
}

std::optional<GateBijection> AutomorphismSearch::nontrivial_input_fixing() const {
    const auto& gates = circuit_.gates();
    GateBijection image(gates.size(), -1);
    for (std::size_t q = 0; q < gates.size(); ++q) {
        if (gates[q].is_input()) image[q] = static_cast<GateId>(q);
    }
    return search(image, true);
}

std::optional<GateBijection> extend_to_automorphism(const Circuit& c, const PermutationPair& g,
                                                    const SearchCaps& caps) {
    return AutomorphismSearch(c, caps).extend(g);
}

namespace {

void check_variables(const Circuit& c, int n, int m) {
    for (const auto& v : c.variables()) {
        int i = 0, j = 0;
        if (!parse_matrix_variable(v, i, j) || i >= n || j >= m) {
            throw Error(ErrorCode::InvalidParameter, "variable " + v + " is not in X_{n,m}");
        }
    }
}

}  // namespace

bool is_symmetric(const Circuit& c, int n, int m, const SearchCaps& caps) {
    check_variables(c, n, m);
    AutomorphismSearch search(c, caps);
    for (int i = 0; i + 1 < n; ++i) {
        if (!search.extend(PermutationPair::row_transposition(n, m, i, i + 1))) return false;
    }
    for (int j = 0; j + 1 < m; ++j) {
        if (!search.extend(PermutationPair::column_transposition(n, m, j, j + 1))) return false;
    }
    return true;
}

bool is_rigid(const Circuit& c, const SearchCaps& caps) {
    return !AutomorphismSearch(c, caps).nontrivial_input_fixing().has_value();
}

}  // namespace symhom
