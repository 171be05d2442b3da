#include <algorithm>
#include <map>
#include <stdexcept>

#include "symhom/symmetry.hpp"

namespace symhom {

std::vector<int> stable_colouring(const Circuit& c) {
    const auto& gates = c.gates();
    std::size_t n = gates.size();
    std::vector<int> colour(n);
    {
        std::map<std::vector<std::int64_t>, int> ids;
        for (std::size_t g = 0; g < n; ++g) {
            std::vector<std::int64_t> key{static_cast<std::int64_t>(gates[g].kind)};
            if (gates[g].is_input()) key.push_back(static_cast<std::int64_t>(g));
            colour[g] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
        }
    }
    std::size_t classes = 0;
    while (true) {
        std::map<std::vector<std::int64_t>, int> ids;
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
        colour = std::move(next);
        if (ids.size() == classes) break;
        classes = ids.size();
    }
    return colour;
}

Circuit merge_equivalent_gates(const Circuit& c) {
    Circuit current = c;
    while (true) {
        auto colour = stable_colouring(current);
        int classes = *std::max_element(colour.begin(), colour.end()) + 1;
        if (classes == static_cast<int>(current.num_gates())) return current;
        const auto& gates = current.gates();
        std::vector<GateId> rep(classes, -1);
        for (std::size_t g = 0; g < gates.size(); ++g) {
            if (rep[colour[g]] < 0) rep[colour[g]] = static_cast<GateId>(g);
        }
        CircuitBuilder builder;
        std::vector<GateId> built(classes, -1);
        for (std::size_t g = 0; g < gates.size(); ++g) {
            int k = colour[g];
            if (rep[k] != static_cast<GateId>(g)) continue;
            const Gate& gate = gates[g];
            if (gate.kind == GateKind::Var) {
                built[k] = builder.add_var(gate.var);
            } else if (gate.kind == GateKind::Const) {
                built[k] = builder.add_const(gate.constant);
            } else {
                std::vector<Wire> children;
                for (const auto& w : gate.children) children.push_back({built[colour[w.child]], w.mult});
                built[k] = builder.add_internal(gate.kind, children);
            }
        }
        current = builder.build(built[colour[current.output()]]);
    }
}

Circuit rigidify(const Circuit& c, int n, int m, const SearchCaps& caps) {
    if (!is_symmetric(c, n, m, caps)) throw Error(ErrorCode::NotSymmetric, "rigidify needs a symmetric circuit");
    Circuit out = merge_equivalent_gates(c);
    auto vars = c.variables();
    auto f = [&](const Assignment& a) { return evaluate(c, a); };
    auto g = [&](const Assignment& a) { return evaluate(out, a); };
    if (!poly_equal_randomized(vars, f, g, 0, 5, 0x5eedULL)) {
        throw std::logic_error("rigidification changed the computed polynomial");
    }
    return out;
}

}  // namespace symhom
