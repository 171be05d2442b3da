#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "symhom/circuit.hpp"

namespace symhom {

namespace {

std::vector<Wire> merge_wires(std::vector<Wire> wires) {
    std::sort(wires.begin(), wires.end());
    std::vector<Wire> out;
    for (const auto& w : wires) {
        if (w.mult < 1) throw Error(ErrorCode::InvalidParameter, "wire multiplicity must be >= 1");
        if (!out.empty() && out.back().child == w.child) {
            out.back().mult += w.mult;
        } else {
            out.push_back(w);
        }
    }
    return out;
}

}  // namespace

const char* shape_name(CircuitShape shape) {
    switch (shape) {
        case CircuitShape::General: return "general";
        case CircuitShape::Skew: return "skew";
        case CircuitShape::Formula: return "formula";
        case CircuitShape::FormulaMulti: return "formula-multi";
    }
    return "general";
}

CircuitShape shape_from_name(const std::string& name) {
    if (name == "general") return CircuitShape::General;
    if (name == "skew") return CircuitShape::Skew;
    if (name == "formula") return CircuitShape::Formula;
    if (name == "formula-multi") return CircuitShape::FormulaMulti;
    throw Error(ErrorCode::ParseError, "unknown shape " + name);
}

Circuit::Circuit(std::vector<Gate> gates, GateId output) : gates_(std::move(gates)), output_(output) {
    int n = static_cast<int>(gates_.size());
    if (output_ < 0 || output_ >= n) throw Error(ErrorCode::ParseError, "output gate out of range");
    std::set<std::string> var_names;
    std::set<Rational> consts;
    parents_.assign(n, {});
    for (int g = 0; g < n; ++g) {
        Gate& gate = gates_[g];
        if (gate.is_input() && !gate.children.empty()) {
            throw Error(ErrorCode::ParseError, "input gate with children");
        }
        if (gate.kind == GateKind::Var && !var_names.insert(gate.var).second) {
            throw Error(ErrorCode::ParseError, "duplicate input gate " + gate.var);
        }
        if (gate.kind == GateKind::Const && !consts.insert(gate.constant).second) {
            throw Error(ErrorCode::ParseError, "duplicate constant gate");
        }
        gate.children = merge_wires(gate.children);
        for (const auto& w : gate.children) {
            if (w.child < 0 || w.child >= g) throw Error(ErrorCode::ParseError, "gates not in topological order");
            parents_[w.child].push_back({g, w.mult});
        }
    }
    if (!parents_[output_].empty()) throw Error(ErrorCode::ParseError, "output gate has parents");
    std::vector<bool> reach(n, false);
    reach[output_] = true;
    for (int g = n - 1; g >= 0; --g) {
        if (!reach[g]) continue;
        for (const auto& w : gates_[g].children) reach[w.child] = true;
    }
    if (std::count(reach.begin(), reach.end(), false) > 0) {
        throw Error(ErrorCode::ParseError, "gate unreachable from output");
    }
    variables_.assign(var_names.begin(), var_names.end());
    for (int g = 0; g < n; ++g) {
        Gate& gate = gates_[g];
        if (gate.kind == GateKind::Var) {
            gate.var_index = static_cast<int>(
                std::lower_bound(variables_.begin(), variables_.end(), gate.var) - variables_.begin());
            var_gates_[gate.var] = g;
        }
    }
}

GateId Circuit::var_gate(const std::string& name) const {
    auto it = var_gates_.find(name);
    return it == var_gates_.end() ? -1 : it->second;
}

GateId CircuitBuilder::add_var(const std::string& name) {
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    Gate g;
    g.kind = GateKind::Var;
    g.var = name;
    gates_.push_back(g);
    GateId id = static_cast<GateId>(gates_.size()) - 1;
    vars_[name] = id;
    return id;
}

GateId CircuitBuilder::add_const(const Rational& value) {
    auto it = consts_.find(value);
    if (it != consts_.end()) return it->second;
    Gate g;
    g.kind = GateKind::Const;
    g.constant = value;
    gates_.push_back(g);
    GateId id = static_cast<GateId>(gates_.size()) - 1;
    consts_[value] = id;
    return id;
}

GateId CircuitBuilder::add_internal(GateKind kind, const std::vector<Wire>& children) {
    if (kind != GateKind::Plus && kind != GateKind::Times) {
        throw Error(ErrorCode::InvalidParameter, "internal gates are Plus or Times");
    }
    for (const auto& w : children) {
        if (w.child < 0 || w.child >= static_cast<GateId>(gates_.size())) {
            throw Error(ErrorCode::IndexOutOfRange, "unknown child gate");
        }
    }
    Gate g;
    g.kind = kind;
    g.children = merge_wires(children);
    gates_.push_back(g);
    return static_cast<GateId>(gates_.size()) - 1;
}

GateId CircuitBuilder::add_plus(const std::vector<Wire>& children) {
    if (children.empty()) return add_const(0);
    auto merged = merge_wires(children);
    if (merged.size() == 1 && merged[0].mult == 1) return merged[0].child;
    return add_internal(GateKind::Plus, merged);
}

GateId CircuitBuilder::add_times(const std::vector<Wire>& children) {
    if (children.empty()) return add_const(1);
    auto merged = merge_wires(children);
    if (merged.size() == 1 && merged[0].mult == 1) return merged[0].child;
    return add_internal(GateKind::Times, merged);
}

Circuit CircuitBuilder::build(GateId output) const {
    int n = static_cast<int>(gates_.size());
    if (output < 0 || output >= n) throw Error(ErrorCode::IndexOutOfRange, "output gate");
    std::vector<bool> reach(n, false);
    reach[output] = true;
    for (int g = n - 1; g >= 0; --g) {
        if (!reach[g]) continue;
        for (const auto& w : gates_[g].children) reach[w.child] = true;
    }
    std::vector<int> remap(n, -1);
    std::vector<Gate> out;
    for (int g = 0; g < n; ++g) {
        if (!reach[g]) continue;
        remap[g] = static_cast<int>(out.size());
        Gate gate = gates_[g];
        for (auto& w : gate.children) w.child = remap[w.child];
        out.push_back(std::move(gate));
    }
    return Circuit(std::move(out), remap[output]);
}

ValidationResult validate(const Circuit& c, CircuitShape shape) {
    // Structural invariants are enforced by the Circuit constructor.
    if (shape == CircuitShape::General) return {};
    const auto& gates = c.gates();
    if (shape == CircuitShape::Skew) {
        for (std::size_t g = 0; g < gates.size(); ++g) {
            if (gates[g].kind != GateKind::Times) continue;
            int internal = 0;
            for (const auto& w : gates[g].children) {
                if (!gates[w.child].is_input()) internal += w.mult;
            }
            if (internal > 1) return {false, "times gate " + std::to_string(g) + " has several internal children"};
        }
        return {};
    }
    for (std::size_t g = 0; g < gates.size(); ++g) {
        if (gates[g].is_input()) continue;
        if (static_cast<GateId>(g) != c.output() && c.parents()[g].size() != 1) {
            return {false, "internal gate " + std::to_string(g) + " does not have exactly one parent"};
        }
        if (shape == CircuitShape::Formula) {
            for (const auto& w : gates[g].children) {
                if (w.mult != 1) return {false, "multiedge below gate " + std::to_string(g)};
            }
        }
    }
    return {};
}

std::int64_t circuit_size(const Circuit& c) {
    std::int64_t total = static_cast<std::int64_t>(c.num_gates());
    for (const auto& g : c.gates()) {
        for (const auto& w : g.children) total += w.mult;
    }
    return total;
}

int circuit_depth(const Circuit& c) {
    std::vector<int> depth(c.num_gates(), 0);
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        const Gate& gate = c.gates()[g];
        if (gate.is_input()) continue;
        int best = 0;
        for (const auto& w : gate.children) best = std::max(best, depth[w.child]);
        depth[g] = best + 1;
    }
    return depth[c.output()];
}

int circuit_sum_depth(const Circuit& c) {
    std::vector<int> depth(c.num_gates(), 0);
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        const Gate& gate = c.gates()[g];
        int best = 0;
        for (const auto& w : gate.children) best = std::max(best, depth[w.child]);
        depth[g] = best + (gate.kind == GateKind::Plus ? 1 : 0);
    }
    return depth[c.output()];
}

Rational evaluate(const Circuit& c, const Assignment& a) {
    std::vector<Rational> values;
    values.reserve(c.variables().size());
    for (const auto& v : c.variables()) {
        auto it = a.find(v);
        if (it == a.end()) throw Error(ErrorCode::MissingVariable, v);
        values.push_back(it->second);
    }
    return evaluate_output<Rational>(c, values, [](const Rational& q) { return q; });
}

SparsePolynomial expand_symbolic(const Circuit& c, std::size_t monomial_cap) {
    std::vector<SparsePolynomial> poly(c.num_gates());
    auto check = [&](const SparsePolynomial& p) {
        if (p.num_terms() > monomial_cap) throw Error(ErrorCode::SizeCap, "monomial cap exceeded");
    };
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        const Gate& gate = c.gates()[g];
        switch (gate.kind) {
            case GateKind::Var: poly[g] = SparsePolynomial::variable(gate.var); break;
            case GateKind::Const: poly[g] = SparsePolynomial::constant(gate.constant); break;
            case GateKind::Plus: {
                SparsePolynomial acc;
                for (const auto& w : gate.children) acc = acc + poly[w.child].scaled(w.mult);
                check(acc);
                poly[g] = std::move(acc);
                break;
            }
            case GateKind::Times: {
                SparsePolynomial acc = SparsePolynomial::constant(1);
                for (const auto& w : gate.children) {
                    for (int k = 0; k < w.mult; ++k) {
                        if (acc.num_terms() * poly[w.child].num_terms() > monomial_cap) {
                            throw Error(ErrorCode::SizeCap, "projected monomial count exceeds cap");
                        }
                        acc = acc * poly[w.child];
                    }
                }
                check(acc);
                poly[g] = std::move(acc);
                break;
            }
        }
    }
    return poly[c.output()].trimmed();
}

nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json gates = nlohmann::json::array();
    nlohmann::json wires = nlohmann::json::array();
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        const Gate& gate = c.gates()[g];
        nlohmann::json label;
        switch (gate.kind) {
            case GateKind::Var: label = {{"var", gate.var}}; break;
            case GateKind::Const: label = {{"const", rational_to_json(gate.constant)}}; break;
            case GateKind::Plus: label = "plus"; break;
            case GateKind::Times: label = "times"; break;
        }
        gates.push_back({{"id", g}, {"label", label}});
        for (const auto& w : gate.children) wires.push_back({g, w.child, w.mult});
    }
    return {{"gates", gates}, {"wires", wires}, {"output", c.output()}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
    try {
        std::map<long long, int> index;
        std::vector<Gate> raw;
        for (const auto& gj : j.at("gates")) {
            long long id = gj.at("id").get<long long>();
            if (index.count(id)) throw Error(ErrorCode::ParseError, "duplicate gate id");
            Gate g;
            const auto& label = gj.at("label");
            if (label.is_string()) {
                auto s = label.get<std::string>();
                if (s == "plus") {
                    g.kind = GateKind::Plus;
                } else if (s == "times") {
                    g.kind = GateKind::Times;
                } else {
                    throw Error(ErrorCode::ParseError, "unknown gate label " + s);
                }
            } else if (label.contains("var")) {
                g.kind = GateKind::Var;
                g.var = label.at("var").get<std::string>();
            } else if (label.contains("const")) {
                g.kind = GateKind::Const;
                g.constant = rational_from_json(label.at("const"));
            } else {
                throw Error(ErrorCode::ParseError, "malformed gate label");
            }
            index[id] = static_cast<int>(raw.size());
            raw.push_back(std::move(g));
        }
        auto lookup = [&](long long id) {
            auto it = index.find(id);
            if (it == index.end()) throw Error(ErrorCode::ParseError, "wire references unknown gate");
            return it->second;
        };
        for (const auto& wj : j.at("wires")) {
            int parent = lookup(wj.at(0).get<long long>());
            int child = lookup(wj.at(1).get<long long>());
            int mult = wj.size() > 2 ? wj.at(2).get<int>() : 1;
            if (mult < 1) throw Error(ErrorCode::ParseError, "wire multiplicity must be >= 1");
            raw[parent].children.push_back({child, mult});
        }
        int output = lookup(j.at("output").get<long long>());
        // Topological renumbering (children first), rejecting cycles.
        int n = static_cast<int>(raw.size());
        std::vector<int> state(n, 0), order;
        std::function<void(int)> visit = [&](int g) {
            if (state[g] == 2) return;
            if (state[g] == 1) throw Error(ErrorCode::ParseError, "circuit has a cycle");
            state[g] = 1;
            for (const auto& w : raw[g].children) visit(w.child);
            state[g] = 2;
            order.push_back(g);
        };
        for (int g = 0; g < n; ++g) visit(g);
        std::vector<int> remap(n);
        for (int i = 0; i < n; ++i) remap[order[i]] = i;
        std::vector<Gate> gates(n);
        for (int g = 0; g < n; ++g) {
            Gate gate = raw[g];
            for (auto& w : gate.children) w.child = remap[w.child];
            gates[remap[g]] = std::move(gate);
        }
        return Circuit(std::move(gates), remap[output]);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

std::string to_dot(const Circuit& c) {
    std::ostringstream out;
    out << "digraph circuit {\n";
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        const Gate& gate = c.gates()[g];
        std::string label;
        switch (gate.kind) {
            case GateKind::Var: label = gate.var; break;
            case GateKind::Const: label = gate.constant.get_str(); break;
            case GateKind::Plus: label = "+"; break;
            case GateKind::Times: label = "*"; break;
        }
        out << "  g" << g << " [label=\"" << label << "\"";
        if (static_cast<GateId>(g) == c.output()) out << ", shape=doublecircle";
        out << "];\n";
    }
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        for (const auto& w : c.gates()[g].children) {
            out << "  g" << g << " -> g" << w.child << " [label=\"" << w.mult << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace symhom
