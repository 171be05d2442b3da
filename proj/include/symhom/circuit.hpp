#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symhom/error.hpp"
#include "symhom/exactnum.hpp"
#include "symhom/validation.hpp"

namespace symhom {

using GateId = int;

enum class GateKind { Var, Const, Plus, Times };

struct Wire {
    GateId child;
    int mult;
    bool operator==(const Wire& o) const = default;
    bool operator<(const Wire& o) const { return child != o.child ? child < o.child : mult < o.mult; }
};

struct Gate {
    GateKind kind = GateKind::Const;
    std::string var;    // Var gates
    Rational constant;  // Const gates
    int var_index = -1; // position of var in Circuit::variables()
    std::vector<Wire> children;  // sorted by child id, no duplicates

    bool is_input() const { return kind == GateKind::Var || kind == GateKind::Const; }
};

enum class CircuitShape { General, Skew, Formula, FormulaMulti };

const char* shape_name(CircuitShape shape);
CircuitShape shape_from_name(const std::string& name);

// Gates are stored in topological order: every child precedes its parents.
class Circuit {
public:
    Circuit() = default;
    // Validates the structural invariants; throws ParseError when violated.
    Circuit(std::vector<Gate> gates, GateId output);

    const std::vector<Gate>& gates() const { return gates_; }
    const Gate& gate(GateId g) const { return gates_.at(g); }
    std::size_t num_gates() const { return gates_.size(); }
    GateId output() const { return output_; }
    const std::vector<std::string>& variables() const { return variables_; }
    // Parents with wire multiplicities.
    const std::vector<std::vector<Wire>>& parents() const { return parents_; }
    // Input gate carrying the given variable, or -1.
    GateId var_gate(const std::string& name) const;

private:
    std::vector<Gate> gates_;
    GateId output_ = 0;
    std::vector<std::string> variables_;
    std::vector<std::vector<Wire>> parents_;
    std::map<std::string, GateId> var_gates_;
};

class CircuitBuilder {
public:
    GateId add_var(const std::string& name);
    GateId add_const(const Rational& value);
    // Merges repeated children. An empty sum is the constant 0 and an empty
    // product the constant 1; a single child of multiplicity 1 is returned as is.
    GateId add_plus(const std::vector<Wire>& children);
    GateId add_times(const std::vector<Wire>& children);
    // Adds an internal gate without collapsing (still merges repeated children).
    GateId add_internal(GateKind kind, const std::vector<Wire>& children);

    std::size_t size() const { return gates_.size(); }
    // Prunes gates unreachable from output and renumbers.
    Circuit build(GateId output) const;

private:
    std::vector<Gate> gates_;
    std::map<std::string, GateId> vars_;
    std::map<Rational, GateId> consts_;
};

ValidationResult validate(const Circuit& c, CircuitShape shape);
std::int64_t circuit_size(const Circuit& c);
// Number of internal gates on the longest output-to-leaf path.
int circuit_depth(const Circuit& c);
// Number of Plus gates on the path maximizing that count.
int circuit_sum_depth(const Circuit& c);

Rational evaluate(const Circuit& c, const Assignment& a);
SparsePolynomial expand_symbolic(const Circuit& c, std::size_t monomial_cap = 1'000'000);

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);
std::string to_dot(const Circuit& c);

// Evaluates every gate given values for Circuit::variables() (in order) and a
// conversion for constants.
template <class T, class ConstFn>
std::vector<T> evaluate_gates(const Circuit& c, const std::vector<T>& var_values, ConstFn to_value) {
    std::vector<T> value(c.num_gates());
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        const Gate& gate = c.gates()[g];
        switch (gate.kind) {
            case GateKind::Var: value[g] = var_values[gate.var_index]; break;
            case GateKind::Const: value[g] = to_value(gate.constant); break;
            case GateKind::Plus: {
                T acc = T(0);
                for (const auto& w : gate.children) acc = acc + T(w.mult) * value[w.child];
                value[g] = acc;
                break;
            }
            case GateKind::Times: {
                T acc = T(1);
                for (const auto& w : gate.children) {
                    for (int k = 0; k < w.mult; ++k) acc = acc * value[w.child];
                }
                value[g] = acc;
                break;
            }
        }
    }
    return value;
}

template <class T, class ConstFn>
T evaluate_output(const Circuit& c, const std::vector<T>& var_values, ConstFn to_value) {
    return evaluate_gates(c, var_values, to_value)[c.output()];
}

}  // namespace symhom
