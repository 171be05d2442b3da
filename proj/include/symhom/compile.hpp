#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "symhom/circuit.hpp"
#include "symhom/pattern.hpp"
#include "symhom/width.hpp"

namespace symhom {

struct ClaimedBounds {
    Integer size_bound;     // 0 when the construction claims no size bound
    Integer orbit_bound;
    int support_bound = -1; // -1 when not claimed
};

struct CompileReport {
    Circuit circuit;
    CircuitShape shape = CircuitShape::General;
    ClaimedBounds claimed;
    int depth = 0;      // internal gates on the longest path
    int sum_depth = 0;  // Plus gates on the longest path

    nlohmann::json summary_json() const;
};

// Names the variable for an edge between A-vertex a (value i) and B-vertex b
// (value j); vertex arguments are global ids, values 0-based.
using VariableNamer = std::function<std::string(int a, int i, int b, int j)>;

// Domain of each vertex (global id) plus the variable namer.
struct Instantiation {
    std::vector<int> domain;
    VariableNamer name;
};

Instantiation matrix_instantiation(const BipartiteMultigraph& f, int n, int m);
// Colourful variables x_<c(a)>_<i>__<c(b)>_<j>; colours[v] names the colour of v.
Instantiation colourful_instantiation(const BipartiteMultigraph& f, const std::vector<std::string>& colours, int n);
std::string colourful_variable(const std::string& cu, int i, const std::string& cv, int j);

CompileReport compile_formula_td(const BipartiteMultigraph& f, const EliminationTree& t, int n, int m);
CompileReport compile_skew_pw(const BipartiteMultigraph& f, const PathDecomposition& p, int n, int m);
CompileReport compile_circuit_tw(const BipartiteMultigraph& f, const TreeDecomposition& t, int n, int m);

// Instantiation-generic forms used by the colourful compiler.
Circuit build_formula_td(const BipartiteMultigraph& f, const EliminationTree& t, const Instantiation& inst);
Circuit build_skew_pw(const BipartiteMultigraph& f, const PathDecomposition& p, const Instantiation& inst);
Circuit build_circuit_tw(const BipartiteMultigraph& f, const TreeDecomposition& t, const Instantiation& inst);

enum class CompileShape { Td, Pw, Tw };
CompileShape compile_shape_from_name(const std::string& name);

// Compiles with an optimal decomposition from the width module.
CompileReport compile_pattern(const BipartiteMultigraph& f, int n, int m, CompileShape shape);

CompileReport compile_lincomb(const std::vector<std::pair<Rational, BipartiteMultigraph>>& terms, int n, int m,
                              CompileShape shape);

CompileReport compile_colourful(const BipartiteMultigraph& f, const std::vector<std::string>& colours, int n,
                                CompileShape shape);

}  // namespace symhom
