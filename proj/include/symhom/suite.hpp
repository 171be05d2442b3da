#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "symhom/circuit.hpp"
#include "symhom/oracle.hpp"

namespace symhom {

struct CheckResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    int trials = 5;
};

// Acceptance criteria 1..10, one result each.
CheckResult run_criterion(int k, const SuiteOptions& options);
const std::vector<std::string>& criterion_titles();

// Named groups: all, compile, symmetry, reductions, width.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& options);
nlohmann::json suite_report(const std::vector<CheckResult>& results);

// Individual identity checks used by `verify identity --name ...`.
const std::vector<std::string>& identity_names();
CheckResult verify_identity(const std::string& name, const SuiteOptions& options);

enum class RandomCircuitMode { General, Skew, Formula };

// Random Sym_n x Sym_m-symmetric circuit built from index families (gates
// indexed by nothing, a row, a column, or a cell), often with duplicated
// families so that the result is not rigid.
Circuit random_symmetric_circuit(int n, int m, RandomCircuitMode mode, std::mt19937_64& rng, int max_gates = 40);

Rational random_rational(std::mt19937_64& rng);
WeightedHost random_host(int n, int m, std::mt19937_64& rng);
// F-coloured host over identity colours with class size n and random weights.
ColouredGraph random_coloured_host(const BipartiteMultigraph& f, int n, std::mt19937_64& rng);
// Host over an abstract colour set of size k with every block filled.
ColouredGraph random_colour_set_host(int k, int n, std::mt19937_64& rng);

}  // namespace symhom
