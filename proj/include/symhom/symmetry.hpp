#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symhom/circuit.hpp"

namespace symhom {

// (pi, sigma) in Sym_n x Sym_m, 0-based images.
struct PermutationPair {
    std::vector<int> pi;
    std::vector<int> sigma;

    static PermutationPair identity(int n, int m);
    static PermutationPair row_transposition(int n, int m, int i, int j);
    static PermutationPair column_transposition(int n, int m, int i, int j);
    PermutationPair compose(const PermutationPair& after) const;  // after o this
    bool is_valid() const;
};

std::string matrix_variable(int i, int j);  // 0-based indices, 1-based name
bool parse_matrix_variable(const std::string& name, int& i, int& j);
std::string apply(const PermutationPair& g, const std::string& variable);

using GateBijection = std::vector<GateId>;

struct SearchCaps {
    std::int64_t node_budget = 50'000'000;
    std::int64_t path_budget = 20'000'000;
    int support_side = 12;
};

// Extends a variable permutation to a circuit automorphism by bottom-up
// matching of (label, image of the child multiset), backtracking over ties.
class AutomorphismSearch {
public:
    explicit AutomorphismSearch(const Circuit& c, SearchCaps caps = {});

    std::optional<GateBijection> extend(const PermutationPair& g) const;
    // Any automorphism fixing every input gate other than the identity.
    std::optional<GateBijection> nontrivial_input_fixing() const;

private:
    std::optional<GateBijection> search(const std::vector<GateId>& input_image, bool want_nontrivial) const;

    const Circuit& circuit_;
    SearchCaps caps_;
    std::vector<GateId> internal_;
    std::map<std::vector<std::int64_t>, std::vector<GateId>> by_signature_;
};

std::optional<GateBijection> extend_to_automorphism(const Circuit& c, const PermutationPair& g,
                                                    const SearchCaps& caps = {});
bool is_symmetric(const Circuit& c, int n, int m, const SearchCaps& caps = {});
bool is_rigid(const Circuit& c, const SearchCaps& caps = {});

// Coarsest equitable partition refining "inputs individualized, internal
// gates split by kind", as class ids. A discrete result implies rigidity.
std::vector<int> stable_colouring(const Circuit& c);

// Quotient by the coarsest equitable partition (colour refinement over child
// and parent multiplicity profiles, inputs individualized). Preserves the
// computed polynomial without any symmetry assumption.
Circuit merge_equivalent_gates(const Circuit& c);
// Checks symmetry, merges, and confirms equality by randomized testing.
Circuit rigidify(const Circuit& c, int n, int m, const SearchCaps& caps = {});

struct Support {
    std::vector<int> left;   // subset of [n], 0-based
    std::vector<int> right;  // subset of [m], 0-based
    int size() const { return static_cast<int>(left.size() + right.size()); }
    bool operator==(const Support& o) const = default;
};

struct GateSupportInfo {
    std::optional<Support> support;  // absent when uniqueness is unavailable
    int support_size = 0;            // size of a smallest support (always defined)
    int orbit_size = 0;
};

struct SupportReport {
    std::int64_t max_orbit = 0;
    int max_support = 0;  // largest smallest-support size
    std::optional<int> support_depth;  // absent if some support is unavailable
    std::vector<GateSupportInfo> per_gate;
    nlohmann::json to_json() const;
};

// Group-action analysis of a rigid symmetric circuit.
class SymmetryAnalysis {
public:
    SymmetryAnalysis(const Circuit& c, int n, int m, SearchCaps caps = {});

    const std::vector<std::vector<GateId>>& orbits() const { return orbits_; }
    int orbit_of(GateId g) const { return orbit_id_[g]; }
    std::int64_t max_orbit() const;
    // Throws UniquenessUnavailable if the smallest support is not unique or
    // violates the per-side < n/2, < m/2 condition.
    Support minimal_support(GateId g) const;
    std::optional<Support> try_minimal_support(GateId g) const;
    // Size of a smallest support; defined even when the set is not unique.
    int min_support_size(GateId g) const;
    int max_support() const;
    int support_depth() const;
    SupportReport report() const;
    // Unique extension of a permutation pair (rigid circuit).
    GateBijection image(const PermutationPair& g) const;

private:
    const Circuit& circuit_;
    int n_, m_;
    SearchCaps caps_;
    AutomorphismSearch search_;
    std::vector<std::vector<GateId>> orbits_;
    std::vector<int> orbit_id_;
    // images under transpositions (i j), indexed by pair, rows then columns
    mutable std::vector<GateBijection> row_swaps_, col_swaps_;
    mutable std::vector<std::optional<std::optional<Support>>> support_cache_;
    mutable std::vector<int> support_size_;
};

}  // namespace symhom
