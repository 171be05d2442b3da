#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace symhom {

enum class Side { A, B };

// Vertices are addressed either per side (side, index) or by a global id:
// A-vertex a has id a, B-vertex b has id a_count + b.
class BipartiteMultigraph {
public:
    BipartiteMultigraph() = default;
    BipartiteMultigraph(int a_count, int b_count);

    int a_count() const { return a_count_; }
    int b_count() const { return b_count_; }
    int num_vertices() const { return a_count_ + b_count_; }
    const std::map<std::pair<int, int>, int>& edges() const { return edges_; }

    void add_edge(int a, int b, int mult = 1);
    int multiplicity(int a, int b) const;
    // Total edge count, counted with multiplicity.
    int edge_count() const;
    int size_norm() const { return num_vertices() + edge_count(); }
    bool is_simple() const;

    int global_id(Side side, int index) const { return side == Side::A ? index : a_count_ + index; }
    Side side_of(int global) const { return global < a_count_ ? Side::A : Side::B; }
    int local_index(int global) const { return global < a_count_ ? global : global - a_count_; }

    // Adjacency of the underlying simple graph over global ids.
    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> degrees() const;  // with multiplicity, by global id
    std::vector<int> isolated_vertices() const;
    bool is_connected() const;

    bool operator==(const BipartiteMultigraph& other) const = default;

    nlohmann::json to_json() const;
    static BipartiteMultigraph from_json(const nlohmann::json& j);

private:
    int a_count_ = 0;
    int b_count_ = 0;
    std::map<std::pair<int, int>, int> edges_;
};

// Colour names "a1", ..., "b1", ... of the identity colouring, by global id.
std::vector<std::string> identity_colour_names(const BipartiteMultigraph& f);

struct LabelledPattern {
    BipartiteMultigraph graph;
    std::vector<int> a_labels;
    std::vector<int> b_labels;

    bool operator==(const LabelledPattern& other) const = default;
    nlohmann::json to_json() const;
    static LabelledPattern from_json(const nlohmann::json& j);
};

// sets[0] is the remainder B_0; sets[i] for i >= 1 is the branch set of the
// S-vertex with global id i-1.
struct BranchSets {
    std::vector<std::vector<int>> sets;
};

BipartiteMultigraph make_path(int v);
BipartiteMultigraph make_cycle(int length);
BipartiteMultigraph make_grid(int rows, int cols);
BipartiteMultigraph make_complete_binary_tree(int n);
BipartiteMultigraph make_complete_bipartite(int k, int l);
BipartiteMultigraph make_star(int leaves);

// Global id of path vertex k (0-based along the path).
int path_vertex(int v, int k);
// Global id of grid vertex (i, j), 0-based.
int grid_vertex(int rows, int cols, int i, int j);
// Global id of the heap-indexed tree vertex k (children 2k+1, 2k+2).
int tree_vertex(int n, int k);
int complete_binary_tree_height(int n);

struct Caps {
    int isomorphism_side = 10;
    int minor_norm = 24;
    long long minor_nodes = 50'000'000;
};

bool are_isomorphic(const BipartiteMultigraph& f, const BipartiteMultigraph& g, const Caps& caps = {});
// Like are_isomorphic, but additionally requires vertex colours to be preserved.
bool are_isomorphic_coloured(const BipartiteMultigraph& f, const std::vector<int>& f_colours,
                             const BipartiteMultigraph& g, const std::vector<int>& g_colours,
                             const Caps& caps = {});

std::optional<BranchSets> find_minor(const BipartiteMultigraph& s, const BipartiteMultigraph& f,
                                     const Caps& caps = {});
// Checks the branch-set conditions; returns an empty string when valid.
std::string check_branch_sets(const BipartiteMultigraph& s, const BipartiteMultigraph& f,
                              const BranchSets& branch);

// s is indexed by global id. Quotient vertices on each side are ordered by
// their smallest original global id.
BipartiteMultigraph quotient(const BipartiteMultigraph& f, const std::vector<Side>& s);
// Same, also reporting the quotient vertex (global id) of each original vertex.
BipartiteMultigraph quotient(const BipartiteMultigraph& f, const std::vector<Side>& s,
                             std::vector<int>& vertex_map);

BipartiteMultigraph disjoint_union(const BipartiteMultigraph& f, const BipartiteMultigraph& g);
BipartiteMultigraph remove_isolated(const BipartiteMultigraph& f);

LabelledPattern tensor_union(const LabelledPattern& f, const LabelledPattern& g);
LabelledPattern glue(const LabelledPattern& f, const LabelledPattern& g);
LabelledPattern drop_label(const LabelledPattern& f, int i);
LabelledPattern drop_right_label(const LabelledPattern& f, int i);
LabelledPattern add_label(const LabelledPattern& f, Side side, int vertex);

// All bipartite multigraphs with the given side sizes and multiplicities
// in [0, max_mult], one representative per isomorphism class.
std::vector<BipartiteMultigraph> enumerate_bipartite(int a_count, int b_count, int max_mult,
                                                     int max_total_edges = -1);

}  // namespace symhom
