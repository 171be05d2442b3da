#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "symhom/pattern.hpp"
#include "symhom/validation.hpp"

namespace symhom {

// Bags hold global vertex ids of F.
struct TreeDecomposition {
    std::vector<int> parent;  // -1 for the root
    std::vector<std::vector<int>> bags;
    int root = 0;

    int width() const;
    std::vector<std::vector<int>> children() const;
    nlohmann::json to_json() const;
    static TreeDecomposition from_json(const nlohmann::json& j);
};

struct PathDecomposition {
    std::vector<std::vector<int>> bags;

    int width() const;
    TreeDecomposition as_tree() const;  // rooted at the first bag
    nlohmann::json to_json() const;
    static PathDecomposition from_json(const nlohmann::json& j);
};

// parent[v] is the parent of vertex v, -1 for roots. Forests are allowed;
// a forest of height d is a tree of height d+1 below a virtual root.
struct EliminationTree {
    std::vector<int> parent;

    int height() const;
    std::vector<std::vector<int>> children() const;
    std::vector<int> roots() const;
    nlohmann::json to_json() const;
    static EliminationTree from_json(const nlohmann::json& j);
};

struct WidthOptions {
    int vertex_cap = 14;
    // Require every labelled vertex in one bag (the first bag for paths).
    bool labels_in_one_bag = false;
    std::vector<int> labels;  // global ids
};

struct TreewidthResult {
    int width;
    TreeDecomposition decomposition;
};
struct PathwidthResult {
    int width;
    PathDecomposition decomposition;
};
struct TreedepthResult {
    int depth;
    EliminationTree tree;
};

TreewidthResult treewidth_exact(const BipartiteMultigraph& f, const WidthOptions& options = {});
PathwidthResult pathwidth_exact(const BipartiteMultigraph& f, const WidthOptions& options = {});
TreedepthResult treedepth_exact(const BipartiteMultigraph& f, const WidthOptions& options = {});

ValidationResult validate_decomposition(const BipartiteMultigraph& f, const TreeDecomposition& d);
ValidationResult validate_decomposition(const BipartiteMultigraph& f, const PathDecomposition& d);
ValidationResult validate_decomposition(const BipartiteMultigraph& f, const EliminationTree& t);

int rooted_depth(const TreeDecomposition& d);

}  // namespace symhom
