#include "symhom/error.hpp"
#include "symhom/pattern.hpp"

namespace symhom {

namespace {

void require_positive(int value, const char* what) {
    if (value < 1) throw Error(ErrorCode::InvalidParameter, std::string(what) + " must be >= 1");
}

}  // namespace

int path_vertex(int v, int k) {
    int a_count = (v + 1) / 2;
    return k % 2 == 0 ? k / 2 : a_count + k / 2;
}

BipartiteMultigraph make_path(int v) {
    require_positive(v, "path length");
    BipartiteMultigraph g((v + 1) / 2, v / 2);
    for (int k = 0; k + 1 < v; ++k) {
        // vertex k and k+1 lie on opposite sides; the even one is in A
        int a = (k % 2 == 0 ? k : k + 1) / 2;
        int b = (k % 2 == 0 ? k + 1 : k) / 2;
        g.add_edge(a, b);
    }
    return g;
}

BipartiteMultigraph make_cycle(int length) {
    if (length < 4 || length % 2 != 0) {
        throw Error(ErrorCode::InvalidParameter, "bipartite cycles need even length >= 4");
    }
    BipartiteMultigraph g(length / 2, length / 2);
    for (int k = 0; k < length; ++k) {
        int next = (k + 1) % length;
        int even = k % 2 == 0 ? k : next;
        int odd = k % 2 == 0 ? next : k;
        g.add_edge(even / 2, odd / 2);
    }
    return g;
}

int grid_vertex(int rows, int cols, int i, int j) {
    // Row-major enumeration within each side.
    int a_count = (rows * cols + 1) / 2;
    bool in_a = (i + j) % 2 == 0;
    int index = 0;
    for (int t = 0; t < i * cols + j; ++t) {
        if (((t / cols + t % cols) % 2 == 0) == in_a) ++index;
    }
    return in_a ? index : a_count + index;
}

BipartiteMultigraph make_grid(int rows, int cols) {
    require_positive(rows, "rows");
    require_positive(cols, "cols");
    int total = rows * cols;
    BipartiteMultigraph g((total + 1) / 2, total / 2);
    auto add = [&](int i1, int j1, int i2, int j2) {
        int u = grid_vertex(rows, cols, i1, j1);
        int v = grid_vertex(rows, cols, i2, j2);
        if (g.side_of(u) == Side::B) std::swap(u, v);
        g.add_edge(g.local_index(u), g.local_index(v));
    };
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) add(i, j, i, j + 1);
            if (i + 1 < rows) add(i, j, i + 1, j);
        }
    }
    return g;
}

int complete_binary_tree_height(int n) {
    require_positive(n, "leaf bound");
    int h = 0;
    while ((2 << h) <= n) ++h;
    return h;
}

namespace {

int heap_level(int k) {
    int level = 0;
    while (k > 0) {
        k = (k - 1) / 2;
        ++level;
    }
    return level;
}

}  // namespace

int tree_vertex(int n, int k) {
    int h = complete_binary_tree_height(n);
    int count = (1 << (h + 1)) - 1;
    int a_count = 0, before = 0;
    for (int t = 0; t < count; ++t) {
        if (heap_level(t) % 2 == 0) ++a_count;
    }
    bool in_a = heap_level(k) % 2 == 0;
    for (int t = 0; t < k; ++t) {
        if ((heap_level(t) % 2 == 0) == in_a) ++before;
    }
    return in_a ? before : a_count + before;
}

BipartiteMultigraph make_complete_binary_tree(int n) {
    int h = complete_binary_tree_height(n);
    int count = (1 << (h + 1)) - 1;
    int a_count = 0;
    for (int t = 0; t < count; ++t) {
        if (heap_level(t) % 2 == 0) ++a_count;
    }
    BipartiteMultigraph g(a_count, count - a_count);
    for (int k = 1; k < count; ++k) {
        int u = tree_vertex(n, (k - 1) / 2);
        int v = tree_vertex(n, k);
        if (g.side_of(u) == Side::B) std::swap(u, v);
        g.add_edge(g.local_index(u), g.local_index(v));
    }
    return g;
}

BipartiteMultigraph make_complete_bipartite(int k, int l) {
    BipartiteMultigraph g(k, l);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < l; ++b) g.add_edge(a, b);
    }
    return g;
}

BipartiteMultigraph make_star(int leaves) {
    require_positive(leaves, "leaves");
    return make_complete_bipartite(1, leaves);
}

}  // namespace symhom
