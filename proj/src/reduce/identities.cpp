#include <algorithm>
#include <cmath>

#include "symhom/reduce.hpp"

namespace symhom {

HostOracle brute_force_hom_oracle(const BipartiteMultigraph& f) {
    return [f](const WeightedHost& w) { return hom_count(f, w); };
}

IdentityValues uncolour_expand(const BipartiteMultigraph& f, const ColouredGraph& g) {
    int k = static_cast<int>(g.colours.size());
    int nv = f.num_vertices();
    if (std::pow(static_cast<double>(k), nv) > 1e6) {
        throw Error(ErrorCode::SizeCap, "too many colourings to enumerate");
    }
    IdentityValues out;
    out.lhs = hom_count(f, flatten(g));
    std::vector<int> c(nv, 0);
    while (true) {
        out.rhs += coloured_hom_eval(f, c, g);
        int v = 0;
        while (v < nv && ++c[v] == k) c[v++] = 0;
        if (v == nv) break;
    }
    return out;
}

ColouredGraph tensor_product(const ColouredGraph& g, const ColouredGraph& h) {
    if (g.colours != h.colours) throw Error(ErrorCode::ColourMismatch, "tensor factors need the same colours");
    ColouredGraph z;
    z.colours = g.colours;
    z.class_size.resize(g.colours.size());
    for (std::size_t c = 0; c < g.colours.size(); ++c) z.class_size[c] = g.class_size[c] * h.class_size[c];
    for (const auto& [key, bg] : g.blocks) {
        auto it = h.blocks.find(key);
        if (it == h.blocks.end()) continue;
        const auto& bh = it->second;
        auto& bz = z.block(key.first, key.second);
        for (int i = 0; i < bg.rows; ++i)
            for (int i2 = 0; i2 < bg.cols; ++i2) {
                if (sgn(bg.at(i, i2)) == 0) continue;
                for (int j = 0; j < bh.rows; ++j)
                    for (int j2 = 0; j2 < bh.cols; ++j2)
                        bz.at(i * bh.rows + j, i2 * bh.cols + j2) = bg.at(i, i2) * bh.at(j, j2);
            }
    }
    return z;
}

WeightedHost tensor_product(const WeightedHost& g, const WeightedHost& h) {
    WeightedHost z(g.n * h.n, g.m * h.m);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.m; ++j)
            for (int i2 = 0; i2 < h.n; ++i2)
                for (int j2 = 0; j2 < h.m; ++j2) z.at(i * h.n + i2, j * h.m + j2) = g.at(i, j) * h.at(i2, j2);
    return z;
}

Rational interpolate_coefficient(const std::function<Rational(const Rational&)>& value, int n_max, int k) {
    if (n_max < 0 || k < 0 || k > n_max) {
        throw Error(ErrorCode::InvalidParameter, "slice degree must lie in [0, max_edges]");
    }
    RationalMatrix v(n_max + 1, std::vector<Rational>(n_max + 1));
    std::vector<Rational> b(n_max + 1);
    for (int t = 0; t <= n_max; ++t) {
        for (int d = 0; d <= n_max; ++d) v[t][d] = pow(Rational(t), d);
        b[t] = value(Rational(t));
    }
    auto coeffs = solve_linear_system(v, b);
    // Vandermonde at distinct nodes is never singular.
    return coeffs->at(k);
}

ColouredGraph scaled(const ColouredGraph& g, const Rational& t) {
    ColouredGraph out = g;
    for (auto& [key, b] : out.blocks)
        for (auto& w : b.data) w *= t;
    return out;
}

Rational degree_slice(const ColouredOracle& p, int k, int n_max, const ColouredGraph& g) {
    return interpolate_coefficient([&](const Rational& t) { return p(scaled(g, t)); }, n_max, k);
}

CfiPair cfi_pair(const BipartiteMultigraph& s) {
    if (!s.is_connected()) throw Error(ErrorCode::NotConnected, "CFI base graph must be connected");
    if (!s.is_simple()) throw Error(ErrorCode::InvalidParameter, "CFI base graph must be simple");
    int nv = s.num_vertices();
    std::vector<std::vector<int>> incident(nv);  // edge indices in edges() order
    std::vector<std::pair<int, int>> edge_list;
    for (const auto& [e, mult] : s.edges()) {
        int id = static_cast<int>(edge_list.size());
        edge_list.push_back({e.first, s.a_count() + e.second});
        incident[e.first].push_back(id);
        incident[s.a_count() + e.second].push_back(id);
    }
    std::vector<std::vector<unsigned>> states(nv);
    std::vector<int> size(nv);
    for (int v = 0; v < nv; ++v) {
        int d = static_cast<int>(incident[v].size());
        if (d > 5) throw Error(ErrorCode::SizeCap, "CFI base graph degree is capped at 5");
        for (unsigned mask = 0; mask < (1u << d); ++mask)
            if (__builtin_popcount(mask) % 2 == 0) states[v].push_back(mask);
        size[v] = static_cast<int>(states[v].size());
    }
    CfiPair pair;
    pair.base = s;
    for (auto* g : {&pair.even, &pair.odd}) {
        g->colours = identity_colour_names(s);
        g->class_size = size;
    }
    for (std::size_t id = 0; id < edge_list.size(); ++id) {
        auto [a, b] = edge_list[id];
        int pa = static_cast<int>(std::find(incident[a].begin(), incident[a].end(), id) - incident[a].begin());
        int pb = static_cast<int>(std::find(incident[b].begin(), incident[b].end(), id) - incident[b].begin());
        auto& be = pair.even.block(a, b);
        auto& bo = pair.odd.block(a, b);
        for (int i = 0; i < size[a]; ++i) {
            for (int j = 0; j < size[b]; ++j) {
                bool agree = ((states[a][i] >> pa) & 1u) == ((states[b][j] >> pb) & 1u);
                be.at(i, j) = agree ? 1 : 0;
                bo.at(i, j) = (id == 0 ? !agree : agree) ? 1 : 0;
            }
        }
    }
    return pair;
}

ColouredGraph pad_classes(const ColouredGraph& g, int size) {
    ColouredGraph out;
    out.colours = g.colours;
    for (int c : g.class_size) {
        if (c > size) throw Error(ErrorCode::InvalidParameter, "class already larger than the padding size");
    }
    out.class_size.assign(g.colours.size(), size);
    for (const auto& [key, b] : g.blocks) {
        auto& nb = out.block(key.first, key.second);
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < b.cols; ++j) nb.at(i, j) = b.at(i, j);
    }
    return out;
}

WeightedHost bipartite_double(const WeightedHost& g) {
    if (g.n != g.m) throw Error(ErrorCode::NotSquare, "bipartite double needs an (n, n) host");
    int n = g.n;
    WeightedHost d(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        d.at(i, i) = 1;
        d.at(n + i, n + i) = 1;
        for (int j = 0; j < n; ++j) {
            d.at(i, n + j) = g.at(i, j);
            d.at(n + i, j) = g.at(j, i);
        }
    }
    return d;
}

IdentityValues quotient_identity(const BipartiteMultigraph& f, const WeightedHost& g) {
    IdentityValues out;
    out.lhs = hom_count(f, bipartite_double(g));
    int nv = f.num_vertices();
    if (nv > 20) throw Error(ErrorCode::SizeCap, "too many two-colourings to enumerate");
    for (unsigned mask = 0; mask < (1u << nv); ++mask) {
        std::vector<Side> s(nv);
        for (int v = 0; v < nv; ++v) s[v] = (mask >> v & 1u) ? Side::B : Side::A;
        out.rhs += hom_count(quotient(f, s), g);
    }
    return out;
}

}  // namespace symhom
