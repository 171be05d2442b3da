#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symhom/error.hpp"
#include "symhom/exactnum.hpp"
#include "symhom/pattern.hpp"

namespace symhom {

inline constexpr std::int64_t kBruteForceCap = 10'000'000;

// Dense weighted (n, m) host: w(i, j) is the value of x_{i,j}.
struct WeightedHost {
    int n = 0;
    int m = 0;
    std::vector<Rational> w;

    WeightedHost() = default;
    WeightedHost(int n_, int m_, const Rational& fill = 0);
    Rational& at(int i, int j) { return w[static_cast<std::size_t>(i) * m + j]; }
    const Rational& at(int i, int j) const { return w[static_cast<std::size_t>(i) * m + j]; }

    Assignment assignment() const;
    static WeightedHost from_assignment(int n, int m, const Assignment& a);
    nlohmann::json to_json() const;
    static WeightedHost from_json(const nlohmann::json& j);
};

namespace oracle_detail {
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const CheckedInt& q) { return q.value() == 0; }
inline bool is_zero(const SparsePolynomial& p) { return p.is_zero(); }
// Any other value type supplies its own is_zero() member.
template <class T>
bool is_zero(const T& x) {
    return x.is_zero();
}
template <class T>
T one() {
    if constexpr (std::is_same_v<T, SparsePolynomial>) {
        return SparsePolynomial::constant(1);
    } else {
        return T(1);
    }
}
}  // namespace oracle_detail

// Brute force over all maps h with h(v) in [domain[v]], vertices in global-id
// order and the last vertex varying fastest (row-major). weight(a, i, b, j)
// is the weight of edge ab (global ids) under h(a) = i, h(b) = j.
template <class T, class WeightFn>
T hom_sum(const BipartiteMultigraph& f, const std::vector<int>& domain, WeightFn weight,
          std::int64_t cap = kBruteForceCap) {
    int nv = f.num_vertices();
    double maps = 1;
    for (int v = 0; v < nv; ++v) maps *= domain[v];
    if (maps > static_cast<double>(cap)) throw Error(ErrorCode::SizeCap, "brute-force map cap exceeded");
    // Each edge is checked once its B endpoint (always the later id) is placed.
    std::vector<std::vector<std::pair<int, int>>> back(nv);
    for (const auto& [e, mult] : f.edges()) back[f.a_count() + e.second].push_back({e.first, mult});
    std::vector<int> h(nv, 0);
    T total{};
    auto rec = [&](auto&& self, int v, const T& partial) -> void {
        if (v == nv) {
            total = total + partial;
            return;
        }
        for (int x = 0; x < domain[v]; ++x) {
            h[v] = x;
            T p = partial;
            for (const auto& [u, mult] : back[v]) {
                T wv = weight(u, h[u], v, x);
                for (int k = 0; k < mult; ++k) p = p * wv;
            }
            if (oracle_detail::is_zero(p)) continue;
            self(self, v + 1, p);
        }
    };
    rec(rec, 0, oracle_detail::one<T>());
    return total;
}

std::vector<int> matrix_domain(const BipartiteMultigraph& f, int n, int m);

Rational hom_count(const BipartiteMultigraph& f, const WeightedHost& host, std::int64_t cap = kBruteForceCap);
SparsePolynomial hom_polynomial(const BipartiteMultigraph& f, int n, int m, std::int64_t cap = kBruteForceCap);

Rational labelled_hom_eval(const LabelledPattern& p, const std::vector<int>& v, const std::vector<int>& w,
                           const WeightedHost& host, std::int64_t cap = kBruteForceCap);
Rational emb_eval(const BipartiteMultigraph& f, const WeightedHost& host, std::int64_t cap = kBruteForceCap);
std::vector<BipartiteMultigraph> hom_to_emb_terms(const BipartiteMultigraph& f, int side_cap = 6);

template <class W>
struct Block {
    int rows = 0;
    int cols = 0;
    std::vector<W> data;
    W& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    const W& at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

// Coloured bipartite host. A-side vertices are pairs (colour, i) and B-side
// vertices pairs (colour', j); block (c, c') holds the weights between them.
// Missing blocks are zero.
template <class W>
struct ColouredGraphT {
    std::vector<std::string> colours;
    std::vector<int> class_size;
    std::map<std::pair<int, int>, Block<W>> blocks;

    int colour_index(const std::string& name) const;
    Block<W>& block(int row_colour, int col_colour);
};

using ColouredGraph = ColouredGraphT<Rational>;

nlohmann::json coloured_graph_to_json(const ColouredGraph& g);
ColouredGraph coloured_graph_from_json(const nlohmann::json& j);

// F-coloured host over the identity colouring (colour k is the vertex with
// global id k) with class size n; weight(a, i, b, j) fills the block of
// every edge ab of F.
ColouredGraph make_f_coloured(const BipartiteMultigraph& f, const std::vector<std::string>& colour_names, int n,
                              const std::function<Rational(int a, int i, int b, int j)>& weight);

// c maps global ids of F to colour indices of G.
Rational coloured_hom_eval(const BipartiteMultigraph& f, const std::vector<int>& c, const ColouredGraph& g,
                           std::int64_t cap = kBruteForceCap);
Rational colhom_eval(const BipartiteMultigraph& f, const ColouredGraph& g, std::int64_t cap = kBruteForceCap);
// The uncoloured (|C| n, |C| n) host behind a coloured graph with uniform class size.
WeightedHost flatten(const ColouredGraph& g);

struct HomBasisCertificate {
    std::vector<BipartiteMultigraph> patterns;
    std::vector<WeightedHost> points;
    RationalMatrix matrix;  // matrix[i][j] = hom_{F_i, N}(points[j])
};

HomBasisCertificate find_hom_basis(const std::vector<BipartiteMultigraph>& patterns, int size, std::uint64_t seed,
                                   int attempts = 200);
bool hom_indistinguishable(const WeightedHost& g, const WeightedHost& h,
                           const std::vector<BipartiteMultigraph>& patterns);

}  // namespace symhom
