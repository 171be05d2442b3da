#include <algorithm>
#include <cmath>

#include "symhom/reduce.hpp"

namespace symhom {

namespace {

struct CfiSetup {
    int classes = 0;  // padded CFI class size 2^(d-1)
    ColouredGraph even;
    ColouredGraph odd;
    std::vector<int> identity;
};

CfiSetup prepare_cfi(const BipartiteMultigraph& s, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
    if (s.edge_count() == 0) throw Error(ErrorCode::InvalidParameter, "S must have at least one edge");
    auto pair = cfi_pair(s);
    auto deg = s.degrees();
    int d = *std::max_element(deg.begin(), deg.end());
    CfiSetup out;
    out.classes = 1 << (d - 1);
    out.even = pad_classes(pair.even, out.classes);
    out.odd = pad_classes(pair.odd, out.classes);
    for (int v = 0; v < s.num_vertices(); ++v) out.identity.push_back(v);
    return out;
}

// Enumerates sub-multigraphs F' of F on the same vertex set, weighted by the
// number of edge subsets of F that produce them.
template <class Fn>
void for_each_subgraph(const BipartiteMultigraph& f, Fn fn) {
    std::vector<std::pair<std::pair<int, int>, int>> edges(f.edges().begin(), f.edges().end());
    std::vector<int> take(edges.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, const Integer& weight) -> void {
        if (i == edges.size()) {
            BipartiteMultigraph sub(f.a_count(), f.b_count());
            for (std::size_t k = 0; k < edges.size(); ++k)
                if (take[k] > 0) sub.add_edge(edges[k].first.first, edges[k].first.second, take[k]);
            fn(sub, weight);
            return;
        }
        Integer binom = 1;
        for (int t = 0; t <= edges[i].second; ++t) {
            take[i] = t;
            self(self, i + 1, weight * binom);
            binom = binom * (edges[i].second - t) / (t + 1);
        }
    };
    rec(rec, 0, Integer(1));
}

// Contribution of one coloured term Q (with colouring c into V(S)) to the
// normalizer: n^{#isolated} times the CFI count difference, when the
// non-isolated part of (Q, c) is a coloured copy of (S, id); zero otherwise.
Rational term_weight(const BipartiteMultigraph& q, const std::vector<int>& c, const BipartiteMultigraph& s,
                     const CfiSetup& cfi, int n) {
    auto deg = q.degrees();
    std::vector<int> keep_a, keep_b;
    for (int v = 0; v < q.num_vertices(); ++v) {
        if (deg[v] == 0) continue;
        (q.side_of(v) == Side::A ? keep_a : keep_b).push_back(v);
    }
    if (static_cast<int>(keep_a.size()) != s.a_count() || static_cast<int>(keep_b.size()) != s.b_count()) return 0;
    BipartiteMultigraph core(s.a_count(), s.b_count());
    std::vector<int> pos(q.num_vertices(), -1), colours;
    for (std::size_t k = 0; k < keep_a.size(); ++k) pos[keep_a[k]] = static_cast<int>(k);
    for (std::size_t k = 0; k < keep_b.size(); ++k) pos[keep_b[k]] = static_cast<int>(k);
    for (const auto& [e, mult] : q.edges()) core.add_edge(pos[e.first], pos[q.a_count() + e.second], mult);
    for (int v : keep_a) colours.push_back(c[v]);
    for (int v : keep_b) colours.push_back(c[v]);
    if (!are_isomorphic_coloured(core, colours, s, cfi.identity)) return 0;
    int isolated = q.num_vertices() - static_cast<int>(keep_a.size() + keep_b.size());
    Rational diff = coloured_hom_eval(q, c, cfi.even) - coloured_hom_eval(q, c, cfi.odd);
    return pow(Rational(n), isolated) * diff;
}

// Sum of term_weight over all colourings c: V(Q) -> V(S).
Rational colouring_sum(const BipartiteMultigraph& q, const BipartiteMultigraph& s, const CfiSetup& cfi, int n) {
    int nv = q.num_vertices(), k = s.num_vertices();
    if (std::pow(static_cast<double>(k), nv) > 1e6) throw Error(ErrorCode::SizeCap, "too many colourings");
    Rational total = 0;
    std::vector<int> c(nv, 0);
    while (true) {
        total += term_weight(q, c, s, cfi, n);
        int v = 0;
        while (v < nv && ++c[v] == k) c[v++] = 0;
        if (v == nv) break;
    }
    return total;
}

WeightedHost shifted(const WeightedHost& w, const Rational& t) {
    WeightedHost out = w;
    for (auto& x : out.w) x = 1 + t * x;
    return out;
}

void check_s_host(const BipartiteMultigraph& s, int n, const ColouredGraph& g) {
    if (static_cast<int>(g.colours.size()) != s.num_vertices()) {
        throw Error(ErrorCode::ColourMismatch, "host must be coloured by V(S)");
    }
    for (int c : g.class_size)
        if (c != n) throw Error(ErrorCode::ColourMismatch, "host must have class size n");
}

}  // namespace

int subgraph_oracle_size(const BipartiteMultigraph& s, int n) {
    auto deg = s.degrees();
    int d = deg.empty() ? 1 : std::max(1, *std::max_element(deg.begin(), deg.end()));
    return (1 << (d - 1)) * s.num_vertices() * n;
}

int minor_oracle_size(const BipartiteMultigraph& s, int n) { return 2 * subgraph_oracle_size(s, n); }

Extraction extract_colhom_via_subgraph(const BipartiteMultigraph& f, const BipartiteMultigraph& s, int n,
                                       const HostOracle& hom_oracle) {
    auto cfi = prepare_cfi(s, n);
    Extraction ex;
    ex.oracle_size = subgraph_oracle_size(s, n);
    int target = s.edge_count();
    ex.normalizer = 0;
    for_each_subgraph(f, [&](const BipartiteMultigraph& sub, const Integer& weight) {
        if (sub.edge_count() != target) return;
        ex.normalizer += Rational(weight) * colouring_sum(sub, s, cfi, n);
    });
    if (sgn(ex.normalizer) == 0) {
        throw Error(ErrorCode::ZeroNormalizer, "S does not occur as a subgraph of F");
    }
    int max_edges = f.edge_count();
    Rational z = ex.normalizer;
    ex.evaluate = [=](const ColouredGraph& g) -> Rational {
        check_s_host(s, n, g);
        Rational diff = 0;
        for (int b = 0; b < 2; ++b) {
            auto w = flatten(tensor_product(g, b == 0 ? cfi.even : cfi.odd));
            Rational slice = interpolate_coefficient(
                [&](const Rational& t) { return hom_oracle(shifted(w, t)); }, max_edges, target);
            diff += b == 0 ? slice : -slice;
        }
        return diff / z;
    };
    return ex;
}

Extraction extract_colhom_via_minor(const BipartiteMultigraph& f, const BipartiteMultigraph& s, int n,
                                    const HostOracle& hom_oracle) {
    auto cfi = prepare_cfi(s, n);
    Extraction ex;
    ex.oracle_size = minor_oracle_size(s, n);
    int target = s.edge_count();
    int nv = f.num_vertices();
    if (nv > 16) throw Error(ErrorCode::SizeCap, "too many two-colourings to enumerate");
    ex.normalizer = 0;
    for_each_subgraph(f, [&](const BipartiteMultigraph& sub, const Integer& weight) {
        for (unsigned mask = 0; mask < (1u << nv); ++mask) {
            std::vector<Side> side(nv);
            for (int v = 0; v < nv; ++v) side[v] = (mask >> v & 1u) ? Side::B : Side::A;
            auto q = quotient(sub, side);
            if (q.edge_count() != target) continue;
            ex.normalizer += Rational(weight) * colouring_sum(q, s, cfi, n);
        }
    });
    if (sgn(ex.normalizer) == 0) {
        throw Error(ErrorCode::ZeroNormalizer, "S does not occur as a minor of F");
    }
    int max_edges = f.edge_count();
    Rational z = ex.normalizer;
    ex.evaluate = [=](const ColouredGraph& g) -> Rational {
        check_s_host(s, n, g);
        Rational diff = 0;
        for (int b = 0; b < 2; ++b) {
            auto w = flatten(tensor_product(g, b == 0 ? cfi.even : cfi.odd));
            Rational slice = interpolate_coefficient(
                [&](const Rational& t) {
                    WeightedHost scaled_w = w;
                    for (auto& x : scaled_w.w) x *= t;
                    auto doubled = bipartite_double(scaled_w);
                    for (auto& x : doubled.w) x += 1;
                    return hom_oracle(doubled);
                },
                max_edges, target);
            diff += b == 0 ? slice : -slice;
        }
        return diff / z;
    };
    return ex;
}

LincombExtraction extract_single_from_lincomb(const HostOracle& lincomb_oracle,
                                              const std::vector<BipartiteMultigraph>& patterns,
                                              const std::vector<Rational>& alphas, int ell, int basis_size,
                                              std::uint64_t seed) {
    if (patterns.size() != alphas.size()) {
        throw Error(ErrorCode::ArityMismatch, "one coefficient per pattern is required");
    }
    if (ell < 0 || ell >= static_cast<int>(patterns.size())) {
        throw Error(ErrorCode::IndexOutOfRange, "pattern index out of range");
    }
    if (sgn(alphas[ell]) == 0) throw Error(ErrorCode::ZeroCoefficient, "the extracted term has coefficient 0");
    LincombExtraction ex;
    ex.basis = find_hom_basis(patterns, basis_size, seed);
    std::vector<Rational> unit(patterns.size(), 0);
    unit[ell] = 1;
    auto beta = solve_linear_system(ex.basis.matrix, unit);
    if (!beta) throw Error(ErrorCode::BasisNotFound, "evaluation matrix is singular");
    ex.beta = *beta;
    auto points = ex.basis.points;
    auto coeffs = ex.beta;
    Rational alpha = alphas[ell];
    ex.evaluate = [=](const WeightedHost& g) -> Rational {
        Rational total = 0;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (sgn(coeffs[j]) == 0) continue;
            total += coeffs[j] * lincomb_oracle(tensor_product(g, points[j]));
        }
        return total / alpha;
    };
    return ex;
}

}  // namespace symhom
