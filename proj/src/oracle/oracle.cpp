#include "symhom/oracle.hpp"

#include <algorithm>
#include <random>

namespace symhom {

WeightedHost::WeightedHost(int n_, int m_, const Rational& fill) : n(n_), m(m_) {
    if (n < 0 || m < 0) throw Error(ErrorCode::InvalidParameter, "host sides must be non-negative");
    w.assign(static_cast<std::size_t>(n) * m, fill);
}

Assignment WeightedHost::assignment() const {
    Assignment a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a["x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1)] = at(i, j);
    return a;
}

WeightedHost WeightedHost::from_assignment(int n, int m, const Assignment& a) {
    WeightedHost h(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            auto it = a.find("x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
            if (it != a.end()) h.at(i, j) = it->second;
        }
    }
    return h;
}

nlohmann::json WeightedHost::to_json() const {
    nlohmann::json weights = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            if (sgn(at(i, j)) != 0) weights.push_back({i + 1, j + 1, rational_to_json(at(i, j))});
        }
    }
    return {{"n", n}, {"m", m}, {"weights", weights}};
}

WeightedHost WeightedHost::from_json(const nlohmann::json& j) {
    try {
        WeightedHost h(j.at("n").get<int>(), j.at("m").get<int>());
        for (const auto& e : j.value("weights", nlohmann::json::array())) {
            int i = e.at(0).get<int>() - 1, k = e.at(1).get<int>() - 1;
            if (i < 0 || i >= h.n || k < 0 || k >= h.m) {
                throw Error(ErrorCode::IndexOutOfRange, "host weight index out of range");
            }
            h.at(i, k) = rational_from_json(e.at(2));
        }
        return h;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

std::vector<int> matrix_domain(const BipartiteMultigraph& f, int n, int m) {
    std::vector<int> d(f.num_vertices());
    for (int v = 0; v < f.num_vertices(); ++v) d[v] = f.side_of(v) == Side::A ? n : m;
    return d;
}

Rational hom_count(const BipartiteMultigraph& f, const WeightedHost& host, std::int64_t cap) {
    return hom_sum<Rational>(
        f, matrix_domain(f, host.n, host.m),
        [&](int, int i, int, int j) -> const Rational& { return host.at(i, j); }, cap);
}

SparsePolynomial hom_polynomial(const BipartiteMultigraph& f, int n, int m, std::int64_t cap) {
    std::vector<SparsePolynomial> vars(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            vars[static_cast<std::size_t>(i) * m + j] =
                SparsePolynomial::variable("x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    return hom_sum<SparsePolynomial>(
        f, matrix_domain(f, n, m),
        [&](int, int i, int, int j) -> const SparsePolynomial& { return vars[static_cast<std::size_t>(i) * m + j]; },
        cap);
}

Rational labelled_hom_eval(const LabelledPattern& p, const std::vector<int>& v, const std::vector<int>& w,
                           const WeightedHost& host, std::int64_t cap) {
    if (v.size() != p.a_labels.size() || w.size() != p.b_labels.size()) {
        throw Error(ErrorCode::ArityMismatch, "label tuple arity does not match the pattern");
    }
    const auto& f = p.graph;
    auto domain = matrix_domain(f, host.n, host.m);
    // Pinned vertices get a one-element domain; the weight lookup maps it back.
    std::vector<int> pinned(f.num_vertices(), -1);
    auto pin = [&](int global, int value, int limit) {
        if (value < 0 || value >= limit) throw Error(ErrorCode::IndexOutOfRange, "label value out of range");
        if (pinned[global] != -1 && pinned[global] != value) return false;
        pinned[global] = value;
        domain[global] = 1;
        return true;
    };
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!pin(f.global_id(Side::A, p.a_labels[k]), v[k], host.n)) return 0;
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (!pin(f.global_id(Side::B, p.b_labels[k]), w[k], host.m)) return 0;
    }
    return hom_sum<Rational>(
        f, domain,
        [&](int a, int i, int b, int j) -> const Rational& {
            if (pinned[a] != -1) i = pinned[a];
            if (pinned[b] != -1) j = pinned[b];
            return host.at(i, j);
        },
        cap);
}

Rational emb_eval(const BipartiteMultigraph& f, const WeightedHost& host, std::int64_t cap) {
    if (f.a_count() > host.n || f.b_count() > host.m) return 0;
    int nv = f.num_vertices();
    double maps = 1;
    for (int v = 0; v < nv; ++v) maps *= f.side_of(v) == Side::A ? host.n : host.m;
    if (maps > static_cast<double>(cap)) throw Error(ErrorCode::SizeCap, "brute-force map cap exceeded");
    std::vector<std::vector<std::pair<int, int>>> back(nv);
    for (const auto& [e, mult] : f.edges()) back[f.a_count() + e.second].push_back({e.first, mult});
    std::vector<int> h(nv);
    std::vector<char> used_a(host.n, 0), used_b(host.m, 0);
    Rational total = 0;
    auto rec = [&](auto&& self, int v, const Rational& partial) -> void {
        if (v == nv) {
            total += partial;
            return;
        }
        bool is_a = f.side_of(v) == Side::A;
        auto& used = is_a ? used_a : used_b;
        for (int x = 0; x < static_cast<int>(used.size()); ++x) {
            if (used[x]) continue;
            h[v] = x;
            Rational p = partial;
            for (const auto& [u, mult] : back[v]) p *= pow(host.at(h[u], x), mult);
            if (sgn(p) == 0) continue;
            used[x] = 1;
            self(self, v + 1, p);
            used[x] = 0;
        }
    };
    rec(rec, 0, Rational(1));
    return total;
}

namespace {

// Calls fn(block) for every set partition of [k], as a block index per element
// (restricted growth strings).
template <class Fn>
void for_each_partition(int k, Fn fn) {
    std::vector<int> block(k, 0);
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == k) {
            fn(block, used);
            return;
        }
        for (int b = 0; b <= used; ++b) {
            block[i] = b;
            self(self, i + 1, std::max(used, b + 1));
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

std::vector<BipartiteMultigraph> hom_to_emb_terms(const BipartiteMultigraph& f, int side_cap) {
    if (f.a_count() > side_cap || f.b_count() > side_cap) {
        throw Error(ErrorCode::SizeCap, "hom_to_emb_terms is capped at " + std::to_string(side_cap) + " per side");
    }
    std::vector<BipartiteMultigraph> out;
    for_each_partition(f.a_count(), [&](const std::vector<int>& pa, int na) {
        for_each_partition(f.b_count(), [&](const std::vector<int>& pb, int nb) {
            BipartiteMultigraph q(na, nb);
            for (const auto& [e, mult] : f.edges()) q.add_edge(pa[e.first], pb[e.second], mult);
            out.push_back(std::move(q));
        });
    });
    return out;
}

template <class W>
int ColouredGraphT<W>::colour_index(const std::string& name) const {
    auto it = std::find(colours.begin(), colours.end(), name);
    if (it == colours.end()) throw Error(ErrorCode::ColourMismatch, "unknown colour " + name);
    return static_cast<int>(it - colours.begin());
}

template <class W>
Block<W>& ColouredGraphT<W>::block(int row_colour, int col_colour) {
    auto key = std::make_pair(row_colour, col_colour);
    auto it = blocks.find(key);
    if (it == blocks.end()) {
        Block<W> b;
        b.rows = class_size.at(row_colour);
        b.cols = class_size.at(col_colour);
        b.data.assign(static_cast<std::size_t>(b.rows) * b.cols, W(0));
        it = blocks.emplace(key, std::move(b)).first;
    }
    return it->second;
}

template struct ColouredGraphT<Rational>;

nlohmann::json coloured_graph_to_json(const ColouredGraph& g) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& [key, b] : g.blocks) {
        nlohmann::json weights = nlohmann::json::array();
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < b.cols; ++j)
                if (sgn(b.at(i, j)) != 0) weights.push_back({i + 1, j + 1, rational_to_json(b.at(i, j))});
        blocks.push_back({{"row", g.colours[key.first]}, {"col", g.colours[key.second]}, {"weights", weights}});
    }
    return {{"colours", g.colours}, {"classSize", g.class_size}, {"blocks", blocks}};
}

ColouredGraph coloured_graph_from_json(const nlohmann::json& j) {
    try {
        ColouredGraph g;
        g.colours = j.at("colours").get<std::vector<std::string>>();
        g.class_size = j.at("classSize").get<std::vector<int>>();
        if (g.colours.size() != g.class_size.size()) {
            throw Error(ErrorCode::ParseError, "colours and classSize differ in length");
        }
        for (int s : g.class_size)
            if (s < 0) throw Error(ErrorCode::ParseError, "negative class size");
        for (const auto& bj : j.value("blocks", nlohmann::json::array())) {
            auto& b = g.block(g.colour_index(bj.at("row").get<std::string>()),
                              g.colour_index(bj.at("col").get<std::string>()));
            for (const auto& e : bj.at("weights")) {
                int i = e.at(0).get<int>() - 1, k = e.at(1).get<int>() - 1;
                if (i < 0 || i >= b.rows || k < 0 || k >= b.cols) {
                    throw Error(ErrorCode::IndexOutOfRange, "block weight index out of range");
                }
                b.at(i, k) = rational_from_json(e.at(2));
            }
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

ColouredGraph make_f_coloured(const BipartiteMultigraph& f, const std::vector<std::string>& colour_names, int n,
                              const std::function<Rational(int a, int i, int b, int j)>& weight) {
    if (static_cast<int>(colour_names.size()) != f.num_vertices()) {
        throw Error(ErrorCode::ColourMismatch, "one colour name per vertex is required");
    }
    ColouredGraph g;
    g.colours = colour_names;
    g.class_size.assign(f.num_vertices(), n);
    for (const auto& [e, mult] : f.edges()) {
        int a = e.first, b = f.a_count() + e.second;
        auto& blk = g.block(a, b);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) blk.at(i, j) = weight(a, i, b, j);
    }
    return g;
}

Rational coloured_hom_eval(const BipartiteMultigraph& f, const std::vector<int>& c, const ColouredGraph& g,
                           std::int64_t cap) {
    int nv = f.num_vertices();
    if (static_cast<int>(c.size()) != nv) throw Error(ErrorCode::ArityMismatch, "colouring must cover V(F)");
    std::vector<int> domain(nv);
    for (int v = 0; v < nv; ++v) {
        if (c[v] < 0 || c[v] >= static_cast<int>(g.colours.size())) {
            throw Error(ErrorCode::ColourMismatch, "colouring uses a colour outside G");
        }
        domain[v] = g.class_size[c[v]];
    }
    // Edges whose block is absent force the whole sum to zero.
    std::map<std::pair<int, int>, const Block<Rational>*> lookup;
    for (const auto& [e, mult] : f.edges()) {
        int a = e.first, b = f.a_count() + e.second;
        auto it = g.blocks.find({c[a], c[b]});
        if (it == g.blocks.end()) return 0;
        lookup[{a, b}] = &it->second;
    }
    return hom_sum<Rational>(
        f, domain, [&](int a, int i, int b, int j) -> const Rational& { return lookup.at({a, b})->at(i, j); }, cap);
}

Rational colhom_eval(const BipartiteMultigraph& f, const ColouredGraph& g, std::int64_t cap) {
    if (static_cast<int>(g.colours.size()) != f.num_vertices()) {
        throw Error(ErrorCode::ColourMismatch, "host must be coloured by V(F)");
    }
    std::vector<int> id(f.num_vertices());
    for (int v = 0; v < f.num_vertices(); ++v) id[v] = v;
    return coloured_hom_eval(f, id, g, cap);
}

WeightedHost flatten(const ColouredGraph& g) {
    int k = static_cast<int>(g.colours.size());
    if (k == 0) return WeightedHost(0, 0);
    int n = g.class_size[0];
    for (int s : g.class_size)
        if (s != n) throw Error(ErrorCode::InvalidParameter, "flatten needs uniform class sizes");
    WeightedHost h(k * n, k * n);
    for (const auto& [key, b] : g.blocks)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h.at(key.first * n + i, key.second * n + j) = b.at(i, j);
    return h;
}

HomBasisCertificate find_hom_basis(const std::vector<BipartiteMultigraph>& patterns, int size, std::uint64_t seed,
                                   int attempts) {
    if (size < 1) throw Error(ErrorCode::InvalidParameter, "basis size must be >= 1");
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto& f = patterns[i];
        if (!f.isolated_vertices().empty()) {
            throw Error(ErrorCode::InvalidParameter, "basis patterns must not have isolated vertices");
        }
        if (f.a_count() > size || f.b_count() > size) {
            throw Error(ErrorCode::InvalidParameter, "basis pattern exceeds the host size");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (are_isomorphic(patterns[j], f)) {
                throw Error(ErrorCode::NotPairwiseNonIsomorphic,
                            "patterns " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " are isomorphic");
            }
        }
    }
    std::size_t k = patterns.size();
    std::mt19937_64 rng(seed);
    int range = 3;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0 && attempt % 50 == 0) range *= 2;
        std::uniform_int_distribution<int> dist(0, range);
        HomBasisCertificate cert;
        cert.patterns = patterns;
        for (std::size_t j = 0; j < k; ++j) {
            WeightedHost h(size, size);
            for (auto& x : h.w) x = dist(rng);
            cert.points.push_back(std::move(h));
        }
        cert.matrix.assign(k, std::vector<Rational>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) cert.matrix[i][j] = hom_count(patterns[i], cert.points[j]);
        if (sgn(determinant(cert.matrix)) != 0) return cert;
    }
    throw Error(ErrorCode::BasisNotFound, "no invertible evaluation matrix after " + std::to_string(attempts) +
                                              " attempts");
}

bool hom_indistinguishable(const WeightedHost& g, const WeightedHost& h,
                           const std::vector<BipartiteMultigraph>& patterns) {
    for (const auto& f : patterns) {
        if (hom_count(f, g) != hom_count(f, h)) return false;
    }
    return true;
}

}  // namespace symhom
