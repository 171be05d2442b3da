#include <algorithm>
#include <functional>
#include <map>

#include "symhom/compile.hpp"
#include "symhom/symmetry.hpp"

namespace symhom {

namespace {

Integer int_pow(const Integer& base, int exponent) {
    Integer out = 1;
    for (int k = 0; k < exponent; ++k) out *= base;
    return out;
}

// Wire to the variable of edge (u, w), both global ids, with its multiplicity.
Wire edge_wire(CircuitBuilder& b, const BipartiteMultigraph& f, const Instantiation& inst, int u, int w,
               int value_u, int value_w) {
    if (f.side_of(u) == Side::B) {
        std::swap(u, w);
        std::swap(value_u, value_w);
    }
    int mult = f.multiplicity(f.local_index(u), f.local_index(w));
    return {b.add_var(inst.name(u, value_u, w, value_w)), mult};
}

// Mixed-radix enumeration of assignments to a bag.
std::vector<std::vector<int>> assignments(const std::vector<int>& bag, const Instantiation& inst) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(bag.size(), 0);
    for (int v : bag) {
        if (inst.domain[v] < 1) return out;
    }
    while (true) {
        out.push_back(cur);
        int p = static_cast<int>(bag.size()) - 1;
        while (p >= 0 && cur[p] == inst.domain[bag[p]] - 1) cur[p--] = 0;
        if (p < 0) break;
        ++cur[p];
    }
    return out;
}

std::vector<int> sorted_bag(std::vector<int> bag) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    return bag;
}

GateId import_circuit(CircuitBuilder& b, const Circuit& c) {
    std::vector<GateId> map(c.num_gates());
    for (std::size_t g = 0; g < c.num_gates(); ++g) {
        const Gate& gate = c.gates()[g];
        if (gate.kind == GateKind::Var) {
            map[g] = b.add_var(gate.var);
        } else if (gate.kind == GateKind::Const) {
            map[g] = b.add_const(gate.constant);
        } else {
            std::vector<Wire> children;
            for (const auto& w : gate.children) children.push_back({map[w.child], w.mult});
            map[g] = b.add_internal(gate.kind, children);
        }
    }
    return map[c.output()];
}

CircuitShape shape_for(CompileShape s) {
    switch (s) {
        case CompileShape::Td: return CircuitShape::FormulaMulti;
        case CompileShape::Pw: return CircuitShape::Skew;
        case CompileShape::Tw: return CircuitShape::General;
    }
    return CircuitShape::General;
}

CompileReport make_report(Circuit c, CircuitShape shape, ClaimedBounds bounds) {
    CompileReport r;
    r.depth = circuit_depth(c);
    r.sum_depth = circuit_sum_depth(c);
    r.circuit = std::move(c);
    r.shape = shape;
    r.claimed = std::move(bounds);
    return r;
}

}  // namespace

Instantiation matrix_instantiation(const BipartiteMultigraph& f, int n, int m) {
    if (n < 1 || m < 1) throw Error(ErrorCode::InvalidParameter, "n and m must be >= 1");
    Instantiation inst;
    for (int v = 0; v < f.num_vertices(); ++v) inst.domain.push_back(f.side_of(v) == Side::A ? n : m);
    inst.name = [](int, int i, int, int j) { return matrix_variable(i, j); };
    return inst;
}

std::string colourful_variable(const std::string& cu, int i, const std::string& cv, int j) {
    return "x_" + cu + "_" + std::to_string(i + 1) + "__" + cv + "_" + std::to_string(j + 1);
}

Instantiation colourful_instantiation(const BipartiteMultigraph& f, const std::vector<std::string>& colours,
                                      int n) {
    if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
    if (static_cast<int>(colours.size()) != f.num_vertices()) {
        throw Error(ErrorCode::InvalidParameter, "colouring must cover V(F)");
    }
    Instantiation inst;
    inst.domain.assign(f.num_vertices(), n);
    inst.name = [colours](int a, int i, int b, int j) { return colourful_variable(colours[a], i, colours[b], j); };
    return inst;
}

Circuit build_formula_td(const BipartiteMultigraph& f, const EliminationTree& t, const Instantiation& inst) {
    if (auto v = validate_decomposition(f, t); !v) throw Error(ErrorCode::InvalidEliminationTree, v.violation);
    int nv = f.num_vertices();
    auto deg = f.degrees();
    CircuitBuilder b;
    Rational factor = 1;
    for (int v = 0; v < nv; ++v) {
        if (deg[v] == 0) factor *= inst.domain[v];
    }
    // Skip isolated vertices: re-parent to the nearest non-isolated ancestor.
    std::vector<int> parent(nv, -1);
    for (int v = 0; v < nv; ++v) {
        int p = t.parent[v];
        while (p >= 0 && deg[p] == 0) p = t.parent[p];
        parent[v] = p;
    }
    std::vector<std::vector<int>> children(nv);
    std::vector<int> roots;
    for (int v = 0; v < nv; ++v) {
        if (deg[v] == 0) continue;
        (parent[v] < 0 ? roots : children[parent[v]]).push_back(v);
    }
    std::vector<std::vector<int>> adjacent_ancestors(nv);
    for (int v = 0; v < nv; ++v) {
        if (deg[v] == 0) continue;
        for (int p = parent[v]; p >= 0; p = parent[p]) {
            bool adjacent = f.side_of(v) != f.side_of(p) &&
                            (f.side_of(v) == Side::A ? f.multiplicity(f.local_index(v), f.local_index(p))
                                                     : f.multiplicity(f.local_index(p), f.local_index(v))) > 0;
            if (adjacent) adjacent_ancestors[v].push_back(p);
        }
    }
    GateId one = b.add_const(1);
    std::vector<int> gamma(nv, -1);
    auto tag = [&](GateId g, int ell) { return b.add_times({{g, 1}, {one, ell}}); };
    std::function<GateId(int)> build = [&](int u) {
        std::vector<Wire> sum;
        for (int h = 0; h < inst.domain[u]; ++h) {
            gamma[u] = h;
            std::vector<Wire> product;
            for (int w : adjacent_ancestors[u]) product.push_back(edge_wire(b, f, inst, u, w, h, gamma[w]));
            for (std::size_t k = 0; k < children[u].size(); ++k) {
                product.push_back({tag(build(children[u][k]), static_cast<int>(k) + 1), 1});
            }
            sum.push_back({b.add_times(product), 1});
        }
        gamma[u] = -1;
        return b.add_plus(sum);
    };
    GateId out;
    if (roots.empty()) {
        out = b.add_const(factor);
    } else {
        if (roots.size() == 1) {
            out = build(roots[0]);
        } else {
            std::vector<Wire> product;
            for (std::size_t k = 0; k < roots.size(); ++k) {
                product.push_back({tag(build(roots[k]), static_cast<int>(k) + 1), 1});
            }
            out = b.add_times(product);
        }
        if (factor != 1) out = b.add_times({{out, 1}, {b.add_const(factor), 1}});
    }
    return merge_equivalent_gates(b.build(out));
}

Circuit build_skew_pw(const BipartiteMultigraph& f, const PathDecomposition& p, const Instantiation& inst) {
    if (auto v = validate_decomposition(f, p); !v) throw Error(ErrorCode::InvalidDecomposition, v.violation);
    std::vector<std::vector<int>> bags;
    for (const auto& bag : p.bags) bags.push_back(sorted_bag(bag));
    int k = static_cast<int>(bags.size());
    // Each edge belongs to the deepest bag covering it.
    std::vector<std::vector<std::pair<int, int>>> own(k);
    for (const auto& [e, mult] : f.edges()) {
        int u = e.first, w = f.a_count() + e.second;
        for (int s = k - 1; s >= 0; --s) {
            if (std::binary_search(bags[s].begin(), bags[s].end(), u) &&
                std::binary_search(bags[s].begin(), bags[s].end(), w)) {
                own[s].emplace_back(u, w);
                break;
            }
        }
    }
    CircuitBuilder b;
    std::map<std::vector<int>, GateId> below;  // gates of bag s+1 keyed by assignment
    for (int s = k - 1; s >= 0; --s) {
        const auto& bag = bags[s];
        auto value_of = [&](const std::vector<int>& alpha, int v) {
            return alpha[std::lower_bound(bag.begin(), bag.end(), v) - bag.begin()];
        };
        // Group the child gates by their restriction to the shared vertices.
        std::map<std::vector<int>, std::vector<Wire>> groups;
        std::vector<int> shared_pos_child, shared_pos_here;
        if (s + 1 < k) {
            const auto& child = bags[s + 1];
            for (std::size_t q = 0; q < child.size(); ++q) {
                auto it = std::lower_bound(bag.begin(), bag.end(), child[q]);
                if (it != bag.end() && *it == child[q]) {
                    shared_pos_child.push_back(static_cast<int>(q));
                    shared_pos_here.push_back(static_cast<int>(it - bag.begin()));
                }
            }
            for (const auto& [alpha, g] : below) {
                std::vector<int> key;
                for (int q : shared_pos_child) key.push_back(alpha[q]);
                groups[key].push_back({g, 1});
            }
        }
        std::map<std::vector<int>, GateId> here;
        for (const auto& alpha : assignments(bag, inst)) {
            std::vector<Wire> product;
            if (s + 1 < k) {
                std::vector<int> key;
                for (int q : shared_pos_here) key.push_back(alpha[q]);
                product.push_back({b.add_plus(groups[key]), 1});
            }
            for (const auto& [u, w] : own[s]) {
                product.push_back(edge_wire(b, f, inst, u, w, value_of(alpha, u), value_of(alpha, w)));
            }
            here[alpha] = b.add_times(product);
        }
        below = std::move(here);
    }
    std::vector<Wire> top;
    for (const auto& [alpha, g] : below) top.push_back({g, 1});
    return merge_equivalent_gates(b.build(b.add_plus(top)));
}

Circuit build_circuit_tw(const BipartiteMultigraph& f, const TreeDecomposition& t, const Instantiation& inst) {
    if (auto v = validate_decomposition(f, t); !v) throw Error(ErrorCode::InvalidDecomposition, v.violation);
    int k = static_cast<int>(t.bags.size());
    std::vector<std::vector<int>> bags;
    for (const auto& bag : t.bags) bags.push_back(sorted_bag(bag));
    auto children = t.children();
    std::vector<int> depth(k, 0), order;
    std::function<void(int)> visit = [&](int s) {
        for (int c : children[s]) {
            depth[c] = depth[s] + 1;
            visit(c);
        }
        order.push_back(s);  // post-order
    };
    visit(t.root);
    // Each edge belongs to the topmost bag covering it.
    std::vector<std::vector<std::pair<int, int>>> own(k);
    for (const auto& [e, mult] : f.edges()) {
        int u = e.first, w = f.a_count() + e.second;
        int best = -1;
        for (int s = 0; s < k; ++s) {
            if (std::binary_search(bags[s].begin(), bags[s].end(), u) &&
                std::binary_search(bags[s].begin(), bags[s].end(), w) && (best < 0 || depth[s] < depth[best])) {
                best = s;
            }
        }
        own[best].emplace_back(u, w);
    }
    CircuitBuilder b;
    std::vector<std::map<std::vector<int>, GateId>> gates(k);
    for (int s : order) {
        const auto& bag = bags[s];
        auto value_of = [&](const std::vector<int>& alpha, int v) {
            return alpha[std::lower_bound(bag.begin(), bag.end(), v) - bag.begin()];
        };
        struct ChildSums {
            std::vector<int> here_pos;
            std::map<std::vector<int>, std::vector<Wire>> groups;
        };
        std::vector<ChildSums> sums;
        for (int c : children[s]) {
            ChildSums cs;
            std::vector<int> child_pos;
            for (std::size_t q = 0; q < bags[c].size(); ++q) {
                auto it = std::lower_bound(bag.begin(), bag.end(), bags[c][q]);
                if (it != bag.end() && *it == bags[c][q]) {
                    child_pos.push_back(static_cast<int>(q));
                    cs.here_pos.push_back(static_cast<int>(it - bag.begin()));
                }
            }
            for (const auto& [alpha, g] : gates[c]) {
                std::vector<int> key;
                for (int q : child_pos) key.push_back(alpha[q]);
                cs.groups[key].push_back({g, 1});
            }
            sums.push_back(std::move(cs));
        }
        for (const auto& alpha : assignments(bag, inst)) {
            std::vector<Wire> product;
            for (auto& cs : sums) {
                std::vector<int> key;
                for (int q : cs.here_pos) key.push_back(alpha[q]);
                product.push_back({b.add_plus(cs.groups[key]), 1});
            }
            for (const auto& [u, w] : own[s]) {
                product.push_back(edge_wire(b, f, inst, u, w, value_of(alpha, u), value_of(alpha, w)));
            }
            gates[s][alpha] = b.add_times(product);
        }
    }
    std::vector<Wire> top;
    for (const auto& [alpha, g] : gates[t.root]) top.push_back({g, 1});
    return merge_equivalent_gates(b.build(b.add_plus(top)));
}

CompileReport compile_formula_td(const BipartiteMultigraph& f, const EliminationTree& t, int n, int m) {
    Circuit c = build_formula_td(f, t, matrix_instantiation(f, n, m));
    int d = t.height();
    ClaimedBounds bounds;
    bounds.size_bound = int_pow(Integer(f.num_vertices()) * f.edge_count() * (n + m), d);
    bounds.orbit_bound = int_pow(Integer(n + m), d);
    bounds.support_bound = d;
    return make_report(std::move(c), CircuitShape::FormulaMulti, bounds);
}

CompileReport compile_skew_pw(const BipartiteMultigraph& f, const PathDecomposition& p, int n, int m) {
    Circuit c = build_skew_pw(f, p, matrix_instantiation(f, n, m));
    ClaimedBounds bounds;
    bounds.orbit_bound = int_pow(Integer(n + m), p.width() + 1);
    bounds.support_bound = p.width() + 1;
    return make_report(std::move(c), CircuitShape::Skew, bounds);
}

CompileReport compile_circuit_tw(const BipartiteMultigraph& f, const TreeDecomposition& t, int n, int m) {
    Circuit c = build_circuit_tw(f, t, matrix_instantiation(f, n, m));
    ClaimedBounds bounds;
    bounds.orbit_bound = int_pow(Integer(n + m), t.width() + 1);
    bounds.support_bound = t.width() + 1;
    return make_report(std::move(c), CircuitShape::General, bounds);
}

CompileShape compile_shape_from_name(const std::string& name) {
    if (name == "td") return CompileShape::Td;
    if (name == "pw") return CompileShape::Pw;
    if (name == "tw") return CompileShape::Tw;
    throw Error(ErrorCode::ParseError, "unknown compile shape " + name);
}

CompileReport compile_pattern(const BipartiteMultigraph& f, int n, int m, CompileShape shape) {
    switch (shape) {
        case CompileShape::Td: return compile_formula_td(f, treedepth_exact(f).tree, n, m);
        case CompileShape::Pw: return compile_skew_pw(f, pathwidth_exact(f).decomposition, n, m);
        case CompileShape::Tw: return compile_circuit_tw(f, treewidth_exact(f).decomposition, n, m);
    }
    throw Error(ErrorCode::InvalidParameter, "unknown shape");
}

CompileReport compile_lincomb(const std::vector<std::pair<Rational, BipartiteMultigraph>>& terms, int n, int m,
                              CompileShape shape) {
    CircuitBuilder b;
    GateId one = b.add_const(1);
    std::vector<Wire> sum;
    ClaimedBounds bounds;
    bounds.orbit_bound = 1;
    bounds.support_bound = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [alpha, f] = terms[i];
        if (alpha == 0) continue;
        CompileReport term = compile_pattern(f, n, m, shape);
        bounds.orbit_bound = std::max(bounds.orbit_bound, term.claimed.orbit_bound);
        bounds.support_bound = std::max(bounds.support_bound, term.claimed.support_bound);
        GateId g = import_circuit(b, term.circuit);
        // per-term tag 1^(i+1) keeps identical terms apart
        sum.push_back({b.add_times({{g, 1}, {b.add_const(alpha), 1}, {one, static_cast<int>(i) + 1}}), 1});
    }
    Circuit c = merge_equivalent_gates(b.build(b.add_plus(sum)));
    return make_report(std::move(c), shape_for(shape), bounds);
}

CompileReport compile_colourful(const BipartiteMultigraph& f, const std::vector<std::string>& colours, int n,
                                CompileShape shape) {
    Instantiation inst = colourful_instantiation(f, colours, n);
    Circuit c;
    switch (shape) {
        case CompileShape::Td: c = build_formula_td(f, treedepth_exact(f).tree, inst); break;
        case CompileShape::Pw: c = build_skew_pw(f, pathwidth_exact(f).decomposition, inst); break;
        case CompileShape::Tw: c = build_circuit_tw(f, treewidth_exact(f).decomposition, inst); break;
    }
    return make_report(std::move(c), shape_for(shape), ClaimedBounds{});
}

nlohmann::json CompileReport::summary_json() const {
    return {{"shape", shape_name(shape)},
            {"gates", circuit.num_gates()},
            {"size", circuit_size(circuit)},
            {"depth", depth},
            {"sumDepth", sum_depth},
            {"claimed",
             {{"sizeBound", claimed.size_bound.get_str()},
              {"orbitBound", claimed.orbit_bound.get_str()},
              {"supportBound", claimed.support_bound}}}};
}

}  // namespace symhom
