#include <algorithm>

#include "symhom/suite.hpp"
#include "symhom/symmetry.hpp"

namespace symhom {

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    long p = num(rng);
    return make_rational(p, den(rng));
}

WeightedHost random_host(int n, int m, std::mt19937_64& rng) {
    WeightedHost h(n, m);
    for (auto& x : h.w) x = random_rational(rng);
    return h;
}

ColouredGraph random_coloured_host(const BipartiteMultigraph& f, int n, std::mt19937_64& rng) {
    return make_f_coloured(f, identity_colour_names(f), n, [&](int, int, int, int) { return random_rational(rng); });
}

ColouredGraph random_colour_set_host(int k, int n, std::mt19937_64& rng) {
    ColouredGraph g;
    for (int c = 0; c < k; ++c) g.colours.push_back("c" + std::to_string(c + 1));
    g.class_size.assign(k, n);
    for (int c = 0; c < k; ++c)
        for (int d = 0; d < k; ++d)
            for (auto& x : g.block(c, d).data) x = random_rational(rng);
    return g;
}

namespace {

// Index types: bit 0 = row index, bit 1 = column index.
struct Family {
    int type = 0;
    bool internal = false;
    int uses = 0;
    std::vector<GateId> gates;
};

int family_size(int type, int n, int m) { return (type & 1 ? n : 1) * (type & 2 ? m : 1); }

int gate_slot(int type, int i, int j, int m) {
    switch (type) {
        case 0: return 0;
        case 1: return i;
        case 2: return j;
        default: return i * m + j;
    }
}

struct ChildSpec {
    int family;
    int mult;
};

}  // namespace

Circuit random_symmetric_circuit(int n, int m, RandomCircuitMode mode, std::mt19937_64& rng, int max_gates) {
    CircuitBuilder b;
    std::vector<Family> families;
    Family vars;
    vars.type = 3;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) vars.gates.push_back(b.add_var(matrix_variable(i, j)));
    families.push_back(vars);
    Family consts;
    consts.gates.push_back(b.add_const(std::uniform_int_distribution<int>(2, 3)(rng)));
    families.push_back(consts);
    int budget = max_gates - n * m - 1;

    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<std::pair<int, std::vector<ChildSpec>>> specs;  // per family: kind (0 plus, 1 times), children

    auto build_family = [&](int type, bool times, const std::vector<ChildSpec>& children) {
        Family fam;
        fam.type = type;
        fam.internal = true;
        for (int t = 0; t < family_size(type, n, m); ++t) {
            int i = type == 3 ? t / m : (type == 1 ? t : 0);
            int j = type == 3 ? t % m : (type == 2 ? t : 0);
            std::vector<Wire> wires;
            for (const auto& ch : children) {
                const Family& f = families[ch.family];
                int extra = f.type & ~type;
                for (int i2 = 0; i2 < (extra & 1 ? n : 1); ++i2) {
                    for (int j2 = 0; j2 < (extra & 2 ? m : 1); ++j2) {
                        int ci = extra & 1 ? i2 : i, cj = extra & 2 ? j2 : j;
                        wires.push_back({f.gates[gate_slot(f.type, ci, cj, m)], ch.mult});
                    }
                }
            }
            fam.gates.push_back(b.add_internal(times ? GateKind::Times : GateKind::Plus, wires));
        }
        return fam;
    };

    while (true) {
        bool last = false;
        int type = pick(0, 3);
        if (budget - family_size(type, n, m) < 1) {
            type = 0;
            last = true;
        }
        bool times = pick(0, 1) == 1;
        std::vector<ChildSpec> children;
        bool duplicate = !specs.empty() && pick(0, 9) < 3;
        if (duplicate && !last && mode == RandomCircuitMode::Formula) {
            // Copy a whole unused subformula, internal descendants included.
            std::vector<int> roots;
            for (std::size_t f = 2; f < families.size(); ++f)
                if (families[f].uses == 0) roots.push_back(static_cast<int>(f));
            if (roots.empty()) continue;
            int src = roots[pick(0, static_cast<int>(roots.size()) - 1)];
            auto cost = [&](auto&& self, int f) -> int {
                int total = family_size(families[f].type, n, m);
                for (const auto& ch : specs[f - 2].second)
                    if (families[ch.family].internal) total += self(self, ch.family);
                return total;
            };
            if (cost(cost, src) >= budget) continue;
            auto clone = [&](auto&& self, int f) -> int {
                std::vector<ChildSpec> kids;
                for (const auto& ch : specs[f - 2].second)
                    kids.push_back({families[ch.family].internal ? self(self, ch.family) : ch.family, ch.mult});
                int type_f = families[f].type;
                bool times_f = specs[f - 2].first == 1;
                for (const auto& ch : kids)
                    if (families[ch.family].internal) ++families[ch.family].uses;
                families.push_back(build_family(type_f, times_f, kids));
                specs.push_back({times_f ? 1 : 0, kids});
                budget -= family_size(type_f, n, m);
                return static_cast<int>(families.size()) - 1;
            };
            clone(clone, src);
            continue;
        }
        if (duplicate && !last) {
            int src = pick(0, static_cast<int>(specs.size()) - 1);
            int fam_index = 2 + src;
            type = families[fam_index].type;
            times = specs[src].first == 1;
            children = specs[src].second;
        } else {
            int count = pick(1, 3);
            int internal_used = 0;
            for (int k = 0; k < count; ++k) {
                int f = pick(0, static_cast<int>(families.size()) - 1);
                Family& fam = families[f];
                int mult = mode == RandomCircuitMode::Formula ? 1 : pick(1, 2);
                if (mode == RandomCircuitMode::Formula) {
                    // Each child gate must end up with exactly one parent, and
                    // a repeated input would become a multiedge.
                    if (fam.internal && (fam.uses > 0 || (fam.type & type) != type)) continue;
                    bool repeated = false;
                    for (const auto& ch : children) repeated = repeated || ch.family == f;
                    if (repeated) continue;
                }
                if (mode == RandomCircuitMode::Skew && times && fam.internal) {
                    if (internal_used > 0 || (fam.type & ~type) != 0) continue;
                    mult = 1;
                    ++internal_used;
                }
                children.push_back({f, mult});
                if (fam.internal) ++fam.uses;
            }
            if (children.empty()) children.push_back({0, 1});
        }
        if (mode == RandomCircuitMode::Formula && last) {
            // The output collects every unused internal family.
            children.clear();
            for (std::size_t f = 2; f < families.size(); ++f)
                if (families[f].uses == 0) children.push_back({static_cast<int>(f), 1});
            if (children.empty()) children.push_back({0, 1});
        }
        if (mode == RandomCircuitMode::Skew && last && times) {
            std::vector<ChildSpec> kept;
            bool internal_taken = false;
            for (const auto& ch : children) {
                if (families[ch.family].internal) {
                    if (internal_taken || families[ch.family].type != 0) continue;
                    internal_taken = true;
                    kept.push_back({ch.family, 1});
                } else {
                    kept.push_back(ch);
                }
            }
            children = kept.empty() ? std::vector<ChildSpec>{{0, 1}} : kept;
        }
        families.push_back(build_family(type, times, children));
        specs.push_back({times ? 1 : 0, children});
        budget -= family_size(type, n, m);
        if (last) return b.build(families.back().gates[0]);
    }
}

}  // namespace symhom
