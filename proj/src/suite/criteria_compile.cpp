#include <string>
#include <vector>

#include "symhom/compile.hpp"
#include "symhom/symmetry.hpp"
#include "tally.hpp"

namespace symhom::suite_detail {

namespace {

// One int64 per 0/1 host, or a broadcast scalar. Values stay far below
// 2^63 for the pattern sizes swept here.
struct Lanes {
    std::vector<std::int64_t> v;
    std::int64_t s = 0;

    Lanes() = default;
    Lanes(std::int64_t x) : s(x) {}  // NOLINT(google-explicit-constructor)

    std::int64_t at(std::size_t k) const { return v.empty() ? s : v[k]; }
    bool is_zero() const {
        if (v.empty()) return s == 0;
        for (auto x : v)
            if (x != 0) return false;
        return true;
    }
    template <class Op>
    static Lanes combine(const Lanes& x, const Lanes& y, Op op) {
        if (x.v.empty() && y.v.empty()) return Lanes(op(x.s, y.s));
        std::size_t width = x.v.empty() ? y.v.size() : x.v.size();
        Lanes out;
        out.v.resize(width);
        for (std::size_t k = 0; k < width; ++k) out.v[k] = op(x.at(k), y.at(k));
        return out;
    }
    friend Lanes operator+(const Lanes& x, const Lanes& y) {
        return combine(x, y, [](std::int64_t p, std::int64_t q) { return p + q; });
    }
    friend Lanes operator*(const Lanes& x, const Lanes& y) {
        return combine(x, y, [](std::int64_t p, std::int64_t q) { return p * q; });
    }
};

bool same_lanes(const Lanes& x, const Lanes& y, std::size_t width) {
    for (std::size_t k = 0; k < width; ++k)
        if (x.at(k) != y.at(k)) return false;
    return true;
}

// Lane k of entry (i, j) is bit i*m+j of k: all 2^(nm) 0/1 hosts at once.
std::vector<Lanes> boolean_sweep(int n, int m) {
    std::size_t width = std::size_t{1} << (n * m);
    std::vector<Lanes> entries(n * m);
    for (int e = 0; e < n * m; ++e) {
        entries[e].v.resize(width);
        for (std::size_t k = 0; k < width; ++k) entries[e].v[k] = (k >> e) & 1;
    }
    return entries;
}

bool integral_constants(const Circuit& c) {
    for (const auto& g : c.gates())
        if (g.kind == GateKind::Const && (g.constant.get_den() != 1 || !g.constant.get_num().fits_slong_p()))
            return false;
    return true;
}

Lanes evaluate_lanes(const Circuit& c, const std::vector<Lanes>& entries, int m) {
    std::vector<Lanes> values;
    for (const auto& name : c.variables()) {
        int i = 0, j = 0;
        if (!parse_matrix_variable(name, i, j)) throw Error(ErrorCode::MissingVariable, "not a matrix variable: " + name);
        values.push_back(entries[i * m + j]);
    }
    return evaluate_output<Lanes>(c, values, [](const Rational& q) { return Lanes(q.get_num().get_si()); });
}

// Per-lane fallback for circuits with fractional constants.
bool matches_on_sweep(const Circuit& c, const Lanes& expected, int n, int m) {
    std::size_t width = std::size_t{1} << (n * m);
    for (std::size_t k = 0; k < width; ++k) {
        WeightedHost h(n, m);
        for (int e = 0; e < n * m; ++e) h.w[e] = static_cast<long>((k >> e) & 1);
        if (evaluate(c, h.assignment()) != Rational(static_cast<long>(expected.at(k)))) return false;
    }
    return true;
}

std::string describe(const BipartiteMultigraph& f) { return f.to_json().dump(); }

const CompileShape kShapes[] = {CompileShape::Td, CompileShape::Pw, CompileShape::Tw};
const char* kShapeNames[] = {"td", "pw", "tw"};

Integer power(const Integer& base, int e) {
    Integer r = 1;
    for (int k = 0; k < e; ++k) r *= base;
    return r;
}

}  // namespace

CheckResult criterion_compiler_correctness(const SuiteOptions& options) {
    Tally tally;
    auto rng = stream(options.seed, "criterion-01");
    int patterns = 0;
    for (int a = 0; a <= 6; ++a) {
        for (int b = 0; a + b <= 6; ++b) {
            if (a + b == 0 || a * b > 8) continue;
            for (const auto& f : enumerate_bipartite(a, b, 2)) {
                ++patterns;
                for (int n = 1; n <= 3; ++n) {
                    for (int m = 1; m <= 3; ++m) {
                        auto entries = boolean_sweep(n, m);
                        std::size_t width = std::size_t{1} << (n * m);
                        Lanes expected = hom_sum<Lanes>(f, matrix_domain(f, n, m),
                                                        [&](int, int i, int, int j) { return entries[i * m + j]; });
                        std::vector<WeightedHost> hosts;
                        std::vector<Rational> oracle;
                        for (int t = 0; t < options.trials; ++t) {
                            hosts.push_back(random_host(n, m, rng));
                            oracle.push_back(hom_count(f, hosts.back()));
                        }
                        for (int s = 0; s < 3; ++s) {
                            auto where = [&] {
                                return std::string(kShapeNames[s]) + " n=" + std::to_string(n) +
                                       " m=" + std::to_string(m) + " F=" + describe(f);
                            };
                            CompileReport rep = compile_pattern(f, n, m, kShapes[s]);
                            bool sweep_ok = integral_constants(rep.circuit)
                                                ? same_lanes(evaluate_lanes(rep.circuit, entries, m), expected, width)
                                                : matches_on_sweep(rep.circuit, expected, n, m);
                            tally.expect(sweep_ok, [&] { return "0/1 sweep mismatch, " + where(); });
                            for (std::size_t t = 0; t < hosts.size(); ++t) {
                                tally.expect(evaluate(rep.circuit, hosts[t].assignment()) == oracle[t],
                                             [&] { return "random host mismatch, " + where(); });
                            }
                        }
                    }
                }
            }
        }
    }
    return tally.result("criterion-01", std::to_string(patterns) + " patterns");
}

namespace {

struct NamedPattern {
    std::string name;
    BipartiteMultigraph graph;
};

std::vector<NamedPattern> shape_patterns() {
    std::vector<NamedPattern> out;
    for (int v = 2; v <= 6; ++v) out.push_back({"P" + std::to_string(v), make_path(v)});
    for (int k = 1; k <= 4; ++k) out.push_back({"star" + std::to_string(k), make_star(k)});
    out.push_back({"C4", make_cycle(4)});
    out.push_back({"K22", make_complete_bipartite(2, 2)});
    out.push_back({"B3", make_complete_binary_tree(3)});
    out.push_back({"B4", make_complete_binary_tree(4)});
    return out;
}

}  // namespace

CheckResult criterion_shape_and_symmetry(const SuiteOptions&) {
    Tally tally;
    int circuits = 0;
    for (const auto& [name, f] : shape_patterns()) {
        int d = treedepth_exact(f).depth;
        int pw = pathwidth_exact(f).width;
        int nv = f.num_vertices(), ne = f.edge_count();
        for (int n = 2; n <= 4; ++n) {
            for (int s = 0; s < 3; ++s) {
                ++circuits;
                std::string where = std::string(kShapeNames[s]) + " " + name + " n=m=" + std::to_string(n);
                CompileReport rep = compile_pattern(f, n, n, kShapes[s]);
                auto v = validate(rep.circuit, rep.shape);
                tally.expect(v.ok, [&] { return where + " fails " + shape_name(rep.shape) + ": " + v.violation; });
                tally.expect(is_symmetric(rep.circuit, n, n), [&] { return where + " is not symmetric"; });
                if (kShapes[s] == CompileShape::Td) {
                    Integer bound = power(Integer(nv * ne * 2 * n), d);
                    tally.expect(Integer(static_cast<long>(circuit_size(rep.circuit))) <= bound,
                                 [&] { return where + " exceeds the size bound"; });
                    SymmetryAnalysis analysis(rep.circuit, n, n);
                    tally.expect(analysis.max_support() <= d, [&] {
                        return where + " maxSup " + std::to_string(analysis.max_support()) + " > " + std::to_string(d);
                    });
                } else if (kShapes[s] == CompileShape::Pw) {
                    SymmetryAnalysis analysis(rep.circuit, n, n);
                    Integer bound = power(Integer(2 * n), pw + 1);
                    tally.expect(Integer(static_cast<long>(analysis.max_orbit())) <= bound,
                                 [&] { return where + " exceeds the orbit bound"; });
                }
            }
        }
    }
    return tally.result("criterion-02", std::to_string(circuits) + " circuits");
}

CheckResult criterion_rigidification(const SuiteOptions& options) {
    Tally tally;
    auto rng = stream(options.seed, "criterion-03");
    const RandomCircuitMode modes[] = {RandomCircuitMode::General, RandomCircuitMode::Skew,
                                       RandomCircuitMode::Formula};
    int count = 240, non_rigid = 0, skew = 0, formulas = 0;
    for (int k = 0; k < count; ++k) {
        int n = 2 + (k / 3) % 2;
        Circuit c = random_symmetric_circuit(n, n, modes[k % 3], rng);
        std::string where = "circuit " + std::to_string(k);
        tally.expect(is_symmetric(c, n, n), [&] { return where + " was generated asymmetric"; });
        if (!is_rigid(c)) ++non_rigid;
        bool was_skew = validate(c, CircuitShape::Skew).ok;
        bool was_formula = validate(c, CircuitShape::Formula).ok;
        skew += was_skew;
        formulas += was_formula;
        Circuit r = rigidify(c, n, n);
        tally.expect(!AutomorphismSearch(r).nontrivial_input_fixing().has_value(),
                     [&] { return where + " is not rigid after rigidify"; });
        for (int t = 0; t < 10; ++t) {
            Assignment a = random_host(n, n, rng).assignment();
            tally.expect(evaluate(c, a) == evaluate(r, a), [&] { return where + " changed its value"; });
        }
        tally.expect(circuit_size(r) <= circuit_size(c), [&] { return where + " grew"; });
        if (was_skew) tally.expect(validate(r, CircuitShape::Skew).ok, [&] { return where + " lost skewness"; });
        if (was_formula)
            tally.expect(validate(r, CircuitShape::FormulaMulti).ok, [&] { return where + " is no longer a formula"; });
    }
    return tally.result("criterion-03", std::to_string(count) + " circuits, " + std::to_string(non_rigid) +
                                           " initially non-rigid, " + std::to_string(skew) + " skew, " +
                                           std::to_string(formulas) + " formulas");
}

CheckResult criterion_support_depth(const SuiteOptions&) {
    Tally tally;
    const int n = 8;
    int applicable = 0, total = 0;
    for (int a = 0; a <= 6; ++a) {
        for (int b = 0; a + b <= 6; ++b) {
            if (a + b == 0) continue;
            for (const auto& f : enumerate_bipartite(a, b, 1)) {
                ++total;
                CompileReport rep = compile_pattern(f, n, n, CompileShape::Td);
                SymmetryAnalysis analysis(rep.circuit, n, n);
                if (analysis.max_support() > n / 2) continue;
                ++applicable;
                std::string where = "F=" + describe(f);
                try {
                    int d = analysis.support_depth();
                    Integer lhs = Integer(static_cast<long>(analysis.max_orbit())) * power(Integer(2), d);
                    tally.expect(lhs >= power(Integer(n), d), [&] {
                        return where + " maxOrb " + std::to_string(analysis.max_orbit()) + " with depth " +
                               std::to_string(d);
                    });
                } catch (const Error& e) {
                    tally.expect(false, [&] { return where + " " + e.what(); });
                }
            }
        }
    }
    return tally.result("criterion-04", std::to_string(applicable) + " of " + std::to_string(total) +
                                           " formulas with maxSup <= 4");
}

}  // namespace symhom::suite_detail
