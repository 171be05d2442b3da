#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "symhom/compile.hpp"
#include "symhom/reduce.hpp"
#include "symhom/suite.hpp"
#include "symhom/symmetry.hpp"
#include "symhom/width.hpp"

namespace symhom {

namespace {

using nlohmann::json;

struct RunCaps {
    std::int64_t brute_force = kBruteForceCap;
    Caps pattern;
    SearchCaps search;
    int width_vertices = 14;
};

RunCaps load_caps(const std::string& path) {
    RunCaps caps;
    if (path.empty()) return caps;
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read caps file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("caps file: ") + e.what());
    }
    auto read = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        auto v = j.at(key).get<long long>();
        if (v <= 0) throw Error(ErrorCode::InvalidParameter, std::string("cap ") + key + " must be positive");
        field = static_cast<std::remove_reference_t<decltype(field)>>(v);
    };
    read("bruteForceMaps", caps.brute_force);
    read("isomorphismSide", caps.pattern.isomorphism_side);
    read("minorNorm", caps.pattern.minor_norm);
    read("minorNodes", caps.pattern.minor_nodes);
    read("automorphismNodes", caps.search.node_budget);
    read("pathBudget", caps.search.path_budget);
    read("supportSide", caps.search.support_side);
    read("widthVertices", caps.width_vertices);
    return caps;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

// Library parsers report malformed documents through nlohmann exceptions.
template <class T, class Parse>
T parse_file(const std::string& path, Parse parse) {
    json j = read_json(path);
    try {
        return parse(j);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

BipartiteMultigraph read_graph(const std::string& path) {
    return parse_file<BipartiteMultigraph>(path, [](const json& j) { return BipartiteMultigraph::from_json(j); });
}

RationalMatrix read_matrix(const std::string& path) {
    return parse_file<RationalMatrix>(path, [](const json& j) {
        RationalMatrix y;
        for (const auto& row : j) {
            y.emplace_back();
            for (const auto& x : row) y.back().push_back(rational_from_json(x));
        }
        return y;
    });
}

std::vector<Rational> read_vector(const std::string& path) {
    return parse_file<std::vector<Rational>>(path, [](const json& j) {
        std::vector<Rational> x;
        for (const auto& v : j) x.push_back(rational_from_json(v));
        return x;
    });
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParameter:
        case ErrorCode::MissingVariable:
        case ErrorCode::ParseError:
        case ErrorCode::ArityMismatch:
        case ErrorCode::IndexOutOfRange:
        case ErrorCode::InvalidDecomposition:
        case ErrorCode::InvalidEliminationTree:
        case ErrorCode::InvalidBranchSets:
        case ErrorCode::NotSquare:
        case ErrorCode::NotConnected:
        case ErrorCode::ColourMismatch:
            return 2;
        default:
            return 1;
    }
}

struct Globals {
    std::uint64_t seed = 1;
    std::string caps_path;
    bool json_out = false;
    bool dot = false;
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetric circuits for homomorphism polynomials"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "seed for every randomized step")->capture_default_str();
    app.add_option("--caps", g.caps_path, "JSON file overriding size caps");
    app.add_flag("--json", g.json_out, "machine-readable output");
    app.add_flag("--dot", g.dot, "emit circuits as Graphviz DOT");

    std::function<int()> action;
    RunCaps caps;

    // ---- pattern -------------------------------------------------------
    auto* pattern = app.add_subcommand("pattern", "generate and inspect patterns");
    pattern->require_subcommand(1);
    auto* gen = pattern->add_subcommand("gen", "generate a named pattern");
    std::string gen_kind;
    int gv = 0, rows = 0, cols = 0, k = 0, l = 0;
    gen->add_option("kind", gen_kind, "path|cycle|grid|btree|kbipartite|star")
        ->required()
        ->check(CLI::IsMember({"path", "cycle", "grid", "btree", "kbipartite", "star"}));
    gen->add_option("--v", gv, "vertices (path), length (cycle), leaves (btree, star)");
    gen->add_option("--rows", rows, "grid rows");
    gen->add_option("--cols", cols, "grid columns");
    gen->add_option("--k", k, "left side of K_{k,l}");
    gen->add_option("--l", l, "right side of K_{k,l}");
    gen->callback([&] {
        action = [&] {
            BipartiteMultigraph f;
            if (gen_kind == "path") f = make_path(gv);
            else if (gen_kind == "cycle") f = make_cycle(gv);
            else if (gen_kind == "grid") f = make_grid(rows, cols);
            else if (gen_kind == "btree") f = make_complete_binary_tree(gv);
            else if (gen_kind == "kbipartite") f = make_complete_bipartite(k, l);
            else f = make_star(gv);
            emit(out, f.to_json());
            return 0;
        };
    });
    auto* minor = pattern->add_subcommand("minor", "search for S as a minor of F");
    std::string minor_s, minor_f;
    minor->add_option("--s", minor_s, "minor graph")->required();
    minor->add_option("--f", minor_f, "host graph")->required();
    minor->callback([&] {
        action = [&] {
            auto branch = find_minor(read_graph(minor_s), read_graph(minor_f), caps.pattern);
            json j{{"minor", branch.has_value()}};
            if (branch) j["branchSets"] = branch->sets;
            emit(out, j);
            return 0;
        };
    });

    // ---- width ---------------------------------------------------------
    auto* width = app.add_subcommand("width", "exact treewidth, pathwidth or treedepth");
    std::string width_kind, width_graph;
    width->add_option("kind", width_kind, "tw|pw|td")->required()->check(CLI::IsMember({"tw", "pw", "td"}));
    width->add_option("--graph", width_graph, "pattern JSON")->required();
    width->callback([&] {
        action = [&] {
            auto f = read_graph(width_graph);
            WidthOptions options;
            options.vertex_cap = caps.width_vertices;
            json j{{"kind", width_kind}};
            if (width_kind == "tw") {
                auto r = treewidth_exact(f, options);
                j["value"] = r.width;
                j["certificate"] = r.decomposition.to_json();
            } else if (width_kind == "pw") {
                auto r = pathwidth_exact(f, options);
                j["value"] = r.width;
                j["certificate"] = r.decomposition.to_json();
            } else {
                auto r = treedepth_exact(f, options);
                j["value"] = r.depth;
                j["certificate"] = r.tree.to_json();
            }
            if (g.json_out) {
                emit(out, j);
            } else {
                out << width_kind << " = " << j["value"].get<int>() << "\n" << j["certificate"].dump() << "\n";
            }
            return 0;
        };
    });

    // ---- compile -------------------------------------------------------
    auto* compile = app.add_subcommand("compile", "compile hom_{F,n,m} into a symmetric circuit");
    std::string compile_graph, compile_shape = "tw", decomp_path, out_path;
    int cn = 1, cm = 1;
    compile->add_option("--graph", compile_graph, "pattern JSON")->required();
    compile->add_option("--shape", compile_shape, "td|pw|tw")->check(CLI::IsMember({"td", "pw", "tw"}));
    compile->add_option("--n", cn, "rows")->required()->check(CLI::PositiveNumber);
    compile->add_option("--m", cm, "columns")->required()->check(CLI::PositiveNumber);
    compile->add_option("--decomp", decomp_path, "decomposition JSON (otherwise an optimal one is computed)");
    compile->add_option("--out", out_path, "write the circuit JSON here");
    compile->callback([&] {
        action = [&] {
            auto f = read_graph(compile_graph);
            CompileReport rep;
            if (decomp_path.empty()) {
                rep = compile_pattern(f, cn, cm, compile_shape_from_name(compile_shape));
            } else if (compile_shape == "td") {
                auto t = parse_file<EliminationTree>(decomp_path, [](const json& j) { return EliminationTree::from_json(j); });
                rep = compile_formula_td(f, t, cn, cm);
            } else if (compile_shape == "pw") {
                auto p = parse_file<PathDecomposition>(decomp_path,
                                                       [](const json& j) { return PathDecomposition::from_json(j); });
                rep = compile_skew_pw(f, p, cn, cm);
            } else {
                auto t = parse_file<TreeDecomposition>(decomp_path,
                                                       [](const json& j) { return TreeDecomposition::from_json(j); });
                rep = compile_circuit_tw(f, t, cn, cm);
            }
            if (!out_path.empty()) {
                std::ofstream file(out_path);
                if (!file) throw Error(ErrorCode::ParseError, "cannot write " + out_path);
                file << circuit_to_json(rep.circuit).dump() << "\n";
            }
            if (g.dot) out << to_dot(rep.circuit);
            else if (!out_path.empty()) emit(out, rep.summary_json());
            else emit(out, circuit_to_json(rep.circuit));
            return 0;
        };
    });

    // ---- analyze -------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "orbit and support analysis of a symmetric circuit");
    std::string circuit_path;
    int an = 1, am = 1;
    bool do_rigidify = false;
    analyze->add_option("--circuit", circuit_path, "circuit JSON")->required();
    analyze->add_option("--n", an, "rows")->required()->check(CLI::PositiveNumber);
    analyze->add_option("--m", am, "columns")->required()->check(CLI::PositiveNumber);
    analyze->add_flag("--rigidify", do_rigidify, "rigidify before analysing");
    analyze->callback([&] {
        action = [&] {
            Circuit c = parse_file<Circuit>(circuit_path, [](const json& j) { return circuit_from_json(j); });
            if (!is_symmetric(c, an, am, caps.search))
                throw Error(ErrorCode::NotSymmetric, "circuit is not Sym_n x Sym_m symmetric");
            if (do_rigidify) c = rigidify(c, an, am, caps.search);
            SymmetryAnalysis analysis(c, an, am, caps.search);
            if (g.dot) out << to_dot(c);
            else emit(out, analysis.report().to_json());
            return 0;
        };
    });

    // ---- oracle --------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "brute-force hom, colhom and emb values");
    std::string oracle_kind, oracle_pattern, oracle_host;
    oracle->add_option("kind", oracle_kind, "hom|colhom|emb")->required()->check(CLI::IsMember({"hom", "colhom", "emb"}));
    oracle->add_option("--pattern", oracle_pattern, "pattern JSON")->required();
    oracle->add_option("--host", oracle_host, "host JSON (F-coloured for colhom)")->required();
    oracle->callback([&] {
        action = [&] {
            auto f = read_graph(oracle_pattern);
            Rational value;
            if (oracle_kind == "colhom") {
                auto h = parse_file<ColouredGraph>(oracle_host, [](const json& j) { return coloured_graph_from_json(j); });
                value = colhom_eval(f, h, caps.brute_force);
            } else {
                auto h = parse_file<WeightedHost>(oracle_host, [](const json& j) { return WeightedHost::from_json(j); });
                value = oracle_kind == "hom" ? hom_count(f, h, caps.brute_force) : emb_eval(f, h, caps.brute_force);
            }
            if (g.json_out) emit(out, json{{"kind", oracle_kind}, {"value", rational_to_json(value)}});
            else out << to_string(value) << "\n";
            return 0;
        };
    });

    // ---- reduce --------------------------------------------------------
    auto* reduce = app.add_subcommand("reduce", "hardness gadgets and extraction pipelines");
    reduce->require_subcommand(1);
    std::mt19937_64 rng;
    auto random_matrix = [&](int size) {
        RationalMatrix y(size, std::vector<Rational>(size));
        for (int u = 0; u < size; ++u)
            for (int v = u; v < size; ++v) y[u][v] = y[v][u] = random_rational(rng);
        return y;
    };
    auto check_output = [&](json j, const Rational& lhs, const Rational& rhs, const char* lhs_name,
                            const char* rhs_name) {
        j[lhs_name] = rational_to_json(lhs);
        j[rhs_name] = rational_to_json(rhs);
        j["holds"] = lhs == rhs;
        emit(out, j);
        return lhs == rhs ? 0 : 1;
    };

    auto* clique = reduce->add_subcommand("clique-grid", "grid gadget for clique_n");
    int clique_n = 1;
    std::string y_path, x_path;
    clique->add_option("--n", clique_n, "clique parameter")->required()->check(CLI::PositiveNumber);
    clique->add_option("--y", y_path, "2n x 2n matrix JSON (default: random from --seed)");
    clique->callback([&] {
        action = [&] {
            auto y = y_path.empty() ? random_matrix(2 * clique_n) : read_matrix(y_path);
            auto gadget = clique_grid_gadget(clique_n, y);
            auto grid = make_grid(clique_n, clique_n);
            return check_output({{"pattern", grid.to_json()}, {"gadget", coloured_graph_to_json(gadget)}},
                                colhom_eval(grid, gadget, caps.brute_force), clique_polynomial(clique_n, y), "colhom",
                                "clique");
        };
    });

    int gadget_m = 1;
    auto add_vector_gadget = [&](const char* name, const char* help, bool btree) {
        auto* sub = reduce->add_subcommand(name, help);
        sub->add_option("--m", gadget_m, "size parameter")->required()->check(CLI::PositiveNumber);
        sub->add_option("--x", x_path, "vector JSON (default: random)");
        sub->add_option("--y", y_path, "symmetric matrix JSON (default: random)");
        sub->callback([&, btree] {
            action = [&, btree] {
                int dom = 1;
                for (int e = 0; e < (btree ? 6 : 2); ++e) dom *= gadget_m;
                std::vector<Rational> x;
                if (x_path.empty()) {
                    for (int u = 0; u < dom; ++u) x.push_back(random_rational(rng));
                } else {
                    x = read_vector(x_path);
                }
                auto y = y_path.empty() ? random_matrix(dom) : read_matrix(y_path);
                auto pattern = btree ? make_complete_binary_tree(gadget_m) : make_path(gadget_m + 2);
                auto gadget = btree ? btree_vp_gadget(gadget_m, x, y) : path_vbp_gadget(gadget_m, x, y);
                Rational target = btree ? btree_target(gadget_m, x, y) : path_target(gadget_m, x, y);
                return check_output({{"pattern", pattern.to_json()}, {"gadget", coloured_graph_to_json(gadget)}},
                                    colhom_eval(pattern, gadget, caps.brute_force), target, "colhom", "target");
            };
        });
    };
    add_vector_gadget("btree", "binary-tree gadget", true);
    add_vector_gadget("path", "path gadget", false);

    std::string s_path, f_path, host_path;
    int rn = 1;
    auto* minor_gadget_cmd = reduce->add_subcommand("minor", "project colhom_S through a minor model in F");
    minor_gadget_cmd->add_option("--s", s_path, "minor S")->required();
    minor_gadget_cmd->add_option("--f", f_path, "host pattern F")->required();
    minor_gadget_cmd->add_option("--n", rn, "class size")->check(CLI::PositiveNumber);
    minor_gadget_cmd->add_option("--host", host_path, "S-coloured host JSON (default: random)");
    minor_gadget_cmd->callback([&] {
        action = [&] {
            auto s = read_graph(s_path);
            auto f = read_graph(f_path);
            auto branch = find_minor(s, f, caps.pattern);
            if (!branch) throw Error(ErrorCode::InvalidBranchSets, "S is not a minor of F");
            ColouredGraph y = host_path.empty() ? random_coloured_host(s, rn, rng)
                                                : parse_file<ColouredGraph>(host_path, [](const json& j) {
                                                      return coloured_graph_from_json(j);
                                                  });
            auto gadget = minor_gadget(s, f, *branch, rn, y);
            return check_output({{"branchSets", branch->sets}, {"gadget", coloured_graph_to_json(gadget)}},
                                colhom_eval(f, gadget, caps.brute_force), colhom_eval(s, y, caps.brute_force),
                                "colhomF", "colhomS");
        };
    });

    auto add_extraction = [&](const char* name, const char* help, bool via_minor) {
        auto* sub = reduce->add_subcommand(name, help);
        sub->add_option("--s", s_path, "target pattern S")->required();
        sub->add_option("--f", f_path, "oracle pattern F")->required();
        sub->add_option("--n", rn, "class size")->check(CLI::PositiveNumber);
        sub->add_option("--host", host_path, "S-coloured host JSON (default: random)");
        sub->callback([&, via_minor] {
            action = [&, via_minor] {
                auto s = read_graph(s_path);
                auto f = read_graph(f_path);
                auto oracle_fn = brute_force_hom_oracle(f);
                Extraction ex = via_minor ? extract_colhom_via_minor(f, s, rn, oracle_fn)
                                          : extract_colhom_via_subgraph(f, s, rn, oracle_fn);
                ColouredGraph y = host_path.empty() ? random_coloured_host(s, rn, rng)
                                                    : parse_file<ColouredGraph>(host_path, [](const json& j) {
                                                          return coloured_graph_from_json(j);
                                                      });
                return check_output({{"oracleSize", ex.oracle_size}, {"normalizer", rational_to_json(ex.normalizer)}},
                                    ex.evaluate(y), colhom_eval(s, y, caps.brute_force), "extracted", "colhom");
            };
        });
    };
    add_extraction("extract-subgraph", "colhom_S from hom_F oracle calls, S a subgraph of F", false);
    add_extraction("extract-minor", "colhom_S from hom_F oracle calls, S a minor of F", true);

    auto* lincomb = reduce->add_subcommand("extract-lincomb", "one hom term out of a linear combination");
    std::vector<std::string> lincomb_patterns, lincomb_alphas;
    int ell = 1, basis_size = 2;
    lincomb->add_option("--pattern", lincomb_patterns, "pattern JSON (repeat per term)")->required();
    lincomb->add_option("--alpha", lincomb_alphas, "coefficient per term, e.g. 2 or 1/3")->required();
    lincomb->add_option("--ell", ell, "1-based index of the term to extract")->check(CLI::PositiveNumber);
    lincomb->add_option("--size", basis_size, "interpolation host size N")->check(CLI::PositiveNumber);
    lincomb->add_option("--n", rn, "host size n")->check(CLI::PositiveNumber);
    lincomb->add_option("--host", host_path, "n x n host JSON (default: random)");
    lincomb->callback([&] {
        action = [&] {
            std::vector<BipartiteMultigraph> patterns;
            for (const auto& p : lincomb_patterns) patterns.push_back(read_graph(p));
            std::vector<Rational> alphas;
            for (const auto& a : lincomb_alphas) alphas.push_back(rational_from_json(json(a)));
            if (alphas.size() != patterns.size())
                throw Error(ErrorCode::ArityMismatch, "one --alpha per --pattern is required");
            HostOracle combined = [&](const WeightedHost& w) -> Rational {
                Rational total = 0;
                for (std::size_t i = 0; i < patterns.size(); ++i)
                    total += alphas[i] * hom_count(patterns[i], w, caps.brute_force);
                return total;
            };
            auto ex = extract_single_from_lincomb(combined, patterns, alphas, ell - 1, basis_size, g.seed);
            WeightedHost h = host_path.empty() ? random_host(rn, rn, rng)
                                               : parse_file<WeightedHost>(host_path, [](const json& j) {
                                                     return WeightedHost::from_json(j);
                                                 });
            json beta = json::array();
            for (const auto& b : ex.beta) beta.push_back(rational_to_json(b));
            return check_output({{"beta", beta}}, ex.evaluate(h),
                                hom_count(patterns.at(ell - 1), h, caps.brute_force), "extracted", "hom");
        };
    });

    // ---- verify --------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run identity checks");
    verify->require_subcommand(1);
    auto* identity = verify->add_subcommand("identity", "one named identity suite");
    std::string identity_name;
    int trials = 5;
    identity->add_option("--name", identity_name, "identity name")->required()->check(CLI::IsMember(identity_names()));
    identity->add_option("--trials", trials, "random hosts per case")->check(CLI::PositiveNumber);
    identity->callback([&] {
        action = [&] {
            SuiteOptions options{g.seed, trials};
            CheckResult r = verify_identity(identity_name, options);
            if (g.json_out) emit(out, suite_report({r}));
            else out << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.detail << "\n";
            return r.pass ? 0 : 1;
        };
    });

    // ---- suite ---------------------------------------------------------
    auto* suite = app.add_subcommand("suite", "acceptance suites with a JSON report");
    std::string suite_name = "all";
    suite->add_option("name", suite_name, "all|compile|symmetry|reductions|width")
        ->check(CLI::IsMember({"all", "compile", "symmetry", "reductions", "width"}));
    suite->add_option("--trials", trials, "random hosts per identity case")->check(CLI::PositiveNumber);
    suite->callback([&] {
        action = [&] {
            auto results = run_suite(suite_name, SuiteOptions{g.seed, trials});
            json report = suite_report(results);
            emit(out, report);
            return report["pass"].get<bool>() ? 0 : 1;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        caps = load_caps(g.caps_path);
        rng.seed(g.seed);
        return action ? action() : 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace symhom
