#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "symhom/exactnum.hpp"
#include "symhom/oracle.hpp"
#include "symhom/pattern.hpp"

namespace symhom {

// Evaluation handles for fixed polynomial family members. Any deterministic
// exact evaluator works: a compiled circuit, the brute-force oracle, etc.
using HostOracle = std::function<Rational(const WeightedHost&)>;
using ColouredOracle = std::function<Rational(const ColouredGraph&)>;

HostOracle brute_force_hom_oracle(const BipartiteMultigraph& f);

// ---- Hardness gadgets -----------------------------------------------------

// y is a 2n x 2n matrix; only entries y[u][v] with u < v are read.
ColouredGraph clique_grid_gadget(int n, const RationalMatrix& y);
Rational clique_polynomial(int n, const RationalMatrix& y);

// x has m^6 entries; y is an m^6 x m^6 matrix read at y[min][max].
ColouredGraph btree_vp_gadget(int m, const std::vector<Rational>& x, const RationalMatrix& y);
Rational btree_target(int m, const std::vector<Rational>& x, const RationalMatrix& y);

// x has m^2 entries; y is an m^2 x m^2 matrix read at y[min][max], u != v.
ColouredGraph path_vbp_gadget(int m, const std::vector<Rational>& x, const RationalMatrix& y);
Rational path_target(int m, const std::vector<Rational>& x, const RationalMatrix& y);

// y is an S-coloured host with class size n. The result is F'-coloured and
// satisfies colhom(F', result) = colhom(S, y).
ColouredGraph minor_gadget(const BipartiteMultigraph& s, const BipartiteMultigraph& f_prime,
                           const BranchSets& branch, int n, const ColouredGraph& y);

// ---- Identities -----------------------------------------------------------

struct IdentityValues {
    Rational lhs;
    Rational rhs;
    bool holds() const { return lhs == rhs; }
};

// hom(F, flatten(G)) against the sum over all colourings c: V(F) -> C.
IdentityValues uncolour_expand(const BipartiteMultigraph& f, const ColouredGraph& g);

ColouredGraph tensor_product(const ColouredGraph& g, const ColouredGraph& h);
// Uncoloured analogue: (n,m) x (n',m') -> (n n', m m').
WeightedHost tensor_product(const WeightedHost& g, const WeightedHost& h);

// Coefficient of t^k in the polynomial t -> value(t) of degree at most n_max,
// from the values at t = 0..n_max.
Rational interpolate_coefficient(const std::function<Rational(const Rational&)>& value, int n_max, int k);
ColouredGraph scaled(const ColouredGraph& g, const Rational& t);
Rational degree_slice(const ColouredOracle& p, int k, int n_max, const ColouredGraph& g);

struct CfiPair {
    BipartiteMultigraph base;
    ColouredGraph even;
    ColouredGraph odd;
};

CfiPair cfi_pair(const BipartiteMultigraph& s);
// Pads every colour class with zero-weight vertices up to `size`.
ColouredGraph pad_classes(const ColouredGraph& g, int size);

WeightedHost bipartite_double(const WeightedHost& g);
IdentityValues quotient_identity(const BipartiteMultigraph& f, const WeightedHost& g);

// ---- Extraction pipelines -------------------------------------------------

struct Extraction {
    int oracle_size = 0;      // host size the hom oracle is queried at
    Rational normalizer;      // the positive constant divided out at the end
    std::function<Rational(const ColouredGraph&)> evaluate;
};

// `hom_oracle` must evaluate hom_{F, oracle_size} with oracle_size as reported.
Extraction extract_colhom_via_subgraph(const BipartiteMultigraph& f, const BipartiteMultigraph& s, int n,
                                       const HostOracle& hom_oracle);
Extraction extract_colhom_via_minor(const BipartiteMultigraph& f, const BipartiteMultigraph& s, int n,
                                    const HostOracle& hom_oracle);
int subgraph_oracle_size(const BipartiteMultigraph& s, int n);
int minor_oracle_size(const BipartiteMultigraph& s, int n);

struct LincombExtraction {
    HomBasisCertificate basis;
    std::vector<Rational> beta;
    std::function<Rational(const WeightedHost&)> evaluate;
};

// `lincomb_oracle` evaluates sum_i alphas[i] hom_{patterns[i], n N}; ell is 0-based.
LincombExtraction extract_single_from_lincomb(const HostOracle& lincomb_oracle,
                                              const std::vector<BipartiteMultigraph>& patterns,
                                              const std::vector<Rational>& alphas, int ell, int basis_size,
                                              std::uint64_t seed);

}  // namespace symhom
