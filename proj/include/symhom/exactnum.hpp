#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace symhom {

// Exact rationals; gmp keeps them canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

using Assignment = std::map<std::string, Rational>;

Rational make_rational(const std::string& num, const std::string& den = "1");
Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& q);

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

Rational pow(const Rational& base, unsigned long exponent);

using Exponents = std::vector<std::uint32_t>;

class SparsePolynomial {
public:
    SparsePolynomial() = default;

    static SparsePolynomial constant(const Rational& c);
    static SparsePolynomial variable(const std::string& name);
    // Builds a polynomial from an arbitrary (unsorted, possibly duplicated)
    // variable list; terms with equal exponents are summed, zeros dropped.
    static SparsePolynomial from_terms(std::vector<std::string> vars,
                                       const std::vector<std::pair<Exponents, Rational>>& terms);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    unsigned degree() const;

    // Re-expresses the polynomial over a superset of its variables.
    SparsePolynomial aligned(const std::vector<std::string>& universe) const;
    // Drops variables that occur in no term.
    SparsePolynomial trimmed() const;

    SparsePolynomial operator+(const SparsePolynomial& other) const;
    SparsePolynomial operator-(const SparsePolynomial& other) const;
    SparsePolynomial operator*(const SparsePolynomial& other) const;
    SparsePolynomial operator-() const;
    SparsePolynomial scaled(const Rational& c) const;
    SparsePolynomial pow(unsigned exponent) const;

    nlohmann::json to_json() const;
    static SparsePolynomial from_json(const nlohmann::json& j);

private:
    std::vector<std::string> vars_;
    std::map<Exponents, Rational> terms_;
};

Rational poly_eval(const SparsePolynomial& p, const Assignment& a);
bool poly_equal_symbolic(const SparsePolynomial& p, const SparsePolynomial& q);

using EvaluationOracle = std::function<Rational(const Assignment&)>;

// Schwartz-Zippel test: samples every variable in `vars` uniformly from
// [0, 2^32) using a generator seeded with `seed`.
bool poly_equal_randomized(const std::vector<std::string>& vars, const EvaluationOracle& f,
                           const EvaluationOracle& g, unsigned degree_bound, int trials,
                           std::uint64_t seed);

Assignment random_assignment(const std::vector<std::string>& vars, std::uint64_t seed);

}  // namespace symhom

namespace symhom {

// 64-bit integer that throws SizeCap instead of overflowing. Used for fast
// exact evaluation at small integer points.
class CheckedInt {
public:
    CheckedInt() = default;
    CheckedInt(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    std::int64_t value() const { return v_; }

    CheckedInt& operator+=(CheckedInt o);
    CheckedInt& operator*=(CheckedInt o);
    friend CheckedInt operator+(CheckedInt a, CheckedInt b) { return a += b; }
    friend CheckedInt operator*(CheckedInt a, CheckedInt b) { return a *= b; }
    friend bool operator==(CheckedInt a, CheckedInt b) { return a.v_ == b.v_; }

private:
    std::int64_t v_ = 0;
};

}  // namespace symhom

namespace symhom {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Exact Gaussian elimination; nullopt when the matrix is singular.
std::optional<std::vector<Rational>> solve_linear_system(RationalMatrix a, std::vector<Rational> b);
Rational determinant(RationalMatrix a);

}  // namespace symhom
