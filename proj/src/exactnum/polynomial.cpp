#include <algorithm>
#include <random>

#include "symhom/error.hpp"
#include "symhom/exactnum.hpp"

namespace symhom {

namespace {

std::vector<std::string> merged_universe(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

SparsePolynomial SparsePolynomial::constant(const Rational& c) {
    SparsePolynomial p;
    if (c != 0) p.terms_[{}] = c;
    return p;
}

SparsePolynomial SparsePolynomial::variable(const std::string& name) {
    SparsePolynomial p;
    p.vars_ = {name};
    p.terms_[{1}] = 1;
    return p;
}

SparsePolynomial SparsePolynomial::from_terms(std::vector<std::string> vars,
                                              const std::vector<std::pair<Exponents, Rational>>& terms) {
    std::vector<std::string> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> slot(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        slot[i] = std::lower_bound(sorted.begin(), sorted.end(), vars[i]) - sorted.begin();
    }
    SparsePolynomial p;
    p.vars_ = sorted;
    for (const auto& [exp, coeff] : terms) {
        if (exp.size() != vars.size()) {
            throw Error(ErrorCode::InvalidParameter, "exponent vector length mismatch");
        }
        Exponents e(sorted.size(), 0);
        for (std::size_t i = 0; i < exp.size(); ++i) e[slot[i]] += exp[i];
        Rational& c = p.terms_[e];
        c += coeff;
        if (c == 0) p.terms_.erase(e);
    }
    return p;
}

unsigned SparsePolynomial::degree() const {
    unsigned best = 0;
    for (const auto& [exp, coeff] : terms_) {
        unsigned d = 0;
        for (auto e : exp) d += e;
        best = std::max(best, d);
    }
    return best;
}

SparsePolynomial SparsePolynomial::aligned(const std::vector<std::string>& universe) const {
    if (universe == vars_) return *this;
    std::vector<std::size_t> slot(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::lower_bound(universe.begin(), universe.end(), vars_[i]);
        if (it == universe.end() || *it != vars_[i]) {
            throw Error(ErrorCode::InvalidParameter, "universe misses variable " + vars_[i]);
        }
        slot[i] = it - universe.begin();
    }
    SparsePolynomial p;
    p.vars_ = universe;
    for (const auto& [exp, coeff] : terms_) {
        Exponents e(universe.size(), 0);
        for (std::size_t i = 0; i < exp.size(); ++i) e[slot[i]] = exp[i];
        p.terms_.emplace(std::move(e), coeff);
    }
    return p;
}

SparsePolynomial SparsePolynomial::trimmed() const {
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [exp, coeff] : terms_) {
        for (std::size_t i = 0; i < exp.size(); ++i) used[i] = used[i] || exp[i] > 0;
    }
    SparsePolynomial p;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (used[i]) p.vars_.push_back(vars_[i]);
    }
    for (const auto& [exp, coeff] : terms_) {
        Exponents e;
        for (std::size_t i = 0; i < exp.size(); ++i) {
            if (used[i]) e.push_back(exp[i]);
        }
        p.terms_.emplace(std::move(e), coeff);
    }
    return p;
}

SparsePolynomial SparsePolynomial::operator+(const SparsePolynomial& other) const {
    auto universe = merged_universe(vars_, other.vars_);
    SparsePolynomial p = aligned(universe);
    for (const auto& [exp, coeff] : other.aligned(universe).terms_) {
        Rational& c = p.terms_[exp];
        c += coeff;
        if (c == 0) p.terms_.erase(exp);
    }
    return p;
}

SparsePolynomial SparsePolynomial::operator-() const { return scaled(-1); }

SparsePolynomial SparsePolynomial::operator-(const SparsePolynomial& other) const {
    return *this + (-other);
}

SparsePolynomial SparsePolynomial::scaled(const Rational& c) const {
    SparsePolynomial p;
    p.vars_ = vars_;
    if (c == 0) return p;
    for (const auto& [exp, coeff] : terms_) p.terms_.emplace(exp, coeff * c);
    return p;
}

SparsePolynomial SparsePolynomial::operator*(const SparsePolynomial& other) const {
    auto universe = merged_universe(vars_, other.vars_);
    SparsePolynomial lhs = aligned(universe);
    SparsePolynomial rhs = other.aligned(universe);
    SparsePolynomial p;
    p.vars_ = universe;
    for (const auto& [e1, c1] : lhs.terms_) {
        for (const auto& [e2, c2] : rhs.terms_) {
            Exponents e(universe.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            Rational& c = p.terms_[e];
            c += c1 * c2;
            if (c == 0) p.terms_.erase(e);
        }
    }
    return p;
}

SparsePolynomial SparsePolynomial::pow(unsigned exponent) const {
    SparsePolynomial result = constant(1);
    SparsePolynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent > 0) base = base * base;
    }
    return result;
}

nlohmann::json SparsePolynomial::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [exp, coeff] : terms_) {
        terms.push_back({{"exp", exp},
                         {"num", coeff.get_num().get_str()},
                         {"den", coeff.get_den().get_str()}});
    }
    return {{"vars", vars_}, {"terms", terms}};
}

SparsePolynomial SparsePolynomial::from_json(const nlohmann::json& j) {
    try {
        auto vars = j.at("vars").get<std::vector<std::string>>();
        std::vector<std::pair<Exponents, Rational>> terms;
        for (const auto& t : j.at("terms")) {
            terms.emplace_back(t.at("exp").get<Exponents>(),
                               make_rational(t.at("num").get<std::string>(),
                                             t.at("den").get<std::string>()));
        }
        return from_terms(vars, terms);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

Rational poly_eval(const SparsePolynomial& p, const Assignment& a) {
    std::vector<const Rational*> values;
    values.reserve(p.vars().size());
    for (const auto& v : p.vars()) {
        auto it = a.find(v);
        if (it == a.end()) throw Error(ErrorCode::MissingVariable, v);
        values.push_back(&it->second);
    }
    Rational total = 0;
    for (const auto& [exp, coeff] : p.terms()) {
        Rational term = coeff;
        for (std::size_t i = 0; i < exp.size(); ++i) {
            if (exp[i] > 0) term *= pow(*values[i], exp[i]);
        }
        total += term;
    }
    return total;
}

bool poly_equal_symbolic(const SparsePolynomial& p, const SparsePolynomial& q) {
    SparsePolynomial a = p.trimmed();
    SparsePolynomial b = q.trimmed();
    return a.vars() == b.vars() && a.terms() == b.terms();
}

Assignment random_assignment(const std::vector<std::string>& vars, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << 32) - 1);
    Assignment a;
    for (const auto& v : vars) a[v] = Rational(Integer(std::to_string(dist(rng))));
    return a;
}

bool poly_equal_randomized(const std::vector<std::string>& vars, const EvaluationOracle& f,
                           const EvaluationOracle& g, unsigned degree_bound, int trials,
                           std::uint64_t seed) {
    (void)degree_bound;  // only affects the error bound, not the procedure
    if (trials < 1) throw Error(ErrorCode::InvalidParameter, "trials must be >= 1");
    std::mt19937_64 seeder(seed);
    for (int t = 0; t < trials; ++t) {
        Assignment a = random_assignment(vars, seeder());
        if (f(a) != g(a)) return false;
    }
    return true;
}

}  // namespace symhom
