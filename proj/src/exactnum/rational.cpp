#include "symhom/error.hpp"
#include "symhom/exactnum.hpp"

namespace symhom {

Rational make_rational(const std::string& num, const std::string& den) {
    Integer n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
        throw Error(ErrorCode::ParseError, "malformed rational " + num + "/" + den);
    }
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den) {
    if (den == 0) throw Error(ErrorCode::InvalidParameter, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

nlohmann::json rational_to_json(const Rational& q) {
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return make_rational(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        auto s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return make_rational(s);
        return make_rational(s.substr(0, slash), s.substr(slash + 1));
    }
    if (!j.is_object() || !j.contains("num")) {
        throw Error(ErrorCode::ParseError, "rational must be {num, den}");
    }
    std::string den = j.contains("den") ? j.at("den").get<std::string>() : "1";
    return make_rational(j.at("num").get<std::string>(), den);
}

Rational pow(const Rational& base, unsigned long exponent) {
    Rational result = 1;
    mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    result.canonicalize();
    return result;
}

}  // namespace symhom

namespace symhom {

CheckedInt& CheckedInt::operator+=(CheckedInt o) {
    if (__builtin_add_overflow(v_, o.v_, &v_)) throw Error(ErrorCode::SizeCap, "64-bit overflow");
    return *this;
}

CheckedInt& CheckedInt::operator*=(CheckedInt o) {
    if (__builtin_mul_overflow(v_, o.v_, &v_)) throw Error(ErrorCode::SizeCap, "64-bit overflow");
    return *this;
}

}  // namespace symhom
