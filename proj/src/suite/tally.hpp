#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "symhom/suite.hpp"

namespace symhom::suite_detail {

// Counts checks and keeps the first failure for the report.
class Tally {
public:
    template <class Describe>
    void expect(bool ok, Describe describe) {
        ++checks_;
        if (ok) return;
        if (failures_++ == 0) first_ = describe();
    }
    void add(const CheckResult& r) {
        ++checks_;
        if (!r.pass && failures_++ == 0) first_ = r.id + ": " + r.detail;
    }
    bool ok() const { return failures_ == 0; }
    long checks() const { return checks_; }

    CheckResult result(const std::string& id, const std::string& summary) const {
        std::ostringstream out;
        out << checks_ << " checks";
        if (!summary.empty()) out << ", " << summary;
        if (failures_ > 0) out << "; " << failures_ << " failed, first: " << first_;
        return {id, failures_ == 0, out.str()};
    }

private:
    long checks_ = 0;
    long failures_ = 0;
    std::string first_;
};

// Independent stream per check id so adding checks does not shift others.
inline std::mt19937_64 stream(std::uint64_t seed, const std::string& id) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char ch : id) h = (h ^ ch) * 1099511628211ULL;
    return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL ^ h);
}

CheckResult criterion_compiler_correctness(const SuiteOptions& options);
CheckResult criterion_shape_and_symmetry(const SuiteOptions& options);
CheckResult criterion_rigidification(const SuiteOptions& options);
CheckResult criterion_support_depth(const SuiteOptions& options);
CheckResult criterion_width(const SuiteOptions& options);
CheckResult criterion_separation(const SuiteOptions& options);
CheckResult criterion_cfi(const SuiteOptions& options);

}  // namespace symhom::suite_detail
