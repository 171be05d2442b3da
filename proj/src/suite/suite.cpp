#include <algorithm>

#include "tally.hpp"

namespace symhom {

using suite_detail::Tally;

namespace {

CheckResult combine(const std::string& id, const std::vector<std::string>& identities, const SuiteOptions& o) {
    Tally tally;
    for (const auto& name : identities) tally.add(verify_identity(name, o));
    std::string parts;
    for (const auto& name : identities) parts += (parts.empty() ? "" : " ") + name;
    CheckResult r = tally.result(id, "");
    r.detail = parts + (r.pass ? "" : "; " + r.detail);
    return r;
}

}  // namespace

const std::vector<std::string>& criterion_titles() {
    static const std::vector<std::string> titles = {
        "compiled circuits agree with the brute-force oracle",
        "shape, symmetry, size, support and orbit bounds",
        "rigidification on random symmetric circuits",
        "support-depth orbit inequality at n = m = 8",
        "reduction identities",
        "hardness gadgets",
        "CFI distinguishing claim",
        "extraction pipelines",
        "exact widths and width inequalities",
        "CFI pair separated only by the 4-cycle",
    };
    return titles;
}

CheckResult run_criterion(int k, const SuiteOptions& options) {
    using namespace suite_detail;
    switch (k) {
        case 1: return criterion_compiler_correctness(options);
        case 2: return criterion_shape_and_symmetry(options);
        case 3: return criterion_rigidification(options);
        case 4: return criterion_support_depth(options);
        case 5:
            return combine("criterion-05",
                           {"uncolour", "product", "slices", "minor-projection", "quotient", "hom-to-emb"}, options);
        case 6: return combine("criterion-06", {"clique", "btree", "path"}, options);
        case 7: {
            CheckResult r = criterion_cfi(options);
            r.id = "criterion-07";
            return r;
        }
        case 8: return combine("criterion-08", {"extract-subgraph", "extract-minor", "extract-lincomb"}, options);
        case 9: return criterion_width(options);
        case 10: return criterion_separation(options);
        default: throw Error(ErrorCode::IndexOutOfRange, "criteria are numbered 1 to 10");
    }
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& options) {
    std::vector<int> ids;
    if (name == "all") ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    else if (name == "compile") ids = {1, 2};
    else if (name == "symmetry") ids = {3, 4};
    else if (name == "reductions") ids = {5, 6, 7, 8, 10};
    else if (name == "width") ids = {9};
    else throw Error(ErrorCode::InvalidParameter, "unknown suite: " + name);
    std::vector<CheckResult> out;
    for (int k : ids) {
        try {
            out.push_back(run_criterion(k, options));
        } catch (const Error& e) {
            char id[16];
            std::snprintf(id, sizeof id, "criterion-%02d", k);
            out.push_back({id, false, std::string(error_code_name(e.code())) + ": " + e.what()});
        }
    }
    std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
    return out;
}

nlohmann::json suite_report(const std::vector<CheckResult>& results) {
    nlohmann::json items = nlohmann::json::array();
    bool pass = true;
    for (const auto& r : results) {
        items.push_back({{"id", r.id}, {"pass", r.pass}, {"detail", r.detail}});
        pass = pass && r.pass;
    }
    return {{"pass", pass}, {"results", items}};
}

}  // namespace symhom
