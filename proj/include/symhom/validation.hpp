#pragma once

#include <string>

namespace symhom {

struct ValidationResult {
    bool ok = true;
    std::string violation;
    explicit operator bool() const { return ok; }
};

}  // namespace symhom
