#include "symhom/error.hpp"
#include "symhom/exactnum.hpp"

namespace symhom {

std::optional<std::vector<Rational>> solve_linear_system(RationalMatrix a, std::vector<Rational> b) {
    std::size_t n = a.size();
    if (b.size() != n) throw Error(ErrorCode::InvalidParameter, "dimension mismatch");
    for (const auto& row : a) {
        if (row.size() != n) throw Error(ErrorCode::InvalidParameter, "matrix must be square");
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational factor = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= factor * a[col][k];
            b[r] -= factor * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

Rational determinant(RationalMatrix a) {
    std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational factor = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= factor * a[col][k];
        }
    }
    return det;
}

}  // namespace symhom
