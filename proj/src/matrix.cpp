#include "dicke/matrix.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicke {

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != n_) throw std::invalid_argument("SymMatrix: rows must form a square matrix");
        std::copy(r.begin(), r.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * n_));
        ++i;
    }
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double SymMatrix::max_abs_entry() const {
    double out = 0.0;
    for (double v : data_) out = std::max(out, std::abs(v));
    return out;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

bool SymMatrix::is_symmetric(double rel_tol) const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    const double bound = rel_tol * std::max(1.0, max_abs_entry());
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > bound) return false;
    return true;
}

SymMatrix SymMatrix::submatrix(std::span<const std::size_t> indices) const {
    SymMatrix out(indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a)
        for (std::size_t b = 0; b < indices.size(); ++b)
            out(a, b) = (*this)(indices[a], indices[b]);
    return out;
}

}  // namespace dicke
