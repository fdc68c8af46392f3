#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dicke {

/// Dense real square matrix, row-major. Assembly code keeps it symmetric by
/// writing through set_symmetric(); is_symmetric() checks the invariant.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SymMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    /// Writes (i, j) and (j, i).
    void set_symmetric(std::size_t i, std::size_t j, double value) {
        data_[i * n_ + j] = value;
        data_[j * n_ + i] = value;
    }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    std::span<const double> data() const { return data_; }

    double max_abs_entry() const;
    double trace() const;

    /// Symmetric to `rel_tol * max(1, max|entry|)` and all entries finite.
    bool is_symmetric(double rel_tol = 1e-12) const;

    /// Principal submatrix on the given index list, in list order.
    SymMatrix submatrix(std::span<const std::size_t> indices) const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace dicke
