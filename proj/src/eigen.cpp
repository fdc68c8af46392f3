#include "dicke/eigen.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace dicke {

namespace {

constexpr int kMaxIterationsPerEigenvalue = 60;

// Working storage: v is row-major n x n; on exit of the QL stage column k of
// v holds the eigenvector belonging to d[k].
struct Workspace {
    std::size_t n;
    std::vector<double> v, d, e;

    double& at(std::size_t i, std::size_t j) { return v[i * n + j]; }
};

// Householder reduction to tridiagonal form, accumulating the transformation
// in ws.v. Diagonal lands in d, subdiagonal in e[1..n-1].
void tridiagonalize(Workspace& ws) {
    const std::size_t n = ws.n;
    auto& d = ws.d;
    auto& e = ws.e;

    for (std::size_t j = 0; j < n; ++j) d[j] = ws.at(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);

        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = ws.at(i - 1, j);
                ws.at(i, j) = 0.0;
                ws.at(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                ws.at(j, i) = f;
                g = e[j] + ws.at(j, j) * f;
                for (std::size_t k = j + 1; k < i; ++k) {
                    g += ws.at(k, j) * d[k];
                    e[k] += ws.at(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k < i; ++k) ws.at(k, j) -= (f * e[k] + g * d[k]);
                d[j] = ws.at(i - 1, j);
                ws.at(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate transformations.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        ws.at(n - 1, i) = ws.at(i, i);
        ws.at(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = ws.at(k, i + 1) / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += ws.at(k, i + 1) * ws.at(k, j);
                for (std::size_t k = 0; k <= i; ++k) ws.at(k, j) -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) ws.at(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = ws.at(n - 1, j);
        ws.at(n - 1, j) = 0.0;
    }
    ws.at(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e). Returns total sweep count.
int ql_implicit(Workspace& ws) {
    const std::size_t n = ws.n;
    auto& d = ws.d;
    auto& e = ws.e;

    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    int total = 0;

    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1) break;
            ++m;
        }

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > kMaxIterationsPerEigenvalue)
                    throw ConvergenceError("eigh: QL iteration did not converge for eigenvalue " +
                                               std::to_string(l) + " after " +
                                               std::to_string(iter - 1) + " iterations",
                                           total);
                ++total;

                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (std::size_t k = 0; k < n; ++k) {
                        h = ws.at(k, i + 1);
                        ws.at(k, i + 1) = s * ws.at(k, i) + c * h;
                        ws.at(k, i) = c * ws.at(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
    return total;
}

}  // namespace

EigenDecomposition eigh(const SymMatrix& m, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("eigh: tol must be positive");
    if (!m.is_symmetric()) throw std::invalid_argument("eigh: matrix is not symmetric");

    const std::size_t n = m.size();
    EigenDecomposition out;
    out.n = n;
    if (n == 0) return out;

    Workspace ws{n, std::vector<double>(m.data().begin(), m.data().end()),
                 std::vector<double>(n), std::vector<double>(n)};
    tridiagonalize(ws);
    out.iterations = ql_implicit(ws);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ws.d[a] < ws.d[b]; });

    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.eigenvalues[k] = ws.d[src];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors[k * n + i] = ws.at(i, src);
    }

    out.max_residual = residual(m, out);
    out.orthonormality_defect = orthonormality_defect(out);
    const double bound = tol * std::max(1.0, m.max_abs_entry());
    if (!(out.max_residual <= bound))
        throw ConvergenceError("eigh: residual " + std::to_string(out.max_residual) +
                                   " exceeds certificate bound " + std::to_string(bound),
                               out.iterations);
    return out;
}

double residual(const SymMatrix& m, const EigenDecomposition& d) {
    const std::size_t n = m.size();
    if (d.n != n || d.eigenvalues.size() != n || d.eigenvectors.size() != n * n)
        throw std::invalid_argument("residual: dimension mismatch");

    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto v = d.eigenvector(k);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = m.row(i);
            double hv = 0.0;
            for (std::size_t j = 0; j < n; ++j) hv += row[j] * v[j];
            const double r = hv - d.eigenvalues[k] * v[i];
            norm2 += r * r;
        }
        worst = std::max(worst, std::sqrt(norm2));
    }
    return worst;
}

double orthonormality_defect(const EigenDecomposition& d) {
    double worst = 0.0;
    for (std::size_t a = 0; a < d.n; ++a) {
        const auto va = d.eigenvector(a);
        for (std::size_t b = a; b < d.n; ++b) {
            const auto vb = d.eigenvector(b);
            double dot = 0.0;
            for (std::size_t i = 0; i < d.n; ++i) dot += va[i] * vb[i];
            worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

}  // namespace dicke
