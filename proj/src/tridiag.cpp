#include "degdiff/tridiag.hpp"

#include <cmath>
#include <stdexcept>

namespace degdiff {

std::vector<double> TridiagonalMatrix::multiply(const std::vector<double>& x) const {
    const std::size_t n = size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = diag[i] * x[i];
        if (i > 0) v += sub[i - 1] * x[i - 1];
        if (i + 1 < n) v += super[i] * x[i + 1];
        y[i] = v;
    }
    return y;
}

bool TridiagonalMatrix::weakly_diagonally_dominant() const {
    // Checked by columns: the solver Jacobians carry G'(u_j) down column j,
    // so column dominance is the structural property (rows need not dominate).
    const std::size_t n = size();
    for (std::size_t j = 0; j < n; ++j) {
        double off = 0.0;
        if (j > 0) off += std::abs(super[j - 1]);
        if (j + 1 < n) off += std::abs(sub[j]);
        if (std::abs(diag[j]) < off - 1e-14 * std::abs(diag[j])) return false;
    }
    return true;
}

std::vector<double> thomas_solve(const TridiagonalMatrix& m, std::vector<double> rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n) throw std::invalid_argument("thomas_solve: size mismatch");
    if (n == 0) return {};
    std::vector<double> c(n - 1 > 0 ? n - 1 : 0);
    double pivot = m.diag[0];
    if (std::abs(pivot) < 1e-14) throw std::runtime_error("thomas_solve: singular pivot");
    if (n > 1) c[0] = m.super[0] / pivot;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = m.diag[i] - m.sub[i - 1] * c[i - 1];
        if (std::abs(pivot) < 1e-14) throw std::runtime_error("thomas_solve: singular pivot");
        if (i + 1 < n) c[i] = m.super[i] / pivot;
        rhs[i] = (rhs[i] - m.sub[i - 1] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    return rhs;
}

}  // namespace degdiff
