#pragma once

#include <vector>

namespace degdiff {

// sub has length n-1 (row i couples to column i-1 via sub[i-1]),
// diag length n, super length n-1.
struct TridiagonalMatrix {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> super;

    std::size_t size() const { return diag.size(); }
    std::vector<double> multiply(const std::vector<double>& x) const;
    bool weakly_diagonally_dominant() const;
};

// Thomas algorithm (no pivoting). Throws on near-zero pivot; the Jacobians
// produced by the solver are weakly diagonally dominant with diag >= 1, so
// the guard only fires on corrupted input.
std::vector<double> thomas_solve(const TridiagonalMatrix& m, std::vector<double> rhs);

}  // namespace degdiff
