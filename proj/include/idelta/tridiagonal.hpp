#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace idelta {

/// Constant tridiagonal matrix factored once (Thomas algorithm, no pivoting)
/// and reused for many right-hand sides.
template <class T>
class TridiagonalFactor {
public:
    /// lower[i] couples row i to i-1 (lower[0] unused), upper[i] couples row i
    /// to i+1 (upper[n-1] unused).
    TridiagonalFactor(std::vector<T> lower, std::vector<T> diag, std::vector<T> upper)
        : lower_(std::move(lower)), inv_pivot_(diag.size()), upper_star_(diag.size())
    {
        const std::size_t n = diag.size();
        if (n == 0 || lower_.size() != n || upper.size() != n) {
            throw std::invalid_argument("tridiagonal bands must have equal nonzero length");
        }
        T pivot = diag[0];
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) {
                pivot = diag[i] - lower_[i] * upper_star_[i - 1];
            }
            if (pivot == T{}) {
                throw std::runtime_error("zero pivot in tridiagonal factorization");
            }
            inv_pivot_[i] = T{1} / pivot;
            upper_star_[i] = upper[i] * inv_pivot_[i];
        }
    }

    std::size_t size() const noexcept { return inv_pivot_.size(); }

    /// Overwrites rhs with the solution.
    void solve_in_place(std::span<T> rhs) const
    {
        const std::size_t n = size();
        rhs[0] *= inv_pivot_[0];
        for (std::size_t i = 1; i < n; ++i) {
            rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_pivot_[i];
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            rhs[i] -= upper_star_[i] * rhs[i + 1];
        }
    }

private:
    std::vector<T> lower_;
    std::vector<T> inv_pivot_;
    std::vector<T> upper_star_;
};

} // namespace idelta
