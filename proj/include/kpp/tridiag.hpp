#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kpp {

/// LU factorization (no pivoting) of a tridiagonal matrix.
/// Row i couples x[i-1] (lower[i-1]), x[i] (diag[i]), x[i+1] (upper[i]).
class TridiagFactor {
public:
    TridiagFactor() = default;
    TridiagFactor(std::span<const double> lower,
                  std::span<const double> diag,
                  std::span<const double> upper);

    void solve(std::span<const double> rhs, std::span<double> x) const;
    std::size_t size() const { return inv_piv_.size(); }

private:
    std::vector<double> lmult_;    // elimination multipliers
    std::vector<double> inv_piv_;  // reciprocal pivots
    std::vector<double> upper_;
};

/// Periodic (cyclic) tridiagonal matrix: additionally A(0,n-1)=corner_tr and
/// A(n-1,0)=corner_bl. Solved by Sherman-Morrison around a plain Thomas
/// factorization; repeated solves reuse the factorization. Requires n >= 3.
class CyclicTridiagFactor {
public:
    CyclicTridiagFactor() = default;
    CyclicTridiagFactor(std::span<const double> lower,
                        std::span<const double> diag,
                        std::span<const double> upper,
                        double corner_tr, double corner_bl);

    void solve(std::span<const double> rhs, std::span<double> x) const;
    std::size_t size() const { return base_.size(); }

private:
    TridiagFactor base_;
    std::vector<double> q_;  // T^{-1} u of the rank-one update
    double gamma_ = 0.0;
    double corner_tr_ = 0.0;
    double denom_ = 1.0;
};

}  // namespace kpp
