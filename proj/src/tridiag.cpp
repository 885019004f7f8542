#include "kpp/tridiag.hpp"

#include <cassert>
#include <cmath>
#include <cstddef>

#include "kpp/errors.hpp"

namespace kpp {

TridiagFactor::TridiagFactor(std::span<const double> lower,
                             std::span<const double> diag,
                             std::span<const double> upper) {
    const std::size_t n = diag.size();
    assert(lower.size() == n - 1 && upper.size() == n - 1);
    lmult_.resize(n - 1);
    inv_piv_.resize(n);
    upper_.assign(upper.begin(), upper.end());

    double piv = diag[0];
    if (piv == 0.0) throw InvalidParameter("tridiagonal factorization: zero pivot");
    inv_piv_[0] = 1.0 / piv;
    for (std::size_t i = 1; i < n; ++i) {
        lmult_[i - 1] = lower[i - 1] * inv_piv_[i - 1];
        piv = diag[i] - lmult_[i - 1] * upper_[i - 1];
        if (piv == 0.0) throw InvalidParameter("tridiagonal factorization: zero pivot");
        inv_piv_[i] = 1.0 / piv;
    }
}

void TridiagFactor::solve(std::span<const double> rhs, std::span<double> x) const {
    const std::size_t n = inv_piv_.size();
    assert(rhs.size() == n && x.size() == n);
    x[0] = rhs[0];
    for (std::size_t i = 1; i < n; ++i) x[i] = rhs[i] - lmult_[i - 1] * x[i - 1];
    x[n - 1] *= inv_piv_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (x[i] - upper_[i] * x[i + 1]) * inv_piv_[i];
}

CyclicTridiagFactor::CyclicTridiagFactor(std::span<const double> lower,
                                         std::span<const double> diag,
                                         std::span<const double> upper,
                                         double corner_tr, double corner_bl) {
    const std::size_t n = diag.size();
    if (n < 3) throw InvalidParameter("cyclic tridiagonal systems need n >= 3");
    corner_tr_ = corner_tr;

    // A = T + u v^T with u = (gamma, 0, ..., 0, corner_bl)^T and
    // v = (1, 0, ..., 0, corner_tr/gamma)^T.
    gamma_ = -diag[0];
    if (gamma_ == 0.0) gamma_ = 1.0;
    std::vector<double> d(diag.begin(), diag.end());
    d[0] -= gamma_;
    d[n - 1] -= corner_tr * corner_bl / gamma_;
    base_ = TridiagFactor(lower, d, upper);

    std::vector<double> u(n, 0.0);
    u[0] = gamma_;
    u[n - 1] = corner_bl;
    q_.resize(n);
    base_.solve(u, q_);
    denom_ = 1.0 + q_[0] + corner_tr_ * q_[n - 1] / gamma_;
    if (denom_ == 0.0) throw InvalidParameter("cyclic tridiagonal factorization is singular");
}

void CyclicTridiagFactor::solve(std::span<const double> rhs, std::span<double> x) const {
    const std::size_t n = base_.size();
    base_.solve(rhs, x);
    const double f = (x[0] + corner_tr_ * x[n - 1] / gamma_) / denom_;
    for (std::size_t i = 0; i < n; ++i) x[i] -= f * q_[i];
}

}  // namespace kpp
