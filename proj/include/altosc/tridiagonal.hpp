#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "altosc/errors.hpp"

namespace altosc {

/// Symmetric tridiagonal matrix stored as its two bands.
template <typename Scalar>
struct SymTridiagonal {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector diag;
  Vector off;  // size diag.size() - 1

  Eigen::Index size() const { return diag.size(); }

  /// Number of eigenvalues strictly less than x (Sturm sequence via the LDL^T pivots).
  Eigen::Index count_below(Scalar x) const {
    const Eigen::Index n = diag.size();
    const Scalar tiny = std::numeric_limits<Scalar>::min();
    Eigen::Index count = 0;
    Scalar q = diag[0] - x;
    if (q < Scalar(0)) ++count;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (q == Scalar(0)) q = tiny;
      q = (diag[i] - x) - off[i - 1] * off[i - 1] / q;
      if (q < Scalar(0)) ++count;
    }
    return count;
  }

  /// Gershgorin interval containing the whole spectrum.
  std::pair<Scalar, Scalar> gershgorin() const {
    const Eigen::Index n = diag.size();
    Scalar lo = std::numeric_limits<Scalar>::max();
    Scalar hi = std::numeric_limits<Scalar>::lowest();
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar radius(0);
      if (i > 0) radius += std::abs(off[i - 1]);
      if (i + 1 < n) radius += std::abs(off[i]);
      lo = std::min(lo, diag[i] - radius);
      hi = std::max(hi, diag[i] + radius);
    }
    return {lo, hi};
  }

  /// k-th smallest eigenvalue (k = 0 is the lowest) by Sturm bisection, run until the
  /// bracketing interval cannot be split further in floating point.
  Scalar eigenvalue(Eigen::Index k) const {
    if (k < 0 || k >= size()) throw DomainError("SymTridiagonal::eigenvalue: index out of range");
    auto [lo, hi] = gershgorin();
    const Scalar pad = std::max(std::abs(lo), std::abs(hi)) * Scalar(1e-14) + std::numeric_limits<Scalar>::min();
    lo -= pad;
    hi += pad;
    for (int iter = 0; iter < 4096; ++iter) {
      const Scalar mid = lo + (hi - lo) / Scalar(2);
      if (mid <= lo || mid >= hi) break;
      if (count_below(mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return lo + (hi - lo) / Scalar(2);
  }

  /// The `count` smallest eigenvalues, ascending.
  Vector lowest_eigenvalues(Eigen::Index count) const {
    count = std::min(count, size());
    Vector out(count);
    for (Eigen::Index k = 0; k < count; ++k) out[k] = eigenvalue(k);
    return out;
  }

  /// Eigenvector for a converged eigenvalue by inverse iteration with a partially pivoted
  /// tridiagonal LU. Returned with unit 2-norm and a positive first significant entry.
  Vector eigenvector(Scalar lambda, int iterations = 3) const {
    const Eigen::Index n = size();
    Vector x = Vector::Ones(n);
    // Perturb the shift slightly so the factorization stays nonsingular.
    const Scalar shift = lambda + std::max(std::abs(lambda), Scalar(1)) * Scalar(1e-13);
    for (int it = 0; it < iterations; ++it) {
      x = solve_shifted(shift, x);
      x /= x.norm();
    }
    Eigen::Index lead = 0;
    x.cwiseAbs().maxCoeff(&lead);
    if (x[lead] < Scalar(0)) x = -x;
    return x;
  }

  /// Solves (T - shift I) y = rhs by Gaussian elimination with partial pivoting.
  Vector solve_shifted(Scalar shift, const Vector& rhs) const {
    const Eigen::Index n = size();
    // Row i of the upper factor holds u0 (diagonal), u1, u2 (two superdiagonals).
    Vector u0(n), u1 = Vector::Zero(n), u2 = Vector::Zero(n), b = rhs;
    Vector sub = Vector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      u0[i] = diag[i] - shift;
      if (i + 1 < n) u1[i] = off[i];
      if (i > 0) sub[i] = off[i - 1];
    }
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      // Candidate rows: i (u0[i], u1[i], u2[i]) and i+1 (sub[i+1], u0[i+1], u1[i+1]).
      if (std::abs(sub[i + 1]) > std::abs(u0[i])) {
        std::swap(u0[i], sub[i + 1]);
        std::swap(u1[i], u0[i + 1]);
        std::swap(u2[i], u1[i + 1]);
        std::swap(b[i], b[i + 1]);
      }
      if (u0[i] == Scalar(0)) u0[i] = std::numeric_limits<Scalar>::epsilon() * (std::abs(shift) + Scalar(1));
      const Scalar m = sub[i + 1] / u0[i];
      u0[i + 1] -= m * u1[i];
      u1[i + 1] -= m * u2[i];
      b[i + 1] -= m * b[i];
    }
    if (u0[n - 1] == Scalar(0)) u0[n - 1] = std::numeric_limits<Scalar>::epsilon() * (std::abs(shift) + Scalar(1));
    Vector y(n);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Scalar acc = b[i];
      if (i + 1 < n) acc -= u1[i] * y[i + 1];
      if (i + 2 < n) acc -= u2[i] * y[i + 2];
      y[i] = acc / u0[i];
    }
    return y;
  }
};

}  // namespace altosc
