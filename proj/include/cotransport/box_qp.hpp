// Copyright 2026 The cotransport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <limits>
#include <optional>

#include <Eigen/Core>
#include <Eigen/LU>

namespace cotransport {

// Small dense convex QP
//
//   min  1/2 d'Hd + g'd   s.t.  lb <= d <= ub,  a'd == e  (when a != 0)
//
// solved exactly by enumerating the 3^N lower/upper/free patterns of the box
// and keeping the best feasible equality-constrained stationary point. For a
// convex problem the optimum is the stationary point of its own active set,
// so the enumeration is exact. Intended for N <= 5. Returns nullopt when the
// feasible set is empty.
template <int N>
std::optional<Eigen::Matrix<double, N, 1>> solve_box_qp(
    const Eigen::Matrix<double, N, N>& H, const Eigen::Matrix<double, N, 1>& g,
    const Eigen::Matrix<double, N, 1>& lb, const Eigen::Matrix<double, N, 1>& ub,
    const Eigen::Matrix<double, N, 1>& a, double e, double feas_tol = 1e-11) {
  using Vec = Eigen::Matrix<double, N, 1>;
  static_assert(N > 0 && N <= 6);
  if (!(lb.array() <= ub.array() + feas_tol).all()) return std::nullopt;
  const bool has_eq = a.cwiseAbs().maxCoeff() > 0.0;

  int patterns = 1;
  for (int i = 0; i < N; ++i) patterns *= 3;

  std::optional<Vec> best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int code = 0; code < patterns; ++code) {
    // state: 0 free, 1 at lower, 2 at upper
    int state[N];
    int c = code;
    int n_free = 0;
    for (int i = 0; i < N; ++i) {
      state[i] = c % 3;
      c /= 3;
      if (state[i] == 0) ++n_free;
    }
    Vec d = Vec::Zero();
    for (int i = 0; i < N; ++i) {
      if (state[i] == 1) d[i] = lb[i];
      if (state[i] == 2) d[i] = ub[i];
    }
    int free_idx[N];
    for (int i = 0, k = 0; i < N; ++i) {
      if (state[i] == 0) free_idx[k++] = i;
    }
    double eq_rhs = e;
    if (has_eq) {
      for (int i = 0; i < N; ++i) {
        if (state[i] != 0) eq_rhs -= a[i] * d[i];
      }
    }
    bool eq_on_free = false;
    for (int k = 0; k < n_free; ++k) {
      if (a[free_idx[k]] != 0.0) eq_on_free = true;
    }
    const bool use_eq = has_eq && eq_on_free;
    if (has_eq && !eq_on_free && std::abs(eq_rhs) > 1e-10) continue;

    if (n_free > 0) {
      const int m = n_free + (use_eq ? 1 : 0);
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m, m);
      Eigen::VectorXd rhs(m);
      for (int r = 0; r < n_free; ++r) {
        const int i = free_idx[r];
        for (int s = 0; s < n_free; ++s) kkt(r, s) = H(i, free_idx[s]);
        double acc = -g[i];
        for (int j = 0; j < N; ++j) {
          if (state[j] != 0) acc -= H(i, j) * d[j];
        }
        rhs[r] = acc;
        if (use_eq) {
          kkt(r, n_free) = a[i];
          kkt(n_free, r) = a[i];
        }
      }
      if (use_eq) rhs[n_free] = eq_rhs;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
      if (lu.rank() < m) continue;
      const Eigen::VectorXd sol = lu.solve(rhs);
      for (int r = 0; r < n_free; ++r) d[free_idx[r]] = sol[r];
    }
    if (!(d.array() >= lb.array() - feas_tol).all() ||
        !(d.array() <= ub.array() + feas_tol).all()) {
      continue;
    }
    if (has_eq && std::abs(a.dot(d) - e) > 1e-9) continue;
    const double obj = 0.5 * d.dot(H * d) + g.dot(d);
    if (obj < best_obj) {
      best_obj = obj;
      best = d.cwiseMax(lb).cwiseMin(ub);
    }
  }
  return best;
}

}  // namespace cotransport
