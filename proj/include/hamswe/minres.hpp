//
//  hamswe: Hamiltonian finite-volume shallow water schemes on dual meshes.
//
//  Copyright 2026 The hamswe Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
//

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace hamswe {

struct MinresResult {
  std::size_t iterations = 0;
  /// ‖b − Sx‖ / ‖b‖ at exit, evaluated directly.
  double residual = 0.0;
  /// Residual estimates relative to the starting residual, one per
  /// iteration, followed by the true residual at each restart.
  std::vector<double> history;
  /// A Lanczos step saw vᵀSv > 0: S is not negative definite.
  bool indefinite = false;
  bool converged = false;
};

/// Preconditioned MINRES for symmetric S. `apply(v, out)` computes out = S v;
/// `precond(r, out)` applies a symmetric positive definite approximation of
/// |S|⁻¹. `x` holds the initial guess on entry. Each inner run stops on the
/// recurrence estimate; the true residual is then checked and the run
/// restarted from the current iterate if needed.
template <class Apply, class Precond>
MinresResult minres(const Apply& apply, const Precond& precond,
                    const Eigen::VectorXd& b, Eigen::VectorXd& x, double rtol,
                    std::size_t max_iterations) {
  using Eigen::VectorXd;
  MinresResult out;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero();
    out.converged = true;
    return out;
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const auto n = b.size();
  VectorXd r1(n), r2(n), y(n), v(n), w(n), w1(n), w2(n), tmp(n);

  double inner_tol = rtol;
  while (true) {
    apply(x, tmp);
    r1 = b - tmp;
    const double true_res = r1.norm() / bnorm;
    out.residual = true_res;
    if (out.iterations > 0) out.history.push_back(true_res);
    if (true_res <= rtol) {
      out.converged = true;
      return out;
    }
    if (out.iterations >= max_iterations) return out;
    if (out.iterations > 0) inner_tol = std::max(eps, inner_tol * 0.1);

    precond(r1, y);
    double beta1 = r1.dot(y);
    if (beta1 <= 0.0) return out;  // preconditioner not positive definite
    beta1 = std::sqrt(beta1);

    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
    double phibar = beta1, cs = -1.0, sn = 0.0, tnorm2 = 0.0;
    r2 = r1;
    w.setZero();
    w2.setZero();
    for (std::size_t k = 0; out.iterations < max_iterations; ++k) {
      ++out.iterations;
      v = y / beta;
      apply(v, y);
      if (k > 0) y -= (beta / oldb) * r1;
      const double alfa = v.dot(y);
      y -= (alfa / beta) * r2;
      r1.swap(r2);
      r2 = y;
      precond(r2, y);
      oldb = beta;
      const double b2 = r2.dot(y);
      beta = std::sqrt(std::max(b2, 0.0));
      tnorm2 += alfa * alfa + oldb * oldb + beta * beta;
      if (alfa > 1e-12 * std::sqrt(tnorm2)) out.indefinite = true;

      const double oldeps = epsln;
      const double delta = cs * dbar + sn * alfa;
      const double gbar = sn * dbar - cs * alfa;
      epsln = sn * beta;
      dbar = -cs * beta;
      const double gamma = std::max(std::hypot(gbar, beta), eps);
      cs = gbar / gamma;
      sn = beta / gamma;
      const double phi = cs * phibar;
      phibar = sn * phibar;

      w1.swap(w2);
      w2.swap(w);
      w = (v - oldeps * w1 - delta * w2) / gamma;
      x += phi * w;

      const double est = phibar / beta1;
      out.history.push_back(est);
      if (est <= inner_tol || beta <= eps * beta1) break;
    }
  }
}

}  // namespace hamswe
