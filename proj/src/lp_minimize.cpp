// Copyright 2026 The isolab Authors
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
#include "isolab/lp_minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace isolab::solve {
namespace {

constexpr double kTiny = 1e-300;

double weighted_power_sum(const Vec& w, double p, const Vec& r, double eta) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double s = r[i] * r[i] + eta * eta;
    acc += w[i] * std::pow(s, 0.5 * p);
  }
  return acc;
}

double plain_norm(const Vec& w, double p, const Vec& r) {
  const double m = r.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) acc += w[i] * std::pow(std::abs(r[i]) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

// Solves (H + lambda I) d = -g with increasing Levenberg damping until the
// result is a descent direction.
Vec damped_newton_direction(const Mat& H, const Vec& g) {
  const Eigen::Index n = g.size();
  double scale = std::max(H.diagonal().cwiseAbs().maxCoeff(), kTiny);
  double lambda = 1e-14 * scale;
  for (int attempt = 0; attempt < 12; ++attempt) {
    Mat M = H;
    M.diagonal().array() += lambda;
    Eigen::LDLT<Mat> ldlt(M);
    if (ldlt.info() == Eigen::Success) {
      Vec d = ldlt.solve(-g);
      if (d.allFinite() && d.dot(g) < 0.0) return d;
    }
    lambda *= 100.0;
  }
  return -g / scale * (n > 0 ? 1.0 : 0.0);
}

// Smoothed l^p norm h(r) = (sum mu (r^2+eta^2)^{p/2})^{1/p}: value, gradient
// and Hessian in r.
struct NormModel {
  double value;
  Vec grad;
  Vec diag;  // diagonal part of the Hessian
  double rank_one;  // Hessian = diag(diag) + rank_one * grad grad^T
};

NormModel smooth_norm(const Vec& w, double p, const Vec& r, double eta) {
  const Eigen::Index n = r.size();
  Vec s(n), a(n);
  double S = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    s[i] = r[i] * r[i] + eta * eta;
    S += w[i] * std::pow(s[i], 0.5 * p);
  }
  NormModel m;
  m.grad = Vec::Zero(n);
  m.diag = Vec::Zero(n);
  m.rank_one = 0.0;
  m.value = std::pow(S, 1.0 / p);
  if (S <= kTiny) return m;
  const double c1 = std::pow(S, 1.0 / p - 1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s[i] <= 0.0) continue;
    const double base = std::pow(s[i], 0.5 * p - 2.0);
    m.grad[i] = c1 * w[i] * r[i] * base * s[i];
    m.diag[i] = c1 * w[i] * base * ((p - 1.0) * r[i] * r[i] + eta * eta);
  }
  m.rank_one = (1.0 - p) / m.value;
  return m;
}

}  // namespace

Vec power_gradient(const Vec& weights, double p, const Vec& y) {
  Vec g(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double a = std::abs(y[i]);
    g[i] = a == 0.0 ? 0.0 : p * weights[i] * std::copysign(std::pow(a, p - 1.0), y[i]);
  }
  return g;
}

AffineNormResult minimize_affine_norm(const Vec& weights, double p, const Vec& a,
                                      const Mat& A, std::size_t max_iter) {
  AffineNormResult out;
  const Eigen::Index k = A.cols();
  out.t = Vec::Zero(k);
  const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  if (k == 0 || scale == 0.0) {
    out.value = plain_norm(weights, p, a);
    return out;
  }
  const Vec as = a / scale;

  // Weighted least squares start; exact at p = 2.
  {
    const Mat AtW = A.transpose() * weights.asDiagonal();
    Mat H = AtW * A;
    const Vec g = AtW * as;
    out.t = -H.completeOrthogonalDecomposition().solve(g);
    if (!out.t.allFinite()) out.t.setZero();
  }

  std::vector<double> etas;
  if (p < 2.0) {
    etas = {1e-1, 1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12};
  } else if (p > 2.0) {
    etas = {0.0};
  }

  for (double eta : etas) {
    for (std::size_t it = 0; it < max_iter; ++it) {
      ++out.iterations;
      const Vec r = as + A * out.t;
      const double F = weighted_power_sum(weights, p, r, eta);
      Vec phi1(r.size()), phi2(r.size());
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double s = r[i] * r[i] + eta * eta;
        if (s == 0.0) {
          phi1[i] = 0.0;
          phi2[i] = 0.0;
          continue;
        }
        const double base = std::pow(s, 0.5 * p - 2.0);
        phi1[i] = weights[i] * p * r[i] * base * s;
        phi2[i] = weights[i] * p * base * ((p - 1.0) * r[i] * r[i] + eta * eta);
      }
      const Vec g = A.transpose() * phi1;
      if (g.cwiseAbs().maxCoeff() == 0.0) break;
      const Mat H = A.transpose() * phi2.asDiagonal() * A;
      const Vec d = damped_newton_direction(H, g);
      const double dec = -g.dot(d);
      if (dec <= 1e-32) break;
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        const Vec t_new = out.t + step * d;
        const double F_new = weighted_power_sum(weights, p, as + A * t_new, eta);
        if (F_new <= F - 1e-4 * step * dec) {
          out.t = t_new;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
      if (dec <= 1e-30 * std::max(F, 1.0)) break;
    }
  }
  out.t *= scale;
  out.value = plain_norm(weights, p, a + A * out.t);
  return out;
}

HullResult nearest_in_hull(const Vec& weights, double p, const Vec& x, const Mat& P,
                           double kkt_tol, std::size_t max_iter) {
  const Eigen::Index m = P.cols();
  HullResult out;
  out.lambda = Vec::Zero(m);
  Eigen::Index start = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < m; ++j) {
    const double d = plain_norm(weights, p, x - P.col(j));
    if (d < best) {
      best = d;
      start = j;
    }
  }
  out.lambda[start] = 1.0;
  std::vector<Eigen::Index> active{start};

  auto solve_face = [&](const std::vector<Eigen::Index>& face) {
    const Eigen::Index s0 = face.front();
    Mat A(P.rows(), static_cast<Eigen::Index>(face.size()) - 1);
    for (std::size_t j = 1; j < face.size(); ++j)
      A.col(static_cast<Eigen::Index>(j) - 1) = -(P.col(face[j]) - P.col(s0));
    const AffineNormResult r = minimize_affine_norm(weights, p, x - P.col(s0), A);
    Vec mu = Vec::Zero(m);
    mu[s0] = 1.0;
    for (std::size_t j = 1; j < face.size(); ++j) {
      mu[face[j]] += r.t[static_cast<Eigen::Index>(j) - 1];
      mu[s0] -= r.t[static_cast<Eigen::Index>(j) - 1];
    }
    return mu;
  };

  for (std::size_t it = 0; it < max_iter; ++it) {
    ++out.iterations;
    const Vec mu = solve_face(active);
    bool feasible = true;
    for (Eigen::Index j : active)
      if (mu[j] < -1e-14) feasible = false;
    if (!feasible) {
      double alpha = 1.0;
      for (Eigen::Index j : active) {
        if (mu[j] < -1e-14) {
          const double denom = out.lambda[j] - mu[j];
          if (denom > 0.0) alpha = std::min(alpha, out.lambda[j] / denom);
        }
      }
      out.lambda = out.lambda + alpha * (mu - out.lambda);
      std::vector<Eigen::Index> kept;
      for (Eigen::Index j : active) {
        if (out.lambda[j] > 1e-15) {
          kept.push_back(j);
        } else {
          out.lambda[j] = 0.0;
        }
      }
      if (kept.empty()) kept.push_back(active.front());
      active = kept;
      out.lambda /= out.lambda.sum();
      continue;
    }
    out.lambda = mu.cwiseMax(0.0);
    out.lambda /= out.lambda.sum();

    const Vec r = x - P * out.lambda;
    // x lies in the hull up to rounding
    if (r.cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + x.cwiseAbs().maxCoeff() + P.cwiseAbs().maxCoeff())) break;
    const Vec w = power_gradient(weights, p, r);
    const Vec g = -(P.transpose() * w);
    const double g_face = g.dot(out.lambda);
    const double scale = 1.0 + g.cwiseAbs().maxCoeff();
    Eigen::Index entering = -1;
    double most = -kkt_tol * scale;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (std::find(active.begin(), active.end(), j) != active.end()) continue;
      const double gap = g[j] - g_face;
      if (gap < most) {
        most = gap;
        entering = j;
      }
    }
    if (entering < 0) break;
    active.push_back(entering);
  }
  out.point = P * out.lambda;
  out.value = plain_norm(weights, p, x - out.point);
  return out;
}

double max_norm_value(const Vec& weights, double p, const std::vector<AffineTerm>& terms,
                      const Vec& y) {
  double v = 0.0;
  for (const auto& t : terms) v = std::max(v, plain_norm(weights, p, t.A * y + t.b));
  return v;
}

MinimaxResult minimize_max_norm(const Vec& weights, double p,
                                const std::vector<AffineTerm>& terms, const Vec& y0,
                                const MinimaxOptions& options) {
  MinimaxResult out;
  out.y = y0;
  out.value = max_norm_value(weights, p, terms, y0);
  if (terms.empty() || out.value == 0.0) return out;

  const double scale = out.value;
  const double mass = std::pow(std::max(weights.sum(), kTiny), 1.0 / p);
  std::vector<AffineTerm> scaled = terms;
  for (auto& t : scaled) t.b /= scale;
  Vec y = y0 / scale;
  const Eigen::Index n = y.size();

  std::vector<double> schedule = options.temperatures;
  schedule.insert(schedule.end(), options.polish.begin(), options.polish.end());

  Vec best_y = y;
  double best_val = 1.0;

  for (double tau : schedule) {
    const double eta = 0.1 * tau / mass;
    auto evaluate = [&](const Vec& yy, Vec* grad, Mat* hess) {
      const std::size_t m = scaled.size();
      std::vector<NormModel> models;
      models.reserve(m);
      double hmax = -std::numeric_limits<double>::infinity();
      for (const auto& t : scaled) {
        models.push_back(smooth_norm(weights, p, t.A * yy + t.b, eta));
        hmax = std::max(hmax, models.back().value);
      }
      double z = 0.0;
      std::vector<double> wts(m);
      for (std::size_t j = 0; j < m; ++j) {
        wts[j] = std::exp((models[j].value - hmax) / tau);
        z += wts[j];
      }
      const double f = hmax + tau * std::log(z);
      if (grad) {
        Vec gf = Vec::Zero(n);
        Mat H = Mat::Zero(n, n);
        std::vector<Vec> gj(m);
        for (std::size_t j = 0; j < m; ++j) {
          wts[j] /= z;
          const Mat& A = scaled[j].A;
          gj[j] = A.transpose() * models[j].grad;
          gf += wts[j] * gj[j];
          if (hess) {
            Mat Hj = A.transpose() * models[j].diag.asDiagonal() * A;
            Hj += models[j].rank_one * gj[j] * gj[j].transpose();
            H += wts[j] * (Hj + gj[j] * gj[j].transpose() / tau);
          }
        }
        if (hess) {
          H -= gf * gf.transpose() / tau;
          *hess = 0.5 * (H + H.transpose());
        }
        *grad = gf;
      }
      return f;
    };

    for (std::size_t it = 0; it < options.max_newton; ++it) {
      ++out.iterations;
      Vec g;
      Mat H;
      const double f = evaluate(y, &g, &H);
      if (!std::isfinite(f) || g.cwiseAbs().maxCoeff() == 0.0) break;
      const Vec d = damped_newton_direction(H, g);
      const double dec = -g.dot(d);
      if (dec <= 1e-3 * tau * tau) break;
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 50; ++ls) {
        const Vec yn = y + step * d;
        const double fn = evaluate(yn, nullptr, nullptr);
        if (fn <= f - 1e-4 * step * dec) {
          y = yn;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    const double exact = max_norm_value(weights, p, scaled, y);
    if (exact < best_val) {
      best_val = exact;
      best_y = y;
    }
  }
  out.y = best_y * scale;
  out.value = max_norm_value(weights, p, terms, out.y);
  return out;
}

}  // namespace isolab::solve
