#include "permconc/dual_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "permconc/measure.hpp"
#include "permconc/min_norm_point.hpp"

namespace permconc {

double r_c(const std::vector<double>& f, double c, std::size_t x) {
  if (x >= f.size()) throw std::out_of_range("r_c: point out of range");
  if (c < 0.0) throw std::invalid_argument("r_c: c must be nonnegative");
  double other = kInfinity;
  for (std::size_t y = 0; y < f.size(); ++y)
    if (y != x) other = std::min(other, f[y]);
  return std::min(f[x], other + c);
}

double c_alpha(double u, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("c_alpha: alpha must lie in (0,1)");
  if (u < 0.0) throw std::invalid_argument("c_alpha: u must be nonnegative");
  if (u > 1.0) return kInfinity;
  if (u == 1.0) return -std::log1p(-alpha) / alpha;
  if (u < 0.05) {
    double s = 0.0, uk = u, ak = 1.0;  // uk = u^k, ak = α^{k-1}
    for (int k = 2; k < 60; ++k) {
      uk *= u;
      ak *= alpha;
      s += (1.0 - ak) / (1.0 - alpha) * uk / (static_cast<double>(k) * (k - 1));
    }
    return s;
  }
  const double num = alpha * (1.0 - u) * std::log1p(-u) - (1.0 - alpha * u) * std::log1p(-alpha * u);
  return num / (alpha * (1.0 - alpha));
}

double c_alpha_derivative(double u, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("c_alpha: alpha must lie in (0,1)");
  if (u >= 1.0) return kInfinity;
  return (std::log1p(-alpha * u) - std::log1p(-u)) / (1.0 - alpha);
}

double extremal_two_point_minimum(const std::vector<double>& g, const std::vector<double>& F, double K) {
  if (g.size() != F.size() || g.empty()) throw std::invalid_argument("extremal_two_point_minimum: size mismatch");
  double scale = std::abs(K);
  for (double v : F) scale = std::max(scale, std::abs(v));
  const double tol = 1e-14 * std::max(1.0, scale);
  double best = kInfinity;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (std::abs(F[i] - K) <= tol) best = std::min(best, g[i]);
    for (std::size_t j = 0; j < F.size(); ++j) {
      if (!(F[i] < K && K < F[j])) continue;
      const double lam = (F[j] - K) / (F[j] - F[i]);
      best = std::min(best, lam * g[i] + (1.0 - lam) * g[j]);
    }
  }
  return best;
}

double BarycentricPenalty::value(double m) const {
  if (alpha == 0.0) return m * m / (2.0 * c * c * t);
  return t * c_alpha(m / (c * t), alpha);
}

double BarycentricPenalty::derivative(double m) const {
  if (alpha == 0.0) return m / (c * c * t);
  return c_alpha_derivative(m / (c * t), alpha) / c;
}

double BarycentricPenalty::domain() const { return alpha == 0.0 ? kInfinity : c * t; }

double two_point_infimum(const std::vector<double>& phi, const std::vector<double>& dist, const BarycentricPenalty& pen) {
  if (phi.size() != dist.size() || phi.empty()) throw std::invalid_argument("two_point_infimum: size mismatch");
  // Only the smallest φ at each distance level can be optimal.
  std::vector<std::size_t> idx(phi.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  std::vector<double> lv_d, lv_phi;
  for (std::size_t i : idx) {
    if (!lv_d.empty() && dist[i] - lv_d.back() <= 1e-12 * std::max(1.0, std::abs(dist[i]))) {
      lv_phi.back() = std::min(lv_phi.back(), phi[i]);
    } else {
      lv_d.push_back(dist[i]);
      lv_phi.push_back(phi[i]);
    }
  }
  const double dom = pen.domain();
  double best = kInfinity;
  for (std::size_t i = 0; i < lv_d.size(); ++i) {
    if (lv_d[i] > dom) break;
    best = std::min(best, lv_phi[i] + pen.value(lv_d[i]));
    for (std::size_t j = i + 1; j < lv_d.size(); ++j) {
      const double dd = lv_d[j] - lv_d[i];
      const double dphi = lv_phi[j] - lv_phi[i];
      if (dphi >= 0.0) continue;  // moving mass farther must pay off in φ
      const double lam_max = std::min(1.0, (dom - lv_d[i]) / dd);
      auto h = [&](double lam) { return lv_phi[i] + lam * dphi + pen.value(lv_d[i] + lam * dd); };
      auto slope = [&](double lam) { return dphi + pen.derivative(lv_d[i] + lam * dd) * dd; };
      double lam;
      if (pen.alpha == 0.0) {
        const double m = -dphi * pen.c * pen.c * pen.t / dd;
        lam = std::clamp((m - lv_d[i]) / dd, 0.0, lam_max);
      } else if (slope(0.0) >= 0.0) {
        lam = 0.0;
      } else if (lam_max >= 1.0 && slope(1.0) <= 0.0) {
        lam = 1.0;
      } else {
        double lo = 0.0, hi = lam_max;
        for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
          const double mid = 0.5 * (lo + hi);
          (slope(mid) < 0.0 ? lo : hi) = mid;
        }
        lam = lo;
      }
      best = std::min(best, h(lam));
    }
  }
  return best;
}

namespace {

std::vector<double> distance_row(const DistanceMatrix& d, std::size_t sigma) {
  if (sigma >= d.size()) throw std::out_of_range("operator: point out of range");
  std::vector<double> row(d.size());
  for (std::size_t y = 0; y < d.size(); ++y) row[y] = d(sigma, y);
  return row;
}

std::vector<double> indicator_row(std::size_t n, std::size_t x) {
  if (x >= n) throw std::out_of_range("operator: point out of range");
  std::vector<double> row(n, 1.0);
  row[x] = 0.0;
  return row;
}

}  // namespace

double q_tilde(const std::vector<double>& phi, const DistanceMatrix& d, std::size_t sigma, double t, double c) {
  if (!(t > 0.0) || !(c > 0.0)) throw std::invalid_argument("q_tilde: t and c must be positive");
  return two_point_infimum(phi, distance_row(d, sigma), BarycentricPenalty{t, c, 0.0});
}

double q_tilde_alpha(const std::vector<double>& phi, const DistanceMatrix& d, std::size_t sigma, double t, double c,
                     double alpha) {
  if (!(t > 0.0) || !(c > 0.0)) throw std::invalid_argument("q_tilde_alpha: t and c must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("q_tilde_alpha: alpha must lie in (0,1)");
  return two_point_infimum(phi, distance_row(d, sigma), BarycentricPenalty{t, c, alpha});
}

double r_tilde(const std::vector<double>& f, std::size_t x) {
  return two_point_infimum(f, indicator_row(f.size(), x), BarycentricPenalty{1.0, 1.0, 0.0});
}

double r_tilde_alpha(const std::vector<double>& f, std::size_t x, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("r_tilde_alpha: alpha must lie in (0,1)");
  return two_point_infimum(f, indicator_row(f.size(), x), BarycentricPenalty{1.0, 1.0, alpha});
}

double q_w1(const std::vector<double>& phi, const DistanceMatrix& d, std::size_t sigma) {
  if (phi.size() != d.size()) throw std::invalid_argument("q_w1: size mismatch");
  if (sigma >= d.size()) throw std::out_of_range("q_w1: point out of range");
  double best = kInfinity;
  for (std::size_t y = 0; y < d.size(); ++y) best = std::min(best, phi[y] + d(sigma, y));
  return best;
}

QPResult coordinate_inf_convolution(const std::vector<double>& phi, const PointSet& points, std::size_t at,
                                    const std::vector<double>& weights, const QPOptions& options) {
  const std::size_t N = points.size();
  const auto K = static_cast<std::size_t>(points.dim());
  if (phi.size() != N) throw std::invalid_argument("coordinate_inf_convolution: φ size differs from carrier");
  if (weights.size() != K) throw std::invalid_argument("coordinate_inf_convolution: one weight per coordinate expected");
  if (at >= N) throw std::out_of_range("coordinate_inf_convolution: point out of range");

  // a[y*K+k] = 1[x_k ≠ y_k]
  std::vector<double> a(N * K);
  for (std::size_t y = 0; y < N; ++y)
    for (std::size_t k = 0; k < K; ++k) a[y * K + k] = points[at][k] != points[y][k] ? 1.0 : 0.0;

  QPResult out;
  std::vector<double>& p = out.p;
  p.assign(N, 0.0);
  p[at] = 1.0;
  std::vector<double> s(K, 0.0), grad(N), ds(K);
  double lin = phi[at];
  auto refresh = [&] {
    std::fill(s.begin(), s.end(), 0.0);
    lin = 0.0;
    for (std::size_t y = 0; y < N; ++y) {
      if (p[y] == 0.0) continue;
      lin += p[y] * phi[y];
      for (std::size_t k = 0; k < K; ++k) s[k] += p[y] * a[y * K + k];
    }
  };
  for (std::size_t it = 0;; ++it) {
    if (it % 64 == 0) refresh();
    double quad = 0.0;
    for (std::size_t k = 0; k < K; ++k) quad += weights[k] * s[k] * s[k];
    out.value = lin + quad;
    std::size_t fw = 0, away = N;
    double gp = 0.0;
    for (std::size_t y = 0; y < N; ++y) {
      double g = phi[y];
      for (std::size_t k = 0; k < K; ++k) g += 2.0 * weights[k] * s[k] * a[y * K + k];
      grad[y] = g;
      if (g < grad[fw]) fw = y;
      if (p[y] > 0.0) {
        gp += p[y] * g;
        if (away == N || g > grad[away]) away = y;
      }
    }
    out.gap = std::max(0.0, gp - grad[fw]);
    out.iterations = it;
    if (out.gap <= options.gap_target) {
      out.converged = true;
      break;
    }
    if (it >= options.max_iterations) break;

    const bool fw_step = gp - grad[fw] >= grad[away] - gp;
    double gamma_max, dlin;
    if (fw_step) {
      for (std::size_t k = 0; k < K; ++k) ds[k] = a[fw * K + k] - s[k];
      dlin = phi[fw] - lin;
      gamma_max = 1.0;
    } else {
      for (std::size_t k = 0; k < K; ++k) ds[k] = s[k] - a[away * K + k];
      dlin = lin - phi[away];
      gamma_max = p[away] / (1.0 - p[away]);
    }
    double slope = dlin, curv = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      slope += 2.0 * weights[k] * s[k] * ds[k];
      curv += weights[k] * ds[k] * ds[k];
    }
    double gamma = curv > 0.0 ? std::clamp(-slope / (2.0 * curv), 0.0, gamma_max) : (slope < 0.0 ? gamma_max : 0.0);
    if (!(gamma > 0.0)) break;
    if (fw_step) {
      for (double& v : p) v *= (1.0 - gamma);
      p[fw] += gamma;
    } else {
      for (double& v : p) v *= (1.0 + gamma);
      p[away] -= gamma;
      if (gamma >= gamma_max) p[away] = 0.0;
    }
    for (std::size_t k = 0; k < K; ++k) s[k] += gamma * ds[k];
    lin += gamma * dlin;
  }
  refresh();
  double quad = 0.0;
  for (std::size_t k = 0; k < K; ++k) quad += weights[k] * s[k] * s[k];
  out.value = lin + quad;
  return out;
}

QPResult q_paren(const std::vector<double>& phi, const PointSet& points, std::size_t sigma, double c,
                 const QPOptions& options) {
  if (!(c > 0.0)) throw std::invalid_argument("q_paren: c must be positive");
  return coordinate_inf_convolution(phi, points, sigma, std::vector<double>(static_cast<std::size_t>(points.dim()), 1.0 / (2.0 * c * c)),
                                    options);
}

QPResult q_j(const std::vector<double>& phi, const PointSet& points, std::size_t sigma, double c, int j,
             const QPOptions& options) {
  if (!(c > 0.0)) throw std::invalid_argument("q_j: c must be positive");
  if (j < 1 || j > points.dim()) throw std::invalid_argument("q_j: coordinate j out of range");
  std::vector<double> w(static_cast<std::size_t>(points.dim()), 1.0 / (2.0 * c * c));
  w[static_cast<std::size_t>(j - 1)] = 1.0 / (c * c);
  return coordinate_inf_convolution(phi, points, sigma, w, options);
}

QPResult q_hat(const std::vector<double>& f, const PointSet& slice, std::size_t x, const QPOptions& options) {
  return coordinate_inf_convolution(f, slice, x, std::vector<double>(static_cast<std::size_t>(slice.dim()), 0.125), options);
}

TalagrandResult talagrand_f(const PointSet& points, std::size_t sigma, const std::vector<std::size_t>& A) {
  if (A.empty()) throw std::invalid_argument("talagrand_f: A must be nonempty");
  if (sigma >= points.size()) throw std::out_of_range("talagrand_f: point out of range");
  std::set<std::vector<double>> unique;
  for (std::size_t y : A) {
    if (y >= points.size()) throw std::out_of_range("talagrand_f: element of A out of range");
    std::vector<double> v(static_cast<std::size_t>(points.dim()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = points[sigma][k] != points[y][k] ? 1.0 : 0.0;
    unique.insert(std::move(v));
  }
  std::vector<std::vector<double>> verts(unique.begin(), unique.end());
  MinNormOptions opts;
  opts.gap_target = 1e-14;
  const auto mn = min_norm_point(verts, opts);
  TalagrandResult out;
  out.point = mn.point;
  out.value = mn.value;
  double worst = kInfinity;
  for (const auto& v : verts) {
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) s += mn.point[k] * (v[k] - mn.point[k]);
    worst = std::min(worst, s);
  }
  out.optimality = worst;
  return out;
}

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Q: return "Q";
    case OperatorKind::Q_tilde_t: return "Q_tilde_t";
    case OperatorKind::Q_tilde_alpha: return "Q_tilde_alpha";
    case OperatorKind::Q_paren: return "Q_paren";
    case OperatorKind::Q_j: return "Q_j";
    case OperatorKind::Q_hat: return "Q_hat";
    case OperatorKind::R_c: return "R_c";
    case OperatorKind::R_tilde: return "R_tilde";
    case OperatorKind::R_tilde_alpha: return "R_tilde_alpha";
  }
  return "unknown";
}

OperatorKind parse_operator(const std::string& name) {
  for (auto k : {OperatorKind::Q, OperatorKind::Q_tilde_t, OperatorKind::Q_tilde_alpha, OperatorKind::Q_paren,
                 OperatorKind::Q_j, OperatorKind::Q_hat, OperatorKind::R_c, OperatorKind::R_tilde,
                 OperatorKind::R_tilde_alpha})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown operator '" + name + "'");
}

void InfConvSpec::validate(int n) const {
  const bool uses_t = kind == OperatorKind::Q_tilde_t || kind == OperatorKind::Q_tilde_alpha;
  const bool uses_c = uses_t || kind == OperatorKind::Q_paren || kind == OperatorKind::Q_j || kind == OperatorKind::R_c;
  const bool uses_alpha = kind == OperatorKind::Q_tilde_alpha || kind == OperatorKind::R_tilde_alpha;
  if (uses_t && !(t > 0.0)) throw std::invalid_argument("operator parameter t must be positive");
  if (uses_c && kind != OperatorKind::R_c && !(c > 0.0)) throw std::invalid_argument("operator parameter c must be positive");
  if (kind == OperatorKind::R_c && !(c >= 0.0)) throw std::invalid_argument("operator parameter c must be nonnegative");
  if (uses_alpha && !(alpha >= 1e-6 && alpha <= 1.0 - 1e-6)) {
    throw std::invalid_argument("operator parameter alpha must lie in [1e-6, 1-1e-6]");
  }
  if (kind == OperatorKind::Q_j && (j < 1 || j > n)) throw std::invalid_argument("operator parameter j out of range");
}

std::vector<double> evaluate_operator(const InfConvSpec& spec, const std::vector<double>& phi, const DistanceMatrix& d,
                                      const PointSet& points) {
  spec.validate(points.dim());
  const std::size_t N = phi.size();
  std::vector<double> out(N);
  for (std::size_t x = 0; x < N; ++x) {
    switch (spec.kind) {
      case OperatorKind::Q: out[x] = q_w1(phi, d, x); break;
      case OperatorKind::Q_tilde_t: out[x] = q_tilde(phi, d, x, spec.t, spec.c); break;
      case OperatorKind::Q_tilde_alpha: out[x] = q_tilde_alpha(phi, d, x, spec.t, spec.c, spec.alpha); break;
      case OperatorKind::Q_paren: out[x] = q_paren(phi, points, x, spec.c).value; break;
      case OperatorKind::Q_j: out[x] = q_j(phi, points, x, spec.c, spec.j).value; break;
      case OperatorKind::Q_hat: out[x] = q_hat(phi, points, x).value; break;
      case OperatorKind::R_c: out[x] = r_c(phi, spec.c, x); break;
      case OperatorKind::R_tilde: out[x] = r_tilde(phi, x); break;
      case OperatorKind::R_tilde_alpha: out[x] = r_tilde_alpha(phi, x, spec.alpha); break;
    }
  }
  return out;
}

}  // namespace permconc
