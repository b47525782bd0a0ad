#include "ratequiv/system.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>

#include "ratequiv/univariate.hpp"

namespace ratequiv {

namespace {

using VecX = Eigen::VectorXcd;
using MatX = Eigen::MatrixXcd;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Radius of the endgame circle around t = 1.
constexpr double kEndgameRadius = 1e-6;
constexpr int kLoopSamples = 32;
constexpr int kMaxLoops = 16;
constexpr double kSingularMerge = 1e-3;
// Straggling singular estimates may be joined to a cluster this far away.
constexpr double kSingularRepair = 5e-2;
constexpr int kCleanAttempts = 4;

// Paths sharing a winding number c come in groups of c.
bool windings_consistent(const std::vector<int>& windings) {
  std::map<int, int> count;
  for (int w : windings) count[w]++;
  for (const auto& [w, c] : count)
    if (c % w != 0) return false;
  return true;
}

struct Compiled {
  int degree = 0;
  int nvars = 0;
  std::vector<std::pair<Exponent, Complex>> terms;

  Compiled(const ComplexForm& f, int n) : degree(f.degree()), nvars(n) {
    double m = f.max_coefficient();
    for (const auto& [e, c] : f.terms()) terms.emplace_back(e, c / m);
  }

  void eval(const VecX& x, Complex& value, Eigen::RowVectorXcd& grad) const {
    std::array<std::vector<Complex>, 4> pw;
    for (int i = 0; i < nvars; ++i) {
      auto& row = pw[static_cast<std::size_t>(i)];
      row.assign(static_cast<std::size_t>(degree) + 1, Complex(1));
      for (int k = 1; k <= degree; ++k) row[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k - 1)] * x(i);
    }
    value = 0;
    grad.setZero(nvars);
    for (const auto& [e, c] : terms) {
      Complex prod = c;
      for (int i = 0; i < nvars; ++i) prod *= pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e[static_cast<std::size_t>(i)])];
      value += prod;
      for (int j = 0; j < nvars; ++j) {
        int ej = e[static_cast<std::size_t>(j)];
        if (ej == 0) continue;
        Complex g = c * double(ej) * pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(ej - 1)];
        for (int i = 0; i < nvars; ++i)
          if (i != j) g *= pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e[static_cast<std::size_t>(i)])];
        grad(j) += g;
      }
    }
  }
};

struct Homotopy {
  int n = 0;  // equations; variables n + 1
  std::vector<Compiled> target;
  Complex gamma;
  VecX patch;

  // H, dH/dx and dH/ds at (x, s), where s = 1 - t is the distance to the
  // target system; keeping s explicit avoids cancellation near the end.
  // The last row is the affine patch.
  void eval(const VecX& x, Complex s, VecX& h, MatX& hx, VecX* hs) const {
    h.resize(n + 1);
    hx.resize(n + 1, n + 1);
    if (hs) hs->resize(n + 1);
    Eigen::RowVectorXcd grad;
    for (int i = 0; i < n; ++i) {
      const Compiled& f = target[static_cast<std::size_t>(i)];
      Complex fv;
      f.eval(x, fv, grad);
      const int d = f.degree;
      Complex a = std::pow(x(i + 1), d), b = std::pow(x(0), d);
      Complex g = a - b;
      Eigen::RowVectorXcd gg = Eigen::RowVectorXcd::Zero(n + 1);
      gg(i + 1) = double(d) * std::pow(x(i + 1), d - 1);
      gg(0) -= double(d) * std::pow(x(0), d - 1);
      h(i) = s * gamma * g + (1.0 - s) * fv;
      hx.row(i) = s * gamma * gg + (1.0 - s) * grad;
      if (hs) (*hs)(i) = gamma * g - fv;
    }
    h(n) = patch.dot(x) - 1.0;  // dot conjugates its first argument
    hx.row(n) = patch.adjoint();
    if (hs) (*hs)(n) = 0;
  }

  void eval_target(const VecX& x, VecX& h, MatX& hx) const { eval(x, Complex(0.0), h, hx, nullptr); }
};

using PathFn = std::function<Complex(double)>;

bool newton_correct(const Homotopy& hom, VecX& y, Complex t, double* first_step) {
  VecX h;
  MatX hx;
  double prev = 0.0;
  for (int it = 0; it < 4; ++it) {
    hom.eval(y, t, h, hx, nullptr);
    VecX delta = hx.partialPivLu().solve(h);
    double nd = delta.norm();
    if (!std::isfinite(nd)) return false;
    y -= delta;
    if (it == 0 && first_step) *first_step = nd;
    if (nd <= 1e-9 * (1.0 + y.norm())) return true;
    if (it > 0 && nd > 0.5 * prev) return false;
    prev = nd;
  }
  return false;
}

// Tracks x from tau0 to tau1 along s(tau) with derivative ds(tau).
bool track(const Homotopy& hom, VecX& x, const PathFn& t, const PathFn& dt, double tau0, double tau1,
           double max_step) {
  double tau = tau0;
  double step = std::min(max_step, tau1 - tau0) * 0.25;
  int streak = 0;
  VecX h, ht;
  MatX hx;
  auto velocity = [&](const VecX& y, double s) -> VecX {
    hom.eval(y, t(s), h, hx, &ht);
    return -hx.partialPivLu().solve(ht * dt(s));
  };
  for (int guard = 0; guard < 200000 && tau < tau1; ++guard) {
    double s = std::min(step, tau1 - tau);
    VecX k1 = velocity(x, tau);
    VecX k2 = velocity(x + 0.5 * s * k1, tau + 0.5 * s);
    VecX k3 = velocity(x + 0.5 * s * k2, tau + 0.5 * s);
    VecX k4 = velocity(x + s * k3, tau + s);
    VecX y = x + (s / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    double first = 0.0;
    bool ok = y.allFinite() && newton_correct(hom, y, t(tau + s), &first) && first <= 1e-5 * (1.0 + y.norm());
    if (ok) {
      x = y;
      tau = (s == tau1 - tau) ? tau1 : tau + s;
      if (++streak >= 3) {
        step = std::min(2.0 * step, max_step);
        streak = 0;
      }
      if (x.norm() > 1e9) return false;
    } else {
      step *= 0.5;
      streak = 0;
      if (step < 1e-15 * std::max(1.0, std::abs(tau1))) return false;
    }
  }
  return tau >= tau1;
}

struct Endpoint {
  VecX x;  // patch coordinates
  bool singular = false;
  int winding = 1;
};

VecX projective_normalize(const VecX& x) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i)
    if (std::abs(x(i)) > std::abs(x(best)) * (1.0 + 1e-12)) best = i;
  return x / x(best);
}

double chordal(const VecX& a, const VecX& b) {
  VecX u = a.normalized(), v = b.normalized();
  return (v - u * u.dot(v)).norm();
}

double target_residual(const Homotopy& hom, const VecX& x) {
  VecX y = x / x.cwiseAbs().maxCoeff();
  double worst = 0.0;
  Eigen::RowVectorXcd grad;
  for (const auto& f : hom.target) {
    Complex v;
    f.eval(y, v, grad);
    double scale = 0.0;
    for (const auto& [e, c] : f.terms) scale += std::abs(c);
    worst = std::max(worst, std::abs(v) / scale);
  }
  return worst;
}

bool regular_endpoint(const Homotopy& hom, const VecX& x, Endpoint& out) {
  VecX y = x, h;
  MatX hx;
  for (int it = 0; it < 8; ++it) {
    hom.eval_target(y, h, hx);
    VecX delta = hx.partialPivLu().solve(h);
    if (!delta.allFinite()) return false;
    y -= delta;
    if (delta.norm() <= 1e-13 * (1.0 + y.norm())) {
      hom.eval_target(y, h, hx);
      Eigen::JacobiSVD<MatX> svd(hx);
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) <= 1e-8 * sv(0)) return false;
      out = {y, false, 1};
      return true;
    }
  }
  return false;
}

// Cauchy integral around t = 1 on a circle of the given radius; the loop
// count until the path closes is the winding number of its cycle.
bool cauchy_endpoint(const Homotopy& hom, VecX x, double radius, Endpoint& out) {
  PathFn t = [radius](double tau) { return radius * std::polar(1.0, kTwoPi * tau); };
  PathFn dt = [radius](double tau) { return radius * Complex(0.0, kTwoPi) * std::polar(1.0, kTwoPi * tau); };
  VecX start = x, sum = VecX::Zero(x.size());
  int samples = 0;
  for (int loop = 1; loop <= kMaxLoops; ++loop) {
    for (int k = 0; k < kLoopSamples; ++k) {
      sum += x;
      ++samples;
      double a = double(k) / kLoopSamples, b = double(k + 1) / kLoopSamples;
      if (!track(hom, x, t, dt, a, b, 1.0 / kLoopSamples)) return false;
    }
    if ((x - start).norm() <= 1e-8 * (1.0 + start.norm())) {
      out = {sum / double(samples), true, loop};
      return true;
    }
  }
  return false;
}

// Newton converges only linearly toward a singular solution, but it still
// pulls a rough endgame estimate onto it. Kept only if it stays close.
VecX polish_singular(const Homotopy& hom, const VecX& x) {
  VecX y = x, h;
  MatX hx;
  for (int it = 0; it < 200; ++it) {
    hom.eval_target(y, h, hx);
    VecX delta = hx.partialPivLu().solve(h);
    if (!delta.allFinite()) break;
    y -= delta;
    if (delta.norm() <= 1e-14 * (1.0 + y.norm())) break;
  }
  if (!y.allFinite() || (y - x).norm() > 1e-2 * (1.0 + x.norm())) return x;
  return target_residual(hom, y) <= target_residual(hom, x) * 10.0 ? y : x;
}

// x is the path point at s = kEndgameRadius. Smaller circles are tried
// when nearby branch points spoil the Puiseux expansion on the first one;
// a correct estimate solves the target system to rounding level.
bool endgame(const Homotopy& hom, VecX x, double accept, Endpoint& out) {
  double radius = kEndgameRadius;
  Endpoint best;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int level = 0; level < 4; ++level) {
    if (level > 0) {
      const double from = radius, to = radius * 1e-2;
      PathFn t = [from, to](double tau) { return Complex(from + (to - from) * tau, 0.0); };
      PathFn dt = [from, to](double) { return Complex(to - from, 0.0); };
      if (!track(hom, x, t, dt, 0.0, 1.0, 0.05)) break;
      radius = to;
    }
    if (regular_endpoint(hom, x, out)) return true;
    Endpoint e;
    if (!cauchy_endpoint(hom, x, radius, e)) continue;
    double r = target_residual(hom, e.x);
    if (r < 1e-12) {
      out = e;
      return true;
    }
    if (r < best_residual) {
      best = e;
      best_residual = r;
    }
  }
  if (best_residual >= accept) return false;
  best.x = polish_singular(hom, best.x);
  out = best;
  return true;
}

std::vector<VecX> start_solutions(const std::vector<int>& degrees, const VecX& patch) {
  const int n = static_cast<int>(degrees.size());
  std::vector<VecX> out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    VecX x(n + 1);
    x(0) = 1.0;
    for (int i = 0; i < n; ++i)
      x(i + 1) = std::polar(1.0, kTwoPi * idx[static_cast<std::size_t>(i)] / degrees[static_cast<std::size_t>(i)]);
    x /= patch.dot(x);
    out.push_back(x);
    int k = 0;
    while (k < n && ++idx[static_cast<std::size_t>(k)] == degrees[static_cast<std::size_t>(k)]) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
  }
  return out;
}

int variables_used(const ComplexForm& f) {
  int n = 0;
  for (const auto& [e, c] : f.terms())
    for (int i = 0; i < 4; ++i)
      if (e[static_cast<std::size_t>(i)] > 0) n = std::max(n, i + 1);
  return n;
}

// f(B y) for a (n+1) x n matrix B, as a form in the first n variables.
ComplexForm restrict_to_subspace(const ComplexForm& f, const MatX& b) {
  Eigen::Matrix<Complex, 4, 4> m = Eigen::Matrix<Complex, 4, 4>::Zero();
  m.block(0, 0, b.rows(), b.cols()) = b;
  return substitute_linear(f, m);
}

MatX random_matrix(Rng& rng, int rows, int cols) {
  MatX m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_complex(rng);
  return m;
}

bool vanishes(const ComplexForm& f) { return f.is_zero() || f.max_coefficient() == 0.0; }

// One binary form: roots in a random chart of P^1.
SystemReport solve_binary(const ComplexForm& f, Rng& rng, const RunConfig& config) {
  MatX rot = random_matrix(rng, 2, 2);
  Eigen::HouseholderQR<MatX> qr(rot);
  MatX q = qr.householderQ();
  ComplexForm g = restrict_to_subspace(f, q);
  const int d = g.degree();
  std::vector<Complex> coeffs(static_cast<std::size_t>(d) + 1, Complex(0));
  for (const auto& [e, c] : g.terms()) coeffs[static_cast<std::size_t>(e[0])] += c;
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  if (m <= 1e-13 * f.max_coefficient())
    throw ImproperIntersectionError("binary form vanishes identically");
  RootOptions opts;
  opts.cluster_tol = config.cluster_tol;
  opts.precision_bits = config.precision;
  SystemReport report;
  report.paths = d;
  report.attempts = 1;
  for (const auto& r : find_roots(UnivariatePolynomial<double>(coeffs), opts)) {
    VecX y(2);
    y << r.value, 1.0;
    VecX x = projective_normalize(q * y);
    report.solutions.push_back({x, r.multiplicity, r.multiplicity > 1, 0.0});
  }
  int total = 0;
  for (const auto& s : report.solutions) total += s.multiplicity;
  if (total != d) throw SolverError("binary form lost roots at infinity of the chosen chart");
  return report;
}

// Finite-ness test: a positive-dimensional solution set meets a random
// hyperplane, so solve all but the last equation on one and test the last.
bool positive_dimensional(const std::vector<ComplexForm>& forms, int n, Rng& rng, const RunConfig& config) {
  MatX b = random_matrix(rng, n + 1, n);
  std::vector<ComplexForm> restricted;
  for (int i = 0; i + 1 < n; ++i) restricted.push_back(restrict_to_subspace(forms[static_cast<std::size_t>(i)], b));
  if (n == 1) return false;
  SystemReport slice;
  try {
    slice = solve_projective_system(restricted, rng, config);
  } catch (const ImproperIntersectionError&) {
    return true;
  }
  const ComplexForm& last = forms[static_cast<std::size_t>(n - 1)];
  for (const auto& s : slice.solutions) {
    VecX x = b * s.point;
    if (normalized_residual({last}, x) < 1e-9) return true;
  }
  return false;
}

}  // namespace

double normalized_residual(const std::vector<ComplexForm>& forms, const Eigen::VectorXcd& x) {
  double worst = 0.0;
  VecX y = x / x.cwiseAbs().maxCoeff();
  Vec4c v = Vec4c::Zero();
  for (Eigen::Index i = 0; i < y.size(); ++i) v(i) = y(i);
  for (const auto& f : forms) {
    double scale = 0.0;
    for (const auto& [e, c] : f.terms()) scale += std::abs(c);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(f(v)) / scale);
  }
  return worst;
}

SystemReport solve_projective_system(const std::vector<ComplexForm>& forms, Rng& rng, const RunConfig& config) {
  const int n = static_cast<int>(forms.size());
  if (n < 1 || n > 3) throw std::invalid_argument("systems of 1 to 3 equations are supported");
  for (const auto& f : forms) {
    if (vanishes(f)) throw ImproperIntersectionError("an equation vanishes identically");
    if (variables_used(f) > n + 1) throw std::invalid_argument("equation uses more variables than the system");
  }
  std::vector<int> degrees;
  int expected = 1;
  for (const auto& f : forms) {
    degrees.push_back(f.degree());
    expected *= f.degree();
  }
  if (expected == 0) return {};  // a nonzero constant equation has no solutions
  if (n == 1) return solve_binary(forms[0], rng, config);

  if (positive_dimensional(forms, n, rng, config))
    throw ImproperIntersectionError("the system has a positive-dimensional solution set");

  const int max_attempts = std::min(config.max_attempts, 8);
  std::string reason;
  std::optional<SystemReport> fallback;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (fallback && attempt > kCleanAttempts) break;
    Homotopy hom;
    hom.n = n;
    for (const auto& f : forms) hom.target.emplace_back(f, n + 1);
    hom.gamma = random_phase(rng);
    hom.patch.resize(n + 1);
    for (int i = 0; i <= n; ++i) hom.patch(i) = random_complex(rng);

    PathFn t = [](double tau) { return Complex(1.0 - tau, 0.0); };
    PathFn dt = [](double) { return Complex(-1.0, 0.0); };
    std::vector<Endpoint> ends;
    bool failed = false;
    for (VecX x : start_solutions(degrees, hom.patch)) {
      Endpoint e;
      if (!track(hom, x, t, dt, 0.0, 1.0 - kEndgameRadius, 0.05)) {
        reason = "a path failed before the endgame";
        failed = true;
        break;
      }
      if (!endgame(hom, x, config.residual_tol, e)) {
        reason = "a path failed in the endgame";
        failed = true;
        break;
      }
      ends.push_back(e);
    }
    if (failed) continue;

    // Group endpoints. Coinciding regular endpoints mean a path jumped.
    // Singular estimates are only accurate to roughly the 1/c power of the
    // working precision, so they are processed best first and join any
    // singular cluster within kSingularMerge.
    std::vector<std::size_t> order(ends.size());
    std::vector<double> residual(ends.size());
    for (std::size_t i = 0; i < ends.size(); ++i) {
      order[i] = i;
      residual[i] = ends[i].singular ? target_residual(hom, ends[i].x) : 0.0;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (ends[x].singular != ends[y].singular) return !ends[x].singular;
      return residual[x] < residual[y];
    });
    std::vector<SystemSolution> sols;
    std::vector<std::vector<int>> windings;
    bool jumped = false;
    for (std::size_t i : order) {
      const Endpoint& e = ends[i];
      VecX p = projective_normalize(e.x);
      std::size_t nearest = sols.size();
      double nearest_dist = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < sols.size(); ++k) {
        double dist = chordal(sols[k].point, p);
        if (dist < nearest_dist) {
          nearest = k;
          nearest_dist = dist;
        }
      }
      if (nearest < sols.size() && nearest_dist <= 1e-6 && (!e.singular || !sols[nearest].singular)) {
        jumped = true;
        break;
      }
      if (nearest < sols.size() && e.singular && sols[nearest].singular && nearest_dist <= kSingularMerge) {
        sols[nearest].multiplicity += 1;
        windings[nearest].push_back(e.winding);
      } else {
        sols.push_back({p, 1, e.singular, 0.0});
        windings.push_back({e.winding});
      }
    }
    if (jumped) {
      reason = "two paths reached the same regular endpoint";
      continue;
    }
    bool repaired = false;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = 0; k < sols.size() && !changed; ++k) {
        if (!sols[k].singular || windings_consistent(windings[k])) continue;
        std::size_t into = sols.size();
        double best = kSingularRepair;
        for (std::size_t j = 0; j < sols.size(); ++j) {
          if (j == k || !sols[j].singular) continue;
          double dist = chordal(sols[j].point, sols[k].point);
          if (dist <= best) {
            into = j;
            best = dist;
          }
        }
        if (into == sols.size()) continue;
        // Keep the estimate of the larger cluster.
        if (windings[k].size() > windings[into].size()) sols[into].point = sols[k].point;
        sols[into].multiplicity += sols[k].multiplicity;
        windings[into].insert(windings[into].end(), windings[k].begin(), windings[k].end());
        sols.erase(sols.begin() + static_cast<std::ptrdiff_t>(k));
        windings.erase(windings.begin() + static_cast<std::ptrdiff_t>(k));
        repaired = changed = true;
      }
    }
    bool consistent = true;
    for (std::size_t k = 0; k < sols.size() && consistent; ++k) {
      if (!windings_consistent(windings[k])) {
        // A mismeasured winding at a singular cluster leaves its path count
        // intact; anywhere else it means a path was lost.
        if (sols[k].singular) {
          repaired = true;
        } else {
          consistent = false;
          reason = "winding numbers inconsistent with the path count";
        }
      }
      sols[k].residual = normalized_residual(forms, sols[k].point);
      if (sols[k].residual > config.residual_tol) {
        consistent = false;
        reason = "an endpoint does not solve the system";
      }
    }
    if (!consistent) continue;
    std::sort(sols.begin(), sols.end(), [](const SystemSolution& a, const SystemSolution& b) {
      for (Eigen::Index i = 0; i < a.point.size(); ++i) {
        if (a.point(i).real() != b.point(i).real()) return a.point(i).real() < b.point(i).real();
        if (a.point(i).imag() != b.point(i).imag()) return a.point(i).imag() < b.point(i).imag();
      }
      return false;
    });
    SystemReport report;
    report.solutions = std::move(sols);
    report.paths = expected;
    report.attempts = attempt;
    report.repaired = repaired;
    if (!repaired) return report;
    if (!fallback) fallback = std::move(report);
  }
  if (fallback) return *fallback;
  throw SolverError("path tracking failed to produce " + std::to_string(expected) + " consistent endpoints after " +
                    std::to_string(max_attempts) + " attempts (" + reason + ")");
}

}  // namespace ratequiv
