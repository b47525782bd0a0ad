#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ratequiv/univariate.hpp"

namespace ratequiv {

namespace {

template <typename Real>
struct Evaluation {
  std::complex<Real> newton;  // p / p'
  Real residual;              // |p(z)|, scaled consistently with `bound`
  Real bound;                 // rounding bound for the same quantity
};

// Newton correction with the reversed polynomial when |z| > 1, which keeps
// Horner's rule well scaled for large roots.
template <typename Real>
Evaluation<Real> evaluate(const std::vector<std::complex<Real>>& a, const std::complex<Real>& z) {
  using C = std::complex<Real>;
  const int n = static_cast<int>(a.size()) - 1;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real az = std::abs(z);
  if (az <= Real(1)) {
    C p = a[static_cast<std::size_t>(n)], dp(0);
    Real b = std::abs(p);
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + a[static_cast<std::size_t>(k)];
      b = b * az + std::abs(a[static_cast<std::size_t>(k)]);
    }
    C newton = (dp == C(0)) ? C(0) : p / dp;
    return {newton, std::abs(p), Real(4 * (n + 1)) * eps * b};
  }
  C y = Real(1) / z;
  Real ay = std::abs(y);
  C q = a[0], dq(0);
  Real b = std::abs(q);
  for (int k = 1; k <= n; ++k) {
    dq = dq * y + q;
    q = q * y + a[static_cast<std::size_t>(k)];
    b = b * ay + std::abs(a[static_cast<std::size_t>(k)]);
  }
  C denom = y * (Real(n) - y * dq / q);
  C newton = (q == C(0) || denom == C(0)) ? C(0) : Real(1) / denom;
  return {newton, std::abs(q), Real(4 * (n + 1)) * eps * b};
}

// Initial approximations on circles from the upper convex hull of
// (k, log|a_k|), one circle per hull edge.
template <typename Real>
std::vector<std::complex<Real>> initial_guesses(const std::vector<std::complex<Real>>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<int> hull;
  std::vector<Real> lg(a.size());
  for (int k = 0; k <= n; ++k) {
    Real m = std::abs(a[static_cast<std::size_t>(k)]);
    lg[static_cast<std::size_t>(k)] = m > 0 ? std::log(m) : -std::numeric_limits<Real>::infinity();
  }
  for (int k = 0; k <= n; ++k) {
    if (!std::isfinite(lg[static_cast<std::size_t>(k)])) continue;
    while (hull.size() >= 2) {
      int i = hull[hull.size() - 2], j = hull.back();
      Real cross = (lg[static_cast<std::size_t>(j)] - lg[static_cast<std::size_t>(i)]) * Real(k - i) -
                   (lg[static_cast<std::size_t>(k)] - lg[static_cast<std::size_t>(i)]) * Real(j - i);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }
  std::vector<std::complex<Real>> z;
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    int i = hull[h], j = hull[h + 1];
    int count = j - i;
    Real radius = std::exp((lg[static_cast<std::size_t>(i)] - lg[static_cast<std::size_t>(j)]) / Real(count));
    for (int k = 0; k < count; ++k) {
      Real angle = two_pi * Real(k) / Real(count) + two_pi * Real(h + 1) / Real(n) + Real(0.4);
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

// A k-fold root of p is a simple root of p^(k-1); polish the cluster
// centroid there. The centroid is kept if Newton wanders off.
template <typename Real>
std::complex<Real> refine_multiple_root(const std::vector<std::complex<Real>>& a, int k,
                                        const std::complex<Real>& centroid) {
  using C = std::complex<Real>;
  std::vector<C> d = a;
  for (int step = 0; step < k - 1; ++step) {
    std::vector<C> next;
    for (std::size_t j = 1; j < d.size(); ++j) next.push_back(d[j] * Real(j));
    d = std::move(next);
  }
  if (d.size() < 2) return centroid;
  C z = centroid;
  Real start_step(-1);
  for (int it = 0; it < 30; ++it) {
    C p(0), dp(0);
    for (auto c = d.rbegin(); c != d.rend(); ++c) {
      dp = dp * z + p;
      p = p * z + *c;
    }
    if (dp == C(0)) break;
    C w = p / dp;
    if (start_step < 0) start_step = std::abs(w);
    z -= w;
    if (std::abs(w) <= Real(4) * std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(z))) break;
  }
  Real moved = std::abs(z - centroid);
  Real scale = std::max(Real(1), std::abs(centroid));
  if (!std::isfinite(moved) || moved > Real(1e-3) * scale) return centroid;
  return z;
}

// Relative coefficient distance from p to the nearest polynomial with an
// m-fold root at c: the first m Taylor coefficients of p at c, weighted by
// powers of max(1, |c|) so that the measure does not depend on where c is.
template <typename Real>
Real multiple_root_backward_error(const std::vector<std::complex<Real>>& a, int m, const std::complex<Real>& c) {
  using C = std::complex<Real>;
  const Real w = std::max(Real(1), std::abs(c));
  Real norm(0), wk(1);
  for (const auto& x : a) {
    norm = std::max(norm, std::abs(x) * wk);
    wk *= w;
  }
  std::vector<C> q = a;
  Real worst(0), wj(1);
  for (int j = 0; j < m && q.size() > 1; ++j) {
    // Synthetic division by (z - c); the remainder is the j-th Taylor coefficient.
    std::vector<C> next(q.size() - 1);
    C acc = q.back();
    for (std::size_t k = q.size() - 1; k-- > 0;) {
      next[k] = acc;
      acc = acc * c + q[k];
    }
    worst = std::max(worst, std::abs(acc) * wj);
    wj *= w;
    q = std::move(next);
  }
  return norm > 0 ? worst / norm : Real(0);
}

int find(std::vector<int>& parent, int i) {
  while (parent[static_cast<std::size_t>(i)] != i) {
    parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    i = parent[static_cast<std::size_t>(i)];
  }
  return i;
}

template <typename Real>
std::vector<RootCluster> aberth(const UnivariatePolynomial<double>& input, const RootOptions& options) {
  using C = std::complex<Real>;
  std::vector<C> a;
  for (const auto& c : input.coefficients()) a.emplace_back(static_cast<Real>(c.real()), static_cast<Real>(c.imag()));

  // Exact zero roots first.
  int zeros = 0;
  while (a.size() > 1 && a.front() == C(0)) {
    a.erase(a.begin());
    ++zeros;
  }
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<RootCluster> out;
  if (zeros > 0) out.push_back({Complex(0.0, 0.0), zeros, 0.0});
  if (n == 0) return out;

  C lead = a.back();
  for (auto& c : a) c /= lead;

  std::vector<C> z = initial_guesses(a);
  if (n == 1) z = {-a[0]};
  std::vector<bool> done(static_cast<std::size_t>(n), n == 1);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      auto iu = static_cast<std::size_t>(i);
      if (done[iu]) continue;
      Evaluation<Real> ev = evaluate(a, z[iu]);
      if (ev.residual <= ev.bound) {
        done[iu] = true;
        continue;
      }
      all = false;
      C sum(0);
      for (int j = 0; j < n; ++j)
        if (j != i) {
          C diff = z[iu] - z[static_cast<std::size_t>(j)];
          if (diff != C(0)) sum += Real(1) / diff;
        }
      C w = ev.newton / (Real(1) - ev.newton * sum);
      if (!std::isfinite(std::abs(w))) {
        done[iu] = true;
        continue;
      }
      z[iu] -= w;
      if (std::abs(w) <= std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(z[iu])))
        done[iu] = true;
    }
    if (all) break;
  }

  // Inclusion disks D(z_i, r_i) with r_i = n * max(|p(z_i)|, bound) / prod |z_i - z_j|.
  std::vector<Real> radius(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto iu = static_cast<std::size_t>(i);
    C p(0);
    Real b(0), az = std::abs(z[iu]);
    for (int k = n; k >= 0; --k) {
      p = p * z[iu] + a[static_cast<std::size_t>(k)];
      b = b * az + std::abs(a[static_cast<std::size_t>(k)]);
    }
    // The coefficients are only known to double precision, whatever the
    // working precision of the iteration.
    Real num = Real(n) * std::max(std::abs(p), Real(std::numeric_limits<double>::epsilon()) * b);
    Real den(1);
    bool coincident = false;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Real d = std::abs(z[iu] - z[static_cast<std::size_t>(j)]);
      if (d == 0) coincident = true;
      den *= d;
    }
    radius[iu] = coincident ? std::numeric_limits<Real>::infinity() : num / den;
  }

  // Around each root, the largest set of nearest neighbours that passes as
  // one multiple root; proper subsets of a split m-fold root do not pass,
  // so every size is tried. Larger groups are accepted first.
  std::vector<std::vector<int>> candidates;
  for (int i = 0; i < n; ++i) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const C zi = z[static_cast<std::size_t>(i)];
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return std::abs(z[static_cast<std::size_t>(x)] - zi) < std::abs(z[static_cast<std::size_t>(y)] - zi);
    });
    C sum(0);
    int best = 1;
    for (int m = 1; m <= n; ++m) {
      sum += z[static_cast<std::size_t>(order[static_cast<std::size_t>(m - 1)])];
      if (m == 1) continue;
      const C center = refine_multiple_root(a, m, C(sum / Real(m)));
      if (multiple_root_backward_error(a, m, center) <= Real(options.cluster_tol)) best = m;
    }
    candidates.emplace_back(order.begin(), order.begin() + best);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) { return x.size() > y.size(); });
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  for (const auto& g : candidates) {
    bool free = true;
    for (int k : g) free = free && !taken[static_cast<std::size_t>(k)];
    if (!free) continue;
    for (int k : g) {
      taken[static_cast<std::size_t>(k)] = true;
      parent[static_cast<std::size_t>(k)] = g.front();
    }
  }

  std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) groups[static_cast<std::size_t>(find(parent, i))].push_back(i);
  for (const auto& g : groups) {
    if (g.empty()) continue;
    C center(0);
    for (int i : g) center += z[static_cast<std::size_t>(i)];
    center /= Real(g.size());
    if (g.size() > 1) center = refine_multiple_root(a, static_cast<int>(g.size()), center);
    Real spread(0);
    for (int i : g) {
      auto iu = static_cast<std::size_t>(i);
      Real r = std::abs(z[iu] - center) + (std::isfinite(radius[iu]) ? radius[iu] : Real(0));
      spread = std::max(spread, r);
    }
    out.push_back({Complex(static_cast<double>(center.real()), static_cast<double>(center.imag())),
                   static_cast<int>(g.size()), static_cast<double>(spread)});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& x, const RootCluster& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return out;
}

}  // namespace

std::vector<RootCluster> find_roots(const UnivariatePolynomial<double>& p, const RootOptions& options) {
  if (p.degree() < 0) throw DegeneracyError("find_roots of an empty polynomial");
  if (p.max_coefficient() == 0.0) throw DegeneracyError("find_roots of the zero polynomial");
  int dropped = 0;
  UnivariatePolynomial<double> t = p.trimmed(1e-14, &dropped);
  if (t.degree() < 1)
    throw DegeneracyError("leading coefficients vanish to tolerance; no roots to find");
  if (options.precision_bits <= 53) return aberth<double>(t, options);
  return aberth<long double>(t, options);
}

double residual_bound(const UnivariatePolynomial<double>& p, const Complex& z) {
  double b = 0.0, az = std::abs(z);
  const auto& a = p.coefficients();
  for (auto it = a.rbegin(); it != a.rend(); ++it) b = b * az + std::abs(*it);
  return b * std::numeric_limits<double>::epsilon();
}

}  // namespace ratequiv
