#include "staketow/harmonic.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "staketow/errors.h"

namespace staketow {

const char* FieldMethodName(FieldMethod m) {
  switch (m) {
    case FieldMethod::kFixedPoint: return "fixed_point";
    case FieldMethod::kDecomposition: return "decomposition";
    case FieldMethod::kClosedForm: return "closed_form";
  }
  return "unknown";
}

namespace {

void CheckLambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kMalformedInput, "lambda must be positive");
  }
}

HarmonicField BoundaryField(const BoundaryPaymentGraph& g, double lambda,
                            FieldMethod method) {
  HarmonicField f;
  f.lambda = lambda;
  f.method = method;
  f.values.assign(g.num_vertices(), 0.0);
  for (int v : g.boundary_vertices()) f.values[v] = g.payment(v);
  return f;
}

// Bellman update q * max + (1 - q) * min over the neighbours of v.
double Update(const BoundaryPaymentGraph& g, const std::vector<double>& h,
              int v, double q) {
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (int u : g.neighbors(v)) {
    hi = std::max(hi, h[u]);
    lo = std::min(lo, h[u]);
  }
  return q * hi + (1.0 - q) * lo;
}

// G(a) - G(b) with G(l) = l / (lambda^l - 1), L = log(lambda) != 0.
double LogDerivativeTerm(int a, int b, double L) {
  const double x = b * L;
  if (std::abs(x) < 0.05) {
    // x / expm1(x) = 1 - x/2 + x^2/12 - x^4/720 + x^6/30240 - ...
    const double a2 = double(a) * a, b2 = double(b) * b;
    const double L2 = L * L;
    return -(a - b) / 2.0 + (a2 - b2) * L / 12.0 -
           (a2 * a2 - b2 * b2) * L * L2 / 720.0 +
           (a2 * a2 * a2 - b2 * b2 * b2) * L * L2 * L2 / 30240.0;
  }
  auto G = [L](int l) { return l / std::expm1(l * L); };
  return G(a) - G(b);
}

}  // namespace

HarmonicField HFixedPoint(const BoundaryPaymentGraph& g, double lambda,
                          double tol, long max_sweeps) {
  CheckLambda(lambda);
  HarmonicField f = BoundaryField(g, lambda, FieldMethod::kFixedPoint);
  const double q = lambda / (lambda + 1.0);
  for (long sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (int v : g.open_vertices()) {
      double next = Update(g, f.values, v, q);
      change = std::max(change, std::abs(next - f.values[v]));
      f.values[v] = next;
    }
    if (change < tol) return f;
  }
  throw Error(ErrorCode::kNonConvergence,
              "fixed point did not settle within the sweep cap");
}

double HFactor(double lambda, int k, int l) {
  CheckLambda(lambda);
  if (k < 1 || l < 0 || l > k) {
    throw Error(ErrorCode::kIndexOutOfRange, "H needs 0 <= l <= k, k >= 1");
  }
  if (lambda == 1.0) return double(k - l) / k;
  const double L = std::log(lambda);
  if (lambda > 1.0) return std::expm1(-(k - l) * L) / std::expm1(-k * L);
  return std::exp(l * L) * std::expm1((k - l) * L) / std::expm1(k * L);
}

double PsiFactor(double lambda, int l) {
  CheckLambda(lambda);
  if (lambda == 1.0) {
    throw Error(ErrorCode::kIndexOutOfRange, "Psi is singular at lambda 1");
  }
  const double L = std::log(lambda);
  if (lambda > 1.0) return std::exp(-l * L) / -std::expm1(-l * L);
  return 1.0 / std::expm1(l * L);
}

double PsiDifference(double lambda, int a, int b) {
  CheckLambda(lambda);
  if (lambda == 1.0) {
    throw Error(ErrorCode::kIndexOutOfRange, "Psi is singular at lambda 1");
  }
  return LogDerivativeTerm(a, b, std::log(lambda));
}

double HClosedForm(const RootRewardTree& t, double lambda, int v) {
  double h = 1.0;
  for (const auto& p : t.journey_data(v).pairs) {
    h *= HFactor(lambda, p.span, p.depth);
  }
  return h;
}

HarmonicField HClosedFormField(const RootRewardTree& t, double lambda) {
  HarmonicField f;
  f.lambda = lambda;
  f.method = FieldMethod::kClosedForm;
  f.values.resize(t.num_vertices());
  for (int v = 0; v < t.num_vertices(); ++v) {
    f.values[v] = HClosedForm(t, lambda, v);
  }
  return f;
}

namespace {

// 1 + rho + ... + rho^(l-1).
double RhoLength(double rho, int l) {
  double s = 0.0, p = 1.0;
  for (int i = 0; i < l; ++i) {
    s += p;
    p *= rho;
  }
  return s;
}

// (1 - rho^i) / (1 - rho^n), or i/n at rho = 1.
double ExtensionFraction(double rho, int i, int n) {
  if (rho == 1.0) return double(i) / n;
  if (rho < 1.0) return (1.0 - std::pow(rho, i)) / (1.0 - std::pow(rho, n));
  const double r = 1.0 / rho;
  return (std::pow(r, n - i) - std::pow(r, n)) / (1.0 - std::pow(r, n));
}

void Extend(const std::vector<int>& path, double rho,
            std::vector<double>& h) {
  const int n = static_cast<int>(path.size()) - 1;
  const double a = h[path.front()];
  const double b = h[path.back()];
  for (int i = 1; i < n; ++i) {
    h[path[i]] = a + (b - a) * ExtensionFraction(rho, i, n);
  }
}

}  // namespace

Decomposition PsDecompose(const BoundaryPaymentGraph& g, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorCode::kMalformedInput, "rho must be positive");
  }
  if (!g.IsTree()) {
    throw Error(ErrorCode::kNotATree, "decomposition needs a tree");
  }
  const int n = g.num_vertices();
  std::vector<bool> assigned(n, false);
  std::vector<double> h(n, 0.0);
  for (int v : g.boundary_vertices()) {
    assigned[v] = true;
    h[v] = g.payment(v);
  }
  std::vector<std::vector<bool>> covered(n);
  for (int v = 0; v < n; ++v) covered[v].assign(g.neighbors(v).size(), false);
  auto mark = [&](int u, int w) {
    const auto& nb = g.neighbors(u);
    covered[u][std::lower_bound(nb.begin(), nb.end(), w) - nb.begin()] = true;
  };
  auto is_covered = [&](int u, int w) {
    const auto& nb = g.neighbors(u);
    return static_cast<bool>(
        covered[u][std::lower_bound(nb.begin(), nb.end(), w) - nb.begin()]);
  };

  Decomposition d;
  d.rho = rho;
  int remaining = g.num_edges();
  while (remaining > 0) {
    bool found = false;
    DecompositionPath best;
    std::pair<int, int> best_key;
    for (int x = 0; x < n; ++x) {
      if (!assigned[x]) continue;
      // Walk from x through unassigned vertices to the next assigned ones.
      std::vector<std::vector<int>> stack;
      for (int w : g.neighbors(x)) {
        if (!is_covered(x, w)) stack.push_back({x, w});
      }
      while (!stack.empty()) {
        std::vector<int> path = std::move(stack.back());
        stack.pop_back();
        int y = path.back();
        if (!assigned[y]) {
          for (int w : g.neighbors(y)) {
            if (w != path[path.size() - 2]) {
              auto next = path;
              next.push_back(w);
              stack.push_back(std::move(next));
            }
          }
          continue;
        }
        if (x > y) continue;  // each path once
        const int len = static_cast<int>(path.size()) - 1;
        if (h[y] < h[x]) std::reverse(path.begin(), path.end());
        const double lo = h[path.front()], hi = h[path.back()];
        const double slope =
            (hi - std::pow(rho, len) * lo) / RhoLength(rho, len);
        std::pair<int, int> key = {x, y};
        const double tie = 1e-12 * std::max(1.0, std::abs(slope));
        if (!found || slope > best.slope + tie ||
            (std::abs(slope - best.slope) <= tie && key < best_key)) {
          found = true;
          best.vertices = std::move(path);
          best.slope = slope;
          best_key = key;
        }
      }
    }
    if (!found) {
      throw Error(ErrorCode::kMalformedInput, "no admissible path remains");
    }
    Extend(best.vertices, rho, h);
    for (size_t i = 0; i + 1 < best.vertices.size(); ++i) {
      mark(best.vertices[i], best.vertices[i + 1]);
      mark(best.vertices[i + 1], best.vertices[i]);
      assigned[best.vertices[i]] = true;
      --remaining;
    }
    d.paths.push_back(std::move(best));
  }
  return d;
}

HarmonicField HFromDecomposition(const BoundaryPaymentGraph& g,
                                 const Decomposition& d) {
  HarmonicField f = BoundaryField(g, 1.0 / d.rho, FieldMethod::kDecomposition);
  for (const auto& p : d.paths) Extend(p.vertices, d.rho, f.values);
  return f;
}

HarmonicField HFiniteHorizon(const BoundaryPaymentGraph& g, double epsilon,
                             double lambda, int n) {
  return HFiniteHorizon(g, epsilon, lambda, n, HarmonicValues(g, lambda));
}

HarmonicField HFiniteHorizon(const BoundaryPaymentGraph& g, double epsilon,
                             double lambda, int n, const HarmonicField& seed) {
  CheckLambda(lambda);
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kMalformedInput, "epsilon must lie in (0,1]");
  }
  HarmonicField f = seed;
  f.lambda = lambda;
  for (int v : g.boundary_vertices()) f.values[v] = g.payment(v);
  const double q = lambda / (lambda + 1.0);
  std::vector<double> next = f.values;
  for (int step = 0; step < n; ++step) {
    for (int v : g.open_vertices()) {
      next[v] = epsilon * Update(g, f.values, v, q) +
                (1.0 - epsilon) * f.values[v];
    }
    f.values.swap(next);
  }
  return f;
}

double DhDlambda(const RootRewardTree& t, double lambda, int v) {
  CheckLambda(lambda);
  if (!t.is_open(v)) return 0.0;
  const auto& pairs = t.journey_data(v).pairs;
  const double h = HClosedForm(t, lambda, v);
  if (lambda == 1.0) {
    int total = 0;
    for (const auto& p : pairs) total += p.depth;
    return 0.5 * h * total;
  }
  const double L = std::log(lambda);
  double sum = 0.0;
  for (const auto& p : pairs) {
    sum += LogDerivativeTerm(p.span - p.depth, p.span, L);
  }
  return h / lambda * sum;
}

double Delta(const RootRewardTree& t, double lambda, int v) {
  CheckLambda(lambda);
  t.CheckOpen(v);
  const auto& pairs = t.journey_data(v).pairs;
  double prefix = 1.0;
  for (size_t i = 0; i + 1 < pairs.size(); ++i) {
    prefix *= HFactor(lambda, pairs[i].span, pairs[i].depth);
  }
  const int k = pairs.back().span;
  const int l = pairs.back().depth;
  if (lambda == 1.0) return prefix * 2.0 / k;
  // H(k,l-1) - H(k,l+1) = lambda^-(k-l) (lambda - 1/lambda) / (1 - lambda^-k)
  const double L = std::log(lambda);
  const double gap = 2.0 * std::sinh(L);
  if (lambda > 1.0) {
    return prefix * std::exp(-(k - l) * L) * gap / -std::expm1(-k * L);
  }
  return prefix * std::exp(l * L) * gap / std::expm1(k * L);
}

double BellmanResidual(const BoundaryPaymentGraph& g, const HarmonicField& f) {
  const double q = f.lambda / (f.lambda + 1.0);
  double worst = 0.0;
  for (int v : g.open_vertices()) {
    worst = std::max(worst, std::abs(f.values[v] - Update(g, f.values, v, q)));
  }
  for (int v : g.boundary_vertices()) {
    worst = std::max(worst, std::abs(f.values[v] - g.payment(v)));
  }
  return worst;
}

HarmonicField HarmonicValues(const BoundaryPaymentGraph& g, double lambda) {
  CheckLambda(lambda);
  if (g.IsTree()) {
    try {
      return HClosedFormField(RootRewardTree(g), lambda);
    } catch (const Error&) {
      return HFromDecomposition(g, PsDecompose(g, 1.0 / lambda));
    }
  }
  return HFixedPoint(g, lambda);
}

}  // namespace staketow
