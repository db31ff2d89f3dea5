#ifndef STAKETOW_HARMONIC_H_
#define STAKETOW_HARMONIC_H_

#include <vector>

#include "staketow/graph.h"
#include "staketow/tree.h"

namespace staketow {

enum class FieldMethod { kFixedPoint, kDecomposition, kClosedForm };
const char* FieldMethodName(FieldMethod m);

// h(lambda, .) indexed by vertex handle.
struct HarmonicField {
  double lambda = 1.0;
  std::vector<double> values;
  FieldMethod method = FieldMethod::kFixedPoint;
};

// One path of a decomposition, listed from its low end to its high end.
struct DecompositionPath {
  std::vector<int> vertices;
  double slope = 0.0;
};

struct Decomposition {
  double rho = 1.0;
  std::vector<DecompositionPath> paths;
};

// Gauss-Seidel in vertex order from a zero interior. Throws kNonConvergence
// after max_sweeps.
HarmonicField HFixedPoint(const BoundaryPaymentGraph& g, double lambda,
                          double tol = 1e-12, long max_sweeps = 1000000);

// H(lambda,k,l) = (1 - lambda^-(k-l)) / (1 - lambda^-k); (k-l)/k at 1.
double HFactor(double lambda, int k, int l);

// Psi(lambda,l) = lambda^-l / (1 - lambda^-l), lambda != 1.
double PsiFactor(double lambda, int l);

// a Psi(lambda,a) - b Psi(lambda,b), lambda != 1; series near lambda = 1.
double PsiDifference(double lambda, int a, int b);

double HClosedForm(const RootRewardTree& t, double lambda, int v);
HarmonicField HClosedFormField(const RootRewardTree& t, double lambda);

// Requires a tree. Ties in slope go to the least (low id, high id) pair.
Decomposition PsDecompose(const BoundaryPaymentGraph& g, double rho);
HarmonicField HFromDecomposition(const BoundaryPaymentGraph& g,
                                 const Decomposition& d);

// n lazy Bellman updates seeded at h (or at the given field).
HarmonicField HFiniteHorizon(const BoundaryPaymentGraph& g, double epsilon,
                             double lambda, int n);
HarmonicField HFiniteHorizon(const BoundaryPaymentGraph& g, double epsilon,
                             double lambda, int n, const HarmonicField& seed);

double DhDlambda(const RootRewardTree& t, double lambda, int v);

// h(v_+) - h(v_-).
double Delta(const RootRewardTree& t, double lambda, int v);

// sup over open v of |h(v) - (q max + (1-q) min)|, q = lambda/(lambda+1).
double BellmanResidual(const BoundaryPaymentGraph& g, const HarmonicField& f);

// Closed form on root-reward trees, decomposition on other trees, fixed
// point otherwise.
HarmonicField HarmonicValues(const BoundaryPaymentGraph& g, double lambda);

}  // namespace staketow

#endif  // STAKETOW_HARMONIC_H_
