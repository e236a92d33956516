#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "bnp/parametrize.hpp"
#include "bnp/pickdata.hpp"

namespace bnp {

double factorial(int n);

// Schwarz-Pick matrix of w at an interior point z, orders 0..n.
MatrixXc interior_sp_matrix(const RationalFunction& w, Complex z, int n);

// Real lower-right entry of the interior Schwarz-Pick matrix.
double d_lower(const RationalFunction& w, Complex z, int n);

// Boundary Schwarz-Pick matrix from a full jet c_0..c_{2n+1} at a unimodular
// center.
MatrixXc boundary_sp_matrix_jet(const Jet& jet);

// Multi-node boundary Schwarz-Pick matrix from full jets (2n_i+2 coefficients
// each) at pairwise distinct unimodular centers.
MatrixXc generalized_boundary_sp(const std::vector<Jet>& jets);

struct RadialSchedule {
  std::vector<double> epsilons;  // decreasing offsets from the circle
  double rtol = 1e-6;
  double cap = 1e12;

  static RadialSchedule standard();           // 1e-1 .. 1e-8, factor 10
  static RadialSchedule geometric(int steps); // 1e-1 .. 1e-steps, factor 10
};

struct LimitEstimate {
  double value = 0.0;  // +infinity when the limit diverges
  bool converged = false;
  std::vector<std::pair<double, double>> trace;  // (epsilon, running estimate)
};

// Radial limit of d_lower at (1-eps) t0. Estimates are refined by polynomial
// extrapolation in eps; points whose evaluation is dominated by rounding
// cancellation are not consumed.
LimitEstimate boundary_limit_d(const RationalFunction& w, Complex t0, int n,
                               const RadialSchedule& sched = RadialSchedule::standard());

// Polynomial extrapolation of samples (x_k, y_k) to x = 0; second value is
// the last correction magnitude.
std::pair<Complex, double> neville_zero(const std::vector<double>& xs,
                                        const std::vector<Complex>& ys);

// Radial limit of (1 - omega(z) conj(b)) / (1 - z conj(t0)): finite exactly
// when omega(t0) = b with |b| = 1, and +infinity otherwise.
double dval(const RationalFunction& omega, Complex t0, Complex b);

struct GapResult {
  LimitEstimate direct;  // gamma_i minus the radial estimate of d
  double formula = 0.0;  // closed form from the coefficient matrix
};

GapResult gap(const PickSystem& sys, const CoefficientMatrix& cm,
              const SchurParameter& param, int node_index,
              const RadialSchedule& sched = RadialSchedule::standard());

// True when the solution for this parameter attains the limit value at t
// exactly (zero gap).
bool classify_equality(const SchurParameter& param, const CoefficientMatrix& cm,
                       Complex t);

void write_limit_csv(const LimitEstimate& estimate, std::ostream& out);

}  // namespace bnp
