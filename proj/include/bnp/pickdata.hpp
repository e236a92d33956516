#pragma once

#include <optional>
#include <vector>

#include "bnp/ratfun.hpp"
#include "bnp/types.hpp"

namespace bnp {

// One interpolation node on the unit circle: point t, order n, jet
// coefficients c_0..c_{2n} plus either c_{2n+1} or the real limit value
// gamma (or both, in which case they must be consistent).
class InterpolationNode {
 public:
  InterpolationNode(Complex t, int n, std::vector<Complex> c,
                    std::optional<double> gamma = std::nullopt);

  Complex t() const { return t_; }
  int n() const { return n_; }
  const std::vector<Complex>& c() const { return c_; }
  std::optional<double> gamma() const { return gamma_; }

  double gamma_value() const;        // derives from c_{2n+1} when absent
  std::vector<Complex> c_full() const;  // always 2n+2 entries

 private:
  Complex t_;
  int n_;
  std::vector<Complex> c_;
  std::optional<double> gamma_;
};

struct ProblemData {
  std::vector<InterpolationNode> nodes;

  int size() const;  // sum of n_i + 1
};

double binomial(int n, int k);

// Upper triangular structure matrix of order n+1 at t0:
// entry (j, l) = (-1)^l binom(l, j) t0^{l+j+1} for j <= l, zero below.
MatrixXc psi_matrix(Complex t0, int n);

// Diagonal block: Hankel(c_1..c_{2n+1}) * psi_matrix(t, n) * W^* where W is
// the lower triangular Toeplitz matrix of c_0..c_n.
MatrixXc node_block(Complex t, int n, const std::vector<Complex>& c_full);

// Off-diagonal block coupling two distinct nodes.
MatrixXc cross_node_block(Complex ti, int ni, const std::vector<Complex>& ci,
                          Complex tj, int nj, const std::vector<Complex>& cj);

// Structured data of the interpolation problem: the Pick matrix P with the
// companions of its Stein identity P - T^* P T = E^* E - M^* M, and
// Ptilde = P + M^* M.
struct PickSystem {
  ProblemData data;
  MatrixXc P;
  MatrixXc T;
  RowVectorXc E;
  RowVectorXc M;
  MatrixXc Ptilde;
  std::vector<int> block_offset;  // start column of each node's block
  int rank = 0;
  bool singular = true;
  std::optional<double> alpha;  // set when P is positive definite
  std::optional<double> beta;
};

PickSystem build_pick_system(const ProblemData& data, double tol_rank = 1e-9);

// Limit value encoded by a full jet c_0..c_{2n+1}.
double gamma_from_jet(Complex t, int n, const std::vector<Complex>& c);

// Inverse of gamma_from_jet in its last coefficient.
Complex c_top_from_gamma(Complex t, int n, const std::vector<Complex>& c, double gamma);

// Reads the order-n boundary data of w at t; w must be analytic and
// unimodular there.
InterpolationNode extract_jet(const RationalFunction& w, Complex t, int n);

}  // namespace bnp
