#pragma once

#include <string>
#include <vector>

#include "bnp/pickdata.hpp"

namespace bnp {

struct PsdRank {
  bool psd = false;
  int rank = 0;
  double min_eigenvalue = 0.0;
};

// Spectral verdict on a Hermitian matrix: positive semidefiniteness and
// numerical rank, both relative to the spectral norm.
PsdRank psd_rank(const MatrixXc& p, double tol_psd = 1e-9, double tol_rank = 1e-9);

// Frobenius norm of P - T^* P T - E^* E + M^* M.
double stein_residual(const PickSystem& sys);

struct SolvabilityReport {
  bool admissible = false;
  bool psd = false;
  int rank = 0;
  double min_eigenvalue = 0.0;
  double stein_residual = 0.0;
  std::vector<std::string> messages;
};

// Data-level diagnostics (unimodular leading coefficients, distinct nodes,
// Hermitian diagonal blocks). Reports findings instead of throwing.
SolvabilityReport check_admissible(const ProblemData& data);

// Admissibility plus the spectral analysis of the Pick matrix.
SolvabilityReport solvability_report(const ProblemData& data, double tol_psd = 1e-9,
                                     double tol_rank = 1e-9);

}  // namespace bnp
