#include "bnp/solvability.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace bnp {

PsdRank psd_rank(const MatrixXc& p, double tol_psd, double tol_rank) {
  if (p.rows() != p.cols()) throw NotHermitian("matrix is not square");
  const double dev = (p - p.adjoint()).norm();
  if (dev > 1e-8 * std::max(1.0, p.norm()))
    throw NotHermitian("matrix deviates from its adjoint");
  const MatrixXc sym = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(sym);
  const Eigen::VectorXd ev = es.eigenvalues();
  PsdRank out;
  if (ev.size() == 0) {
    out.psd = true;
    return out;
  }
  const double spectral = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  out.min_eigenvalue = ev(0);
  out.psd = ev(0) >= -tol_psd * std::max(1.0, spectral);
  out.rank = static_cast<int>((ev.array() > tol_rank * std::max(1.0, spectral)).count());
  return out;
}

double stein_residual(const PickSystem& sys) {
  const MatrixXc res = sys.P - sys.T.adjoint() * sys.P * sys.T -
                       sys.E.adjoint() * sys.E + sys.M.adjoint() * sys.M;
  return res.norm();
}

SolvabilityReport check_admissible(const ProblemData& data) {
  SolvabilityReport report;
  if (data.nodes.empty()) {
    report.messages.push_back("no interpolation nodes given");
    return report;
  }
  const int k = static_cast<int>(data.nodes.size());
  for (int i = 0; i < k; ++i) {
    const auto& node = data.nodes[static_cast<size_t>(i)];
    const double m = std::abs(node.c()[0]);
    if (std::abs(m - 1.0) > 1e-9)
      report.messages.push_back("node " + std::to_string(i) +
                                ": leading jet coefficient has modulus " +
                                std::to_string(m) + ", expected 1");
    for (int j = i + 1; j < k; ++j)
      if (std::abs(node.t() - data.nodes[static_cast<size_t>(j)].t()) <= 1e-9)
        report.messages.push_back("nodes " + std::to_string(i) + " and " +
                                  std::to_string(j) + " coincide");
  }
  for (int i = 0; i < k; ++i) {
    const auto& node = data.nodes[static_cast<size_t>(i)];
    try {
      const MatrixXc block = node_block(node.t(), node.n(), node.c_full());
      const double dev = (block - block.adjoint()).norm();
      if (dev > 1e-10 * std::max(1.0, block.norm()))
        report.messages.push_back("node " + std::to_string(i) +
                                  ": diagonal Pick block is not Hermitian");
    } catch (const Error& e) {
      report.messages.push_back("node " + std::to_string(i) + ": " + e.what());
    }
  }
  report.admissible = report.messages.empty();
  return report;
}

SolvabilityReport solvability_report(const ProblemData& data, double tol_psd,
                                     double tol_rank) {
  SolvabilityReport report = check_admissible(data);
  if (!report.admissible) return report;
  const PickSystem sys = build_pick_system(data, tol_rank);
  const PsdRank verdict = psd_rank(0.5 * (sys.P + sys.P.adjoint()), tol_psd, tol_rank);
  report.psd = verdict.psd;
  report.rank = verdict.rank;
  report.min_eigenvalue = verdict.min_eigenvalue;
  report.stein_residual = bnp::stein_residual(sys);
  const double scale = std::max(std::abs(verdict.min_eigenvalue), sys.P.norm());
  if (std::abs(verdict.min_eigenvalue) <= tol_psd * std::max(1.0, scale))
    report.messages.push_back(
        "marginal: smallest eigenvalue lies within tolerance of zero; the "
        "verdict is sensitive to tol-psd");
  return report;
}

}  // namespace bnp
