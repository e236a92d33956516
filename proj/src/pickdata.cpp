#include "bnp/pickdata.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace bnp {

namespace {

constexpr int kMaxOrder = 12;

bool all_finite(const std::vector<Complex>& c) {
  for (const Complex& x : c)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

double parity(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

MatrixXc toeplitz_lower(const std::vector<Complex>& c, int n) {
  MatrixXc w = MatrixXc::Zero(n + 1, n + 1);
  for (int r = 0; r <= n; ++r)
    for (int s = 0; s <= r; ++s) w(r, s) = c[static_cast<size_t>(r - s)];
  return w;
}

}  // namespace

double binomial(int n, int k) {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(64);
    for (int i = 0; i < 64; ++i) {
      t[static_cast<size_t>(i)].assign(static_cast<size_t>(i) + 1, 1.0);
      for (int j = 1; j < i; ++j)
        t[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            t[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] +
            t[static_cast<size_t>(i - 1)][static_cast<size_t>(j)];
    }
    return t;
  }();
  if (k < 0 || k > n) return 0.0;
  if (n >= 64) throw InvalidData("binomial argument too large");
  return table[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

MatrixXc psi_matrix(Complex t0, int n) {
  if (n < 0) throw InvalidData("negative order");
  MatrixXc psi = MatrixXc::Zero(n + 1, n + 1);
  for (int l = 0; l <= n; ++l)
    for (int j = 0; j <= l; ++j)
      psi(j, l) = parity(l) * binomial(l, j) * std::pow(t0, l + j + 1);
  return psi;
}

MatrixXc node_block(Complex t, int n, const std::vector<Complex>& c_full) {
  if (static_cast<int>(c_full.size()) < 2 * n + 2)
    throw InvalidData("node block needs 2n+2 jet coefficients");
  MatrixXc h(n + 1, n + 1);
  for (int r = 0; r <= n; ++r)
    for (int s = 0; s <= n; ++s) h(r, s) = c_full[static_cast<size_t>(r + s + 1)];
  return h * psi_matrix(t, n) * toeplitz_lower(c_full, n).adjoint();
}

MatrixXc cross_node_block(Complex ti, int ni, const std::vector<Complex>& ci,
                          Complex tj, int nj, const std::vector<Complex>& cj) {
  const Complex d = ti - tj;
  if (std::abs(d) <= 1e-9) throw DuplicateNodes("node points coincide");
  MatrixXc h = MatrixXc::Zero(ni + 1, nj + 1);
  for (int r = 0; r <= ni; ++r) {
    for (int s = 0; s <= nj; ++s) {
      Complex acc(0.0);
      for (int l = 0; l <= r; ++l)
        acc += parity(r - l) * binomial(s + r - l, s) * ci[static_cast<size_t>(l)] /
               std::pow(d, s + r - l + 1);
      for (int l = 0; l <= s; ++l)
        acc -= parity(r) * binomial(s + r - l, r) * cj[static_cast<size_t>(l)] /
               std::pow(d, s + r - l + 1);
      h(r, s) = acc;
    }
  }
  return h * psi_matrix(tj, nj) * toeplitz_lower(cj, nj).adjoint();
}

InterpolationNode::InterpolationNode(Complex t, int n, std::vector<Complex> c,
                                     std::optional<double> gamma)
    : t_(t), n_(n), c_(std::move(c)), gamma_(gamma) {
  if (n_ < 0 || n_ > kMaxOrder) throw InvalidData("node order out of range");
  if (!std::isfinite(t_.real()) || !std::isfinite(t_.imag()) || !all_finite(c_))
    throw InvalidData("non-finite node data");
  if (gamma_ && !std::isfinite(*gamma_)) throw InvalidData("non-finite gamma");
  const double m = std::abs(t_);
  if (std::abs(m - 1.0) > 1e-9)
    throw InvalidData("node point must lie on the unit circle");
  t_ /= m;
  const auto sz = static_cast<int>(c_.size());
  if (sz != 2 * n_ + 1 && sz != 2 * n_ + 2)
    throw InvalidData("node needs 2n+1 or 2n+2 jet coefficients");
  if (sz == 2 * n_ + 1 && !gamma_)
    throw InvalidData("node needs gamma or the top jet coefficient");
  if (gamma_ && sz == 2 * n_ + 2 && std::abs(c_[0]) > 0.5) {
    const Complex expected = c_top_from_gamma(t_, n_, c_, *gamma_);
    const Complex given = c_.back();
    if (std::abs(expected - given) > 1e-9 * (1.0 + std::abs(given)))
      throw InvalidData("gamma inconsistent with the top jet coefficient");
  }
}

double InterpolationNode::gamma_value() const {
  if (gamma_) return *gamma_;
  return gamma_from_jet(t_, n_, c_);
}

std::vector<Complex> InterpolationNode::c_full() const {
  if (static_cast<int>(c_.size()) == 2 * n_ + 2) return c_;
  std::vector<Complex> full = c_;
  full.push_back(c_top_from_gamma(t_, n_, c_, *gamma_));
  return full;
}

int ProblemData::size() const {
  int n = 0;
  for (const auto& node : nodes) n += node.n() + 1;
  return n;
}

double gamma_from_jet(Complex t, int n, const std::vector<Complex>& c) {
  if (static_cast<int>(c.size()) < 2 * n + 2)
    throw InvalidData("gamma_from_jet needs 2n+2 jet coefficients");
  const MatrixXc psi = psi_matrix(t, n);
  Complex g(0.0);
  for (int l = 0; l + 1 <= n; ++l)
    for (int j = 0; j <= n; ++j)
      g += c[static_cast<size_t>(n + l + 1)] * psi(l, j) *
           std::conj(c[static_cast<size_t>(n - j)]);
  g += parity(n) * std::pow(t, 2 * n + 1) * c[static_cast<size_t>(2 * n + 1)] *
       std::conj(c[0]);
  if (std::abs(g.imag()) > 1e-10 * std::max(1.0, std::abs(g)))
    throw NonRealGamma("jet encodes a non-real limit value");
  return g.real();
}

Complex c_top_from_gamma(Complex t, int n, const std::vector<Complex>& c, double gamma) {
  if (static_cast<int>(c.size()) < 2 * n + 1)
    throw InvalidData("c_top_from_gamma needs 2n+1 jet coefficients");
  if (std::abs(c[0]) < 1e-9) throw InvalidData("vanishing leading jet coefficient");
  const MatrixXc psi = psi_matrix(t, n);
  Complex sum(0.0);
  for (int l = 0; l + 1 <= n; ++l)
    for (int j = 0; j <= n; ++j)
      sum += c[static_cast<size_t>(n + l + 1)] * psi(l, j) *
             std::conj(c[static_cast<size_t>(n - j)]);
  return (Complex(gamma) - sum) * parity(n) * std::pow(std::conj(t), 2 * n + 1) /
         std::conj(c[0]);
}

InterpolationNode extract_jet(const RationalFunction& w, Complex t, int n) {
  Jet jet;
  try {
    jet = rat_taylor(w, t, 2 * n + 1);
  } catch (const PoleAtPoint&) {
    throw PoleAtNode("function has a pole at an interpolation node");
  }
  if (std::abs(std::abs(jet.coeffs[0]) - 1.0) > 1e-9)
    throw NotUnimodularAtNode("function is not unimodular at the node");
  const double g = gamma_from_jet(t, n, jet.coeffs);
  return InterpolationNode(t, n, std::move(jet.coeffs), g);
}

PickSystem build_pick_system(const ProblemData& data, double tol_rank) {
  const int k = static_cast<int>(data.nodes.size());
  if (k == 0) throw InvalidData("empty node list");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (std::abs(data.nodes[static_cast<size_t>(i)].t() -
                   data.nodes[static_cast<size_t>(j)].t()) <= 1e-9)
        throw DuplicateNodes("interpolation nodes coincide");

  PickSystem sys;
  sys.data = data;
  const int total = data.size();
  sys.P = MatrixXc::Zero(total, total);
  sys.T = MatrixXc::Zero(total, total);
  sys.E = RowVectorXc::Zero(total);
  sys.M = RowVectorXc::Zero(total);
  sys.block_offset.resize(static_cast<size_t>(k));

  std::vector<std::vector<Complex>> cs(static_cast<size_t>(k));
  int off = 0;
  for (int i = 0; i < k; ++i) {
    const auto& node = data.nodes[static_cast<size_t>(i)];
    cs[static_cast<size_t>(i)] = node.c_full();
    sys.block_offset[static_cast<size_t>(i)] = off;
    const int ni = node.n();
    for (int a = 0; a <= ni; ++a) {
      sys.T(off + a, off + a) = std::conj(node.t());
      if (a < ni) sys.T(off + a, off + a + 1) = Complex(1.0);
      sys.M(off + a) = std::conj(cs[static_cast<size_t>(i)][static_cast<size_t>(a)]);
    }
    sys.E(off) = Complex(1.0);
    off += ni + 1;
  }

  for (int i = 0; i < k; ++i) {
    const auto& ni_node = data.nodes[static_cast<size_t>(i)];
    const int oi = sys.block_offset[static_cast<size_t>(i)];
    const int di = ni_node.n() + 1;
    for (int j = 0; j < k; ++j) {
      const auto& nj_node = data.nodes[static_cast<size_t>(j)];
      const int oj = sys.block_offset[static_cast<size_t>(j)];
      const int dj = nj_node.n() + 1;
      MatrixXc block;
      if (i == j) {
        block = node_block(ni_node.t(), ni_node.n(), cs[static_cast<size_t>(i)]);
        const double dev = (block - block.adjoint()).norm();
        if (dev > 1e-10 * std::max(1.0, block.norm()))
          throw NonHermitianDiagonalBlock("diagonal Pick block is not Hermitian");
      } else {
        block = cross_node_block(ni_node.t(), ni_node.n(), cs[static_cast<size_t>(i)],
                                 nj_node.t(), nj_node.n(), cs[static_cast<size_t>(j)]);
      }
      sys.P.block(oi, oj, di, dj) = block;
    }
  }

  sys.Ptilde = sys.P + sys.M.adjoint() * sys.M;

  const MatrixXc sym = 0.5 * (sys.P + sys.P.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(sym);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double spectral = std::max(std::abs(ev(0)), std::abs(ev(total - 1)));
  const double rank_thr = tol_rank * std::max(1.0, spectral);
  sys.rank = static_cast<int>((ev.array() > rank_thr).count());
  sys.singular = sys.rank < total;

  const bool psd = ev(0) >= -1e-9 * std::max(1.0, spectral);
  if (!sys.singular && psd) {
    const auto solver = sym.ldlt();
    const VectorXc pm = solver.solve(sys.M.adjoint());
    const Complex a2 = Complex(1.0) + (sys.M * pm)(0, 0);
    const VectorXc x =
        sys.T.adjoint().triangularView<Eigen::Lower>().solve(sys.E.adjoint().eval());
    const VectorXc px = solver.solve(x);
    const Complex b2 = Complex(1.0) + (x.adjoint() * px)(0, 0);
    if (a2.real() > 0.0 && b2.real() > 0.0) {
      sys.alpha = std::sqrt(a2.real());
      sys.beta = std::sqrt(b2.real());
    }
  }
  return sys;
}

}  // namespace bnp
