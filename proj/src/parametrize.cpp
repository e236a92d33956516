#include "bnp/parametrize.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace bnp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(double angle) { return std::polar(1.0, angle); }

void check_bounded_on_grid(const RationalFunction& f, double tol,
                           const char* what) {
  for (int j = 0; j < 256; ++j) {
    const Complex t = unit(kTwoPi * j / 256.0);
    if (std::abs(f.num(t)) > (1.0 + tol) * std::abs(f.den(t)))
      throw NotSchurClass(std::string(what) + " exceeds modulus one on the circle");
  }
  for (int a = 0; a < 16; ++a)
    for (double r : {0.2, 0.5, 0.8, 0.95}) {
      const Complex z = r * unit(kTwoPi * (a + 0.5) / 16.0);
      if (std::abs(rat_eval(f, z)) > 1.0 + tol)
        throw NotSchurClass(std::string(what) + " exceeds modulus one in the disk");
    }
}

// Pointwise evaluation state shared by all z.
struct Context {
  double alpha = 0.0;
  double beta = 0.0;
  RowVectorXc m_pinv_ptilde;  // M P^{-1} Ptilde
  VectorXc tinv_adj_e;        // (T^{-1})^* E^*
};

Context make_context(const PickSystem& sys) {
  if (sys.singular)
    throw SingularPick("coefficient matrix requires a nonsingular Pick matrix");
  if (!sys.alpha || !sys.beta)
    throw InvalidData("coefficient matrix requires a positive definite Pick matrix");
  Context ctx;
  ctx.alpha = *sys.alpha;
  ctx.beta = *sys.beta;
  const MatrixXc sym = 0.5 * (sys.P + sys.P.adjoint());
  const VectorXc pm = sym.ldlt().solve(sys.M.adjoint());
  ctx.m_pinv_ptilde = pm.adjoint() * sys.Ptilde;
  ctx.tinv_adj_e =
      sys.T.adjoint().triangularView<Eigen::Lower>().solve(sys.E.adjoint().eval());
  return ctx;
}

Matrix2c evaluate_entries(const PickSystem& sys, const Context& ctx, Complex z,
                          Complex* det_out) {
  const MatrixXc a = sys.Ptilde - z * sys.P * sys.T;
  Eigen::FullPivLU<MatrixXc> lu(a);
  if (det_out) *det_out = lu.determinant();
  if (!lu.isInvertible())
    throw ResolventSingular("Ptilde - z P T is not invertible at the sample point");
  const VectorXc x1 = lu.solve(sys.M.adjoint());
  const VectorXc x2 = lu.solve(ctx.tinv_adj_e);
  Matrix2c s;
  s(0, 0) = (sys.E * x1)(0, 0);
  s(0, 1) = (Complex(1.0) - z * (sys.M * (sys.T * x1))(0, 0)) / ctx.alpha;
  s(1, 0) = (Complex(1.0) - z * (sys.E * x2)(0, 0)) / ctx.beta;
  s(1, 1) = z * (ctx.m_pinv_ptilde * x2)(0, 0) / (ctx.alpha * ctx.beta);
  return s;
}

// Coefficients of the degree < m polynomial through f(r w^j), w = exp(2 pi i/m).
Polynomial interpolate_on_circle(const std::vector<Complex>& values, double r) {
  const int m = static_cast<int>(values.size());
  std::vector<Complex> coeffs(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    Complex acc(0.0);
    for (int j = 0; j < m; ++j)
      acc += values[static_cast<size_t>(j)] * unit(-kTwoPi * j * k / m);
    coeffs[static_cast<size_t>(k)] = acc / (static_cast<double>(m) * std::pow(r, k));
  }
  return Polynomial(std::move(coeffs)).trimmed(1e-12);
}

std::vector<Complex> default_validation_points() {
  std::vector<Complex> pts;
  pts.reserve(32);
  for (int j = 0; j < 32; ++j) pts.push_back(0.7 * unit(kTwoPi * (j + 0.5) / 32.0));
  return pts;
}

bool matches_pointwise(const PickSystem& sys, const Context& ctx,
                       const CoefficientMatrix& cm, const std::vector<Complex>& pts) {
  for (const Complex& z : pts) {
    Matrix2c direct;
    try {
      direct = evaluate_entries(sys, ctx, z, nullptr);
    } catch (const ResolventSingular&) {
      return false;
    }
    const RationalFunction* entries[4] = {&cm.s0, &cm.s1, &cm.s2, &cm.s};
    const Complex direct_vals[4] = {direct(0, 0), direct(0, 1), direct(1, 0),
                                    direct(1, 1)};
    for (int e = 0; e < 4; ++e) {
      Complex recon;
      try {
        recon = rat_eval(*entries[e], z);
      } catch (const PoleAtPoint&) {
        return false;
      }
      if (std::abs(recon - direct_vals[e]) > 1e-9 * (1.0 + std::abs(direct_vals[e])))
        return false;
    }
  }
  return true;
}

CoefficientMatrix reconstruct(const PickSystem& sys, const Context& ctx, double r,
                              int count) {
  std::vector<Complex> dets(static_cast<size_t>(count));
  std::vector<Complex> nums[4];
  for (auto& v : nums) v.resize(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j) {
    const Complex z = r * unit(kTwoPi * j / count);
    Complex det;
    const Matrix2c s = evaluate_entries(sys, ctx, z, &det);
    dets[static_cast<size_t>(j)] = det;
    nums[0][static_cast<size_t>(j)] = s(0, 0) * det;
    nums[1][static_cast<size_t>(j)] = s(0, 1) * det;
    nums[2][static_cast<size_t>(j)] = s(1, 0) * det;
    nums[3][static_cast<size_t>(j)] = s(1, 1) * det;
  }
  CoefficientMatrix cm;
  cm.den = interpolate_on_circle(dets, r);
  cm.s0 = RationalFunction(interpolate_on_circle(nums[0], r), cm.den);
  cm.s1 = RationalFunction(interpolate_on_circle(nums[1], r), cm.den);
  cm.s2 = RationalFunction(interpolate_on_circle(nums[2], r), cm.den);
  cm.s = RationalFunction(interpolate_on_circle(nums[3], r), cm.den);
  return cm;
}

}  // namespace

SchurParameter SchurParameter::constant(Complex value) {
  if (std::abs(value) > 1.0 + 1e-12)
    throw NotSchurClass("constant parameter exceeds modulus one");
  return SchurParameter(RationalFunction::constant(value));
}

SchurParameter SchurParameter::blaschke_product(const std::vector<Complex>& zeros,
                                                Complex phase) {
  return SchurParameter(blaschke(zeros, phase));
}

SchurParameter SchurParameter::rational(RationalFunction f) {
  for (const Complex& pole : roots(f.den))
    if (std::abs(pole) <= 1.0 + 1e-9)
      throw NotSchurClass("parameter has a pole inside or on the unit circle");
  check_bounded_on_grid(f, 1e-8, "parameter");
  return SchurParameter(std::move(f));
}

Matrix2c coefficient_matrix_at(const PickSystem& sys, Complex z) {
  const Context ctx = make_context(sys);
  return evaluate_entries(sys, ctx, z, nullptr);
}

CoefficientMatrix coefficient_matrix_rational(
    const PickSystem& sys, const std::vector<Complex>& validation_points) {
  const Context ctx = make_context(sys);
  std::vector<Complex> pts = default_validation_points();
  pts.insert(pts.end(), validation_points.begin(), validation_points.end());
  const int n = static_cast<int>(sys.P.rows());
  CoefficientMatrix cm = reconstruct(sys, ctx, 0.5, n + 1);
  if (matches_pointwise(sys, ctx, cm, pts)) return cm;
  cm = reconstruct(sys, ctx, 0.25, 2 * (n + 1));
  if (matches_pointwise(sys, ctx, cm, pts)) return cm;
  throw ReconstructionMismatch(
      "interpolated coefficient matrix disagrees with pointwise evaluation");
}

RationalFunction apply_parameter(const CoefficientMatrix& cm,
                                 const RationalFunction& parameter) {
  // det(S) den^2 = s0.num s.num - s2.num s1.num is divisible by den. The
  // quotient is recovered by sampling det(S) den on an interior circle,
  // which avoids the coefficient cancellation of forming the product
  // difference explicitly, and keeps the composed transform at degree at
  // most deg(den) + deg(parameter).
  const int count = cm.den.degree() + 1;
  std::vector<Complex> vals(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j) {
    const Complex z = 0.5 * unit(kTwoPi * j / count);
    vals[static_cast<size_t>(j)] =
        (cm.s0.num(z) * cm.s.num(z) - cm.s2.num(z) * cm.s1.num(z)) / cm.den(z);
  }
  const Polynomial p = interpolate_on_circle(vals, 0.5);

  Polynomial num = cm.s0.num * parameter.den - p * parameter.num;
  Polynomial den = cm.den * parameter.den - cm.s.num * parameter.num;
  const double dscale = std::max(den.coeff_scale(), num.coeff_scale());
  if (den.is_zero() || den.coeff_scale() <= 1e-12 * dscale)
    throw DegenerateDenominator("parameter cancels the transform denominator");
  const RationalFunction w(num.trimmed(1e-12), den.trimmed(1e-12));

  for (int j = 0; j < 8; ++j) {
    const Complex z = 0.6 * unit(kTwoPi * (j + 0.3) / 8.0);
    Complex direct;
    try {
      const Complex ev = rat_eval(parameter, z);
      const Complex sv = rat_eval(cm.s, z);
      direct = rat_eval(cm.s0, z) +
               rat_eval(cm.s2, z) * ev / (Complex(1.0) - sv * ev) * rat_eval(cm.s1, z);
    } catch (const PoleAtPoint&) {
      return lft_apply(cm.s0, cm.s1, cm.s2, cm.s, parameter);
    }
    Complex reduced;
    try {
      reduced = rat_eval(w, z);
    } catch (const PoleAtPoint&) {
      return lft_apply(cm.s0, cm.s1, cm.s2, cm.s, parameter);
    }
    if (std::abs(reduced - direct) > 1e-8 * (1.0 + std::abs(direct)))
      return lft_apply(cm.s0, cm.s1, cm.s2, cm.s, parameter);
  }
  return w;
}

SingularSolution singular_solution(const PickSystem& sys, double tol) {
  if (!sys.singular)
    throw InvalidData("Pick matrix is nonsingular; the solution is not unique");
  const int n = static_cast<int>(sys.P.rows());
  const MatrixXc sym_p = 0.5 * (sys.P + sys.P.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXc> es_p(sym_p);
  const double spectral_p =
      std::max(std::abs(es_p.eigenvalues()(0)), std::abs(es_p.eigenvalues()(n - 1)));
  if (es_p.eigenvalues()(0) < -1e-9 * std::max(1.0, spectral_p))
    throw InvalidData("Pick matrix is not positive semidefinite");

  const MatrixXc sym = 0.5 * (sys.Ptilde + sys.Ptilde.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(sym);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double thr = tol * std::max(1.0, std::abs(ev(n - 1)));
  int first = 0;
  while (first < n && ev(first) <= thr) ++first;
  const int dim = n - first;
  if (dim == 0) throw RangeViolation("Ptilde has trivial range");
  const MatrixXc q = es.eigenvectors().rightCols(dim);

  const VectorXc m_vec = sys.M.adjoint();
  const double range_resid = (m_vec - q * (q.adjoint() * m_vec)).norm();
  if (range_resid > tol * std::max(1.0, sym.norm()))
    throw RangeViolation("right-hand side leaves the range of Ptilde");

  const MatrixXc a_small = q.adjoint() * sym * q;
  const MatrixXc b_small = q.adjoint() * (sys.P * sys.T) * q;
  const RowVectorXc eq = sys.E * q;
  const VectorXc qm = q.adjoint() * m_vec;

  const int count = dim + 1;
  std::vector<Complex> dets(static_cast<size_t>(count));
  std::vector<Complex> nums(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j) {
    const Complex z = 0.5 * unit(kTwoPi * j / count);
    const MatrixXc c = a_small - z * b_small;
    Eigen::FullPivLU<MatrixXc> lu(c);
    dets[static_cast<size_t>(j)] = lu.determinant();
    if (!lu.isInvertible())
      throw ResolventSingular("restricted pencil is singular at a sample point");
    const VectorXc y = lu.solve(qm);
    if ((c * y - qm).norm() > tol * std::max(1.0, qm.norm()))
      throw RangeViolation("restricted solve residual is too large");
    nums[static_cast<size_t>(j)] = (eq * y)(0, 0) * dets[static_cast<size_t>(j)];
  }

  SingularSolution out;
  out.degree = sys.rank;
  Polynomial num = interpolate_on_circle(nums, 0.5).trimmed(1e-8);
  Polynomial den = interpolate_on_circle(dets, 0.5);
  if (num.degree() != sys.rank)
    throw ReconstructionMismatch("unique solution has unexpected degree");
  for (int j = 0; j < 64; ++j) {
    const Complex t = unit(kTwoPi * j / 64.0);
    const double nm = std::abs(num(t));
    const double dm = std::abs(den(t));
    if (std::abs(nm - dm) > 1e-8 * (nm + dm))
      throw ReconstructionMismatch("unique solution is not unimodular on the circle");
  }
  out.w = RationalFunction(std::move(num), std::move(den));
  return out;
}

Solution solve(const PickSystem& sys, const SchurParameter& param) {
  Solution out;
  if (sys.singular) {
    SingularSolution unique = singular_solution(sys);
    out.w = std::move(unique.w);
    out.singular = true;
    out.diagnostics.push_back(
        "Pick matrix is singular: returning the unique solution of degree " +
        std::to_string(unique.degree) + "; the parameter is ignored");
  } else {
    const CoefficientMatrix cm = coefficient_matrix_rational(sys);
    out.w = apply_parameter(cm, param.function());
  }
  for (double r : {0.2, 0.45, 0.7, 0.9, 0.99})
    for (int a = 0; a < 64; ++a) {
      const Complex z = r * unit(kTwoPi * (a + 0.25) / 64.0);
      if (std::abs(rat_eval(out.w, z)) > 1.0 + 1e-8)
        throw NotSchurClass("solution exceeds modulus one in the disk");
    }
  return out;
}

}  // namespace bnp
