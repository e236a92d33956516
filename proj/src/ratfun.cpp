#include "bnp/ratfun.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace bnp {

namespace {

constexpr double kPoleTol = 1e-14;

double inf_norm(const std::vector<Complex>& c) {
  double m = 0.0;
  for (const Complex& x : c) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  trim_exact_zeros();
}

Polynomial::Polynomial(std::initializer_list<Complex> coeffs)
    : coeffs_(coeffs) {
  trim_exact_zeros();
}

Polynomial Polynomial::constant(Complex c) { return Polynomial({c}); }

Polynomial Polynomial::identity() { return Polynomial({Complex(0.0), Complex(1.0)}); }

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, Complex leading) {
  Polynomial p = constant(leading);
  for (const Complex& r : roots) p *= Polynomial({-r, Complex(1.0)});
  return p;
}

void Polynomial::trim_exact_zeros() {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
}

Complex Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Complex(0.0);
  return coeffs_[static_cast<size_t>(k)];
}

double Polynomial::coeff_scale() const { return inf_norm(coeffs_); }

Complex Polynomial::operator()(Complex z) const {
  Complex acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::abs_eval(double r) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * Complex(static_cast<double>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::conjugated() const {
  std::vector<Complex> c(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = std::conj(coeffs_[k]);
  return Polynomial(std::move(c));
}

std::vector<Complex> Polynomial::taylor(Complex z0, int order) const {
  std::vector<Complex> out(static_cast<size_t>(order) + 1, Complex(0.0));
  std::vector<Complex> a = coeffs_;
  for (int j = 0; j <= order && !a.empty(); ++j) {
    if (a.size() == 1) {
      out[static_cast<size_t>(j)] = a[0];
      break;
    }
    const int d = static_cast<int>(a.size()) - 1;
    std::vector<Complex> b(static_cast<size_t>(d));
    b[static_cast<size_t>(d - 1)] = a[static_cast<size_t>(d)];
    for (int i = d - 1; i >= 1; --i)
      b[static_cast<size_t>(i - 1)] = a[static_cast<size_t>(i)] + z0 * b[static_cast<size_t>(i)];
    out[static_cast<size_t>(j)] = a[0] + z0 * b[0];
    a = std::move(b);
  }
  return out;
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double thr = rel_tol * coeff_scale();
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= thr) c.pop_back();
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
  std::vector<Complex> c(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = -coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  if (coeffs_.size() < q.coeffs_.size()) coeffs_.resize(q.coeffs_.size(), Complex(0.0));
  for (size_t k = 0; k < q.coeffs_.size(); ++k) coeffs_[k] += q.coeffs_[k];
  trim_exact_zeros();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  if (coeffs_.size() < q.coeffs_.size()) coeffs_.resize(q.coeffs_.size(), Complex(0.0));
  for (size_t k = 0; k < q.coeffs_.size(); ++k) coeffs_[k] -= q.coeffs_[k];
  trim_exact_zeros();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) {
  if (is_zero() || q.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Complex> out(coeffs_.size() + q.coeffs_.size() - 1, Complex(0.0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * q.coeffs_[j];
  coeffs_ = std::move(out);
  trim_exact_zeros();
  return *this;
}

Polynomial& Polynomial::operator*=(Complex c) {
  for (Complex& x : coeffs_) x *= c;
  trim_exact_zeros();
  return *this;
}

std::vector<Complex> roots(const Polynomial& p) {
  const int d = p.degree();
  if (d <= 0) return {};
  const Complex lead = p.coeff(d);
  MatrixXc companion = MatrixXc::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = Complex(1.0);
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p.coeff(i) / lead;
  Eigen::ComplexEigenSolver<MatrixXc> solver(companion, /*computeEigenvectors=*/false);
  const VectorXc ev = solver.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InvalidData("polynomial division by zero");
  const int db = b.degree();
  std::vector<Complex> rem = a.coeffs();
  std::vector<Complex> quot;
  if (a.degree() >= db)
    quot.assign(static_cast<size_t>(a.degree() - db) + 1, Complex(0.0));
  const Complex lead = b.coeff(db);
  for (int k = a.degree() - db; k >= 0; --k) {
    const Complex q = rem[static_cast<size_t>(k + db)] / lead;
    quot[static_cast<size_t>(k)] = q;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<size_t>(k + j)] -= q * b.coeff(j);
  }
  if (a.degree() >= db) rem.resize(static_cast<size_t>(db));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

RationalFunction::RationalFunction(Polynomial n, Polynomial d)
    : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw InvalidData("rational function with zero denominator");
}

RationalFunction RationalFunction::constant(Complex c) {
  return RationalFunction(Polynomial::constant(c), Polynomial::constant(1.0));
}

RationalFunction RationalFunction::operator-() const {
  return RationalFunction(-num, den);
}

RationalFunction operator+(const RationalFunction& f, const RationalFunction& g) {
  return RationalFunction(f.num * g.den + g.num * f.den, f.den * g.den);
}

RationalFunction operator-(const RationalFunction& f, const RationalFunction& g) {
  return RationalFunction(f.num * g.den - g.num * f.den, f.den * g.den);
}

RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
  return RationalFunction(f.num * g.num, f.den * g.den);
}

RationalFunction operator/(const RationalFunction& f, const RationalFunction& g) {
  return RationalFunction(f.num * g.den, f.den * g.num);
}

bool approx_equal(const RationalFunction& f, const RationalFunction& g, double rel_tol) {
  const Polynomial a = f.num * g.den;
  const Polynomial b = g.num * f.den;
  const double scale = std::max(inf_norm(a.coeffs()), inf_norm(b.coeffs()));
  if (scale == 0.0) return true;
  return inf_norm((a - b).coeffs()) <= rel_tol * scale;
}

Complex rat_eval(const RationalFunction& f, Complex z) {
  const Complex d = f.den(z);
  const double thr = kPoleTol * f.den.abs_eval(std::max(1.0, std::abs(z)));
  if (std::abs(d) <= thr)
    throw PoleAtPoint("denominator vanishes at evaluation point");
  return f.num(z) / d;
}

Jet rat_taylor(const RationalFunction& f, Complex z0, int order) {
  if (order < 0) throw InvalidData("negative jet order");
  const std::vector<Complex> n = f.num.taylor(z0, order);
  const std::vector<Complex> d = f.den.taylor(z0, order);
  const double thr = kPoleTol * f.den.abs_eval(std::max(1.0, std::abs(z0)));
  if (std::abs(d[0]) <= thr)
    throw PoleAtPoint("denominator vanishes at expansion point");
  Jet jet;
  jet.center = z0;
  jet.coeffs.resize(static_cast<size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    Complex acc = n[static_cast<size_t>(k)];
    for (int j = 1; j <= k; ++j)
      acc -= d[static_cast<size_t>(j)] * jet.coeffs[static_cast<size_t>(k - j)];
    jet.coeffs[static_cast<size_t>(k)] = acc / d[0];
  }
  return jet;
}

RationalFunction blaschke(const std::vector<Complex>& zeros, Complex phase) {
  if (std::abs(std::abs(phase) - 1.0) > 1e-12)
    throw InvalidData("phase factor must be unimodular");
  Polynomial num = Polynomial::constant(phase);
  Polynomial den = Polynomial::constant(1.0);
  for (const Complex& a : zeros) {
    if (std::abs(a) >= 1.0)
      throw ZeroOutsideDisk("Blaschke zero outside the open unit disk");
    num *= Polynomial({-a, Complex(1.0)});
    den *= Polynomial({Complex(1.0), -std::conj(a)});
  }
  return RationalFunction(std::move(num), std::move(den));
}

RationalFunction lft_apply(const RationalFunction& s0, const RationalFunction& s1,
                           const RationalFunction& s2, const RationalFunction& s,
                           const RationalFunction& e) {
  const Polynomial qd = s.den * e.den;
  const Polynomial qn = s.den * e.den - s.num * e.num;
  const double scale =
      inf_norm((s.den * e.den).coeffs()) + inf_norm((s.num * e.num).coeffs());
  if (inf_norm(qn.coeffs()) <= 1e-12 * scale)
    throw DegenerateDenominator("1 - s e vanishes identically");
  const RationalFunction inv(qd, qn);
  return s0 + s2 * e * inv * s1;
}

}  // namespace bnp
