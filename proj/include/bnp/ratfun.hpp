#pragma once

#include <vector>

#include "bnp/errors.hpp"
#include "bnp/types.hpp"

namespace bnp {

// Polynomial with complex coefficients in ascending order. The zero
// polynomial is represented by an empty coefficient vector; otherwise the
// trailing coefficient is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs);

  static Polynomial constant(Complex c);
  static Polynomial identity();  // p(z) = z
  static Polynomial from_roots(const std::vector<Complex>& roots,
                               Complex leading = Complex(1.0));

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  double coeff_scale() const;  // max |c_k|

  Complex operator()(Complex z) const;
  double abs_eval(double r) const;  // sum_k |c_k| r^k

  Polynomial derivative() const;
  Polynomial conjugated() const;  // coefficient-wise conjugate

  // Coefficients of p around z0, orders 0..order.
  std::vector<Complex> taylor(Complex z0, int order) const;

  // Drops trailing coefficients of magnitude <= rel_tol * max |c_k|.
  Polynomial trimmed(double rel_tol) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);
  Polynomial& operator*=(Complex c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(Polynomial p, const Polynomial& q) { return p *= q; }
  friend Polynomial operator*(Polynomial p, Complex c) { return p *= c; }
  friend Polynomial operator*(Complex c, Polynomial p) { return p *= c; }

 private:
  void trim_exact_zeros();

  std::vector<Complex> coeffs_;
};

// All roots of p, with multiplicity, via the companion matrix.
std::vector<Complex> roots(const Polynomial& p);

// Quotient and remainder of polynomial long division by a nonzero divisor.
struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};
DivMod divmod(const Polynomial& a, const Polynomial& b);

// Quotient of two polynomials. Denominator must be nonzero; the fraction is
// kept as given, without cancellation of common factors.
struct RationalFunction {
  Polynomial num;
  Polynomial den;

  RationalFunction() : num(), den(Polynomial::constant(1.0)) {}
  RationalFunction(Polynomial n, Polynomial d);

  static RationalFunction constant(Complex c);

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& f, const RationalFunction& g);
  friend RationalFunction operator-(const RationalFunction& f, const RationalFunction& g);
  friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g);
  friend RationalFunction operator/(const RationalFunction& f, const RationalFunction& g);
};

// Pointwise agreement of f and g as functions, by cross-multiplied
// coefficient comparison at relative tolerance rel_tol.
bool approx_equal(const RationalFunction& f, const RationalFunction& g,
                  double rel_tol = 1e-9);

// Taylor coefficients f(z) = sum_k coeffs[k] (z - center)^k.
struct Jet {
  Complex center;
  std::vector<Complex> coeffs;
};

Complex rat_eval(const RationalFunction& f, Complex z);
Jet rat_taylor(const RationalFunction& f, Complex z0, int order);

// Finite Blaschke product with the given zeros (inside the open disk) and a
// unimodular phase factor.
RationalFunction blaschke(const std::vector<Complex>& zeros,
                          Complex phase = Complex(1.0));

// w = s0 + s2 e (1 - s e)^{-1} s1.
RationalFunction lft_apply(const RationalFunction& s0, const RationalFunction& s1,
                           const RationalFunction& s2, const RationalFunction& s,
                           const RationalFunction& e);

}  // namespace bnp
