#pragma once

#include <string>
#include <vector>

#include "bnp/pickdata.hpp"

namespace bnp {

// Entries of the 2x2 rational coefficient matrix
//   S(z) = [ s0  s1 ]
//          [ s2  s  ]
// of the solution family, all sharing the denominator
// den(z) = det(Ptilde - z P T).
struct CoefficientMatrix {
  RationalFunction s0;
  RationalFunction s1;
  RationalFunction s2;
  RationalFunction s;
  Polynomial den;
};

// A free parameter of the solution family: a function bounded by one on the
// unit disk, validated at construction.
class SchurParameter {
 public:
  static SchurParameter constant(Complex value);
  static SchurParameter blaschke_product(const std::vector<Complex>& zeros,
                                         Complex phase = Complex(1.0));
  static SchurParameter rational(RationalFunction f);

  const RationalFunction& function() const { return f_; }

 private:
  explicit SchurParameter(RationalFunction f) : f_(std::move(f)) {}
  RationalFunction f_;
};

// Pointwise value of S(z). Requires a nonsingular positive definite Pick
// matrix; throws ResolventSingular when Ptilde - z P T is not invertible.
Matrix2c coefficient_matrix_at(const PickSystem& sys, Complex z);

// Closed-form S by sampling on an interior circle and interpolating the
// entries; the result is validated against pointwise evaluation. Extra
// validation points may be supplied (used on top of the built-in ones).
CoefficientMatrix coefficient_matrix_rational(
    const PickSystem& sys, const std::vector<Complex>& validation_points = {});

// Linear fractional transform of a parameter under S, with the shared
// denominator cancelled so that the degree stays at most
// deg(den) + deg(parameter).
RationalFunction apply_parameter(const CoefficientMatrix& cm,
                                 const RationalFunction& parameter);

struct SingularSolution {
  RationalFunction w;
  int degree = 0;  // equals the rank of the Pick matrix
};

// The unique solution in the singular positive semidefinite case, obtained
// by solving on the range of Ptilde.
SingularSolution singular_solution(const PickSystem& sys, double tol = 1e-9);

struct Solution {
  RationalFunction w;
  bool singular = false;  // true when the parameter was ignored
  std::vector<std::string> diagnostics;
};

// The interpolant for the given parameter: the linear fractional transform
// of the parameter under S, or the unique solution when the Pick matrix is
// singular. The result is checked to be bounded by one on interior grids.
Solution solve(const PickSystem& sys, const SchurParameter& param);

}  // namespace bnp
