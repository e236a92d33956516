#pragma once

#include <string>

#include "bnp/analyze.hpp"
#include "bnp/parametrize.hpp"
#include "bnp/pickdata.hpp"
#include "bnp/solvability.hpp"

namespace bnp {

// Strict parsers; malformed input is reported as InvalidData. Complex numbers
// are encoded as [re, im], polynomials as coefficient arrays in ascending
// order, rational functions as {"num": [...], "den": [...]}.
ProblemData parse_problem_json(const std::string& text);
RationalFunction parse_rational_json(const std::string& text);

// Deterministic serialization: fixed key order, 17 significant digits.
std::string format_number(double x);
std::string json_string(const std::string& s);
std::string json_complex(Complex z);
std::string json_polynomial(const Polynomial& p);
std::string json_rational(const RationalFunction& f);
std::string json_report(const SolvabilityReport& report);
std::string json_coefficient_matrix(const CoefficientMatrix& cm, double alpha,
                                    double beta);
std::string json_limit(const LimitEstimate& est);

}  // namespace bnp
