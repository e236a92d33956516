#pragma once

#include <stdexcept>
#include <string>

namespace bnp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define BNP_DEFINE_ERROR(Name)                             \
  struct Name final : Error {                              \
    explicit Name(const std::string& m) : Error(#Name ": " + m) {} \
  }

BNP_DEFINE_ERROR(InvalidData);
BNP_DEFINE_ERROR(PoleAtPoint);
BNP_DEFINE_ERROR(ZeroOutsideDisk);
BNP_DEFINE_ERROR(DegenerateDenominator);
BNP_DEFINE_ERROR(DuplicateNodes);
BNP_DEFINE_ERROR(NonHermitianDiagonalBlock);
BNP_DEFINE_ERROR(NonRealGamma);
BNP_DEFINE_ERROR(PoleAtNode);
BNP_DEFINE_ERROR(NotUnimodularAtNode);
BNP_DEFINE_ERROR(NotHermitian);
BNP_DEFINE_ERROR(SingularPick);
BNP_DEFINE_ERROR(ResolventSingular);
BNP_DEFINE_ERROR(ReconstructionMismatch);
BNP_DEFINE_ERROR(RangeViolation);
BNP_DEFINE_ERROR(NotSchurClass);

#undef BNP_DEFINE_ERROR

}  // namespace bnp
