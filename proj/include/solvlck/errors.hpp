#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solvlck {

/// Error categories map one-to-one onto CLI exit codes:
/// validation -> 2, precondition -> 3, pipeline -> 4.
enum class ErrorCategory { kValidation, kPrecondition, kPipeline };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCategory::kValidation, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCategory::kPrecondition, what) {}
};

class PipelineError : public Error {
 public:
  explicit PipelineError(const std::string& what)
      : Error(ErrorCategory::kPipeline, what) {}
};

struct DimensionMismatch : ValidationError {
  explicit DimensionMismatch(const std::string& what) : ValidationError(what) {}
};

struct AntisymmetryViolation : ValidationError {
  AntisymmetryViolation(std::size_t i_, std::size_t j_)
      : ValidationError("brackets: antisymmetry violated at (" + std::to_string(i_) +
                        "," + std::to_string(j_) + ")"),
        i(i_),
        j(j_) {}
  std::size_t i, j;
};

struct JacobiViolation : ValidationError {
  JacobiViolation(std::size_t i_, std::size_t j_, std::size_t k_, double residual_)
      : ValidationError("brackets: Jacobi identity violated at (" + std::to_string(i_) +
                        "," + std::to_string(j_) + "," + std::to_string(k_) +
                        "), residual " + std::to_string(residual_)),
        i(i_),
        j(j_),
        k(k_),
        residual(residual_) {}
  std::size_t i, j, k;
  double residual;
};

struct SplitInconsistent : ValidationError {
  explicit SplitInconsistent(const std::string& what)
      : ValidationError("split: " + what) {}
};

struct MalformedBlockSpec : ValidationError {
  explicit MalformedBlockSpec(const std::string& what)
      : ValidationError("block spec: " + what) {}
};

struct ThetaNotClosed : PreconditionError {
  ThetaNotClosed() : PreconditionError("theta is not closed") {}
};

struct OmegaNotDThetaClosed : PreconditionError {
  OmegaNotDThetaClosed() : PreconditionError("omega is not d_theta-closed") {}
};

struct CharacterNotRealizable : PreconditionError {
  explicit CharacterNotRealizable(const std::string& name)
      : PreconditionError("character not realizable from block weights: " + name) {}
};

struct NotPositiveDefinite : PreconditionError {
  explicit NotPositiveDefinite(const std::string& what) : PreconditionError(what) {}
};

struct DegenerateForm : PreconditionError {
  DegenerateForm() : PreconditionError("two-form is degenerate") {}
};

struct NoLeeForm : PreconditionError {
  NoLeeForm() : PreconditionError("no Lee form: d(omega) is not of the shape theta ^ omega") {}
};

struct LeeFormNotClosed : PreconditionError {
  LeeFormNotClosed() : PreconditionError("Lee form solution is not closed") {}
};

struct OddDimension : PreconditionError {
  OddDimension() : PreconditionError("algebra dimension is odd") {}
};

struct JNotAlmostComplex : PreconditionError {
  JNotAlmostComplex() : PreconditionError("J^2 != -identity") {}
};

struct NotJInvariant : PreconditionError {
  NotJInvariant() : PreconditionError("omega is not J-invariant") {}
};

struct NotUnimodular : PreconditionError {
  NotUnimodular() : PreconditionError("algebra is not unimodular") {}
};

struct SignatureMismatch : PreconditionError {
  SignatureMismatch(std::size_t real_found, std::size_t real_requested)
      : PreconditionError("signature mismatch: found " + std::to_string(real_found) +
                          " real roots, requested " + std::to_string(real_requested)) {}
};

struct ZeroEmbedding : PreconditionError {
  ZeroEmbedding() : PreconditionError("element has a zero embedding value") {}
};

struct InsufficientUnits : PipelineError {
  InsufficientUnits(std::size_t rank, std::size_t needed)
      : PipelineError("insufficient units: projected log rank " + std::to_string(rank) +
                      " < " + std::to_string(needed)) {}
};

struct SingularProjection : PipelineError {
  SingularProjection() : PipelineError("projected log vectors form a singular system") {}
};

}  // namespace solvlck
