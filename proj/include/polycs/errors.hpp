#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace polycs {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed GBF text, sequence file or JSON document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the documented domain (odd q, index >= m, length mismatch, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Failure of a construction hypothesis. The CLI maps every subclass to exit status 1.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// A restricted GBF still has a monomial in three or more free variables.
class DegreeTooHigh : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class NotTheorem1Applicable : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

/// x_l is coupled to a free variable under a restriction where it must be isolated.
class MixedIsolatedCoupling : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class BalanceConditionFailed : public HypothesisError {
 public:
  BalanceConditionFailed(std::string what, int group, int label,
                         std::vector<std::size_t> histogram)
      : HypothesisError(std::move(what)),
        group_(group),
        label_(label),
        histogram_(std::move(histogram)) {}

  int group() const noexcept { return group_; }
  int label() const noexcept { return label_; }
  /// histogram()[v] = number of c in S_N with L_c == v.
  const std::vector<std::size_t>& histogram() const noexcept { return histogram_; }

 private:
  int group_;
  int label_;
  std::vector<std::size_t> histogram_;
};

/// Lemma-specific precondition (GDJ path, Paterson quadratic form, Schmidt all-paths).
class HypothesisViolated : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

/// Request exceeds the enumeration limit.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace polycs
