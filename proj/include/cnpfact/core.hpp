// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_CORE_HPP
#define CNPFACT_CORE_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cnpfact {

using Scalar = std::complex<double>;
using MatrixX = Eigen::MatrixXcd;
using VectorX = Eigen::VectorXcd;
using RowVectorX = Eigen::RowVectorXcd;

/// Largest basis (Fock or monomial) any operation will materialize.
inline constexpr std::size_t kDefaultBasisCap = 200000;

enum class ErrorKind {
  InvalidInput,  // malformed or out-of-contract arguments
  Tolerance,     // a numerical certificate missed its threshold
  ResourceCap,   // requested truncation exceeds the configured cap
};

/// Library error. `reason()` is a short machine-readable tag such as
/// "letter_out_of_range"; `what()` is the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string reason, const std::string& message)
      : std::runtime_error(message), kind_(kind), reason_(std::move(reason)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  ErrorKind kind_;
  std::string reason_;
};

[[noreturn]] inline void fail_input(const std::string& reason, const std::string& message) {
  throw Error(ErrorKind::InvalidInput, reason, message);
}

}  // namespace cnpfact

#endif  // CNPFACT_CORE_HPP
