#pragma once
/**
 * @file errors.hpp
 * @brief Error codes shared by every module.
 */

#include <stdexcept>
#include <string>

namespace obstr {

enum class ErrorCode {
  NonGroup,
  CapExceeded,
  NotCyclic,
  BadParameter,
  NotAutomorphism,
  OrderMismatch,
  NotCyclicByP,
  InvalidData,
  TrivialSubgroup,
  NotNormal,
  InadmissibleChain,
  SingularSystem,
  NotPSubgroup,
  NoTameDatum,
  NotGm,
  WrongGroup,
  NotFamilyGroup,
  NoValidPlacement,
  NotPKernel,
  ParseError,
  BadAutomorphismOrder,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace obstr
