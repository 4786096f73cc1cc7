#pragma once

#include <stdexcept>
#include <string>

namespace lcorrupt {

enum class ErrorCode {
  invalid_argument,
  io,
  empty_input,
  too_few_points,
  registration_failure,
  unknown_kind,
  config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline Error invalid_argument_error(const std::string& what) {
  return Error(ErrorCode::invalid_argument, what);
}
inline Error io_error(const std::string& what) { return Error(ErrorCode::io, what); }
inline Error empty_input_error(const std::string& what) {
  return Error(ErrorCode::empty_input, what);
}
inline Error too_few_points_error(const std::string& what) {
  return Error(ErrorCode::too_few_points, what);
}
inline Error unknown_kind_error(const std::string& what) {
  return Error(ErrorCode::unknown_kind, what);
}
inline Error config_error(const std::string& what) { return Error(ErrorCode::config, what); }

}  // namespace lcorrupt
