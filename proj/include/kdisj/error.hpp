#pragma once

#include <stdexcept>
#include <string>

namespace kdisj {

enum class Errc {
  invalid_argument,
  invalid_unit,
  invalid_bounds,
  shape,
  schema_violation,
  incomplete_record,
  empty_modality,
  config,
  plan,
  io,
  numeric,
};

/// Every failure raised by the library carries one of these codes; the CLI
/// turns them into process exit codes via exit_code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// 2 for configuration problems, 3 for data problems, 4 for numeric failures.
int exit_code(Errc code) noexcept;

}  // namespace kdisj
