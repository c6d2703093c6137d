#include "kdisj/error.hpp"

namespace kdisj {

int exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::invalid_unit:
    case Errc::invalid_bounds:
    case Errc::config:
    case Errc::plan:
      return 2;
    case Errc::shape:
    case Errc::schema_violation:
    case Errc::incomplete_record:
    case Errc::empty_modality:
    case Errc::io:
      return 3;
    case Errc::numeric:
      return 4;
  }
  return 1;
}

}  // namespace kdisj
