#pragma once

#include <stdexcept>

namespace mvq {

// A theorem-side precondition does not hold (e.g. the Helmholtz radius bound
// of the annulus identity). Distinguished from plain usage errors so callers
// can report it as such.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace mvq
