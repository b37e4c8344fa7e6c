#include "ginoe/errors.hpp"

#include "ginoe/io.hpp"

namespace ginoe {

RangeError::RangeError(const std::string& what, double lo, double hi)
    : UsageError(what + " (admissible interval (" + format_double(lo) + ", " + format_double(hi) + "))"),
      lo_(lo),
      hi_(hi) {}

ConvergenceError::ConvergenceError(const std::string& what, double previous, double last)
    : NumericalError(what + " (last two values " + format_double(previous) + ", " + format_double(last) + ")"),
      previous_(previous),
      last_(last) {}

}  // namespace ginoe
