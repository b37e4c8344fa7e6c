#include "ginoe/precision.hpp"

#include <algorithm>

namespace ginoe {

int default_precision_bits(int n) {
  if (n <= 16) return 0;
  if (n <= 64) return 256;
  return 512;
}

std::string supported_precision_list() {
  std::string s;
  for (int b : kSupportedPrecisionBits) {
    if (!s.empty()) s += ", ";
    s += std::to_string(b);
  }
  return s;
}

void validate_precision_bits(int bits) {
  if (std::find(kSupportedPrecisionBits.begin(), kSupportedPrecisionBits.end(), bits) ==
      kSupportedPrecisionBits.end()) {
    throw PrecisionError("unsupported precision " + std::to_string(bits) + " bits; choose one of " +
                         supported_precision_list());
  }
}

int resolve_precision_bits(int requested, int n) {
  if (requested == kAutoPrecision) return default_precision_bits(n);
  validate_precision_bits(requested);
  return requested;
}

}  // namespace ginoe
