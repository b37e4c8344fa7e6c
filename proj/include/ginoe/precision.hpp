#pragma once

#include <array>
#include <limits>
#include <string>
#include <type_traits>

#include <boost/multiprecision/mpfr.hpp>

#include "ginoe/errors.hpp"

namespace ginoe {

namespace mp = boost::multiprecision;

// Fixed-size MPFR numbers on the stack: no heap traffic per temporary.
template <unsigned Digits10>
using MpFloat = mp::number<mp::mpfr_float_backend<Digits10, mp::allocate_stack>, mp::et_off>;

using Float128 = MpFloat<38>;
using Float256 = MpFloat<77>;
using Float512 = MpFloat<154>;
using Float1024 = MpFloat<308>;

// 0 means hardware double.
inline constexpr std::array<int, 5> kSupportedPrecisionBits{0, 128, 256, 512, 1024};
inline constexpr int kAutoPrecision = -1;

// Schedule used when the caller does not choose: double up to n=16, then 256, then 512 bits.
int default_precision_bits(int n);

// kAutoPrecision resolves through the schedule; anything else must be a supported tier.
int resolve_precision_bits(int requested, int n);

void validate_precision_bits(int bits);

std::string supported_precision_list();

template <class Real>
constexpr bool is_multiprecision_v = !std::is_floating_point_v<Real>;

// Nominal tier of a working type (what the user asked for, not MPFR's rounded-up digit count).
template <class Real>
constexpr int precision_tier() {
  if constexpr (std::is_same_v<Real, double>) return 0;
  else if constexpr (std::is_same_v<Real, Float128>) return 128;
  else if constexpr (std::is_same_v<Real, Float256>) return 256;
  else if constexpr (std::is_same_v<Real, Float512>) return 512;
  else return 1024;
}

template <class Real>
double to_double(const Real& x) {
  if constexpr (std::is_same_v<Real, double>) return x;
  else return x.template convert_to<double>();
}

// Calls f(Real{}) with Real chosen by the tier; f picks the type up via decltype.
template <class F>
decltype(auto) with_precision(int bits, F&& f) {
  switch (bits) {
    case 0: return f(double{});
    case 128: return f(Float128{});
    case 256: return f(Float256{});
    case 512: return f(Float512{});
    case 1024: return f(Float1024{});
    default: break;
  }
  validate_precision_bits(bits);
  throw PrecisionError("unreachable precision tier");
}

}  // namespace ginoe
