#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "hslope/real.hpp"

namespace hslope {

using Rational = boost::multiprecision::mpq_rational;

/// Exact value of a decimal string ("-12.5e-3" -> -1/80) or of an integer
/// fraction "p/q". Throws InputError.
Rational parse_rational(std::string_view text);

/// Terminating decimal when the denominator is 2^a 5^b, "p/q" otherwise.
/// Round-trips through parse_rational.
std::string to_exact_string(const Rational& q);

/// Exact dyadic value of a finite Real.
Rational to_rational(const Real& x);

/// Nearest Real at the working precision.
Real to_real(const Rational& q);

}  // namespace hslope
