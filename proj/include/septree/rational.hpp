#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace septree {

// Exact scalar type for algebra coefficients and linear algebra.
using Rational = boost::multiprecision::cpp_rational;

// "3", "-5/2".  Always prints in lowest terms (cpp_rational normalizes).
std::string rational_to_string(const Rational& r);
std::optional<Rational> parse_rational(const std::string& s);

}  // namespace septree
