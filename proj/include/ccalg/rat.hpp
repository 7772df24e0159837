#pragma once

// Exact rational scalars. All coefficient arithmetic in the library is
// arbitrary-precision and canonical (lowest terms, positive denominator),
// which cpp_rational guarantees by construction.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace ccalg {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace ccalg
