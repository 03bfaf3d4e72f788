#pragma once

#include <gmpxx.h>

#include <string>

namespace lndkit {

using Rational = mpq_class;
using Integer = mpz_class;

// "3", "-1/2"
std::string to_string(const Rational& q);

}  // namespace lndkit
