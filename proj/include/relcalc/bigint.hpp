#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace relcalc {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace relcalc
