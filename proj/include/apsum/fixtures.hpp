#pragma once

#include <string>
#include <vector>

#include "apsum/apfun.hpp"

namespace apsum {

// f == c
APFunction make_constant(double c);

// One wave a*cos(freq x) + b*sin(freq x) of a real-valued fixture.
struct Wave {
  double freq;
  double cos_amp;
  double sin_amp;
};

// constant + sum of waves; waves must come sorted by frequency.
APFunction make_trig(double alpha, double constant,
                     const std::vector<Wave>& waves);

// Builtin fixtures:
//   one     f = 1                                    alpha 1
//   sin     sin x                                    alpha 1
//   sin3    sin x + 1/2 sin 3x                       alpha 1
//   sin4    sin x + 1/4 sin 4x                       alpha 1
//   dyadic  sum_{j=1..4} 2^{-j} cos(2^j x)           alpha 2
//   sqrt2   sin x + sin(sqrt(2) x)                   alpha 0.4
//   exp3    e^{i 3 x} (complex-valued)               alpha 1
APFunction fixture_by_name(const std::string& name);
std::vector<std::string> fixture_names();

// Periodic form of a builtin fixture; requires integer frequencies.
PeriodicFunction periodic_fixture_by_name(const std::string& name);

}  // namespace apsum
