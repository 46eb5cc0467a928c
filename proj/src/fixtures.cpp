#include "apsum/fixtures.hpp"

#include <cmath>

namespace apsum {

APFunction make_constant(double c) {
  std::vector<SpectralTerm> terms;
  if (c != 0.0) terms.push_back({0.0, cplx{c, 0.0}, {}});
  return APFunction(std::move(terms), 1.0);
}

APFunction make_trig(double alpha, double constant,
                     const std::vector<Wave>& waves) {
  std::vector<SpectralTerm> terms;
  if (constant != 0.0) terms.push_back({0.0, cplx{constant, 0.0}, {}});
  for (const auto& w : waves) {
    if (w.cos_amp == 0.0 && w.sin_amp == 0.0) continue;
    const cplx pos{0.5 * w.cos_amp, -0.5 * w.sin_amp};
    terms.push_back({w.freq, pos, std::conj(pos)});
  }
  return APFunction(std::move(terms), alpha);
}

APFunction fixture_by_name(const std::string& name) {
  if (name == "one") return make_constant(1.0);
  if (name == "sin") return make_trig(1.0, 0.0, {{1.0, 0.0, 1.0}});
  if (name == "sin3")
    return make_trig(1.0, 0.0, {{1.0, 0.0, 1.0}, {3.0, 0.0, 0.5}});
  if (name == "sin4")
    return make_trig(1.0, 0.0, {{1.0, 0.0, 1.0}, {4.0, 0.0, 0.25}});
  if (name == "dyadic")
    return make_trig(2.0, 0.0,
                     {{2.0, 0.5, 0.0},
                      {4.0, 0.25, 0.0},
                      {8.0, 0.125, 0.0},
                      {16.0, 0.0625, 0.0}});
  if (name == "sqrt2")
    return make_trig(0.4, 0.0,
                     {{1.0, 0.0, 1.0}, {std::sqrt(2.0), 0.0, 1.0}});
  if (name == "exp3")
    return APFunction({{3.0, cplx{1.0, 0.0}, cplx{0.0, 0.0}}}, 1.0);
  throw invalid_parameter("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
  return {"one", "sin", "sin3", "sin4", "dyadic", "sqrt2", "exp3"};
}

PeriodicFunction periodic_fixture_by_name(const std::string& name) {
  return to_periodic(fixture_by_name(name));
}

}  // namespace apsum
