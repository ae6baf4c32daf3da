#ifndef DIRAC_FIELDS_TESTS_SUPPORT_HPP
#define DIRAC_FIELDS_TESTS_SUPPORT_HPP

#include <dirac_fields/grid.hpp>

#include <random>

namespace test {

using dirac_fields::Index;
using dirac_fields::Vector;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(987654321);
  return gen;
}

inline Vector random_vector(Index n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng());
  return v;
}

inline double inf(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline dirac_fields::Grid line(Index n, double a = 0.0, double b = 1.0) {
  return dirac_fields::make_grid(1, {{a, b}}, {n});
}

}  // namespace test

#endif
