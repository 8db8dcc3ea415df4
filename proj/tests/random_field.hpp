#pragma once

// Random elements of a fixed depth-3 tower for field properties.

#include <random>
#include <vector>

#include "compass/exactfield.hpp"

namespace randfield {

/// Small rational coefficients over the first `depth` generators.
inline compass::Constructible random_element(const compass::TowerPtr& t, std::mt19937_64& rng, std::size_t depth) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<compass::Rational> c(std::size_t{1} << depth);
  for (auto& q : c) {
    q = compass::Rational(num(rng), den(rng));
    q.canonicalize();
  }
  return compass::Constructible(t, c);
}

/// Q(sqrt 2, sqrt 3, sqrt(5 + sqrt 2)).
inline compass::TowerPtr depth3_tower() {
  auto t = compass::Tower::create();
  sqrt(t->number(2));
  sqrt(t->number(3));
  sqrt(t->number(5) + t->generator(0));
  return t;
}

}  // namespace randfield
