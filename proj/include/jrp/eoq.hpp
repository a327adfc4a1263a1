#pragma once

#include <optional>
#include <utility>

#include "jrp/model.hpp"

namespace jrp {

/// A real quantity that is known exactly when `exact` is set. `approx` is
/// always populated (nearest double of the exact value when available).
struct MaybeExact {
  double approx = 0.0;
  std::optional<Rational> exact;

  bool is_exact() const { return exact.has_value(); }
};

struct EoqResult {
  MaybeExact cycle;  // t*
  MaybeExact cost;   // g(t*)
};

/// g(t) = K/t + lambda*h*t/2. Throws Error(kNonPositive) for t <= 0.
Rational standalone_cost(const Commodity& c, const Rational& t);

/// t* = sqrt(2K/(h*lambda)). Exact when 2K/(h*lambda) is the square of a
/// rational, otherwise an extended-precision double flagged inexact.
EoqResult optimal_cycle(const Commodity& c);

/// Same as optimal_cycle for raw parameters.
EoqResult optimal_cycle(const Rational& setup, const Rational& holding, const Rational& demand);

struct ThetaPair {
  EoqResult lower;  // (h, K)
  EoqResult upper;  // (h, K + K0): the commodity pays the joint setup on every order
};

ThetaPair theta_pair(const Commodity& c, const Rational& k0);

}  // namespace jrp
