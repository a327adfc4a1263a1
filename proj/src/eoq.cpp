#include "jrp/eoq.hpp"

#include <cmath>

#include "jrp/error.hpp"

namespace jrp {

Rational standalone_cost(const Commodity& c, const Rational& t) {
  if (t.sign() <= 0) {
    throw Error(ErrorCode::kNonPositive, "cycle time must be positive, got " + t.str());
  }
  return c.setup / t + c.demand * c.holding * t / Rational(2);
}

EoqResult optimal_cycle(const Rational& setup, const Rational& holding, const Rational& demand) {
  if (setup.sign() <= 0 || holding.sign() <= 0 || demand.sign() <= 0) {
    throw Error(ErrorCode::kNonPositive, "EOQ parameters must be positive");
  }
  const Rational square = Rational(2) * setup / (holding * demand);
  EoqResult result;
  Rational root;
  if (exact_sqrt(square, root)) {
    result.cycle.exact = root;
    result.cycle.approx = root.to_double();
    // g(t*) = K/t* + (2K/t*^2) * t*/2 = 2K/t*
    Rational cost = Rational(2) * setup / root;
    result.cost.approx = cost.to_double();
    result.cost.exact = std::move(cost);
  } else {
    result.cycle.approx = sqrt_approx(square);
    // g(t*) = sqrt(2 K h lambda)
    result.cost.approx = sqrt_approx(Rational(2) * setup * holding * demand);
  }
  return result;
}

EoqResult optimal_cycle(const Commodity& c) {
  return optimal_cycle(c.setup, c.holding, c.demand);
}

ThetaPair theta_pair(const Commodity& c, const Rational& k0) {
  if (k0.sign() <= 0) {
    throw Error(ErrorCode::kNonPositive, "joint setup cost must be positive, got " + k0.str());
  }
  return {optimal_cycle(c.setup, c.holding, c.demand),
          optimal_cycle(c.setup + k0, c.holding, c.demand)};
}

}  // namespace jrp
