#include "jrp/generate.hpp"

#include "jrp/error.hpp"

namespace jrp {

namespace {

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

Rational draw_rational(std::mt19937_64& rng, std::int64_t max_den) {
  const std::int64_t den = draw(rng, 1, max_den);
  return Rational(draw(rng, 1, 4 * den), den);
}

}  // namespace

Instance random_instance(std::mt19937_64& rng, const GenOptions& options) {
  if (options.k_lo < 1 || options.k_hi < options.k_lo || options.max_den < 1) {
    throw Error(ErrorCode::kInvalidArgument, "generator needs 1 <= k_lo <= k_hi and max_den >= 1");
  }
  Instance inst;
  inst.joint_setup = draw_rational(rng, options.max_den);
  for (std::size_t i = 0; i < options.n; ++i) {
    Commodity c;
    c.id = "c" + std::to_string(i + 1);
    c.holding = draw_rational(rng, options.max_den);
    c.demand = draw_rational(rng, options.max_den);
    const Rational t(draw(rng, options.k_lo, options.k_hi));
    c.setup = c.holding * c.demand * t * t / Rational(2);
    inst.commodities.push_back(std::move(c));
  }
  return inst;
}

}  // namespace jrp
