#pragma once

#include <string>
#include <string_view>

#include "jrp/model.hpp"

namespace jrp {

// Instance document:
//   { "k0": "num/den",
//     "commodities": [ { "id", "class", "lambda", "h", "k" } ... ],
//     "meta": { ... } }            // optional, reduction metadata
// Policy document:
//   { "cycles": { "<id>": "num/den", ... } }
//
// Rationals are always written as "num/den" strings. On input a bare integer
// string or JSON integer is also accepted; JSON floats are rejected.

std::string save_instance(const Instance& instance);
/// Throws Error with kMalformedDocument, kNonPositive, kUnknownClass or
/// kDuplicateId.
Instance load_instance(std::string_view bytes);

std::string save_policy(const Policy& policy);
Policy load_policy(std::string_view bytes);

}  // namespace jrp
