#pragma once

#include "oracles.hpp"
#include "selberg/symfunc.hpp"

namespace testing_support {

inline oracle::Poly to_oracle(const selberg::SparsePoly& p) {
  oracle::Poly out;
  for (const auto& [e, c] : p.terms()) out[e] = c.value();
  return out;
}

inline oracle::Q to_q(const selberg::BigRational& q) { return q.value(); }

inline selberg::BigRational from_q(const oracle::Q& q) { return selberg::BigRational(q); }

inline std::vector<selberg::BigRational> from_q(const std::vector<oracle::Q>& v) {
  std::vector<selberg::BigRational> out;
  for (const auto& q : v) out.emplace_back(q);
  return out;
}

}  // namespace testing_support
