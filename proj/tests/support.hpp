#pragma once

#include "lotalloc/core_model.hpp"
#include "oracles.hpp"

inline lotalloc::Profile to_profile(const oracle::Prefs& prefs) {
  std::vector<lotalloc::Ranking> rankings;
  for (const auto& p : prefs) {
    std::vector<lotalloc::ObjectId> order;
    for (int o : p) order.push_back(lotalloc::ObjectId{o});
    rankings.emplace_back(order);
  }
  return lotalloc::Profile(std::move(rankings));
}

inline oracle::Prefs to_prefs(const lotalloc::Profile& R) {
  oracle::Prefs prefs;
  for (const auto& r : R.rankings()) {
    std::vector<int> p;
    for (auto o : r.order()) p.push_back(o.index);
    prefs.push_back(p);
  }
  return prefs;
}

inline lotalloc::Profile example_profile() {
  using lotalloc::Ranking;
  return lotalloc::Profile({Ranking{1, 2, 3, 4, 5}, Ranking{4, 2, 5, 1, 3}, Ranking{1, 3, 5, 4, 2}});
}
