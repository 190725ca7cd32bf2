#pragma once

// Slow reference implementations used only by the tests. They share no code
// with the library beyond the value types: plain vectors, direct protocol
// simulation and unreduced enumeration.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lotalloc/numeric.hpp"

namespace oracle {

using lotalloc::Rational;

/// rankings[i][k] = object (1-based) at position k for agent i.
using Prefs = std::vector<std::vector<int>>;

/// Every profile of n agents over m objects, agent 1 most significant.
std::vector<Prefs> all_profiles(int m, int n);

/// g(1..m) as a vector, index k-1.
std::vector<Rational> borda(int m);
std::vector<Rational> lex(int m);

/// Realized utility of each agent after the picking sequence `turns` (1-based agents).
std::vector<Rational> picking_utilities(const std::vector<int>& turns, const Prefs& R, const std::vector<Rational>& g);
/// Average over all (m!)^n profiles.
std::vector<Rational> expected_picking_utilities(const std::vector<int>& turns, int n, const std::vector<Rational>& g);
/// Argmax of the sum (utilitarian) or min (egalitarian) of expected
/// utilities over all n^m sequences; first maximum in lexicographic order.
std::pair<std::vector<int>, Rational> best_sequence(int m, int n, const std::vector<Rational>& g, bool egalitarian);

enum class Rule { All, Loser, Sequence };

struct Outcome {
  std::vector<std::vector<int>> bundles;  // per agent
  Rational probability;
  std::vector<bool> won_contest;   // won a draw among two or more
  std::vector<bool> lost_contest;  // lost at least one draw
};

/// Every lottery realization of the protocol, simulated stage by stage.
std::vector<Outcome> lottery_outcomes(Rule rule, const std::vector<int>& turns, const Prefs& R);

struct Values {
  std::vector<Rational> expected;  // per agent
  std::vector<Rational> minimum;   // per agent, over all outcomes
};
Values outcome_values(const std::vector<Outcome>& outcomes, const Prefs& R, const std::vector<Rational>& g);

/// Manipulator (agent 1) plays every possible report sequence against
/// truthful opponents under all-reporting; a sequence counts only if it is
/// playable in every lottery realization. Maps each secured bundle (bit o-1)
/// to one strategy securing it.
std::map<std::uint32_t, std::vector<int>> secured_bundles(const Prefs& others, int m);
/// Bundle `tau` secures in every realization; nullopt when it is not playable.
std::optional<std::uint32_t> secured_by(const std::vector<int>& tau, const Prefs& others, int m);

/// Deterministic generator independent of the library's RNG use.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_ >> 17;
  }
  int below(int k) { return static_cast<int>(next() % static_cast<std::uint64_t>(k)); }
  std::vector<int> permutation(int m);

 private:
  std::uint64_t state_;
};

}  // namespace oracle
