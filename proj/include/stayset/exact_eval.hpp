#pragma once

#include "stayset/game.hpp"

#include <string>
#include <vector>

namespace stayset {

/// A finite Markov chain over named states with an exact row-stochastic
/// transition matrix.
struct MarkovChain {
  std::vector<std::string> states;
  std::vector<std::vector<Rational>> rows;  // dense; rows[i][j] = P(i -> j)

  int index(std::string_view name) const;
};

/// The chain induced by playing `profile` in `spec`: each controlled state's
/// row is the profile-weighted mix of its action rows; uncontrolled rows are
/// copied verbatim. Requires a valid spec and a matching profile.
MarkovChain induced_chain(const GameSpec& spec, const StationaryProfile& profile);

/// Exact hitting probabilities: result[s] = P(eventually visit target | start s).
/// States from which the target is graph-unreachable get exactly 0, target
/// states get exactly 1, and the rest solve the one-step linear system by
/// exact Gaussian elimination (unique solution after the graph step).
std::vector<Rational> reach_probability(const MarkovChain& chain,
                                        const std::vector<int>& target);
std::vector<Rational> reach_probability(const MarkovChain& chain,
                                        const std::vector<std::string>& target);

/// Exact safety payoffs u[i][j] of the stationary profile: 0 when j is
/// outside player i's safe set, else 1 - P(reach an unsafe state from j).
PayoffMatrix safety_payoff(const GameSpec& spec, const StationaryProfile& profile);

/// Outcome probabilities of one excursion from `origin`: the play halts on
/// entering the win set, the lose set, or on returning to the origin.
/// The three events must partition the excursion's outcomes.
struct FirstPassageSplit {
  Rational win;
  Rational lose;
  Rational ret;
};

/// Computes the split on the chain with origin made absorbing-on-return.
/// Throws Error when origin lies in either set, the sets intersect, or
/// probability mass can escape win/lose/origin for good (a "mass leak",
/// e.g. absorption in some other closed set): the caller asked for a
/// partition that does not exist.
FirstPassageSplit first_passage_split(const MarkovChain& chain, const std::string& origin,
                                      const std::vector<std::string>& win_set,
                                      const std::vector<std::string>& lose_set);

/// Product of a game with a memory profile's automaton: states are
/// (game state, memory) pairs named "s@m", transitions apply the memory
/// update on every entered state, and safety lifts through the first factor.
/// `profile` is the behavior lifted to product states.
struct ProductGame {
  GameSpec game;
  std::vector<std::string> memories;
  StationaryProfile profile;

  int product_index(int state, int memory) const;
  std::string product_name(const std::string& state, const std::string& memory) const;
};

ProductGame product_game(const GameSpec& spec, const MemoryProfile& mp);

/// Exact payoffs of a finite-memory profile, evaluated on the product chain.
/// Entry (i, j) is player i's value for the play entering state j with the
/// automaton in its start memory.
PayoffMatrix memory_payoff(const GameSpec& spec, const MemoryProfile& mp);

/// Floating-point mirrors of the exact operations (64-bit arithmetic,
/// comparisons at tolerance 1e-12). Intended for fast scans; every exact
/// claim in the test suites uses the exact mode.
std::vector<double> reach_probability_approx(const MarkovChain& chain,
                                             const std::vector<int>& target);
std::vector<std::vector<double>> safety_payoff_approx(const GameSpec& spec,
                                                      const StationaryProfile& profile);

/// Solves A x = b exactly by Gaussian elimination; pivots on the first row
/// with a nonzero entry (any nonzero pivot is exact). Throws Error on a
/// singular system.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a,
                                   std::vector<Rational> b);

}  // namespace stayset
