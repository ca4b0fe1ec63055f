#pragma once

#include "stayset/exact_eval.hpp"
#include "stayset/game.hpp"

#include <string>
#include <vector>

namespace stayset {

/// Optimal response of one player against the rest of a fixed profile.
/// Safety objectives in finite MDPs admit optimal pure memoryless
/// strategies, so the search space is the finite set of pure strategies.
struct BestResponseResult {
  int player = 0;
  Rational value;                                // from the initial state
  std::map<std::string, std::string> strategy;   // controlled state -> action
  bool indifferent = false;                      // several pure strategies tie
};

/// Fixes every other player's behavior (turning the game into an MDP for
/// `player`), enumerates the player's pure memoryless strategies in
/// lexicographic (state, action) declaration order, evaluates each exactly,
/// and returns the first maximizer. Entries of `profile` for the player's
/// own states are ignored, entries for all other controlled states are
/// required.
BestResponseResult best_response(const GameSpec& spec, const StationaryProfile& profile,
                                 int player);

/// max over players of (best-response value - current value), measured at
/// the initial state. Zero exactly for Nash equilibria.
Rational exploitability(const GameSpec& spec, const StationaryProfile& profile);

struct PlayerAssessment {
  Rational current;
  BestResponseResult best;
  Rational gain;  // best.value - current, always >= 0
};

struct EquilibriumCertificate {
  std::string profile_description;
  std::vector<PlayerAssessment> players;
  Rational epsilon;
  bool epsilon_nash = false;  // verdict: every gain <= epsilon
};

EquilibriumCertificate check_epsilon_nash(const GameSpec& spec,
                                          const StationaryProfile& profile,
                                          const Rational& epsilon);

/// Deviations against a memory profile are evaluated on the product game
/// (game state x public memory), so the deviating player may condition on
/// the memory state. Strategy keys in the result are product states "s@m".
EquilibriumCertificate check_memory_nash(const GameSpec& spec, const MemoryProfile& mp,
                                         const Rational& epsilon);

struct ClaimCheck {
  std::string id;
  std::string statement;
  bool passed = false;
  std::string detail;
};

struct Transcript {
  std::vector<ClaimCheck> claims;
  bool all_passed() const;
};

/// Mechanized four-step argument that no stationary profile of the built-in
/// game G (or a same-shaped variant passed in) is a Nash equilibrium:
///   (a) against p2=0, any p1>0 loses value for player 1;
///   (b) at (0,0), player 2 gains by deviating to q;
///   (c) against any p2>0, player 1's unique best reply is q (p1=1);
///   (d) against p1=1, player 2's unique best reply is c (p2=0).
/// Claims quantifying over a continuum are carried by the exact sign
/// oracles; everything else is checked on the given spec at every point of
/// a 1/64 grid. Checking stops at the first failed claim.
Transcript nonexistence_check_g(const GameSpec& spec);
Transcript nonexistence_check_g();

/// One row of a profile-space scan over {0, 1/n, ..., 1}^2 in the
/// point_profile parameterization; u11/u21 are the players' values from the
/// initial state. Row order: p1 outer, p2 inner, both ascending.
struct GridRow {
  Rational p1, p2, u11, u21, exploitability;
};

std::vector<GridRow> grid_scan(const GameSpec& spec, int resolution, int threads = 1);

/// Float-mode mirror of grid_scan (fast, approximate; see exact_eval).
struct GridRowApprox {
  double p1, p2, u11, u21, exploitability;
};

std::vector<GridRowApprox> grid_scan_approx(const GameSpec& spec, int resolution,
                                            int threads = 1);

}  // namespace stayset
