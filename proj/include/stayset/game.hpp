#pragma once

#include "stayset/errors.hpp"
#include "stayset/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stayset {

/// One outgoing probability edge of a distribution. Successors are referenced
/// by name so that unvalidated specs (dangling references and all) stay
/// representable; validate_game reports the problems.
struct Edge {
  std::string to;
  Rational prob;
  bool operator==(const Edge&) const = default;
};

using Distribution = std::vector<Edge>;

struct StateDef {
  std::string name;
  std::optional<int> owner;           // controlling player (0-based); nullopt = uncontrolled
  std::vector<std::string> actions;   // empty iff uncontrolled
  std::vector<Distribution> law;      // one per action; single row for uncontrolled states
  bool operator==(const StateDef&) const = default;
};

/// A finite turn-based stochastic game with per-player safety objectives.
/// Each player i wins a play iff it never visits a state outside
/// safe_sets[i]. State declaration order fixes index order everywhere
/// (tie-breaking, serialization, matrix layouts).
struct GameSpec {
  int players = 0;
  std::vector<StateDef> states;
  std::string initial;
  std::vector<std::vector<std::string>> safe_sets;  // one list of state names per player

  int state_index(std::string_view name) const;  // -1 when unknown
  const StateDef* find_state(std::string_view name) const;
  int initial_index() const { return state_index(initial); }

  /// Membership mask of safe_sets[player] over state indices.
  std::vector<char> safe_mask(int player) const;

  bool operator==(const GameSpec&) const = default;
};

/// Sorts every distribution by successor state index (unknown names last,
/// by name). All construction paths normalize so that operator== is
/// order-insensitive in practice.
void canonicalize(GameSpec& spec);

/// Checks every structural invariant and returns one message per violation
/// ("location: problem"). An empty result means the spec is valid.
/// Violations are data, not failures: nothing throws.
std::vector<std::string> validate_game(const GameSpec& spec);

/// The built-in five-state game G: players 1 and 2 alternate between
/// continuing (c) and attempting to quit (q); W and L are absorbing
/// win/loss states and L2 is a pass-through state that only player 2
/// must avoid. Initial state is "1".
GameSpec build_game_g();

/// A randomized stationary strategy profile: for each controlled state, a
/// distribution over its actions, aligned with the declared action order.
struct StationaryProfile {
  std::map<std::string, std::vector<Rational>> choice;
  bool operator==(const StationaryProfile&) const = default;
};

/// Builds a profile from sparse (state -> action -> probability) data.
/// For every controlled state, unspecified actions get probability 0 except
/// the first-declared unspecified one, which receives the residual mass.
/// States absent from `given` put all mass on their first action.
/// Throws Error on unknown names, probabilities outside [0,1], or mass
/// that cannot be completed to exactly 1.
StationaryProfile make_profile(
    const GameSpec& spec,
    const std::map<std::string, std::map<std::string, Rational>>& given);

/// Renders a profile as the CLI literal syntax ("1:c=3/7;1:q=4/7;...").
std::string format_profile(const GameSpec& spec, const StationaryProfile& profile);

/// Profile for the two-probability parameterization used by grid scans:
/// requires each of the two players to control exactly one state with
/// exactly two actions; p_i is the probability of player i's
/// second-declared action. For G this is the pair of quit probabilities.
StationaryProfile point_profile(const GameSpec& spec, const Rational& p1, const Rational& p2);

/// Finite shared-memory strategy profile: a deterministic public memory
/// automaton (updated on every state entered) plus one stationary profile
/// per memory state. Pairs missing from `update` keep the current memory.
struct MemoryProfile {
  std::vector<std::string> memories;
  std::string start;
  std::map<std::pair<std::string, std::string>, std::string> update;
  std::map<std::string, StationaryProfile> behavior;

  const std::string& next_memory(const std::string& memory, const std::string& entered) const;
  bool operator==(const MemoryProfile&) const = default;
};

/// Wraps a stationary profile as a single-memory MemoryProfile.
MemoryProfile constant_memory(const StationaryProfile& profile);

std::vector<std::string> validate_memory_profile(const GameSpec& spec, const MemoryProfile& mp);

/// Exact payoffs u[i][j]: the safety value of player i for the play entering
/// state j (0 when j is already outside player i's safe set).
struct PayoffMatrix {
  std::vector<std::string> states;            // spec state order
  std::vector<std::vector<Rational>> values;  // [player][state]

  const Rational& value(int player, int state) const { return values.at(player).at(state); }
  const Rational& value(int player, std::string_view state) const;
};

}  // namespace stayset
