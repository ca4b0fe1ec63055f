#include "stayset/game.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace stayset {

int GameSpec::state_index(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].name == name) return static_cast<int>(i);
  return -1;
}

const StateDef* GameSpec::find_state(std::string_view name) const {
  int i = state_index(name);
  return i < 0 ? nullptr : &states[i];
}

std::vector<char> GameSpec::safe_mask(int player) const {
  std::vector<char> mask(states.size(), 0);
  for (const auto& name : safe_sets.at(player)) {
    int i = state_index(name);
    if (i >= 0) mask[i] = 1;
  }
  return mask;
}

void canonicalize(GameSpec& spec) {
  auto key = [&spec](const Edge& e) {
    int i = spec.state_index(e.to);
    return std::pair<int, std::string_view>(i < 0 ? static_cast<int>(spec.states.size()) : i,
                                            e.to);
  };
  for (auto& st : spec.states)
    for (auto& dist : st.law)
      std::stable_sort(dist.begin(), dist.end(),
                       [&](const Edge& a, const Edge& b) { return key(a) < key(b); });
}

namespace {

void check_distribution(const GameSpec& spec, const std::string& where,
                        const Distribution& dist, std::vector<std::string>& out) {
  if (dist.empty()) {
    out.push_back(where + ": empty distribution");
    return;
  }
  Rational sum;
  std::set<std::string> seen;
  for (const Edge& e : dist) {
    if (spec.state_index(e.to) < 0)
      out.push_back(where + ": unknown successor state '" + e.to + "'");
    if (!seen.insert(e.to).second)
      out.push_back(where + ": duplicate successor '" + e.to + "'");
    if (e.prob < Rational(0) || e.prob > Rational(1))
      out.push_back(where + ": probability " + e.prob.str() + " out of [0,1]");
    sum += e.prob;
  }
  if (sum != Rational(1))
    out.push_back(where + ": distribution sums to " + sum.str() + ", expected 1");
}

}  // namespace

std::vector<std::string> validate_game(const GameSpec& spec) {
  std::vector<std::string> out;
  if (spec.players < 1) out.push_back("game: players must be >= 1");

  std::set<std::string> names;
  for (const StateDef& st : spec.states) {
    if (st.name.empty()) out.push_back("state '': empty state name");
    if (st.name.find('.') != std::string::npos)
      out.push_back("state '" + st.name + "': state names must not contain '.'");
    if (!names.insert(st.name).second)
      out.push_back("state '" + st.name + "': duplicate state name");
  }

  if (spec.state_index(spec.initial) < 0)
    out.push_back("game: unknown initial state '" + spec.initial + "'");

  for (const StateDef& st : spec.states) {
    const std::string where = "state '" + st.name + "'";
    if (st.owner) {
      if (*st.owner < 0 || *st.owner >= spec.players)
        out.push_back(where + ": controller " + std::to_string(*st.owner + 1) +
                      " out of range 1.." + std::to_string(spec.players));
      if (st.actions.empty()) out.push_back(where + ": controlled state declares no actions");
      std::set<std::string> acts;
      for (const auto& a : st.actions) {
        if (a.empty()) out.push_back(where + ": empty action name");
        if (!acts.insert(a).second) out.push_back(where + ": duplicate action '" + a + "'");
      }
      if (st.law.size() != st.actions.size()) {
        out.push_back(where + ": has " + std::to_string(st.law.size()) +
                      " distributions for " + std::to_string(st.actions.size()) + " actions");
      } else {
        for (std::size_t a = 0; a < st.actions.size(); ++a)
          check_distribution(spec, where + ", action '" + st.actions[a] + "'", st.law[a], out);
      }
    } else {
      if (!st.actions.empty())
        out.push_back(where + ": uncontrolled state declares actions");
      if (st.law.size() != 1)
        out.push_back(where + ": uncontrolled state needs exactly one distribution, has " +
                      std::to_string(st.law.size()));
      else
        check_distribution(spec, where, st.law[0], out);
    }
  }

  if (static_cast<int>(spec.safe_sets.size()) != spec.players) {
    out.push_back("game: " + std::to_string(spec.safe_sets.size()) + " safe sets for " +
                  std::to_string(spec.players) + " players");
  } else {
    for (std::size_t p = 0; p < spec.safe_sets.size(); ++p) {
      std::set<std::string> seen;
      for (const auto& name : spec.safe_sets[p]) {
        const std::string where = "safe set of player " + std::to_string(p + 1);
        if (spec.state_index(name) < 0)
          out.push_back(where + ": unknown state '" + name + "'");
        if (!seen.insert(name).second)
          out.push_back(where + ": duplicate state '" + name + "'");
      }
    }
  }
  return out;
}

GameSpec build_game_g() {
  const Rational half(1, 2), quarter(1, 4), three_quarters(3, 4);
  GameSpec g;
  g.players = 2;
  g.initial = "1";
  g.states = {
      {"1", 0, {"c", "q"}, {{{"2", 1}}, {{"2", quarter}, {"W", half}, {"L", quarter}}}},
      {"2", 1, {"c", "q"}, {{{"1", three_quarters}, {"L2", quarter}},
                            {{"1", quarter}, {"W", quarter}, {"L", half}}}},
      {"L2", std::nullopt, {}, {{{"1", 1}}}},
      {"W", std::nullopt, {}, {{{"W", 1}}}},
      {"L", std::nullopt, {}, {{{"L", 1}}}},
  };
  g.safe_sets = {{"1", "2", "W", "L2"}, {"1", "2", "W"}};
  canonicalize(g);
  return g;
}

StationaryProfile make_profile(
    const GameSpec& spec,
    const std::map<std::string, std::map<std::string, Rational>>& given) {
  for (const auto& [state, _] : given) {
    const StateDef* st = spec.find_state(state);
    if (!st) throw Error("profile: unknown state '" + state + "'");
    if (!st->owner) throw Error("profile: state '" + state + "' is not controlled");
  }
  StationaryProfile profile;
  for (const StateDef& st : spec.states) {
    if (!st.owner) continue;
    std::vector<Rational> probs(st.actions.size(), Rational(0));
    std::vector<char> given_mask(st.actions.size(), 0);
    Rational sum;
    if (auto it = given.find(st.name); it != given.end()) {
      for (const auto& [action, prob] : it->second) {
        auto pos = std::find(st.actions.begin(), st.actions.end(), action);
        if (pos == st.actions.end())
          throw Error("profile: state '" + st.name + "' has no action '" + action + "'");
        if (prob < Rational(0) || prob > Rational(1))
          throw Error("profile: probability " + prob.str() + " for '" + st.name + ":" +
                      action + "' out of [0,1]");
        std::size_t idx = static_cast<std::size_t>(pos - st.actions.begin());
        probs[idx] = prob;
        given_mask[idx] = 1;
        sum += prob;
      }
    }
    if (sum > Rational(1))
      throw Error("profile: probabilities at state '" + st.name + "' sum to " + sum.str());
    auto first_free = std::find(given_mask.begin(), given_mask.end(), 0);
    if (first_free == given_mask.end()) {
      if (sum != Rational(1))
        throw Error("profile: probabilities at state '" + st.name + "' sum to " + sum.str() +
                    ", expected 1");
    } else {
      probs[static_cast<std::size_t>(first_free - given_mask.begin())] = Rational(1) - sum;
    }
    profile.choice[st.name] = std::move(probs);
  }
  return profile;
}

std::string format_profile(const GameSpec& spec, const StationaryProfile& profile) {
  std::ostringstream out;
  bool first = true;
  for (const StateDef& st : spec.states) {
    auto it = profile.choice.find(st.name);
    if (it == profile.choice.end()) continue;
    for (std::size_t a = 0; a < st.actions.size() && a < it->second.size(); ++a) {
      if (!first) out << ';';
      first = false;
      out << st.name << ':' << st.actions[a] << '=' << it->second[a].str();
    }
  }
  return out.str();
}

StationaryProfile point_profile(const GameSpec& spec, const Rational& p1, const Rational& p2) {
  if (spec.players != 2)
    throw Error("point profile requires a two-player game");
  const StateDef* owned[2] = {nullptr, nullptr};
  for (const StateDef& st : spec.states) {
    if (!st.owner) continue;
    int p = *st.owner;
    if (p < 0 || p > 1 || owned[p])
      throw Error("point profile requires each player to control exactly one state");
    owned[p] = &st;
  }
  const Rational* ps[2] = {&p1, &p2};
  StationaryProfile profile;
  for (int p = 0; p < 2; ++p) {
    if (!owned[p]) throw Error("point profile: player " + std::to_string(p + 1) +
                               " controls no state");
    if (owned[p]->actions.size() != 2)
      throw Error("point profile: state '" + owned[p]->name + "' must have exactly 2 actions");
    if (*ps[p] < Rational(0) || *ps[p] > Rational(1))
      throw Error("point profile: probability " + ps[p]->str() + " out of [0,1]");
    profile.choice[owned[p]->name] = {Rational(1) - *ps[p], *ps[p]};
  }
  return profile;
}

const std::string& MemoryProfile::next_memory(const std::string& memory,
                                              const std::string& entered) const {
  auto it = update.find({memory, entered});
  return it == update.end() ? memory : it->second;
}

MemoryProfile constant_memory(const StationaryProfile& profile) {
  MemoryProfile mp;
  mp.memories = {"m"};
  mp.start = "m";
  mp.behavior["m"] = profile;
  return mp;
}

std::vector<std::string> validate_memory_profile(const GameSpec& spec, const MemoryProfile& mp) {
  std::vector<std::string> out;
  std::set<std::string> mems(mp.memories.begin(), mp.memories.end());
  if (mems.size() != mp.memories.size()) out.push_back("memory: duplicate memory names");
  if (mp.memories.empty()) out.push_back("memory: no memory states");
  if (!mems.count(mp.start)) out.push_back("memory: unknown start memory '" + mp.start + "'");
  for (const auto& [key, to] : mp.update) {
    if (!mems.count(key.first))
      out.push_back("memory update: unknown memory '" + key.first + "'");
    if (spec.state_index(key.second) < 0)
      out.push_back("memory update: unknown state '" + key.second + "'");
    if (!mems.count(to)) out.push_back("memory update: unknown target memory '" + to + "'");
  }
  for (const auto& m : mp.memories) {
    if (!mp.behavior.count(m)) {
      out.push_back("memory '" + m + "': no behavior profile");
      continue;
    }
    const StationaryProfile& prof = mp.behavior.at(m);
    for (const StateDef& st : spec.states) {
      if (!st.owner) continue;
      auto it = prof.choice.find(st.name);
      if (it == prof.choice.end())
        out.push_back("memory '" + m + "': behavior misses state '" + st.name + "'");
      else if (it->second.size() != st.actions.size())
        out.push_back("memory '" + m + "': behavior at '" + st.name +
                      "' has wrong action count");
    }
  }
  return out;
}

const Rational& PayoffMatrix::value(int player, std::string_view state) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == state) return values.at(player).at(i);
  throw Error("payoff matrix: unknown state '" + std::string(state) + "'");
}

}  // namespace stayset
