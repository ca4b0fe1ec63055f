#include "stayset/game_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace stayset {

namespace {

using Json = nlohmann::ordered_json;

Rational parse_prob(const Json& value, const std::string& where) {
  if (!value.is_string())
    throw ParseError(where + ": probabilities must be strings like \"3/4\"");
  auto r = Rational::parse(value.get<std::string>());
  if (!r) throw ParseError(where + ": invalid rational '" + value.get<std::string>() + "'");
  return *r;
}

Distribution parse_distribution(const Json& obj, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object successor -> probability");
  Distribution dist;
  for (const auto& [to, prob] : obj.items())
    dist.push_back({to, parse_prob(prob, where + "/" + to)});
  return dist;
}

void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ParseError(where + ": unknown field '" + key + "'");
}

std::string line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(what + ": syntax error at " + line_of(text, e.byte) + ": " + e.what());
  }
}

}  // namespace

GameSpec parse_game(std::string_view text) {
  Json doc = parse_json(text, "game file");
  if (!doc.is_object()) throw ParseError("game file: top level must be an object");
  reject_unknown_keys(doc, {"players", "states", "initial", "controller", "actions", "law",
                            "safe_sets"},
                      "game file");
  for (const char* key : {"players", "states", "initial", "controller", "actions", "law",
                          "safe_sets"})
    if (!doc.contains(key)) throw ParseError(std::string("game file: missing field '") + key + "'");

  GameSpec spec;
  if (!doc["players"].is_number_integer())
    throw ParseError("players: expected an integer");
  spec.players = doc["players"].get<int>();

  if (!doc["states"].is_array()) throw ParseError("states: expected an array of names");
  for (const auto& s : doc["states"]) {
    if (!s.is_string()) throw ParseError("states: expected an array of names");
    spec.states.push_back({s.get<std::string>(), std::nullopt, {}, {}});
  }

  if (!doc["initial"].is_string()) throw ParseError("initial: expected a state name");
  spec.initial = doc["initial"].get<std::string>();

  auto state_slot = [&spec](const std::string& name) -> StateDef* {
    for (auto& st : spec.states)
      if (st.name == name) return &st;
    return nullptr;
  };

  // Controller entries are 1-based player indices or "none"; states absent
  // from the object default to uncontrolled.
  for (const auto& [name, value] : doc["controller"].items()) {
    StateDef* st = state_slot(name);
    if (!st) throw ParseError("controller: unknown state '" + name + "'");
    if (value.is_string()) {
      if (value.get<std::string>() != "none")
        throw ParseError("controller/" + name + ": expected a player index or \"none\"");
    } else if (value.is_number_integer()) {
      st->owner = value.get<int>() - 1;
    } else {
      throw ParseError("controller/" + name + ": expected a player index or \"none\"");
    }
  }

  for (const auto& [name, value] : doc["actions"].items()) {
    StateDef* st = state_slot(name);
    if (!st) throw ParseError("actions: unknown state '" + name + "'");
    if (!value.is_array()) throw ParseError("actions/" + name + ": expected an array");
    for (const auto& a : value) {
      if (!a.is_string()) throw ParseError("actions/" + name + ": expected action names");
      st->actions.push_back(a.get<std::string>());
    }
    st->law.assign(st->actions.size(), {});
  }

  for (const auto& [key, value] : doc["law"].items()) {
    auto dot = key.find('.');
    if (dot == std::string::npos) {
      StateDef* st = state_slot(key);
      if (!st) throw ParseError("law: unknown state '" + key + "'");
      if (st->owner || !st->actions.empty())
        throw ParseError("law/" + key + ": controlled state needs 'state.action' keys");
      st->law.assign(1, parse_distribution(value, "law/" + key));
    } else {
      const std::string name = key.substr(0, dot);
      const std::string action = key.substr(dot + 1);
      StateDef* st = state_slot(name);
      if (!st) throw ParseError("law: unknown state '" + name + "'");
      auto pos = std::find(st->actions.begin(), st->actions.end(), action);
      if (pos == st->actions.end())
        throw ParseError("law/" + key + ": state '" + name + "' has no action '" + action + "'");
      st->law[static_cast<std::size_t>(pos - st->actions.begin())] =
          parse_distribution(value, "law/" + key);
    }
  }
  // Uncontrolled states with no law entry still need their single slot so
  // that validate_game can point at it.
  for (auto& st : spec.states)
    if (!st.owner && st.actions.empty() && st.law.empty()) st.law.assign(1, {});

  if (!doc["safe_sets"].is_array()) throw ParseError("safe_sets: expected an array of arrays");
  for (const auto& set : doc["safe_sets"]) {
    if (!set.is_array()) throw ParseError("safe_sets: expected an array of arrays");
    std::vector<std::string> names;
    for (const auto& s : set) {
      if (!s.is_string()) throw ParseError("safe_sets: expected state names");
      names.push_back(s.get<std::string>());
    }
    spec.safe_sets.push_back(std::move(names));
  }

  canonicalize(spec);
  return spec;
}

std::string serialize_game(const GameSpec& spec) {
  Json doc;
  doc["players"] = spec.players;
  doc["states"] = Json::array();
  for (const auto& st : spec.states) doc["states"].push_back(st.name);
  doc["initial"] = spec.initial;

  Json controller = Json::object();
  for (const auto& st : spec.states) {
    if (st.owner)
      controller[st.name] = *st.owner + 1;
    else
      controller[st.name] = "none";
  }
  doc["controller"] = std::move(controller);

  Json actions = Json::object();
  for (const auto& st : spec.states) {
    if (!st.owner) continue;
    Json list = Json::array();
    for (const auto& a : st.actions) list.push_back(a);
    actions[st.name] = std::move(list);
  }
  doc["actions"] = std::move(actions);

  Json law = Json::object();
  auto emit = [&law](const std::string& key, const Distribution& dist) {
    Json row = Json::object();
    for (const Edge& e : dist) row[e.to] = e.prob.str();
    law[key] = std::move(row);
  };
  for (const auto& st : spec.states) {
    if (st.owner) {
      for (std::size_t a = 0; a < st.actions.size() && a < st.law.size(); ++a)
        emit(st.name + "." + st.actions[a], st.law[a]);
    } else if (!st.law.empty()) {
      emit(st.name, st.law[0]);
    }
  }
  doc["law"] = std::move(law);

  Json safe = Json::array();
  for (const auto& set : spec.safe_sets) {
    Json list = Json::array();
    for (const auto& s : set) list.push_back(s);
    safe.push_back(std::move(list));
  }
  doc["safe_sets"] = std::move(safe);

  return doc.dump(2) + "\n";
}

StationaryProfile parse_profile_literal(const GameSpec& spec, std::string_view text) {
  std::map<std::string, std::map<std::string, Rational>> given;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view entry = text.substr(pos, end - pos);
    pos = end + 1;
    if (entry.empty()) continue;
    std::size_t colon = entry.find(':');
    std::size_t eq = entry.find('=', colon == std::string_view::npos ? 0 : colon + 1);
    if (colon == std::string_view::npos || eq == std::string_view::npos)
      throw ParseError("profile literal: expected 'state:action=prob', got '" +
                       std::string(entry) + "'");
    std::string state(entry.substr(0, colon));
    std::string action(entry.substr(colon + 1, eq - colon - 1));
    auto prob = Rational::parse(entry.substr(eq + 1));
    if (!prob)
      throw ParseError("profile literal: invalid rational '" +
                       std::string(entry.substr(eq + 1)) + "'");
    auto [it, inserted] = given[state].emplace(action, *prob);
    if (!inserted)
      throw ParseError("profile literal: duplicate entry for '" + state + ":" + action + "'");
  }
  return make_profile(spec, given);
}

MemoryProfile parse_memory_profile(const GameSpec& spec, std::string_view text) {
  Json doc = parse_json(text, "memory file");
  if (!doc.is_object()) throw ParseError("memory file: top level must be an object");
  reject_unknown_keys(doc, {"memories", "start", "update", "behavior"}, "memory file");
  for (const char* key : {"memories", "start", "behavior"})
    if (!doc.contains(key))
      throw ParseError(std::string("memory file: missing field '") + key + "'");

  MemoryProfile mp;
  if (!doc["memories"].is_array()) throw ParseError("memories: expected an array of names");
  for (const auto& m : doc["memories"]) {
    if (!m.is_string()) throw ParseError("memories: expected an array of names");
    mp.memories.push_back(m.get<std::string>());
  }
  if (!doc["start"].is_string()) throw ParseError("start: expected a memory name");
  mp.start = doc["start"].get<std::string>();

  if (doc.contains("update")) {
    if (!doc["update"].is_object())
      throw ParseError("update: expected an object \"memory,state\" -> memory");
    for (const auto& [key, value] : doc["update"].items()) {
      auto comma = key.find(',');
      if (comma == std::string::npos)
        throw ParseError("update: keys must look like \"memory,state\", got '" + key + "'");
      if (!value.is_string()) throw ParseError("update/" + key + ": expected a memory name");
      mp.update[{key.substr(0, comma), key.substr(comma + 1)}] = value.get<std::string>();
    }
  }

  if (!doc["behavior"].is_object())
    throw ParseError("behavior: expected an object memory -> profile");
  for (const auto& [memory, prof] : doc["behavior"].items()) {
    if (!prof.is_object())
      throw ParseError("behavior/" + memory + ": expected an object state -> action -> prob");
    std::map<std::string, std::map<std::string, Rational>> given;
    for (const auto& [state, acts] : prof.items()) {
      if (!acts.is_object())
        throw ParseError("behavior/" + memory + "/" + state +
                         ": expected an object action -> prob");
      for (const auto& [action, prob] : acts.items())
        given[state][action] = parse_prob(prob, "behavior/" + memory + "/" + state + "/" + action);
    }
    mp.behavior[memory] = make_profile(spec, given);
  }

  auto problems = validate_memory_profile(spec, mp);
  if (!problems.empty()) throw ParseError("memory file: " + problems.front());
  return mp;
}

std::string serialize_memory_profile(const GameSpec& spec, const MemoryProfile& mp) {
  Json doc;
  doc["memories"] = Json::array();
  for (const auto& m : mp.memories) doc["memories"].push_back(m);
  doc["start"] = mp.start;
  Json update = Json::object();
  for (const auto& [key, to] : mp.update) update[key.first + "," + key.second] = to;
  doc["update"] = std::move(update);
  Json behavior = Json::object();
  for (const auto& [memory, prof] : mp.behavior) {
    Json states = Json::object();
    for (const auto& st : spec.states) {
      auto it = prof.choice.find(st.name);
      if (it == prof.choice.end()) continue;
      Json acts = Json::object();
      for (std::size_t a = 0; a < st.actions.size() && a < it->second.size(); ++a)
        acts[st.actions[a]] = it->second[a].str();
      states[st.name] = std::move(acts);
    }
    behavior[memory] = std::move(states);
  }
  doc["behavior"] = std::move(behavior);
  return doc.dump(2) + "\n";
}

}  // namespace stayset
