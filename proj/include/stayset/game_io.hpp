#pragma once

#include "stayset/game.hpp"

#include <string>
#include <string_view>

namespace stayset {

/// Parses the JSON game format (see README). Throws ParseError on syntax or
/// schema problems; semantic problems (bad sums, dangling names, ...) are
/// left in the returned spec for validate_game to report.
GameSpec parse_game(std::string_view text);

/// Canonical JSON rendering; parse_game(serialize_game(s)) == s for valid s.
/// Probabilities are emitted as exact "p/q" strings.
std::string serialize_game(const GameSpec& spec);

/// Parses the CLI profile literal: semicolon-separated "state:action=prob"
/// entries; residual mass per state goes to the first-declared unspecified
/// action. Throws ParseError / Error.
StationaryProfile parse_profile_literal(const GameSpec& spec, std::string_view text);

/// Parses the JSON memory-profile format (see README).
MemoryProfile parse_memory_profile(const GameSpec& spec, std::string_view text);

std::string serialize_memory_profile(const GameSpec& spec, const MemoryProfile& mp);

}  // namespace stayset
