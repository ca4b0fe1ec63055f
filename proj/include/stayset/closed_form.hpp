#pragma once

#include "stayset/game.hpp"

namespace stayset {

/// Exact tri-state sign. Never derived from a float comparison.
enum class SignValue : int {
  negative = -1,
  zero = 0,
  positive = 1,
};

inline SignValue sign_of(const Rational& r) { return static_cast<SignValue>(r.sign()); }

/// Closed forms for the built-in game G as functions of the two quit
/// probabilities (p1, p2). They serve as independent regression oracles for
/// the chain-based evaluator. Each u has two algebraically equivalent
/// groupings; the *_alt variants exist so tests can pit them against each
/// other.

/// Player 1's value from state 1:
///   ((8-3*p2)*p1 + 4*p2) / ((12-9*p2)*p1 + 12*p2),
/// except at (0,0) where infinite play keeps player 1 safe and the value is
/// defined as 1 (the function's single discontinuity).
Rational u11_closed(const Rational& p1, const Rational& p2);
Rational u11_closed_alt(const Rational& p1, const Rational& p2);

/// Player 2's value from state 1:
///   ((8-3*p2)*p1 + 4*p2) / ((9-6*p2)*p1 + 8*p2 + 4),
/// continuous on the whole square (0 at (0,0)).
Rational u21_closed(const Rational& p1, const Rational& p2);
Rational u21_closed_alt(const Rational& p1, const Rational& p2);

/// Sign of d(u11)/d(p1) at fixed p2: sgn(48*p2).
SignValue sign_du11_dp1(const Rational& p2);

/// Sign of d(u21)/d(p2) at fixed p1: sgn((4-3*p1)*(4-7*p1)); crosses zero
/// at the indifference threshold p1 = 4/7.
SignValue sign_du21_dp2(const Rational& p1);

/// The two modified games where entering L2 ends play with a fixed player 1
/// value: 1 when the post-L2 behavior is to continue forever, 3/5 when both
/// players quit forever after L2.
enum class ModifiedVariant {
  continue_at_l2,
  quit_at_l2,
};

/// Player 1's closed-form value from state 1 in the modified game:
///   continue_at_l2: (5*p1 + 4) / ((9-6*p2)*p1 + 4 + 8*p2)
///   quit_at_l2:     ((31-6*p2)*p1 + 8*p2 + 12) / (5*(9-6*p2)*p1 + 20 + 40*p2)
Rational modified_u11_closed(ModifiedVariant variant, const Rational& p1, const Rational& p2);

/// Sign of d/d(p1) of the modified closed form: sgn(64*p2 - 16) for the
/// continue variant, sgn(1120*p2 + 80) = +1 for the quit variant.
SignValue sign_modified_du11_dp1(ModifiedVariant variant, const Rational& p2);

/// G with L2 replaced by a terminal of player 1 value v, realized as a coin
/// into W/L (continue_at_l2: L2 -> W; quit_at_l2: L2 -> W w.p. 3/5, L w.p.
/// 2/5) so the chain evaluator can cross-check modified_u11_closed.
GameSpec build_game_g_modified(ModifiedVariant variant);

}  // namespace stayset
