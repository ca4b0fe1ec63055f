#include "stayset/closed_form.hpp"

namespace stayset {

Rational u11_closed(const Rational& p1, const Rational& p2) {
  if (p1.is_zero() && p2.is_zero()) return 1;
  return ((Rational(8) - 3 * p2) * p1 + 4 * p2) / ((Rational(12) - 9 * p2) * p1 + 12 * p2);
}

Rational u11_closed_alt(const Rational& p1, const Rational& p2) {
  if (p1.is_zero() && p2.is_zero()) return 1;
  return ((Rational(4) - 3 * p1) * p2 + 8 * p1) / ((Rational(12) - 9 * p1) * p2 + 12 * p1);
}

Rational u21_closed(const Rational& p1, const Rational& p2) {
  return ((Rational(8) - 3 * p2) * p1 + 4 * p2) /
         ((Rational(9) - 6 * p2) * p1 + 8 * p2 + 4);
}

Rational u21_closed_alt(const Rational& p1, const Rational& p2) {
  return ((Rational(4) - 3 * p1) * p2 + 8 * p1) /
         ((Rational(8) - 6 * p1) * p2 + 9 * p1 + 4);
}

SignValue sign_du11_dp1(const Rational& p2) { return sign_of(48 * p2); }

SignValue sign_du21_dp2(const Rational& p1) {
  return sign_of((Rational(4) - 3 * p1) * (Rational(4) - 7 * p1));
}

Rational modified_u11_closed(ModifiedVariant variant, const Rational& p1, const Rational& p2) {
  if (variant == ModifiedVariant::continue_at_l2)
    return (5 * p1 + 4) / ((Rational(9) - 6 * p2) * p1 + 4 + 8 * p2);
  return ((Rational(31) - 6 * p2) * p1 + 8 * p2 + 12) /
         (5 * (Rational(9) - 6 * p2) * p1 + 20 + 40 * p2);
}

SignValue sign_modified_du11_dp1(ModifiedVariant variant, const Rational& p2) {
  if (variant == ModifiedVariant::continue_at_l2) return sign_of(64 * p2 - 16);
  return sign_of(1120 * p2 + 80);
}

GameSpec build_game_g_modified(ModifiedVariant variant) {
  GameSpec g = build_game_g();
  int l2 = g.state_index("L2");
  if (variant == ModifiedVariant::continue_at_l2)
    g.states[static_cast<std::size_t>(l2)].law = {{{"W", 1}}};
  else
    g.states[static_cast<std::size_t>(l2)].law = {{{"W", Rational(3, 5)}, {"L", Rational(2, 5)}}};
  canonicalize(g);
  return g;
}

}  // namespace stayset
