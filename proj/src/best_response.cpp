#include "stayset/best_response.hpp"

#include "stayset/closed_form.hpp"

#include <algorithm>
#include <thread>

namespace stayset {

namespace {

/// Player's safety value at the initial state under the given full profile.
Rational value_at_initial(const GameSpec& spec, const StationaryProfile& profile, int player) {
  int start = spec.initial_index();
  if (start < 0) throw Error("game: unknown initial state '" + spec.initial + "'");
  std::vector<char> safe = spec.safe_mask(player);
  if (!safe[static_cast<std::size_t>(start)]) return 0;
  MarkovChain chain = induced_chain(spec, profile);
  std::vector<int> bad;
  for (std::size_t s = 0; s < spec.states.size(); ++s)
    if (!safe[s]) bad.push_back(static_cast<int>(s));
  return Rational(1) - reach_probability(chain, bad)[static_cast<std::size_t>(start)];
}

struct Controlled {
  const StateDef* state;
  std::size_t action_count;
};

std::vector<Controlled> controlled_states(const GameSpec& spec, int player) {
  std::vector<Controlled> out;
  for (const StateDef& st : spec.states)
    if (st.owner && *st.owner == player) out.push_back({&st, st.actions.size()});
  return out;
}

}  // namespace

BestResponseResult best_response(const GameSpec& spec, const StationaryProfile& profile,
                                 int player) {
  if (player < 0 || player >= spec.players)
    throw Error("best response: player index out of range");
  std::vector<Controlled> own = controlled_states(spec, player);

  StationaryProfile candidate = profile;
  auto assign = [&candidate](const Controlled& c, std::size_t action) {
    std::vector<Rational> probs(c.action_count, Rational(0));
    probs[action] = 1;
    candidate.choice[c.state->name] = std::move(probs);
  };

  std::vector<std::size_t> pick(own.size(), 0);
  for (std::size_t i = 0; i < own.size(); ++i) assign(own[i], 0);

  BestResponseResult best;
  best.player = player;
  bool first = true;
  std::size_t ties = 0;
  for (;;) {
    Rational value = value_at_initial(spec, candidate, player);
    if (first || value > best.value) {
      best.value = value;
      best.strategy.clear();
      for (std::size_t i = 0; i < own.size(); ++i)
        best.strategy[own[i].state->name] = own[i].state->actions[pick[i]];
      ties = 1;
      first = false;
    } else if (value == best.value) {
      ++ties;
    }
    // Odometer, last state fastest: lexicographic order over strategies.
    std::size_t i = own.size();
    while (i > 0) {
      --i;
      if (++pick[i] < own[i].action_count) {
        assign(own[i], pick[i]);
        break;
      }
      pick[i] = 0;
      assign(own[i], 0);
      if (i == 0) {
        best.indifferent = ties > 1;
        return best;
      }
    }
    if (own.empty()) break;
  }
  // No controlled states: the single (empty) strategy is optimal.
  return best;
}

Rational exploitability(const GameSpec& spec, const StationaryProfile& profile) {
  Rational worst;
  for (int p = 0; p < spec.players; ++p) {
    Rational gain = best_response(spec, profile, p).value - value_at_initial(spec, profile, p);
    if (gain > worst) worst = gain;
  }
  return worst;
}

namespace {

EquilibriumCertificate certify(const GameSpec& spec, const StationaryProfile& profile,
                               const Rational& epsilon, std::string description) {
  if (epsilon < Rational(0)) throw Error("certificate: epsilon must be >= 0");
  EquilibriumCertificate cert;
  cert.profile_description = std::move(description);
  cert.epsilon = epsilon;
  cert.epsilon_nash = true;
  for (int p = 0; p < spec.players; ++p) {
    PlayerAssessment a;
    a.current = value_at_initial(spec, profile, p);
    a.best = best_response(spec, profile, p);
    a.gain = a.best.value - a.current;
    if (a.gain > epsilon) cert.epsilon_nash = false;
    cert.players.push_back(std::move(a));
  }
  return cert;
}

}  // namespace

EquilibriumCertificate check_epsilon_nash(const GameSpec& spec,
                                          const StationaryProfile& profile,
                                          const Rational& epsilon) {
  return certify(spec, profile, epsilon, "stationary " + format_profile(spec, profile));
}

EquilibriumCertificate check_memory_nash(const GameSpec& spec, const MemoryProfile& mp,
                                         const Rational& epsilon) {
  ProductGame pg = product_game(spec, mp);
  EquilibriumCertificate cert =
      certify(pg.game, pg.profile, epsilon,
              "memory profile (" + std::to_string(mp.memories.size()) + " memories, start '" +
                  mp.start + "')");
  return cert;
}

bool Transcript::all_passed() const {
  return std::all_of(claims.begin(), claims.end(),
                     [](const ClaimCheck& c) { return c.passed; });
}

namespace {

constexpr int kGridDenominator = 64;

struct ClaimBuilder {
  ClaimCheck claim;
  explicit ClaimBuilder(std::string id, std::string statement) {
    claim.id = std::move(id);
    claim.statement = std::move(statement);
    claim.passed = true;
  }
  void require(bool ok, const std::string& on_failure) {
    if (!ok && claim.passed) {
      claim.passed = false;
      claim.detail = on_failure;
    }
  }
  void note(const std::string& detail) {
    if (claim.passed) claim.detail = detail;
  }
};

}  // namespace

Transcript nonexistence_check_g(const GameSpec& spec) {
  Transcript t;
  const Rational step(1, kGridDenominator);
  auto grid_point = [&step](int k) { return Rational(k, kGridDenominator); };

  {
    ClaimBuilder c("a", "against p2=0, every p1>0 loses value for player 1; "
                        "the unique best reply is p1=0");
    c.require(sign_du11_dp1(0) == SignValue::zero, "sign oracle: d(u11)/d(p1) not flat at p2=0");
    for (int k = 1; k <= kGridDenominator && c.claim.passed; ++k) {
      Rational p1 = grid_point(k);
      c.require(u11_closed(p1, 0) == Rational(2, 3),
                "closed form: u11(" + p1.str() + ",0) != 2/3");
      StationaryProfile prof = point_profile(spec, p1, 0);
      BestResponseResult br = best_response(spec, prof, 0);
      Rational current = safety_payoff(spec, prof).value(0, spec.initial);
      c.require(!br.indifferent && br.value > current,
                "no strict gain for player 1 at p1=" + p1.str());
      c.require(br.strategy.size() == 1 && br.strategy.begin()->second == "c",
                "best reply at p1=" + p1.str() + " is not pure c");
    }
    c.note("verified at " + std::to_string(kGridDenominator) + " sample points");
    t.claims.push_back(c.claim);
    if (!c.claim.passed) return t;
  }

  {
    ClaimBuilder c("b", "(0,0) is not an equilibrium: player 2 gains by deviating to q");
    StationaryProfile prof = point_profile(spec, 0, 0);
    BestResponseResult br = best_response(spec, prof, 1);
    Rational current = safety_payoff(spec, prof).value(1, spec.initial);
    c.require(br.value > current, "player 2 has no strict gain at (0,0)");
    c.require(br.strategy.size() == 1 && br.strategy.begin()->second == "q",
              "player 2's best reply at (0,0) is not pure q");
    c.note("deviation gain " + (br.value - current).str());
    t.claims.push_back(c.claim);
    if (!c.claim.passed) return t;
  }

  {
    ClaimBuilder c("c", "against any p2>0, player 1's unique best reply is q (p1=1)");
    for (int k = 1; k <= kGridDenominator && c.claim.passed; ++k) {
      Rational p2 = grid_point(k);
      c.require(sign_du11_dp1(p2) == SignValue::positive,
                "sign oracle: d(u11)/d(p1) not positive at p2=" + p2.str());
      StationaryProfile prof = point_profile(spec, 0, p2);
      BestResponseResult br = best_response(spec, prof, 0);
      c.require(!br.indifferent &&
                    br.strategy.size() == 1 && br.strategy.begin()->second == "q",
                "best reply against p2=" + p2.str() + " is not uniquely q");
    }
    c.note("sign oracle positive and endpoint comparison strict at " +
           std::to_string(kGridDenominator) + " sample points");
    t.claims.push_back(c.claim);
    if (!c.claim.passed) return t;
  }

  {
    ClaimBuilder c("d", "against p1=1, player 2's unique best reply is c (p2=0)");
    c.require(sign_du21_dp2(1) == SignValue::negative,
              "sign oracle: d(u21)/d(p2) not negative at p1=1");
    MarkovChain quit_chain = induced_chain(spec, point_profile(spec, 1, 1));
    MarkovChain cont_chain = induced_chain(spec, point_profile(spec, 1, 0));
    FirstPassageSplit quit = first_passage_split(quit_chain, "2", {"W"}, {"L", "L2"});
    FirstPassageSplit cont = first_passage_split(cont_chain, "2", {"W"}, {"L", "L2"});
    c.require(quit.lose > cont.lose,
              "excursion from 2: quitting does not lose more than continuing");
    BestResponseResult br = best_response(spec, point_profile(spec, 1, 0), 1);
    c.require(!br.indifferent && br.strategy.size() == 1 && br.strategy.begin()->second == "c",
              "player 2's best reply against p1=1 is not uniquely c");
    c.note("loss probabilities " + quit.lose.str() + " (quit) vs " + cont.lose.str() +
           " (continue)");
    t.claims.push_back(c.claim);
  }
  return t;
}

Transcript nonexistence_check_g() { return nonexistence_check_g(build_game_g()); }

namespace {

template <typename Row, typename Eval>
std::vector<Row> scan_grid(const GameSpec& spec, int resolution, int threads, Eval eval) {
  if (resolution < 1) throw Error("grid scan: resolution must be >= 1");
  const int n = resolution + 1;
  std::vector<Row> rows(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  auto work = [&](int from, int to) {
    for (int k = from; k < to; ++k)
      for (int j = 0; j < n; ++j)
        rows[static_cast<std::size_t>(k) * n + j] =
            eval(Rational(k, resolution), Rational(j, resolution));
  };
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int from = t * chunk;
      int to = std::min(n, from + chunk);
      if (from < to) pool.emplace_back(work, from, to);
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

double approx_value_at_initial(const GameSpec& spec, const StationaryProfile& profile,
                               int player) {
  int start = spec.initial_index();
  return safety_payoff_approx(spec, profile)[static_cast<std::size_t>(player)]
                                            [static_cast<std::size_t>(start)];
}

double approx_best_value(const GameSpec& spec, const StationaryProfile& profile, int player) {
  std::vector<Controlled> own = controlled_states(spec, player);
  StationaryProfile candidate = profile;
  std::vector<std::size_t> pick(own.size(), 0);
  auto assign = [&candidate](const Controlled& c, std::size_t action) {
    std::vector<Rational> probs(c.action_count, Rational(0));
    probs[action] = 1;
    candidate.choice[c.state->name] = std::move(probs);
  };
  for (std::size_t i = 0; i < own.size(); ++i) assign(own[i], 0);
  double best = approx_value_at_initial(spec, candidate, player);
  for (;;) {
    std::size_t i = own.size();
    bool advanced = false;
    while (i > 0) {
      --i;
      if (++pick[i] < own[i].action_count) {
        assign(own[i], pick[i]);
        advanced = true;
        break;
      }
      pick[i] = 0;
      assign(own[i], 0);
    }
    if (!advanced) return best;
    best = std::max(best, approx_value_at_initial(spec, candidate, player));
  }
}

}  // namespace

std::vector<GridRow> grid_scan(const GameSpec& spec, int resolution, int threads) {
  return scan_grid<GridRow>(spec, resolution, threads,
                            [&spec](const Rational& p1, const Rational& p2) {
                              StationaryProfile prof = point_profile(spec, p1, p2);
                              PayoffMatrix pm = safety_payoff(spec, prof);
                              GridRow row;
                              row.p1 = p1;
                              row.p2 = p2;
                              row.u11 = pm.value(0, spec.initial);
                              row.u21 = pm.value(1, spec.initial);
                              Rational worst;
                              for (int p = 0; p < 2; ++p) {
                                Rational gain = best_response(spec, prof, p).value -
                                                pm.value(p, spec.initial);
                                if (gain > worst) worst = gain;
                              }
                              row.exploitability = worst;
                              return row;
                            });
}

std::vector<GridRowApprox> grid_scan_approx(const GameSpec& spec, int resolution, int threads) {
  int start = spec.initial_index();
  return scan_grid<GridRowApprox>(
      spec, resolution, threads, [&spec, start](const Rational& p1, const Rational& p2) {
        StationaryProfile prof = point_profile(spec, p1, p2);
        auto values = safety_payoff_approx(spec, prof);
        GridRowApprox row;
        row.p1 = p1.to_double();
        row.p2 = p2.to_double();
        row.u11 = values[0][static_cast<std::size_t>(start)];
        row.u21 = values[1][static_cast<std::size_t>(start)];
        double worst = 0;
        for (int p = 0; p < 2; ++p) {
          double gain = approx_best_value(spec, prof, p) -
                        values[static_cast<std::size_t>(p)][static_cast<std::size_t>(start)];
          worst = std::max(worst, gain);
        }
        row.exploitability = worst;
        return row;
      });
}

}  // namespace stayset
