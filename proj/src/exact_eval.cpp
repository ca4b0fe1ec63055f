#include "stayset/exact_eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <set>

namespace stayset {

namespace {

template <typename T>
bool scalar_is_zero(const T& v);

template <>
bool scalar_is_zero(const Rational& v) {
  return v.is_zero();
}

template <>
bool scalar_is_zero(const double& v) {
  return std::abs(v) <= 1e-12;
}

template <typename T>
std::vector<T> solve_linear_t(std::vector<std::vector<T>> a, std::vector<T> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && scalar_is_zero(a[pivot][col])) ++pivot;
    if (pivot == n) throw Error("linear solve: singular system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || scalar_is_zero(a[row][col])) continue;
      T factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// States that can reach the target along positive-probability edges
/// (reverse breadth-first search); everything else has hitting probability 0.
std::vector<char> can_reach(const std::vector<std::vector<Rational>>& rows,
                            const std::vector<char>& target) {
  const std::size_t n = rows.size();
  std::vector<char> reach(target.begin(), target.end());
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i]) queue.push_back(i);
  while (!queue.empty()) {
    std::size_t t = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < n; ++s) {
      if (reach[s] || rows[s][t].is_zero()) continue;
      reach[s] = 1;
      queue.push_back(s);
    }
  }
  return reach;
}

template <typename T>
T from_rational(const Rational& r);

template <>
Rational from_rational(const Rational& r) {
  return r;
}

template <>
double from_rational(const Rational& r) {
  return r.to_double();
}

template <typename T>
std::vector<T> reach_probability_t(const MarkovChain& chain, const std::vector<int>& target) {
  const std::size_t n = chain.states.size();
  std::vector<char> in_target(n, 0);
  for (int t : target) {
    if (t < 0 || static_cast<std::size_t>(t) >= n)
      throw Error("reach: target state index out of range");
    in_target[static_cast<std::size_t>(t)] = 1;
  }
  std::vector<char> reachable = can_reach(chain.rows, in_target);

  std::vector<int> unknown;  // states whose value needs the linear solve
  std::vector<int> slot(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (in_target[s] || !reachable[s]) continue;
    slot[s] = static_cast<int>(unknown.size());
    unknown.push_back(static_cast<int>(s));
  }

  // x_s = sum_t P(s,t) x_t with x = 1 on target and x = 0 off the reachable
  // set, i.e. (I - P_UU) x_U = P_U,target * 1.
  const std::size_t m = unknown.size();
  std::vector<std::vector<T>> a(m, std::vector<T>(m, from_rational<T>(Rational(0))));
  std::vector<T> b(m, from_rational<T>(Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = chain.rows[static_cast<std::size_t>(unknown[i])];
    a[i][i] = from_rational<T>(Rational(1));
    for (std::size_t t = 0; t < n; ++t) {
      if (row[t].is_zero()) continue;
      if (in_target[t])
        b[i] += from_rational<T>(row[t]);
      else if (slot[t] >= 0)
        a[i][static_cast<std::size_t>(slot[t])] -= from_rational<T>(row[t]);
    }
  }
  std::vector<T> solved = m ? solve_linear_t<T>(std::move(a), std::move(b)) : std::vector<T>{};

  std::vector<T> x(n, from_rational<T>(Rational(0)));
  for (std::size_t s = 0; s < n; ++s) {
    if (in_target[s])
      x[s] = from_rational<T>(Rational(1));
    else if (slot[s] >= 0)
      x[s] = solved[static_cast<std::size_t>(slot[s])];
  }
  return x;
}

std::vector<int> indices_of(const MarkovChain& chain, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& name : names) {
    int i = chain.index(name);
    if (i < 0) throw Error("chain: unknown state '" + name + "'");
    out.push_back(i);
  }
  return out;
}

}  // namespace

int MarkovChain::index(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a,
                                   std::vector<Rational> b) {
  return solve_linear_t<Rational>(std::move(a), std::move(b));
}

MarkovChain induced_chain(const GameSpec& spec, const StationaryProfile& profile) {
  const std::size_t n = spec.states.size();
  MarkovChain chain;
  chain.states.reserve(n);
  for (const auto& st : spec.states) chain.states.push_back(st.name);
  chain.rows.assign(n, std::vector<Rational>(n, Rational(0)));

  auto add = [&](std::size_t row, const Distribution& dist, const Rational& weight) {
    if (weight.is_zero()) return;
    for (const Edge& e : dist) {
      int t = spec.state_index(e.to);
      if (t < 0) throw Error("induced chain: unknown successor '" + e.to + "'");
      chain.rows[row][static_cast<std::size_t>(t)] += weight * e.prob;
    }
  };

  for (std::size_t s = 0; s < n; ++s) {
    const StateDef& st = spec.states[s];
    if (!st.owner) {
      if (st.law.size() != 1) throw Error("induced chain: state '" + st.name + "' has no law");
      add(s, st.law[0], Rational(1));
      continue;
    }
    auto it = profile.choice.find(st.name);
    if (it == profile.choice.end())
      throw Error("induced chain: profile misses controlled state '" + st.name + "'");
    const auto& probs = it->second;
    if (probs.size() != st.actions.size() || st.law.size() != st.actions.size())
      throw Error("induced chain: profile/spec mismatch at state '" + st.name + "'");
    Rational sum;
    for (const Rational& p : probs) {
      if (p < Rational(0) || p > Rational(1))
        throw Error("induced chain: profile probability out of [0,1] at '" + st.name + "'");
      sum += p;
    }
    if (sum != Rational(1))
      throw Error("induced chain: profile at '" + st.name + "' sums to " + sum.str());
    for (std::size_t a = 0; a < probs.size(); ++a) add(s, st.law[a], probs[a]);
  }
  return chain;
}

std::vector<Rational> reach_probability(const MarkovChain& chain, const std::vector<int>& target) {
  return reach_probability_t<Rational>(chain, target);
}

std::vector<Rational> reach_probability(const MarkovChain& chain,
                                        const std::vector<std::string>& target) {
  return reach_probability_t<Rational>(chain, indices_of(chain, target));
}

std::vector<double> reach_probability_approx(const MarkovChain& chain,
                                             const std::vector<int>& target) {
  return reach_probability_t<double>(chain, target);
}

namespace {

template <typename T>
std::vector<std::vector<T>> safety_payoff_t(const GameSpec& spec,
                                            const StationaryProfile& profile) {
  MarkovChain chain = induced_chain(spec, profile);
  const std::size_t n = spec.states.size();
  std::vector<std::vector<T>> values(static_cast<std::size_t>(spec.players));
  for (int p = 0; p < spec.players; ++p) {
    std::vector<char> safe = spec.safe_mask(p);
    std::vector<int> bad;
    for (std::size_t s = 0; s < n; ++s)
      if (!safe[s]) bad.push_back(static_cast<int>(s));
    std::vector<T> hit = reach_probability_t<T>(chain, bad);
    auto& row = values[static_cast<std::size_t>(p)];
    row.assign(n, from_rational<T>(Rational(0)));
    for (std::size_t s = 0; s < n; ++s)
      if (safe[s]) row[s] = from_rational<T>(Rational(1)) - hit[s];
  }
  return values;
}

}  // namespace

PayoffMatrix safety_payoff(const GameSpec& spec, const StationaryProfile& profile) {
  PayoffMatrix pm;
  for (const auto& st : spec.states) pm.states.push_back(st.name);
  pm.values = safety_payoff_t<Rational>(spec, profile);
  return pm;
}

std::vector<std::vector<double>> safety_payoff_approx(const GameSpec& spec,
                                                      const StationaryProfile& profile) {
  return safety_payoff_t<double>(spec, profile);
}

FirstPassageSplit first_passage_split(const MarkovChain& chain, const std::string& origin,
                                      const std::vector<std::string>& win_set,
                                      const std::vector<std::string>& lose_set) {
  const std::size_t n = chain.states.size();
  int o = chain.index(origin);
  if (o < 0) throw Error("first passage: unknown origin '" + origin + "'");
  std::vector<int> win = indices_of(chain, win_set);
  std::vector<int> lose = indices_of(chain, lose_set);
  std::set<int> win_ids(win.begin(), win.end());
  for (int s : lose) {
    if (win_ids.count(s))
      throw Error("first passage: win and lose sets intersect at '" +
                  chain.states[static_cast<std::size_t>(s)] + "'");
  }
  for (int s : win)
    if (s == o) throw Error("first passage: origin lies in the win set");
  for (int s : lose)
    if (s == o) throw Error("first passage: origin lies in the lose set");

  // Halting states absorb; the first step out of the origin uses the
  // original row.
  MarkovChain halted = chain;
  auto make_absorbing = [&halted, n](int s) {
    auto& row = halted.rows[static_cast<std::size_t>(s)];
    row.assign(n, Rational(0));
    row[static_cast<std::size_t>(s)] = Rational(1);
  };
  make_absorbing(o);
  for (int s : win) make_absorbing(s);
  for (int s : lose) make_absorbing(s);

  auto weigh = [&](const std::vector<Rational>& hit) {
    Rational total;
    const auto& first = chain.rows[static_cast<std::size_t>(o)];
    for (std::size_t t = 0; t < n; ++t) total += first[t] * hit[t];
    return total;
  };
  FirstPassageSplit split;
  split.win = weigh(reach_probability(halted, win));
  split.lose = weigh(reach_probability(halted, lose));
  split.ret = weigh(reach_probability(halted, std::vector<int>{o}));

  if (split.win + split.lose + split.ret != Rational(1))
    throw Error("first passage: mass leak, excursion escapes win/lose/origin with probability " +
                (Rational(1) - split.win - split.lose - split.ret).str());
  return split;
}

int ProductGame::product_index(int state, int memory) const {
  return state * static_cast<int>(memories.size()) + memory;
}

std::string ProductGame::product_name(const std::string& state,
                                      const std::string& memory) const {
  return state + "@" + memory;
}

ProductGame product_game(const GameSpec& spec, const MemoryProfile& mp) {
  auto problems = validate_memory_profile(spec, mp);
  if (!problems.empty()) throw Error("memory profile: " + problems.front());

  ProductGame pg;
  pg.memories = mp.memories;
  GameSpec& prod = pg.game;
  prod.players = spec.players;

  std::map<std::string, int> memory_index;
  for (std::size_t m = 0; m < mp.memories.size(); ++m)
    memory_index[mp.memories[m]] = static_cast<int>(m);

  std::set<std::string> names;
  for (const auto& st : spec.states) {
    for (const auto& m : mp.memories) {
      std::string name = pg.product_name(st.name, m);
      if (!names.insert(name).second)
        throw Error("memory product: state/memory name collision at '" + name + "'");
      StateDef def;
      def.name = std::move(name);
      def.owner = st.owner;
      def.actions = st.actions;
      for (const Distribution& dist : st.law) {
        Distribution lifted;
        for (const Edge& e : dist)
          lifted.push_back({pg.product_name(e.to, mp.next_memory(m, e.to)), e.prob});
        def.law.push_back(std::move(lifted));
      }
      prod.states.push_back(std::move(def));
    }
  }
  prod.initial = pg.product_name(spec.initial, mp.start);

  prod.safe_sets.resize(static_cast<std::size_t>(spec.players));
  for (int p = 0; p < spec.players; ++p) {
    std::vector<char> safe = spec.safe_mask(p);
    for (std::size_t s = 0; s < spec.states.size(); ++s) {
      if (!safe[s]) continue;
      for (const auto& m : mp.memories)
        prod.safe_sets[static_cast<std::size_t>(p)].push_back(
            pg.product_name(spec.states[s].name, m));
    }
  }

  for (const auto& st : spec.states) {
    if (!st.owner) continue;
    for (const auto& m : mp.memories)
      pg.profile.choice[pg.product_name(st.name, m)] = mp.behavior.at(m).choice.at(st.name);
  }
  canonicalize(prod);
  return pg;
}

PayoffMatrix memory_payoff(const GameSpec& spec, const MemoryProfile& mp) {
  ProductGame pg = product_game(spec, mp);
  PayoffMatrix on_product = safety_payoff(pg.game, pg.profile);

  PayoffMatrix pm;
  for (const auto& st : spec.states) pm.states.push_back(st.name);
  pm.values.assign(static_cast<std::size_t>(spec.players), {});
  for (int p = 0; p < spec.players; ++p) {
    auto& row = pm.values[static_cast<std::size_t>(p)];
    for (const auto& st : spec.states)
      row.push_back(on_product.value(p, pg.product_name(st.name, mp.start)));
  }
  return pm;
}

}  // namespace stayset
