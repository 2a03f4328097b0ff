#include "sleec/checker.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <cstring>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sleec/printer.hpp"

namespace sleec {

namespace {

constexpr int kOpenEnd = INT_MAX;
// Hard cap on per-tick (event set, valuation) combinations so a misconfigured
// search fails fast instead of running for hours.
constexpr long long kMaxChoices = 4'000'000;

void collect_condition_measures(const ConditionPtr& cond,
                                std::set<std::string>& out) {
  if (!cond)
    return;
  switch (cond->kind) {
  case Condition::Kind::Atom:
  case Condition::Kind::Compare:
    out.insert(cond->measure);
    return;
  case Condition::Kind::Not:
    collect_condition_measures(cond->lhs, out);
    return;
  case Condition::Kind::And:
  case Condition::Kind::Or:
    collect_condition_measures(cond->lhs, out);
    collect_condition_measures(cond->rhs, out);
    return;
  case Condition::Kind::BoolLit:
    return;
  }
}

void collect_numeric_constants(const ConditionPtr& cond,
                               std::map<std::string, std::set<long long>>& out) {
  if (!cond)
    return;
  switch (cond->kind) {
  case Condition::Kind::Compare:
    if (cond->literal.kind == Literal::Kind::Int)
      out[cond->measure].insert(cond->literal.int_value);
    return;
  case Condition::Kind::Not:
    collect_numeric_constants(cond->lhs, out);
    return;
  case Condition::Kind::And:
  case Condition::Kind::Or:
    collect_numeric_constants(cond->lhs, out);
    collect_numeric_constants(cond->rhs, out);
    return;
  default:
    return;
  }
}

template <typename Fn> void for_each_condition(const SleecSpec& spec, Fn fn) {
  for (const auto& rule : spec.rules) {
    fn(rule.trigger_cond);
    for (const auto& d : rule.defeaters)
      fn(d.cond);
  }
  for (const auto& p : spec.purposes)
    fn(p.cond);
}

std::set<std::string> rule_events(const Rule& rule) {
  std::set<std::string> events{rule.trigger_event, rule.response.event};
  for (const auto& d : rule.defeaters)
    if (d.response)
      events.insert(d.response->event);
  return events;
}

// Cone-of-influence slice from a seed event set; used for both rule- and
// purpose-focused checks. keep_purpose names the one purpose to retain.
SleecSpec slice_by_seed(const SleecSpec& spec,
                        const std::set<std::string>& focus_rules,
                        std::set<std::string> seed_events,
                        const std::string& keep_purpose) {
  std::set<std::string> kept = focus_rules;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& rule : spec.rules) {
      if (kept.count(rule.id))
        continue;
      std::set<std::string> evs = rule_events(rule);
      bool shares = std::any_of(evs.begin(), evs.end(), [&](const auto& e) {
        return seed_events.count(e) != 0;
      });
      if (shares) {
        kept.insert(rule.id);
        seed_events.insert(evs.begin(), evs.end());
        grew = true;
      }
    }
  }

  std::set<std::string> used_measures;
  SleecSpec out;
  for (const auto& rule : spec.rules) {
    if (!kept.count(rule.id))
      continue;
    out.rules.push_back(rule);
    collect_condition_measures(rule.trigger_cond, used_measures);
    for (const auto& d : rule.defeaters)
      collect_condition_measures(d.cond, used_measures);
  }
  for (const auto& p : spec.purposes) {
    if (p.id != keep_purpose)
      continue;
    out.purposes.push_back(p);
    collect_condition_measures(p.cond, used_measures);
  }
  for (const auto& e : spec.events)
    if (seed_events.count(e.name))
      out.events.push_back(e);
  for (const auto& m : spec.measures)
    if (used_measures.count(m.name))
      out.measures.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------
// Compiled search instance
// ---------------------------------------------------------------------------

// Activation outcome of one rule under one valuation.
struct RuleOutcome {
  bool cond_holds = false;
  bool cancelled = false;
  Polarity polarity = Polarity::Require;
  int event = -1;         // response event bit
  int deadline_ticks = -1; // -1 = open ended
};

struct Compiled {
  const SleecSpec* full_spec = nullptr;
  const SleecSpec* spec = nullptr; // search vocabulary (possibly sliced)
  SymbolTable table;               // of spec
  SymbolTable full_table;          // of full_spec
  TickScale scale;                 // of full_spec: slicing keeps the original
                                   // tick length so witnesses replay exactly
  std::vector<std::string> event_names;
  std::unordered_map<std::string, int> event_bit;
  std::vector<std::string> measure_names; // spec measure declaration order
  std::vector<std::vector<Value>> domains;

  std::vector<Valuation> valuations; // full product over domains
  std::vector<uint64_t> masks;       // shortlex order, popcount <= max
  std::vector<std::vector<RuleOutcome>> outcomes; // [rule][valuation]
  std::vector<int> trigger_bits;                  // [rule]

  int bound = 0;

  const Rule& rule(int index) const { return spec->rules[index]; }
  int rule_index(const std::string& id) const {
    for (size_t i = 0; i < spec->rules.size(); ++i)
      if (spec->rules[i].id == id)
        return static_cast<int>(i);
    return -1;
  }
};

std::vector<Valuation> enumerate_valuations(
    const std::vector<std::string>& measure_names,
    const std::vector<std::vector<Value>>& domains) {
  std::vector<Valuation> out;
  long long total = 1;
  for (const auto& d : domains) {
    total *= static_cast<long long>(d.size());
    if (total > kMaxChoices)
      throw InstanceTooLargeError(
          "abstract valuation space exceeds the search limit");
  }
  std::vector<size_t> odo(domains.size(), 0);
  for (long long k = 0; k < total; ++k) {
    Valuation v;
    for (size_t i = 0; i < domains.size(); ++i)
      v[measure_names[i]] = domains[i][odo[i]];
    out.push_back(std::move(v));
    // Last measure varies fastest.
    for (size_t i = domains.size(); i-- > 0;) {
      if (++odo[i] < domains[i].size())
        break;
      odo[i] = 0;
    }
  }
  return out;
}

// Event subsets in shortlex order: by size, then lexicographically on the
// sorted bit indices. Witnesses therefore prefer fewer simultaneous events.
std::vector<uint64_t> enumerate_masks(int n, int max_size) {
  std::vector<uint64_t> out;
  out.push_back(0);
  int limit = std::min(n, max_size);
  for (int size = 1; size <= limit; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i)
      idx[i] = i;
    while (true) {
      uint64_t mask = 0;
      for (int i : idx)
        mask |= uint64_t{1} << i;
      out.push_back(mask);
      if (out.size() > static_cast<size_t>(kMaxChoices))
        throw InstanceTooLargeError(
            "event subset space exceeds the search limit");
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i)
        --i;
      if (i < 0)
        break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j)
        idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::map<std::string, std::vector<Value>> derive_domains(
    const SleecSpec& spec, const CheckConfig& cfg) {
  std::set<std::string> used;
  std::map<std::string, std::set<long long>> constants;
  for_each_condition(spec, [&](const ConditionPtr& cond) {
    collect_condition_measures(cond, used);
    collect_numeric_constants(cond, constants);
  });

  std::map<std::string, std::vector<Value>> out;
  for (const auto& m : spec.measures) {
    std::vector<Value>& domain = out[m.name];
    if (!used.count(m.name)) {
      // Nothing reads it, a single representative is enough.
      switch (m.sort) {
      case Sort::Boolean: domain.push_back(Value::of_bool(false)); break;
      case Sort::Numeric: domain.push_back(Value::of_int(0)); break;
      case Sort::Scale:
        domain.push_back(Value::of_scale(m.scale_values.front()));
        break;
      }
      continue;
    }
    switch (m.sort) {
    case Sort::Boolean:
      domain.push_back(Value::of_bool(false));
      domain.push_back(Value::of_bool(true));
      break;
    case Sort::Scale:
      for (const auto& v : m.scale_values)
        domain.push_back(Value::of_scale(v));
      break;
    case Sort::Numeric: {
      auto override_it = cfg.numeric_representatives.find(m.name);
      if (override_it != cfg.numeric_representatives.end()) {
        std::set<long long> values(override_it->second.begin(),
                                   override_it->second.end());
        for (long long v : values)
          domain.push_back(Value::of_int(v));
        break;
      }
      const std::set<long long>& cs = constants[m.name];
      std::set<long long> values;
      if (cs.empty()) {
        values.insert(0);
      } else {
        values.insert(*cs.begin() - 1);
        values.insert(*cs.rbegin() + 1);
        long long prev = 0;
        bool first = true;
        for (long long c : cs) {
          values.insert(c);
          // One representative inside each gap wider than one.
          if (!first && c > prev + 1)
            values.insert(prev + (c - prev) / 2);
          prev = c;
          first = false;
        }
      }
      for (long long v : values)
        domain.push_back(Value::of_int(v));
      break;
    }
    }
  }
  return out;
}

Compiled compile(const SleecSpec& full_spec, const SleecSpec& spec,
                 const CheckConfig& cfg) {
  Compiled c;
  c.full_spec = &full_spec;
  c.spec = &spec;
  c.table = build_symbol_table(spec);
  c.full_table = build_symbol_table(full_spec);
  c.scale = normalize_durations(full_spec);
  c.bound = cfg.bound_ticks;

  if (spec.events.size() > 64)
    throw InstanceTooLargeError("more than 64 events in the checked fragment");
  for (const auto& e : spec.events) {
    c.event_bit.emplace(e.name, static_cast<int>(c.event_names.size()));
    c.event_names.push_back(e.name);
  }

  auto domain_map = derive_domains(spec, cfg);
  for (const auto& m : spec.measures) {
    c.measure_names.push_back(m.name);
    c.domains.push_back(domain_map.at(m.name));
  }

  c.valuations = enumerate_valuations(c.measure_names, c.domains);
  c.masks = enumerate_masks(static_cast<int>(c.event_names.size()),
                            cfg.max_events_per_tick);
  if (static_cast<long long>(c.valuations.size()) *
          static_cast<long long>(c.masks.size()) >
      kMaxChoices)
    throw InstanceTooLargeError(
        "per-tick choice space exceeds the search limit");

  for (const auto& rule : spec.rules) {
    c.trigger_bits.push_back(c.event_bit.at(rule.trigger_event));
    std::vector<RuleOutcome> per_val;
    per_val.reserve(c.valuations.size());
    for (const auto& v : c.valuations) {
      RuleOutcome o;
      o.cond_holds = evaluate_condition(c.table, rule.trigger_cond, v);
      if (o.cond_holds) {
        EffectiveResponse eff = effective_response(c.table, rule, v);
        o.cancelled = eff.cancelled;
        if (!eff.cancelled) {
          o.polarity = eff.response->polarity;
          o.event = c.event_bit.at(eff.response->event);
          o.deadline_ticks = eff.response->deadline
                                 ? c.scale.ticks_for(*eff.response->deadline)
                                 : -1;
        }
      }
      per_val.push_back(o);
    }
    c.outcomes.push_back(std::move(per_val));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Search state
// ---------------------------------------------------------------------------

struct ObAtom {
  int rule = 0;
  bool forbid = false;
  int event = 0;
  int begin = 0;
  int end = 0; // absolute inclusive tick, kOpenEnd when open ended

  auto key() const { return std::tie(rule, forbid, event, begin, end); }
  bool operator<(const ObAtom& o) const { return key() < o.key(); }
  bool operator==(const ObAtom& o) const { return key() == o.key(); }
};

using ObSet = std::vector<ObAtom>; // sorted, unique

void insert_atom(ObSet& set, const ObAtom& atom) {
  auto it = std::lower_bound(set.begin(), set.end(), atom);
  if (it == set.end() || !(*it == atom))
    set.insert(it, atom);
}

// Applies one tick: activations, forbid violations, require discharges,
// require expiries. Order matters and matches is_compliant: a new forbid is
// violated by its own trigger tick, a new require may discharge immediately.
// Returns false when the tick violates the spec.
bool apply_tick(const Compiled& c, int tick, uint64_t mask, int val,
                const ObSet& in, ObSet& out, bool* activated,
                int target_rule) {
  out = in;
  for (size_t r = 0; r < c.outcomes.size(); ++r) {
    if (!(mask >> c.trigger_bits[r] & 1))
      continue;
    const RuleOutcome& o = c.outcomes[r][val];
    if (!o.cond_holds)
      continue;
    if (o.cancelled) {
      continue;
    }
    if (activated && static_cast<int>(r) == target_rule)
      *activated = true;
    ObAtom atom;
    atom.rule = static_cast<int>(r);
    atom.forbid = o.polarity == Polarity::Forbid;
    atom.event = o.event;
    atom.begin = tick;
    atom.end = o.deadline_ticks < 0 ? kOpenEnd : tick + o.deadline_ticks;
    insert_atom(out, atom);
  }

  ObSet next;
  next.reserve(out.size());
  for (const auto& ob : out) {
    bool occurs = (mask >> ob.event) & 1;
    if (ob.forbid) {
      if (occurs)
        return false; // prohibited event inside its window
      if (ob.end != tick)
        next.push_back(ob); // window still open after this tick
      continue;
    }
    if (occurs)
      continue; // discharged
    if (ob.end == tick)
      return false; // deadline passed without the event
    next.push_back(ob);
  }
  out = std::move(next);
  return true;
}

bool has_outstanding_require(const ObSet& obs) {
  return std::any_of(obs.begin(), obs.end(),
                     [](const ObAtom& ob) { return !ob.forbid; });
}

// Visited-state fingerprint. Rule identity and activation tick do not
// affect how a state can evolve (discharge, expiry and violation look only
// at polarity, event and window end), and any end at or past the bound acts
// like an open window, so those are collapsed to merge equivalent states.
// Reported witnesses still carry the precise obligations of their own path.
std::string state_key(int tick, unsigned flags, const ObSet& obs, int bound) {
  std::vector<long long> canon;
  canon.reserve(obs.size());
  for (const auto& ob : obs) {
    long long end = ob.end > bound ? bound : ob.end;
    canon.push_back(ob.event | end << 24 |
                    static_cast<long long>(ob.forbid) << 60);
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

  std::string key;
  key.reserve(8 + canon.size() * 8);
  auto put = [&key](long long v) {
    key.append(reinterpret_cast<const char*>(&v), sizeof(v));
  };
  put(tick | static_cast<long long>(flags) << 32);
  for (long long v : canon)
    put(v);
  return key;
}

// Doom states forget rule identity and activation tick: only (polarity,
// event, remaining window) drives whether a clean completion exists.
struct DoomAtom {
  bool forbid = false;
  int event = 0;
  int rel_end = 0; // kOpenEnd when open

  auto key() const { return std::tie(forbid, event, rel_end); }
  bool operator<(const DoomAtom& o) const { return key() < o.key(); }
  bool operator==(const DoomAtom& o) const { return key() == o.key(); }
};

using DoomSet = std::vector<DoomAtom>;

DoomSet to_doom_state(const ObSet& obs, int tick) {
  DoomSet out;
  for (const auto& ob : obs) {
    DoomAtom a;
    a.forbid = ob.forbid;
    a.event = ob.event;
    a.rel_end = ob.end == kOpenEnd ? kOpenEnd : ob.end - tick;
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class Search {
public:
  Search(const Compiled& c) : c_(c) {}

  // True when some continuation lasting exactly `remaining` ticks avoids
  // every violation (require expiry, forbidden occurrence). Obligations left
  // pending at the horizon are acceptable; only violations matter, otherwise
  // a rule activated near the horizon would be doomed by the bound itself.
  bool can_avoid_violation(DoomSet state, int remaining) {
    if (remaining <= 0)
      return true;
    // A window reaching past the horizon behaves exactly like one ending on
    // it; clamping merges equivalent states for the memo.
    for (auto& a : state)
      if (a.rel_end > remaining)
        a.rel_end = remaining;
    std::sort(state.begin(), state.end());
    state.erase(std::unique(state.begin(), state.end()), state.end());
    // No require can expire within the horizon: empty padding succeeds.
    bool expirable = std::any_of(
        state.begin(), state.end(),
        [&](const DoomAtom& a) { return !a.forbid && a.rel_end < remaining; });
    if (!expirable)
      return true;

    std::string key = doom_key(state, remaining);
    auto memo = doom_memo_.find(key);
    if (memo != doom_memo_.end())
      return memo->second;

    bool ok = false;
    for (uint64_t mask : c_.masks) {
      for (size_t val = 0; val < c_.valuations.size() && !ok; ++val) {
        DoomSet next;
        if (!doom_tick(mask, static_cast<int>(val), state, next))
          continue;
        ok = can_avoid_violation(std::move(next), remaining - 1);
      }
      if (ok)
        break;
    }
    doom_memo_[key] = ok;
    return ok;
  }

private:
  bool doom_tick(uint64_t mask, int val, const DoomSet& in, DoomSet& out) {
    out.clear();
    auto push = [&](const DoomAtom& a) {
      auto it = std::lower_bound(out.begin(), out.end(), a);
      if (it == out.end() || !(*it == a))
        out.insert(it, a);
    };

    DoomSet live = in;
    for (size_t r = 0; r < c_.outcomes.size(); ++r) {
      if (!(mask >> c_.trigger_bits[r] & 1))
        continue;
      const RuleOutcome& o = c_.outcomes[r][val];
      if (!o.cond_holds || o.cancelled)
        continue;
      DoomAtom a;
      a.forbid = o.polarity == Polarity::Forbid;
      a.event = o.event;
      a.rel_end = o.deadline_ticks < 0 ? kOpenEnd : o.deadline_ticks;
      auto it = std::lower_bound(live.begin(), live.end(), a);
      if (it == live.end() || !(*it == a))
        live.insert(it, a);
    }
    for (const auto& a : live) {
      bool occurs = (mask >> a.event) & 1;
      if (a.forbid) {
        if (occurs)
          return false;
        if (a.rel_end != 0) {
          DoomAtom n = a;
          if (n.rel_end != kOpenEnd)
            --n.rel_end;
          push(n);
        }
        continue;
      }
      if (occurs)
        continue;
      if (a.rel_end == 0)
        return false;
      DoomAtom n = a;
      if (n.rel_end != kOpenEnd)
        --n.rel_end;
      push(n);
    }
    return true;
  }

  static std::string doom_key(const DoomSet& state, int remaining) {
    std::string key;
    key.reserve(8 + state.size() * 8);
    auto put = [&key](long long v) {
      key.append(reinterpret_cast<const char*>(&v), sizeof(v));
    };
    put(remaining);
    for (const auto& a : state)
      put(a.event | static_cast<long long>(a.rel_end) << 24 |
          static_cast<long long>(a.forbid) << 60);
    return key;
  }

  const Compiled& c_;
  std::unordered_map<std::string, bool> doom_memo_;
};

// One (mask, valuation) pick per tick of a found witness.
using Path = std::vector<std::pair<uint64_t, int>>;

Trace materialize(const Compiled& c, const Path& path) {
  Trace trace;
  for (const auto& [mask, val] : path) {
    TraceTick tick;
    for (size_t b = 0; b < c.event_names.size(); ++b)
      if (mask >> b & 1)
        tick.events.insert(c.event_names[b]);
    tick.measures = c.valuations[val];
    // Valuations stay total over the full vocabulary even when the search
    // ran on a slice.
    for (const auto& name : c.full_table.measure_names)
      if (!tick.measures.count(name))
        tick.measures[name] = default_value(*c.full_table.measure(name));
    trace.ticks.push_back(std::move(tick));
  }
  return trace;
}

Obligation materialize_obligation(const Compiled& c, const ObAtom& atom,
                                  int trace_length) {
  Obligation ob;
  ob.source_rule = c.rule(atom.rule).id;
  ob.polarity = atom.forbid ? Polarity::Forbid : Polarity::Require;
  ob.event = c.event_names[atom.event];
  ob.activation_tick = atom.begin;
  ob.window_begin = atom.begin;
  ob.open_ended = atom.end == kOpenEnd;
  ob.window_end = ob.open_ended ? trace_length - 1 : atom.end;
  return ob;
}

// Depth-limited DFS over concrete tick choices with duplicate-state pruning.
// Visits leaves in shortlex order; `leaf` returns true to stop with the
// current path as the result.
class Iddfs {
public:
  using LeafFn = std::function<bool(const ObSet&, bool activated, int depth)>;

  Iddfs(const Compiled& c, int target_rule) : c_(c), target_(target_rule) {}

  std::optional<Path> run(int max_depth, const LeafFn& leaf) {
    for (int depth = 0; depth <= max_depth; ++depth) {
      visited_.clear();
      path_.clear();
      if (dfs(0, depth, {}, false, leaf))
        return path_;
    }
    return std::nullopt;
  }

private:
  bool dfs(int tick, int depth, const ObSet& obs, bool activated,
           const LeafFn& leaf) {
    if (tick == depth)
      return leaf(obs, activated, depth);
    std::string key = state_key(tick, activated ? 1 : 0, obs, c_.bound);
    if (!visited_.insert(std::move(key)).second)
      return false;
    for (uint64_t mask : c_.masks) {
      for (size_t val = 0; val < c_.valuations.size(); ++val) {
        ObSet next;
        bool act = activated;
        if (!apply_tick(c_, tick, mask, static_cast<int>(val), obs, next,
                        &act, target_))
          continue; // violated prefixes have no future
        path_.push_back({mask, static_cast<int>(val)});
        if (dfs(tick + 1, depth, next, act, leaf))
          return true;
        path_.pop_back();
      }
    }
    return false;
  }

  const Compiled& c_;
  int target_;
  std::unordered_set<std::string> visited_;
  Path path_;
};

// True when some non-violated prefix of length <= max_depth is already
// doomed, regardless of which rules activate along the way. Every doomed
// prefix a per-rule situational search could find is doomed here too, so a
// clean result lets check_spec skip those searches for the whole component.
bool doom_reachable(const Compiled& c, int max_depth) {
  Search doom(c);
  std::unordered_set<std::string> visited;
  std::function<bool(int, const ObSet&)> dfs = [&](int tick,
                                                   const ObSet& obs) -> bool {
    if (!visited.insert(state_key(tick, 0, obs, c.bound)).second)
      return false;
    if (!doom.can_avoid_violation(to_doom_state(obs, tick), c.bound - tick))
      return true;
    if (tick == max_depth)
      return false;
    for (uint64_t mask : c.masks) {
      for (size_t val = 0; val < c.valuations.size(); ++val) {
        ObSet next;
        if (!apply_tick(c, tick, mask, static_cast<int>(val), obs, next,
                        nullptr, -1))
          continue;
        if (dfs(tick + 1, next))
          return true;
      }
    }
    return false;
  };
  return dfs(0, {});
}

void require_known_rule(const SleecSpec& spec, const std::string& rule_id) {
  if (!find_rule(spec, rule_id))
    throw std::invalid_argument("no rule named '" + rule_id + "'");
}

void check_bound(const SleecSpec& spec, const CheckConfig& cfg) {
  int minimum = minimum_bound(spec);
  if (cfg.bound_ticks < minimum)
    throw BoundTooSmallError(
        "bound " + std::to_string(cfg.bound_ticks) +
            " cannot close the longest deadline window; minimum sufficient bound is " +
            std::to_string(minimum),
        minimum);
}

} // namespace

int minimum_bound(const SleecSpec& spec) {
  TickScale scale = normalize_durations(spec);
  return scale.has_durations ? 1 + scale.max_deadline_ticks : 1;
}

int default_bound(const SleecSpec& spec) { return minimum_bound(spec) + 2; }

std::map<std::string, std::vector<Value>> abstract_measure_domains(
    const SleecSpec& spec, const CheckConfig& cfg) {
  return derive_domains(spec, cfg);
}

SleecSpec slice_relevant_rules(const SleecSpec& spec,
                               const std::set<std::string>& focus) {
  std::set<std::string> seed;
  for (const auto& id : focus) {
    const Rule* rule = find_rule(spec, id);
    if (!rule)
      throw std::invalid_argument("no rule named '" + id + "'");
    auto evs = rule_events(*rule);
    seed.insert(evs.begin(), evs.end());
  }
  return slice_by_seed(spec, focus, seed, "");
}

const char* diagnosis_kind_name(DiagnosisKind kind) {
  switch (kind) {
  case DiagnosisKind::Vacuous: return "vacuous";
  case DiagnosisKind::Situational: return "situational";
  case DiagnosisKind::PurposeUnsat: return "purpose_unsat";
  }
  return "?";
}

std::optional<Trace> find_trigger_witness(const SleecSpec& spec,
                                          const std::string& rule_id,
                                          const CheckConfig& cfg) {
  require_known_rule(spec, rule_id);
  check_bound(spec, cfg);

  SleecSpec sliced;
  const SleecSpec* used = &spec;
  if (cfg.slicing) {
    sliced = slice_relevant_rules(spec, {rule_id});
    used = &sliced;
  }
  Compiled c = compile(spec, *used, cfg);
  int target = c.rule_index(rule_id);

  Iddfs search(c, target);
  auto path = search.run(cfg.bound_ticks,
                         [&](const ObSet& obs, bool activated, int) {
                           return activated && !has_outstanding_require(obs);
                         });
  if (!path)
    return std::nullopt;
  return materialize(c, *path);
}

std::optional<Diagnosis> find_situational_conflict(const SleecSpec& spec,
                                                   const std::string& rule_id,
                                                   const CheckConfig& cfg) {
  require_known_rule(spec, rule_id);
  check_bound(spec, cfg);

  SleecSpec sliced;
  const SleecSpec* used = &spec;
  if (cfg.slicing) {
    sliced = slice_relevant_rules(spec, {rule_id});
    used = &sliced;
  }
  Compiled c = compile(spec, *used, cfg);
  int target = c.rule_index(rule_id);

  Search doom(c);
  ObSet hit_obs;
  int hit_depth = 0;

  // A clash pair forces a violation only when the require window closes
  // inside the bound: the event must then occur in a window the forbid side
  // covers, or expire. An open or over-horizon require can stay pending.
  auto clash_dooms = [&](const ObAtom& x, const ObAtom& y, int depth) {
    if (x.forbid == y.forbid)
      return false;
    const ObAtom& req = x.forbid ? y : x;
    if (req.end > cfg.bound_ticks - 1)
      return false; // kOpenEnd included
    return obligation_clash(materialize_obligation(c, x, depth),
                            materialize_obligation(c, y, depth));
  };

  Iddfs search(c, target);
  // A prefix of full length extends only to itself and is non-violated by
  // construction, so depth bound_ticks can never be doomed; stop one short.
  auto path =
      search.run(cfg.bound_ticks - 1, [&](const ObSet& obs, bool activated,
                                          int depth) {
        if (!activated)
          return false;
        bool doomed = false;
        // A closing clash pair dooms the prefix outright; otherwise ask the
        // exact reachability check whether any continuation stays violation
        // free up to the bound.
        for (size_t i = 0; i < obs.size() && !doomed; ++i)
          for (size_t j = i + 1; j < obs.size() && !doomed; ++j)
            doomed = clash_dooms(obs[i], obs[j], depth);
        if (!doomed)
          doomed = !doom.can_avoid_violation(to_doom_state(obs, depth),
                                             cfg.bound_ticks - depth);
        if (doomed) {
          hit_obs = obs;
          hit_depth = depth;
        }
        return doomed;
      });
  if (!path)
    return std::nullopt;

  Diagnosis d;
  d.kind = DiagnosisKind::Situational;
  d.bound_used = cfg.bound_ticks;
  d.witness = materialize(c, *path);

  // Pick the clash pair to report: prefer one involving the checked rule,
  // then the canonically smallest.
  ObSet atoms = hit_obs;
  std::sort(atoms.begin(), atoms.end(), [&](const ObAtom& a, const ObAtom& b) {
    return std::tie(c.rule(a.rule).id, a.event, a.begin, a.end) <
           std::tie(c.rule(b.rule).id, b.event, b.begin, b.end);
  });
  bool found_with_target = false;
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j) {
      if (!clash_dooms(atoms[i], atoms[j], hit_depth))
        continue;
      bool involves_target = atoms[i].rule == target || atoms[j].rule == target;
      if (d.clash && (found_with_target || !involves_target))
        continue;
      const ObAtom& req = atoms[i].forbid ? atoms[j] : atoms[i];
      const ObAtom& forb = atoms[i].forbid ? atoms[i] : atoms[j];
      d.clash = ClashInfo{materialize_obligation(c, req, hit_depth),
                          materialize_obligation(c, forb, hit_depth)};
      found_with_target = involves_target;
    }

  std::set<std::string> implicated;
  if (d.clash) {
    implicated.insert(d.clash->require_side.source_rule);
    implicated.insert(d.clash->forbid_side.source_rule);
  } else {
    // Dead end without a single explaining pair: charge every rule that
    // still holds an undischarged obligation when the prefix ends.
    for (const auto& atom : hit_obs)
      implicated.insert(c.rule(atom.rule).id);
  }
  d.rules.assign(implicated.begin(), implicated.end());
  return d;
}

std::optional<Trace> check_purpose(const SleecSpec& spec,
                                   const std::string& purpose_id,
                                   const CheckConfig& cfg) {
  const Purpose* purpose = find_purpose(spec, purpose_id);
  if (!purpose)
    throw std::invalid_argument("no purpose named '" + purpose_id + "'");
  check_bound(spec, cfg);

  SleecSpec sliced;
  const SleecSpec* used = &spec;
  if (cfg.slicing) {
    std::set<std::string> seed{purpose->exists_event};
    if (purpose->while_event)
      seed.insert(*purpose->while_event);
    sliced = slice_by_seed(spec, {}, seed, purpose_id);
    used = &sliced;
  }
  Compiled c = compile(spec, *used, cfg);
  const Purpose* p = find_purpose(*used, purpose_id);
  assert(p);

  int exists_bit = c.event_bit.at(p->exists_event);
  int while_bit = p->while_event ? c.event_bit.at(*p->while_event) : -1;
  std::vector<uint8_t> cond_holds;
  cond_holds.reserve(c.valuations.size());
  for (const auto& v : c.valuations)
    cond_holds.push_back(evaluate_condition(c.table, p->cond, v) ? 1 : 0);

  // The while/exists progress rides along the search path; recompute it per
  // leaf from the chosen path instead of carrying extra state flags.
  auto satisfied_on = [&](const Path& path) {
    bool while_seen = while_bit < 0;
    for (const auto& [mask, val] : path) {
      if (while_bit >= 0 && (mask >> while_bit & 1))
        while_seen = true;
      if (while_seen && (mask >> exists_bit & 1) && cond_holds[val])
        return true;
    }
    return false;
  };

  // Plain depth-limited enumeration without duplicate-state pruning: the
  // purpose flags depend on the path, not only on the obligation state, and
  // purpose instances are small.
  struct Frame {
    ObSet obs;
  };
  Path path;
  std::optional<Trace> result;
  std::function<bool(int, int, const ObSet&)> dfs = [&](int tick, int depth,
                                                        const ObSet& obs) {
    if (tick == depth) {
      if (has_outstanding_require(obs) || !satisfied_on(path))
        return false;
      result = materialize(c, path);
      return true;
    }
    for (uint64_t mask : c.masks) {
      for (size_t val = 0; val < c.valuations.size(); ++val) {
        ObSet next;
        if (!apply_tick(c, tick, mask, static_cast<int>(val), obs, next,
                        nullptr, -1))
          continue;
        path.push_back({mask, static_cast<int>(val)});
        if (dfs(tick + 1, depth, next))
          return true;
        path.pop_back();
      }
    }
    return false;
  };
  for (int depth = 0; depth <= cfg.bound_ticks; ++depth) {
    path.clear();
    if (dfs(0, depth, {}))
      return result;
  }
  return std::nullopt;
}

void enumerate_all_traces(
    const SleecSpec& spec, const CheckConfig& cfg,
    const std::function<void(const Trace&, const Verdict&)>& yield) {
  if (spec.events.size() > 6)
    throw InstanceTooLargeError("exhaustive enumeration is limited to 6 events");
  if (cfg.bound_ticks > 5)
    throw InstanceTooLargeError("exhaustive enumeration is limited to bound 5");
  auto domains = derive_domains(spec, cfg);
  for (const auto& [name, domain] : domains)
    if (domain.size() > 3)
      throw InstanceTooLargeError(
          "exhaustive enumeration is limited to 3 abstract values per measure "
          "('" +
          name + "' has " + std::to_string(domain.size()) + ")");

  SymbolTable table = build_symbol_table(spec);
  TickScale scale = normalize_durations(spec);

  std::vector<std::string> measure_names;
  std::vector<std::vector<Value>> domain_list;
  for (const auto& m : spec.measures) {
    measure_names.push_back(m.name);
    domain_list.push_back(domains.at(m.name));
  }
  std::vector<Valuation> valuations =
      enumerate_valuations(measure_names, domain_list);
  std::vector<uint64_t> masks = enumerate_masks(
      static_cast<int>(spec.events.size()), cfg.max_events_per_tick);

  Trace trace;
  std::function<void(int)> recurse = [&](int depth) {
    if (depth == cfg.bound_ticks) {
      yield(trace, is_compliant(table, scale, spec, trace));
      return;
    }
    for (uint64_t mask : masks) {
      for (const auto& v : valuations) {
        TraceTick tick;
        for (size_t b = 0; b < spec.events.size(); ++b)
          if (mask >> b & 1)
            tick.events.insert(spec.events[b].name);
        tick.measures = v;
        trace.ticks.push_back(std::move(tick));
        recurse(depth + 1);
        trace.ticks.pop_back();
      }
    }
  };
  recurse(0);
}

std::vector<Diagnosis> check_spec(const SleecSpec& spec, const CheckConfig& cfg,
                                  const TraceabilityMap* map) {
  check_bound(spec, cfg);

  std::vector<Diagnosis> out;
  std::set<std::string> seen;
  auto add = [&](Diagnosis d) {
    std::string key = std::string(diagnosis_kind_name(d.kind));
    for (const auto& r : d.rules)
      key += "|" + r;
    if (!seen.insert(key).second)
      return;
    if (map)
      for (const auto& r : d.rules)
        if (const TraceEntry* entry = map->entry_for(r))
          d.value_context.push_back(*entry);
    out.push_back(std::move(d));
  };

  for (const auto& rule : spec.rules) {
    if (!find_trigger_witness(spec, rule.id, cfg)) {
      Diagnosis d;
      d.kind = DiagnosisKind::Vacuous;
      d.rules = {rule.id};
      d.bound_used = cfg.bound_ticks;
      add(std::move(d));
    }
  }
  // Situational searches grouped by slice component: every rule in one
  // component explores the same prefix space, so one target-agnostic probe
  // decides whether any per-rule search can find a doomed prefix at all.
  std::vector<std::pair<SleecSpec, std::vector<std::string>>> components;
  std::map<std::string, size_t> component_index;
  for (const auto& rule : spec.rules) {
    SleecSpec sliced =
        cfg.slicing ? slice_relevant_rules(spec, {rule.id}) : spec;
    std::string key;
    for (const auto& r : sliced.rules)
      key += r.id + "|";
    auto [it, fresh] = component_index.emplace(key, components.size());
    if (fresh)
      components.push_back({std::move(sliced), {}});
    components[it->second].second.push_back(rule.id);
  }
  for (const auto& [sliced, rule_ids] : components) {
    Compiled probe = compile(spec, sliced, cfg);
    if (!doom_reachable(probe, cfg.bound_ticks - 1))
      continue;
    for (const auto& id : rule_ids)
      if (auto d = find_situational_conflict(spec, id, cfg))
        add(std::move(*d));
  }
  for (const auto& purpose : spec.purposes) {
    if (auto witness = check_purpose(spec, purpose.id, cfg)) {
      (void)witness;
    } else {
      Diagnosis d;
      d.kind = DiagnosisKind::PurposeUnsat;
      d.rules = {purpose.id};
      d.bound_used = cfg.bound_ticks;
      add(std::move(d));
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Diagnosis& a, const Diagnosis& b) {
                     if (a.kind != b.kind)
                       return a.kind < b.kind;
                     return a.rules < b.rules;
                   });
  return out;
}

nlohmann::json diagnosis_to_json(const Diagnosis& d) {
  nlohmann::json j;
  j["kind"] = diagnosis_kind_name(d.kind);
  j["rules"] = d.rules;
  j["bound"] = d.bound_used;
  j["witness"] = d.witness ? trace_to_json(*d.witness) : nlohmann::json();
  if (d.clash) {
    // open-ended windows serialize their end as null
    auto window = [](const Obligation& ob) {
      nlohmann::json w = {ob.window_begin, ob.window_end};
      if (ob.open_ended)
        w[1] = nullptr;
      return w;
    };
    j["clash"] = {
        {"event", d.clash->require_side.event},
        {"require_window", window(d.clash->require_side)},
        {"forbid_window", window(d.clash->forbid_side)},
    };
  } else {
    j["clash"] = nlohmann::json();
  }
  nlohmann::json context = nlohmann::json::array();
  for (const auto& entry : d.value_context) {
    nlohmann::json e;
    e["generated"] = entry.generated;
    e["source"] = entry.source;
    e["attribute"] = entry.attribute;
    e["template"] = entry.template_id;
    if (entry.norm_principle)
      e["norm_principle"] = *entry.norm_principle;
    if (entry.proxy)
      e["proxy"] = *entry.proxy;
    context.push_back(std::move(e));
  }
  j["value_context"] = std::move(context);
  return j;
}

nlohmann::json diagnoses_to_json(const std::vector<Diagnosis>& ds) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : ds)
    arr.push_back(diagnosis_to_json(d));
  return arr;
}

} // namespace sleec
