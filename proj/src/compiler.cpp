#include "lagsim/compiler.hpp"

#include <algorithm>

namespace lagsim {

namespace {

std::string triple_label(const TuringMachine& tm, const TripleSym& t) {
  std::string out = tm.symbol_name(t.mem);
  out += '|';
  out += t.state == kNoState ? "_" : tm.state_name(t.state);
  out += '|';
  out += tag_name(t.tag);
  return out;
}

struct Pending {
  TripleSym l0, l1;
  std::vector<TripleSym> rhs;
  RuleFamily fam;
  std::pair<StateId, TapeSym> src;
};

}  // namespace

const char* family_key(RuleFamily f) {
  static constexpr const char* kKeys[kFamilyCount] = {"L1", "L2", "L3", "L4",
                                                      "L5", "L6", "L7"};
  return kKeys[static_cast<int>(f)];
}

Sym CompiledSystem::sym_of(const TripleSym& t) const {
  auto it = sym_index_.find(t);
  if (it == sym_index_.end()) throw AlphabetError("triple symbol not in compiled system");
  return it->second;
}

std::optional<Sym> CompiledSystem::try_sym_of(const TripleSym& t) const {
  auto it = sym_index_.find(t);
  if (it == sym_index_.end()) return std::nullopt;
  return it->second;
}

CompiledSystem compile(const TuringMachine& tm) {
  const StateId no_src_state = -1;
  const std::pair<StateId, TapeSym> no_src{no_src_state, -2};

  // Cell alphabet: machine symbols in declaration order, delimiter last.
  std::vector<TapeSym> cells;
  for (TapeSym s = 0; s < tm.alphabet_size(); ++s) cells.push_back(s);
  cells.push_back(kDelim);

  std::vector<Pending> pending;
  std::map<std::pair<TripleSym, TripleSym>, std::size_t> by_ctx;
  auto add = [&](TripleSym l0, TripleSym l1, std::vector<TripleSym> rhs,
                 RuleFamily fam, std::pair<StateId, TapeSym> src) {
    auto key = std::pair(l0, l1);
    if (auto it = by_ctx.find(key); it != by_ctx.end()) {
      if (pending[it->second].rhs != rhs) {
        throw DefinitionError("conflicting outputs for context " +
                              triple_label(tm, l0) + " " + triple_label(tm, l1));
      }
      return;  // identical duplicate: merge, first provenance wins
    }
    by_ctx.emplace(key, pending.size());
    pending.push_back({l0, l1, std::move(rhs), fam, src});
  };

  const Tag B = Tag::none;
  auto blankly = [&](TapeSym m) { return TripleSym{m, kNoState, B}; };

  // Rotate / RotatePast: carry the string around when nothing fires.
  for (TapeSym g1 : cells) {
    for (TapeSym g2 : cells) {
      add(blankly(g1), blankly(g2), {blankly(g1)}, RuleFamily::Rotate, no_src);
      for (StateId q = 0; q < tm.state_count(); ++q) {
        add(blankly(g1), TripleSym{g2, q, B}, {blankly(g1)}, RuleFamily::RotatePast, no_src);
      }
    }
  }

  for (const auto& [key, tr] : tm.transitions()) {
    const auto [q, g] = key;
    const TapeSym w = tr.write;
    const StateId q2 = tr.next;
    if (tr.move == -1) {
      // Launch over the alphabet plus the delimiter: the head can sit just
      // left of '#' when a left transition fires.
      for (TapeSym g1 : cells) {
        add(TripleSym{g, q, B}, blankly(g1), {TripleSym{w, q2, Tag::L}},
            RuleFamily::LeftMove, key);
      }
      for (TapeSym g1 : cells) {
        add(blankly(g1), TripleSym{w, q2, Tag::L}, {TripleSym{g1, q2, B}},
            RuleFamily::LeftMove, key);
        add(TripleSym{w, q2, Tag::L}, blankly(g1), {blankly(w)},
            RuleFamily::LeftMove, key);
      }
    } else {
      for (TapeSym g1 : cells) {
        add(TripleSym{g, q, B}, blankly(g1), {TripleSym{w, q2, Tag::R}},
            RuleFamily::RightLaunch, key);
      }
      // Clockwise-move patterns lifted to triples carrying q2.  The pure
      // rotation pattern is already the Rotate family.
      for (const TagPattern& pat : rright_patterns()) {
        if (pat.a == B && pat.b == B) continue;
        for (TapeSym g1 : cells) {
          for (TapeSym g2 : cells) {
            TripleSym l0 = pat.a == B ? blankly(g1) : TripleSym{g1, q2, pat.a};
            TripleSym l1 = pat.b == B ? blankly(g2) : TripleSym{g2, q2, pat.b};
            TripleSym out = pat.c == B ? blankly(g1) : TripleSym{g1, q2, pat.c};
            add(l0, l1, {out}, RuleFamily::RightOrbit, key);
          }
        }
      }
      for (TapeSym g1 : cells) {
        for (TapeSym g2 : cells) {
          add(TripleSym{g1, q2, Tag::r}, blankly(g2), {TripleSym{g1, q2, B}},
              RuleFamily::RightLand, key);
        }
      }
      // Growth: the state reached the delimiter; insert a blank cell.
      for (TapeSym g1 = 0; g1 < tm.alphabet_size(); ++g1) {
        add(TripleSym{kDelim, q2, B}, blankly(g1),
            {TripleSym{tm.blank(), q2, B}, blankly(kDelim)}, RuleFamily::Grow, key);
      }
    }
  }

  std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    if (a.fam != b.fam) return a.fam < b.fam;
    if (!(a.l0 == b.l0)) return a.l0 < b.l0;
    return a.l1 < b.l1;
  });

  CompiledSystem cs;
  cs.blank = tm.blank();
  cs.start = tm.start_state();
  for (TapeSym s = 0; s < tm.alphabet_size(); ++s) {
    cs.tape_names.push_back(tm.symbol_name(s));
  }
  auto intern = [&](const TripleSym& t) {
    Sym s = cs.sys.intern(triple_label(tm, t));
    if (static_cast<std::size_t>(s) == cs.triples_.size()) {
      cs.triples_.push_back(t);
      cs.sym_index_.emplace(t, s);
    }
    return s;
  };
  for (const Pending& p : pending) {
    std::vector<Sym> lhs{intern(p.l0), intern(p.l1)};
    std::vector<Sym> rhs;
    for (const TripleSym& t : p.rhs) rhs.push_back(intern(t));
    cs.sys.add_rule(std::move(lhs), std::move(rhs));
    cs.family.push_back(p.fam);
    cs.source.push_back(p.src);
  }

  cs.census.rules = static_cast<std::int64_t>(cs.sys.rules().size());
  cs.census.symbols = static_cast<std::int64_t>(cs.sys.rule_alphabet().size());
  for (std::size_t i = 0; i < cs.family.size(); ++i) {
    cs.census.families[family_key(cs.family[i])] += 1;
    if (cs.sys.rules()[i].rhs.size() == 2) cs.census.pair_rules += 1;
  }
  for (int f = 0; f < kFamilyCount; ++f) {
    cs.census.families.try_emplace(family_key(static_cast<RuleFamily>(f)), 0);
  }
  return cs;
}

std::vector<Sym> initial_string(const CompiledSystem& cs,
                                const std::vector<std::string>& input, int head0) {
  if (input.empty()) throw BoundsError("input must be nonempty");
  if (head0 < 1 || head0 > static_cast<int>(input.size())) {
    throw BoundsError("head0 must be in [1, input length]");
  }
  std::vector<TapeSym> mem;
  for (const auto& name : input) {
    auto it = std::find(cs.tape_names.begin(), cs.tape_names.end(), name);
    if (it == cs.tape_names.end()) {
      throw AlphabetError("input symbol '" + name + "' not in machine alphabet");
    }
    mem.push_back(static_cast<TapeSym>(it - cs.tape_names.begin()));
  }
  while (mem.size() < 2) mem.push_back(cs.blank);  // reduction needs n >= 3 cells

  std::vector<Sym> out;
  out.reserve(mem.size() + 1);
  for (std::size_t j = 0; j < mem.size(); ++j) {
    StateId st = static_cast<int>(j) + 1 == head0 ? cs.start : kNoState;
    out.push_back(cs.sym_of({mem[j], st, Tag::none}));
  }
  out.push_back(cs.sym_of({kDelim, kNoState, Tag::none}));
  return out;
}

std::optional<TapeSnapshot> decode_snapshot(const CompiledSystem& cs,
                                            std::span<const Sym> str) {
  int delim_at = -1;
  int state_at = -1;
  for (std::size_t i = 0; i < str.size(); ++i) {
    const TripleSym& t = cs.triple_of(str[i]);
    if (t.tag != Tag::none) return std::nullopt;
    if (t.mem == kDelim) {
      if (delim_at >= 0) return std::nullopt;  // delimiter must be unique
      delim_at = static_cast<int>(i);
    }
    if (t.state != kNoState) {
      if (state_at >= 0) return std::nullopt;  // exactly one head cell
      state_at = static_cast<int>(i);
    }
  }
  if (delim_at < 0 || state_at < 0) return std::nullopt;
  if (delim_at == state_at) return std::nullopt;  // heads never rest on '#'

  const int len = static_cast<int>(str.size());
  TapeSnapshot snap;
  snap.memory.reserve(len);
  for (int i = 0; i < len; ++i) {
    const TripleSym& t = cs.triple_of(str[(delim_at + 1 + i) % len]);
    snap.memory.push_back(t.mem);
    if (t.state != kNoState) {
      snap.head = i + 1;
      snap.state = t.state;
    }
  }
  return snap;
}

LagSystem without_growth_rules(const CompiledSystem& cs) {
  LagSystem out(2, 1);
  const auto& rules = cs.sys.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (cs.family[i] == RuleFamily::Grow) continue;
    std::vector<Sym> lhs, rhs;
    for (Sym s : rules[i].lhs) lhs.push_back(out.intern(cs.sys.name(s)));
    for (Sym s : rules[i].rhs) rhs.push_back(out.intern(cs.sys.name(s)));
    out.add_rule(std::move(lhs), std::move(rhs));
  }
  return out;
}

EquivalenceReport verify_equivalence(const TuringMachine& tm, const CompiledSystem& cs,
                                     const std::vector<std::string>& input, int head0,
                                     std::int64_t tm_steps, std::int64_t max_iters) {
  EquivalenceReport rep;

  // Reference run on the padded memory the reduction will see.
  std::vector<std::string> padded = input;
  while (padded.size() < 2) padded.push_back(tm.symbol_name(tm.blank()));
  TapeState st = tm_init(tm, padded, head0);

  std::vector<TapeSnapshot> snaps;
  std::vector<char> moves;
  snaps.push_back({st.memory, st.head, st.state});
  rep.oracle_reason = TmHalt::Budget;
  for (std::int64_t k = 0; k < tm_steps; ++k) {
    int pre_head = st.head;
    int pre_len = st.length();
    TmStep r = tm_step(tm, st);
    if (r == TmStep::Halted) { rep.oracle_reason = TmHalt::Halted; break; }
    if (r == TmStep::Stuck) { rep.oracle_reason = TmHalt::Stuck; break; }
    if (r == TmStep::LeftEdge) {
      rep.oracle_reason = TmHalt::LeftEdge;
      rep.note = "reference run fell off the left edge after " +
                 std::to_string(k) + " steps";
      break;
    }
    moves.push_back(st.length() > pre_len ? 'G' : (st.head < pre_head ? 'L' : 'R'));
    snaps.push_back({st.memory, st.head, st.state});
  }
  const std::size_t want_points = snaps.size();

  // Compiled run, collecting checkpoints (delimiter literally last).
  LagState ls = lag_init(initial_string(cs, input, head0));
  const Sym delim_blank = cs.sym_of({kDelim, kNoState, Tag::none});

  std::vector<std::pair<std::int64_t, TapeSnapshot>> points;
  auto try_point = [&](std::int64_t iter) {
    if (ls.str.empty() || ls.str.back() != delim_blank) return;
    std::vector<Sym> flat(ls.str.begin(), ls.str.end());
    if (auto snap = decode_snapshot(cs, flat)) points.emplace_back(iter, *snap);
  };
  try_point(0);

  bool lag_halted = false;
  std::int64_t iter = 0;
  while (iter < max_iters && points.size() < want_points) {
    LagStep r = lag_step(cs.sys, ls);
    if (r == LagStep::HaltNoMatch) { lag_halted = true; break; }
    ++iter;
    try_point(iter);
  }

  // A finished machine must kill the compiled run too: the string rotates
  // until the dead context reaches the front, then nothing matches.
  const bool oracle_finished =
      rep.oracle_reason == TmHalt::Halted || rep.oracle_reason == TmHalt::Stuck;
  if (oracle_finished && !lag_halted && points.size() == want_points) {
    std::int64_t grace = static_cast<std::int64_t>(ls.str.size()) + 1;
    for (std::int64_t j = 0; j < grace && iter < max_iters; ++j) {
      LagStep r = lag_step(cs.sys, ls);
      if (r == LagStep::HaltNoMatch) { lag_halted = true; break; }
      ++iter;
    }
    rep.halt_matched = lag_halted;
  } else if (oracle_finished) {
    rep.halt_matched = lag_halted && points.size() == want_points;
  }
  rep.lag_iters = iter;
  rep.points = static_cast<std::int64_t>(points.size());

  bool all_ok = points.size() == want_points;
  if (!all_ok && rep.note.empty()) {
    rep.note = "expected " + std::to_string(want_points) + " checkpoints, saw " +
               std::to_string(points.size());
  }
  if (!points.empty() && !(points[0].second == snaps[0])) {
    all_ok = false;
    rep.note = "initial checkpoint does not decode to the initial memory";
  }

  bool prefix_ok = true;
  for (std::size_t k = 0; k + 1 < points.size() && k < moves.size(); ++k) {
    const std::int64_t n = static_cast<std::int64_t>(snaps[k].memory.size());
    std::int64_t expected = 0;
    switch (moves[k]) {
      case 'L': expected = 2 * n; break;
      case 'R': expected = n * (n - 1) * (n - 1) + 3 * n; break;
      case 'G': expected = n * (n - 1) * (n - 1) + 4 * n; break;
    }
    GapRecord g;
    g.k = static_cast<std::int64_t>(k);
    g.iter_from = points[k].first;
    g.iter_to = points[k + 1].first;
    g.expected = expected;
    g.observed = g.iter_to - g.iter_from;
    g.move = moves[k];
    g.gap_ok = g.expected == g.observed;
    g.snapshot_ok = points[k + 1].second == snaps[k + 1];
    all_ok = all_ok && g.gap_ok && g.snapshot_ok;
    prefix_ok = prefix_ok && g.gap_ok && g.snapshot_ok;
    rep.gaps.push_back(g);
    if (prefix_ok) rep.verified_steps = g.k + 1;
  }

  rep.passed = all_ok && rep.halt_matched && rep.oracle_reason != TmHalt::LeftEdge;
  return rep;
}

EquivalenceReport verify_equivalence(const TuringMachine& tm,
                                     const std::vector<std::string>& input, int head0,
                                     std::int64_t tm_steps, std::int64_t max_iters) {
  CompiledSystem cs = compile(tm);
  return verify_equivalence(tm, cs, input, head0, tm_steps, max_iters);
}

}  // namespace lagsim
