#include "lagsim/machine.hpp"

#include <sstream>
#include <unordered_map>

namespace lagsim {

namespace {

int index_of(const std::vector<std::string>& names, std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

TuringMachine::TuringMachine(const TmSpec& spec)
    : state_names_(spec.states), symbol_names_(spec.alphabet) {
  if (state_names_.empty()) throw DefinitionError("machine needs at least one state");
  if (symbol_names_.empty()) throw DefinitionError("machine needs a nonempty alphabet");
  for (const auto& s : symbol_names_) {
    if (s == delim_name_) throw DefinitionError("'#' is reserved for the memory delimiter");
  }
  auto state_of = [&](const std::string& n, const char* where) {
    int q = index_of(state_names_, n);
    if (q < 0) throw DefinitionError(std::string("unknown state '") + n + "' in " + where);
    return q;
  };
  auto sym_of = [&](const std::string& n, const char* where) {
    int s = index_of(symbol_names_, n);
    if (s < 0) throw AlphabetError(std::string("unknown symbol '") + n + "' in " + where);
    return s;
  };
  start_ = state_of(spec.start, "start");
  blank_ = sym_of(spec.blank, "blank");
  for (const auto& [q, s] : spec.halting) {
    halting_.emplace(state_of(q, "halting"), sym_of(s, "halting"));
  }
  for (const auto& row : spec.transitions) {
    if (row.move != -1 && row.move != 1) {
      throw DefinitionError("transition move must be -1 or +1");
    }
    std::pair<StateId, TapeSym> key{state_of(row.state, "transition"),
                                    sym_of(row.read, "transition")};
    if (halting_.count(key)) {
      throw DefinitionError("(" + row.state + "," + row.read +
                            ") is both halting and a transition");
    }
    TmTransition tr{sym_of(row.write, "transition"), row.move,
                    state_of(row.next, "transition")};
    auto [it, fresh] = transitions_.emplace(key, tr);
    if (!fresh) {
      throw DefinitionError("duplicate transition for (" + row.state + "," + row.read + ")");
    }
  }
}

std::optional<StateId> TuringMachine::find_state(std::string_view name) const {
  int q = index_of(state_names_, name);
  if (q < 0) return std::nullopt;
  return q;
}

std::optional<TapeSym> TuringMachine::find_symbol(std::string_view name) const {
  if (name == delim_name_) return kDelim;
  int s = index_of(symbol_names_, name);
  if (s < 0) return std::nullopt;
  return s;
}

const TmTransition* TuringMachine::transition(StateId q, TapeSym s) const {
  auto it = transitions_.find({q, s});
  return it == transitions_.end() ? nullptr : &it->second;
}

const char* to_string(TmHalt r) {
  switch (r) {
    case TmHalt::Halted: return "halted";
    case TmHalt::Stuck: return "stuck";
    case TmHalt::LeftEdge: return "left-edge";
    case TmHalt::Budget: return "budget";
  }
  return "?";
}

TapeState tm_init(const TuringMachine& tm, const std::vector<std::string>& input,
                  int head0) {
  if (input.empty()) throw BoundsError("input must be nonempty");
  if (head0 < 1 || head0 > static_cast<int>(input.size())) {
    throw BoundsError("head0 must be in [1, input length]");
  }
  TapeState st;
  st.memory.reserve(input.size() + 1);
  for (const auto& name : input) {
    auto s = tm.find_symbol(name);
    if (!s || *s == kDelim) throw AlphabetError("input symbol '" + name + "' not in alphabet");
    st.memory.push_back(*s);
  }
  st.memory.push_back(kDelim);
  st.head = head0;
  st.state = tm.start_state();
  st.steps = 0;
  return st;
}

TapeState tm_init(const TuringMachine& tm, std::string_view input, int head0) {
  std::vector<std::string> names;
  names.reserve(input.size());
  for (char c : input) names.emplace_back(1, c);
  return tm_init(tm, names, head0);
}

TmStep tm_step(const TuringMachine& tm, TapeState& st) {
  TapeSym read = st.read();
  if (tm.is_halting(st.state, read)) return TmStep::Halted;
  const TmTransition* tr = tm.transition(st.state, read);
  if (tr == nullptr) return TmStep::Stuck;
  if (tr->move == -1 && st.head == 1) return TmStep::LeftEdge;
  st.memory[st.head - 1] = tr->write;
  st.state = tr->next;
  st.head += tr->move;
  if (st.memory[st.head - 1] == kDelim) {
    // Head reached the delimiter: grow the written zone by one blank.
    st.memory.insert(st.memory.end() - 1, tm.blank());
  }
  ++st.steps;
  return TmStep::Continue;
}

TmRunResult run_tm(const TuringMachine& tm, TapeState start,
                   std::int64_t max_steps, int stride) {
  TmRunResult out;
  out.final_state = std::move(start);
  TapeState& st = out.final_state;
  for (std::int64_t k = 0; k < max_steps; ++k) {
    int pre_head = st.head;
    TmStep r = tm_step(tm, st);
    if (r == TmStep::Halted) { out.reason = TmHalt::Halted; return out; }
    if (r == TmStep::Stuck) { out.reason = TmHalt::Stuck; return out; }
    if (r == TmStep::LeftEdge) { out.reason = TmHalt::LeftEdge; return out; }
    if (stride > 0 && k % stride == 0) {
      // The cell written by this step sits where the head was before the move.
      out.trace.push_back({k, st.state, st.head, st.memory[pre_head - 1], st.length()});
    }
  }
  out.reason = TmHalt::Budget;
  return out;
}

TuringMachine build_u15_2() {
  // One entry per (read row, state column): write, move, next.  '.' = halting.
  static constexpr const char* kRow0 =
      "0+B 1+C 0-G 0-F 1+A 1-D 0-H 1-I 0+A 1-K 0+L 0+M 0-B 0-C 0+N";
  static constexpr const char* kRow1 =
      "1+A 1+A 0-E 1-E 1-D 1-D 1-G 1-G 1-J ... 1+N 1+L 1+L 0+O 1+N";

  TmSpec spec;
  for (char q = 'A'; q <= 'O'; ++q) spec.states.emplace_back(1, q);
  spec.alphabet = {"0", "1"};
  spec.blank = "0";
  spec.start = "A";

  auto add_row = [&](const char* row, const char* read) {
    std::istringstream in(row);
    std::string cell;
    for (int col = 0; col < 15; ++col) {
      in >> cell;
      if (cell == "...") {
        spec.halting.emplace_back(spec.states[col], read);
        continue;
      }
      spec.transitions.push_back({spec.states[col], read, std::string(1, cell[0]),
                                  cell[1] == '+' ? 1 : -1, std::string(1, cell[2])});
    }
  };
  add_row(kRow0, "0");
  add_row(kRow1, "1");
  return TuringMachine(spec);
}

}  // namespace lagsim
