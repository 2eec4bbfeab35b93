#pragma once

// Single-tape Turing machines over a finite, delimiter-terminated memory.
//
// The memory is the written zone of the tape plus one trailing delimiter '#'.
// Whenever the head moves onto the delimiter a fresh blank cell is inserted in
// front of it, so the delimiter stays last and unique and the head always
// rests on a plain tape symbol.  Moving left off cell 1 is a contract
// violation and is reported distinctly instead of being clamped.
//
// Halting pairs (state, read) are checked at the top of each step, before the
// transition table is consulted; a pair that is in neither the halt set nor
// the transition table leaves the machine stuck.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lagsim/errors.hpp"

namespace lagsim {

using StateId = int;  // index into TuringMachine states, declaration order
using TapeSym = int;  // index into TuringMachine alphabet; kDelim for '#'

inline constexpr TapeSym kDelim = -1;  // memory delimiter, rendered "#"

struct TmTransition {
  TapeSym write;
  int move;  // -1 left, +1 right
  StateId next;
};

// Declarative description; names are resolved and validated on construction.
struct TmSpec {
  struct Row {
    std::string state, read, write;
    int move = 0;
    std::string next;
  };
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::string blank;
  std::string start;
  std::vector<std::pair<std::string, std::string>> halting;  // (state, read)
  std::vector<Row> transitions;
};

class TuringMachine {
 public:
  explicit TuringMachine(const TmSpec& spec);

  int state_count() const { return static_cast<int>(state_names_.size()); }
  int alphabet_size() const { return static_cast<int>(symbol_names_.size()); }
  StateId start_state() const { return start_; }
  TapeSym blank() const { return blank_; }

  const std::string& state_name(StateId q) const { return state_names_.at(q); }
  const std::string& symbol_name(TapeSym s) const {
    return s == kDelim ? delim_name_ : symbol_names_.at(s);
  }
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<TapeSym> find_symbol(std::string_view name) const;

  bool is_halting(StateId q, TapeSym s) const {
    return halting_.count({q, s}) != 0;
  }
  // Null when f is undefined on (q, s).
  const TmTransition* transition(StateId q, TapeSym s) const;

  const std::map<std::pair<StateId, TapeSym>, TmTransition>& transitions() const {
    return transitions_;
  }
  const std::set<std::pair<StateId, TapeSym>>& halting_pairs() const {
    return halting_;
  }

 private:
  std::vector<std::string> state_names_;
  std::vector<std::string> symbol_names_;
  std::string delim_name_ = "#";
  StateId start_ = 0;
  TapeSym blank_ = 0;
  std::set<std::pair<StateId, TapeSym>> halting_;
  std::map<std::pair<StateId, TapeSym>, TmTransition> transitions_;
};

// One bounded run's live data.  head is 1-based; memory.back() == kDelim.
struct TapeState {
  std::vector<TapeSym> memory;
  int head = 1;
  StateId state = 0;
  std::int64_t steps = 0;

  int length() const { return static_cast<int>(memory.size()); }
  TapeSym read() const { return memory.at(head - 1); }
};

enum class TmStep { Continue, Halted, Stuck, LeftEdge };
enum class TmHalt { Halted, Stuck, LeftEdge, Budget };

const char* to_string(TmHalt r);

struct TmStepRecord {
  std::int64_t k;  // 0-based index of the executed step
  StateId q;       // state after the step
  int head;        // head after the step
  TapeSym write;   // symbol written by the step
  int len;         // memory length after the step
};

struct TmRunResult {
  TapeState final_state;
  TmHalt reason = TmHalt::Budget;
  std::vector<TmStepRecord> trace;  // every stride-th step; empty when stride == 0
};

// memory = input ++ [#].  Requires a nonempty input over the machine's
// alphabet and 1 <= head0 <= |input|.
TapeState tm_init(const TuringMachine& tm, const std::vector<std::string>& input,
                  int head0);
// Convenience for single-character symbol names ("0110" etc.).
TapeState tm_init(const TuringMachine& tm, std::string_view input, int head0);

// Executes one step in place.  Halted/Stuck/LeftEdge leave the state
// untouched; only Continue mutates.
TmStep tm_step(const TuringMachine& tm, TapeState& st);

TmRunResult run_tm(const TuringMachine& tm, TapeState start,
                   std::int64_t max_steps, int stride = 1);

// The 15-state 2-symbol universal machine: states A..O over {0,1}, blank 0,
// start A, single halting pair (J,1), 29 transitions.
TuringMachine build_u15_2();

}  // namespace lagsim
