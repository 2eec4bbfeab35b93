#pragma once

// Machine-to-Lag reduction: turns a Turing machine into a width-2 Lag system
// over triple symbols (memory, state, tag) that simulates it between
// checkpoint strings.
//
// A checkpoint string mirrors the machine memory one triple per cell, with the
// machine state attached to the head cell and the delimiter triple last:
//   (m1,_,_) ... (mi,q,_) ... (#,_,_)
// Between checkpoints the string cycles through rotations and control-tag
// phases; one machine step costs
//   2n                 for a left move,
//   n(n-1)^2 + 3n      for a right move within the written zone,
//   n(n-1)^2 + 4n      for a right move onto the delimiter (memory grows),
// where n is the string length at the start of the segment.
//
// Rule families (census keys in parentheses):
//   Rotate        (L1)  (g1,_,_)(g2,_,_) -> (g1,_,_)
//   RotatePast    (L2)  (g1,_,_)(g2,q,_) -> (g1,_,_)
//   LeftMove      (L3)  fire a left transition, park tag L, absorb it
//   RightLaunch   (L4)  fire a right transition, park tag R
//   RightOrbit    (L5)  full clockwise-move tag patterns lifted per state
//   RightLand     (L6)  absorb the arrived tag r
//   Grow          (L7)  (#,q,_)(g,_,_) -> (b,q,_)(#,_,_)   the only pair output
//
// The left-transition launch rule quantifies its context over the alphabet
// plus the delimiter: a left move from the cell next to the delimiter reads
// (m,q,_)(#,_,_), which simulated machines hit right after any growth step.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "lagsim/control.hpp"
#include "lagsim/lag.hpp"
#include "lagsim/machine.hpp"

namespace lagsim {

inline constexpr StateId kNoState = -1;

struct TripleSym {
  TapeSym mem = 0;
  StateId state = kNoState;  // kNoState renders "_"
  Tag tag = Tag::none;

  auto key() const { return std::tuple(mem == kDelim ? 1 : 0, mem, state, tag); }
  bool operator==(const TripleSym&) const = default;
  bool operator<(const TripleSym& o) const { return key() < o.key(); }
};

enum class RuleFamily { Rotate, RotatePast, LeftMove, RightLaunch, RightOrbit, RightLand, Grow };
inline constexpr int kFamilyCount = 7;

// Census key for a family: "L1".."L7".
const char* family_key(RuleFamily f);

struct Census {
  std::int64_t rules = 0;
  std::int64_t symbols = 0;
  std::int64_t pair_rules = 0;  // rules with a 2-symbol output
  std::map<std::string, std::int64_t> families;
};

class CompiledSystem {
 public:
  LagSystem sys{2, 2};  // width 2, outputs 1..2, empty halt set
  Census census;

  // Provenance, parallel to sys.rules(): generating family and source
  // transition (state, read), (-1,-1) for the transition-free families.
  std::vector<RuleFamily> family;
  std::vector<std::pair<StateId, TapeSym>> source;

  // Machine facts needed to build strings / decode snapshots.
  TapeSym blank = 0;
  StateId start = 0;
  std::vector<std::string> tape_names;  // machine alphabet, declaration order

  const TripleSym& triple_of(Sym s) const { return triples_.at(s); }
  Sym sym_of(const TripleSym& t) const;
  std::optional<Sym> try_sym_of(const TripleSym& t) const;

 private:
  friend CompiledSystem compile(const TuringMachine&);
  std::vector<TripleSym> triples_;       // indexed by Sym
  std::map<TripleSym, Sym> sym_index_;
};

// Builds the full rule set.  Identical duplicates arising from different
// transitions merge; conflicting outputs for one context are a definition
// error.  Rules are stored sorted by (family, context) so the system and its
// serialization are canonical.
CompiledSystem compile(const TuringMachine& tm);

// Checkpoint string for the given input and 1-based head position.  Inputs
// shorter than two cells are padded with blanks (the reduction needs string
// length >= 3 including the delimiter).
std::vector<Sym> initial_string(const CompiledSystem& cs,
                                const std::vector<std::string>& input, int head0);

struct TapeSnapshot {
  std::vector<TapeSym> memory;  // includes the trailing delimiter
  int head = 1;
  StateId state = 0;

  bool operator==(const TapeSnapshot&) const = default;
};

// Reads a checkpoint string back into machine terms: requires a unique
// delimiter, all tags blank, and exactly one state-carrying triple that is
// not the delimiter (machine heads never rest on it).  The string may be
// rotated; the snapshot is taken with the delimiter last.  Anything else is
// not a checkpoint and yields nullopt.
std::optional<TapeSnapshot> decode_snapshot(const CompiledSystem& cs,
                                            std::span<const Sym> str);

// Copy of the compiled rule set minus the Grow family: a width-2,
// length-preserving system (useful for bounded-memory runs).
LagSystem without_growth_rules(const CompiledSystem& cs);

struct GapRecord {
  std::int64_t k = 0;          // machine step index
  std::int64_t iter_from = 0;  // checkpoint iterations bracketing the step
  std::int64_t iter_to = 0;
  std::int64_t expected = 0;
  std::int64_t observed = 0;
  char move = '?';  // 'L' left, 'R' right, 'G' right onto delimiter
  bool gap_ok = false;
  bool snapshot_ok = false;
};

struct EquivalenceReport {
  bool passed = false;
  std::int64_t verified_steps = 0;  // machine steps with checked gap+snapshot
  TmHalt oracle_reason = TmHalt::Budget;
  bool halt_matched = true;  // machine halted/stuck => the Lag run dies by no-match
  std::int64_t points = 0;   // checkpoints seen, including iteration 0
  std::int64_t lag_iters = 0;
  std::vector<GapRecord> gaps;
  std::string note;
};

// Runs the machine (reference) and its compiled system side by side: every
// checkpoint must equal the machine state reached after the same number of
// steps, and every checkpoint-to-checkpoint distance must equal the
// closed-form cost of that step.
EquivalenceReport verify_equivalence(const TuringMachine& tm, const CompiledSystem& cs,
                                     const std::vector<std::string>& input, int head0,
                                     std::int64_t tm_steps,
                                     std::int64_t max_iters = 10'000'000);
EquivalenceReport verify_equivalence(const TuringMachine& tm,
                                     const std::vector<std::string>& input, int head0,
                                     std::int64_t tm_steps,
                                     std::int64_t max_iters = 10'000'000);

}  // namespace lagsim
