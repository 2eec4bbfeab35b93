#pragma once

// Deterministic Lag systems: fixed-width-context string rewriting.
//
// Each iteration reads the first context_len symbols of the string, deletes
// the first symbol, and appends the matched rule's output (1..max_out
// symbols).  A run halts when the string is shorter than the context or no
// rule matches (no-match), or when an appended symbol belongs to the halt set
// (checked after the append, so the final string keeps the halt symbol).
//
// Symbols are interned: the owning system maps names to dense ids, and the
// interning order is the declaration order used wherever a deterministic
// symbol order matters.  Finish building (interning, add_rule, add_halt)
// before sharing a system across threads; all queries are const.

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lagsim/errors.hpp"

namespace lagsim {

using Sym = std::int32_t;  // index into the owning LagSystem's symbol table

struct LagRule {
  std::vector<Sym> lhs;  // exactly context_len symbols
  std::vector<Sym> rhs;  // 1..max_out symbols
};

class LagSystem {
 public:
  LagSystem(int context_len, int max_out);

  // --- build phase ---
  Sym intern(std::string_view name);
  void add_rule(std::vector<Sym> lhs, std::vector<Sym> rhs);
  void add_halt(Sym s) { halt_.insert(s); }

  // --- queries ---
  int context_len() const { return context_len_; }
  int max_out() const { return max_out_; }
  std::optional<Sym> find(std::string_view name) const;
  const std::string& name(Sym s) const { return names_.at(s); }
  int symbol_table_size() const { return static_cast<int>(names_.size()); }
  const std::vector<LagRule>& rules() const { return rules_; }
  const std::unordered_set<Sym>& halt_set() const { return halt_; }
  bool is_halt(Sym s) const { return halt_.count(s) != 0; }

  // Null when no rule's left side equals the context.
  const LagRule* match(std::span<const Sym> ctx) const;

  // Symbols occurring in at least one rule side, in interning order.
  std::vector<Sym> rule_alphabet() const;

  // Name -> id conversion for whole strings; throws AlphabetError on names
  // never interned in this system.
  std::vector<Sym> to_syms(const std::vector<std::string>& names) const;
  std::vector<std::string> to_names(std::span<const Sym> syms) const;

 private:
  struct VecHash {
    std::size_t operator()(const std::vector<Sym>& v) const {
      std::size_t h = 0x9e3779b97f4a7c15ull;
      for (Sym s : v) h = h * 1099511628211ull ^ static_cast<std::size_t>(s + 1);
      return h;
    }
  };

  int context_len_;
  int max_out_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Sym, std::hash<std::string>, std::equal_to<>> ids_;
  std::vector<LagRule> rules_;
  std::unordered_map<std::vector<Sym>, int, VecHash> index_;  // lhs -> rule position
  std::unordered_set<Sym> halt_;
};

// Live data of one run.  Invariant: str.size() == initial_len + appended - cursor.
struct LagState {
  std::deque<Sym> str;
  std::int64_t cursor = 0;    // iterations consumed (deleted symbols)
  std::int64_t appended = 0;  // symbols appended so far
  std::int64_t initial_len = 0;
};

LagState lag_init(std::vector<Sym> input);

enum class LagStep { Continue, HaltNoMatch, HaltSymbol };
// NoMatch doubles as the no-response reason of the decoding interpreter.
enum class LagHalt { NoMatch, HaltSymbol, Budget };

const char* to_string(LagHalt r);

// One step in place.  HaltNoMatch leaves the state untouched; HaltSymbol has
// already deleted/appended (the halt symbol is part of the final string).
LagStep lag_step(const LagSystem& sys, LagState& st);

struct LagIterRecord {
  std::int64_t iter;  // 0-based iteration index
  std::vector<Sym> ctx;
  std::vector<Sym> out;
  std::int64_t len;  // string length after the iteration
};

struct LagRunResult {
  LagState final_state;
  LagHalt reason = LagHalt::Budget;
  std::vector<LagIterRecord> trace;  // every stride-th iteration; none when stride == 0
};

LagRunResult run_lag(const LagSystem& sys, LagState start, std::int64_t max_iters,
                     int stride = 1);
LagRunResult run_lag(const LagSystem& sys, const std::vector<std::string>& input,
                     std::int64_t max_iters, int stride = 1);

// (N, K) shape of a system: K is the widest output actually present
// (1 for an empty rule set); length-preserving iff K == 1.
struct LagClass {
  int n = 0;
  int k = 0;
  bool length_preserving = false;
};

LagClass classify(const LagSystem& sys);

}  // namespace lagsim
