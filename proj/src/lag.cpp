#include "lagsim/lag.hpp"

#include <algorithm>

namespace lagsim {

LagSystem::LagSystem(int context_len, int max_out)
    : context_len_(context_len), max_out_(max_out) {
  if (context_len < 1) throw BoundsError("context length must be >= 1");
  if (max_out < 1) throw BoundsError("output width must be >= 1");
}

Sym LagSystem::intern(std::string_view name) {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  Sym id = static_cast<Sym>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<Sym> LagSystem::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void LagSystem::add_rule(std::vector<Sym> lhs, std::vector<Sym> rhs) {
  if (static_cast<int>(lhs.size()) != context_len_) {
    throw DefinitionError("rule left side must have exactly " +
                          std::to_string(context_len_) + " symbols");
  }
  if (rhs.empty()) throw DefinitionError("rule output must be nonempty");
  if (static_cast<int>(rhs.size()) > max_out_) {
    throw DefinitionError("rule output wider than " + std::to_string(max_out_));
  }
  auto bad = [&](const std::vector<Sym>& v) {
    return std::any_of(v.begin(), v.end(), [&](Sym s) {
      return s < 0 || s >= static_cast<Sym>(names_.size());
    });
  };
  if (bad(lhs) || bad(rhs)) throw DefinitionError("rule uses an uninterned symbol");
  if (index_.count(lhs)) {
    throw DefinitionError("duplicate rule for context " + to_names(lhs)[0] + " ...");
  }
  index_.emplace(lhs, static_cast<int>(rules_.size()));
  rules_.push_back({std::move(lhs), std::move(rhs)});
}

const LagRule* LagSystem::match(std::span<const Sym> ctx) const {
  if (static_cast<int>(ctx.size()) != context_len_) return nullptr;
  thread_local std::vector<Sym> key;
  key.assign(ctx.begin(), ctx.end());
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &rules_[it->second];
}

std::vector<Sym> LagSystem::rule_alphabet() const {
  std::vector<bool> seen(names_.size(), false);
  for (const auto& r : rules_) {
    for (Sym s : r.lhs) seen[s] = true;
    for (Sym s : r.rhs) seen[s] = true;
  }
  std::vector<Sym> out;
  for (Sym s = 0; s < static_cast<Sym>(seen.size()); ++s) {
    if (seen[s]) out.push_back(s);
  }
  return out;
}

std::vector<Sym> LagSystem::to_syms(const std::vector<std::string>& names) const {
  std::vector<Sym> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    auto s = find(n);
    if (!s) throw AlphabetError("symbol '" + n + "' not in this system");
    out.push_back(*s);
  }
  return out;
}

std::vector<std::string> LagSystem::to_names(std::span<const Sym> syms) const {
  std::vector<std::string> out;
  out.reserve(syms.size());
  for (Sym s : syms) out.push_back(name(s));
  return out;
}

LagState lag_init(std::vector<Sym> input) {
  LagState st;
  st.str.assign(input.begin(), input.end());
  st.initial_len = static_cast<std::int64_t>(input.size());
  return st;
}

const char* to_string(LagHalt r) {
  switch (r) {
    case LagHalt::NoMatch: return "no-match";
    case LagHalt::HaltSymbol: return "halt-symbol";
    case LagHalt::Budget: return "budget";
  }
  return "?";
}

LagStep lag_step(const LagSystem& sys, LagState& st) {
  const int n = sys.context_len();
  if (static_cast<int>(st.str.size()) < n) return LagStep::HaltNoMatch;
  thread_local std::vector<Sym> ctx;
  ctx.assign(st.str.begin(), st.str.begin() + n);
  const LagRule* rule = sys.match(ctx);
  if (rule == nullptr) return LagStep::HaltNoMatch;
  st.str.pop_front();
  ++st.cursor;
  bool halt = false;
  for (Sym s : rule->rhs) {
    st.str.push_back(s);
    ++st.appended;
    halt = halt || sys.is_halt(s);
  }
  return halt ? LagStep::HaltSymbol : LagStep::Continue;
}

LagRunResult run_lag(const LagSystem& sys, LagState start, std::int64_t max_iters,
                     int stride) {
  LagRunResult out;
  out.final_state = std::move(start);
  LagState& st = out.final_state;
  const int n = sys.context_len();
  for (std::int64_t k = 0; k < max_iters; ++k) {
    std::vector<Sym> ctx;
    bool record = stride > 0 && k % stride == 0;
    if (record && static_cast<int>(st.str.size()) >= n) {
      ctx.assign(st.str.begin(), st.str.begin() + n);
    }
    std::int64_t appended_before = st.appended;
    LagStep r = lag_step(sys, st);
    if (r == LagStep::HaltNoMatch) {
      out.reason = LagHalt::NoMatch;
      return out;
    }
    if (record) {
      std::vector<Sym> produced(st.str.end() - (st.appended - appended_before),
                                st.str.end());
      out.trace.push_back({k, std::move(ctx), std::move(produced),
                           static_cast<std::int64_t>(st.str.size())});
    }
    if (r == LagStep::HaltSymbol) {
      out.reason = LagHalt::HaltSymbol;
      return out;
    }
  }
  out.reason = LagHalt::Budget;
  return out;
}

LagRunResult run_lag(const LagSystem& sys, const std::vector<std::string>& input,
                     std::int64_t max_iters, int stride) {
  return run_lag(sys, lag_init(sys.to_syms(input)), max_iters, stride);
}

LagClass classify(const LagSystem& sys) {
  LagClass c;
  c.n = sys.context_len();
  c.k = 1;
  for (const auto& r : sys.rules()) {
    c.k = std::max(c.k, static_cast<int>(r.rhs.size()));
  }
  c.length_preserving = c.k == 1;
  return c;
}

}  // namespace lagsim
