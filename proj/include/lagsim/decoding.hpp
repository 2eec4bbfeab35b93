#pragma once

// Extended autoregressive decoding over a Lag system's alphabet, the
// token-pair codec for rendering symbols as letter pairs, plain-text prompt
// packs, and transcript verification against a rule map.
//
// The decoder keeps the whole generated sequence and slides a fixed window
// over it: at iteration k the context is sequence[k .. k+N), the model's
// response (1..K symbols) is appended at the end, and the run halts when the
// model gives no response, when a response symbol is in the halt set, or when
// the budget runs out.  Step for step this matches the Lag interpreter run on
// the same rules: the Lag string at any point is exactly the still-live
// suffix sequence[k ..].

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lagsim/lag.hpp"

namespace lagsim {

struct DeterministicModel {
  int context_len = 2;
  int max_out = 2;
  // nullopt = no response (the implicit halt); otherwise 1..max_out symbols.
  std::function<std::optional<std::vector<Sym>>(std::span<const Sym>)> respond;
};

struct DecodeResult {
  std::vector<Sym> sequence;  // input plus everything appended
  std::int64_t consumed = 0;  // iterations executed (window offset)
  std::int64_t appended = 0;
  LagHalt reason = LagHalt::Budget;
  std::vector<LagIterRecord> trace;  // len = live-suffix length, as in run_lag
};

// Requires |input| >= context_len.  Responses outside 1..max_out are a
// definition error (malformed model), never truncated.
DecodeResult ext_decode(const DeterministicModel& model, std::vector<Sym> input,
                        const std::unordered_set<Sym>& halt, std::int64_t max_iters,
                        int stride = 1);

// Model that answers by rule lookup in the given system and stays silent on
// unknown contexts.  Holds a reference; keep the system alive.
DeterministicModel make_table_model(const LagSystem& sys);

// Symbol <-> (TOKEN, token) pair mapping.  A codec is any bijection; the
// canonical one sorts the rule alphabet by name and maps index i to
// (UPPER[i / 26], lower[i % 26]), capacity 26*26 = 676.
class TokenPairCodec {
 public:
  void bind(Sym s, std::string first, std::string second);
  const std::pair<std::string, std::string>& encode(Sym s) const;
  std::optional<Sym> decode(std::string_view first, std::string_view second) const;
  std::size_t size() const { return fwd_.size(); }

 private:
  std::unordered_map<Sym, std::pair<std::string, std::string>> fwd_;
  std::map<std::pair<std::string, std::string>, Sym> bwd_;
};

TokenPairCodec build_codec(const LagSystem& sys);

// One rule per line: context tokens, "->", output tokens, single spaces.
// The pack is the preamble, a blank line, then the rule lines (the block
// repeated `repeat` times), trailing newline.  Line order follows the
// system's stored rule order.
std::string emit_prompt_pack(const LagSystem& sys, const TokenPairCodec& codec,
                             std::string_view preamble, int repeat = 1);

// Reads rule lines (any line containing "->") back into symbol form.
std::vector<LagRule> parse_rule_lines(const TokenPairCodec& codec,
                                      std::string_view pack_text);

struct TranscriptRecord {
  std::vector<std::string> context;   // 2N tokens
  std::vector<std::string> response;  // 2..2K tokens
};
using Transcript = std::vector<TranscriptRecord>;

// One record per rule, in stored rule order: what a perfect responder replies.
Transcript reference_transcript(const LagSystem& sys, const TokenPairCodec& codec);

struct TranscriptMismatch {
  std::int64_t record = 0;
  std::string kind;  // "response-mismatch" | "unknown-context"
  std::string detail;
};

struct VerifyReport {
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  double coverage = 0.0;  // distinct rules exercised / rule count
  std::vector<TranscriptMismatch> mismatches;
};

// Decodes every record and compares the response against the rule map.
// Undecodable tokens raise CodecError naming the record; that is malformed
// input, not a verification failure.
VerifyReport verify_transcript(const LagSystem& sys, const TokenPairCodec& codec,
                               const Transcript& transcript);

}  // namespace lagsim
