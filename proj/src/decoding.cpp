#include "lagsim/decoding.hpp"

#include <algorithm>
#include <sstream>

namespace lagsim {

DecodeResult ext_decode(const DeterministicModel& model, std::vector<Sym> input,
                        const std::unordered_set<Sym>& halt, std::int64_t max_iters,
                        int stride) {
  const int n = model.context_len;
  if (static_cast<int>(input.size()) < n) {
    throw BoundsError("input shorter than the model context");
  }
  DecodeResult out;
  out.sequence = std::move(input);
  auto& s = out.sequence;
  for (std::int64_t k = 0; k < max_iters; ++k) {
    std::span<const Sym> ctx(s.data() + out.consumed, static_cast<std::size_t>(n));
    auto resp = model.respond(ctx);
    if (!resp) {
      out.reason = LagHalt::NoMatch;
      return out;
    }
    if (resp->empty() || static_cast<int>(resp->size()) > model.max_out) {
      throw DefinitionError("model response must have 1.." +
                            std::to_string(model.max_out) + " symbols");
    }
    const bool record = stride > 0 && k % stride == 0;
    std::vector<Sym> ctx_copy;
    if (record) ctx_copy.assign(ctx.begin(), ctx.end());
    // appending may reallocate: ctx is dead past this point
    bool halted = false;
    for (Sym sym : *resp) {
      s.push_back(sym);
      halted = halted || halt.count(sym) != 0;
    }
    out.appended += static_cast<std::int64_t>(resp->size());
    ++out.consumed;
    if (record) {
      out.trace.push_back({k, std::move(ctx_copy), std::move(*resp),
                           static_cast<std::int64_t>(s.size()) - out.consumed});
    }
    if (halted) {
      out.reason = LagHalt::HaltSymbol;
      return out;
    }
  }
  out.reason = LagHalt::Budget;
  return out;
}

DeterministicModel make_table_model(const LagSystem& sys) {
  DeterministicModel m;
  m.context_len = sys.context_len();
  m.max_out = sys.max_out();
  m.respond = [&sys](std::span<const Sym> ctx) -> std::optional<std::vector<Sym>> {
    const LagRule* rule = sys.match(ctx);
    if (rule == nullptr) return std::nullopt;
    return rule->rhs;
  };
  return m;
}

void TokenPairCodec::bind(Sym s, std::string first, std::string second) {
  std::pair<std::string, std::string> tok{std::move(first), std::move(second)};
  if (fwd_.count(s) || bwd_.count(tok)) {
    throw CodecError("codec binding collides for symbol id " + std::to_string(s));
  }
  bwd_.emplace(tok, s);
  fwd_.emplace(s, std::move(tok));
}

const std::pair<std::string, std::string>& TokenPairCodec::encode(Sym s) const {
  auto it = fwd_.find(s);
  if (it == fwd_.end()) throw CodecError("symbol id " + std::to_string(s) + " not covered");
  return it->second;
}

std::optional<Sym> TokenPairCodec::decode(std::string_view first,
                                          std::string_view second) const {
  auto it = bwd_.find(std::pair(std::string(first), std::string(second)));
  if (it == bwd_.end()) return std::nullopt;
  return it->second;
}

TokenPairCodec build_codec(const LagSystem& sys) {
  std::vector<Sym> alphabet = sys.rule_alphabet();
  std::sort(alphabet.begin(), alphabet.end(), [&](Sym a, Sym b) {
    return sys.name(a) < sys.name(b);
  });
  if (alphabet.size() > 26 * 26) {
    throw CodecError("alphabet of " + std::to_string(alphabet.size()) +
                     " symbols exceeds the 676 token-pair capacity");
  }
  TokenPairCodec codec;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    codec.bind(alphabet[i], std::string(1, static_cast<char>('A' + i / 26)),
               std::string(1, static_cast<char>('a' + i % 26)));
  }
  return codec;
}

std::string emit_prompt_pack(const LagSystem& sys, const TokenPairCodec& codec,
                             std::string_view preamble, int repeat) {
  if (repeat < 1) throw BoundsError("repeat count must be >= 1");
  std::string block;
  for (const LagRule& rule : sys.rules()) {
    std::string line;
    for (Sym s : rule.lhs) {
      const auto& [a, b] = codec.encode(s);
      line += a; line += ' '; line += b; line += ' ';
    }
    line += "->";
    for (Sym s : rule.rhs) {
      const auto& [a, b] = codec.encode(s);
      line += ' '; line += a; line += ' '; line += b;
    }
    line += '\n';
    block += line;
  }
  std::string out(preamble);
  out += "\n\n";
  for (int i = 0; i < repeat; ++i) out += block;
  return out;
}

std::vector<LagRule> parse_rule_lines(const TokenPairCodec& codec,
                                      std::string_view pack_text) {
  std::vector<LagRule> out;
  std::istringstream in{std::string(pack_text)};
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto arrow = line.find("->");
    if (arrow == std::string::npos) continue;
    auto tokens_of = [&](std::string_view part) {
      std::vector<std::string> toks;
      std::istringstream ts{std::string(part)};
      std::string t;
      while (ts >> t) toks.push_back(t);
      return toks;
    };
    auto decode_side = [&](const std::vector<std::string>& toks, const char* side) {
      if (toks.size() % 2 != 0 || toks.empty()) {
        throw ParseError("line " + std::to_string(lineno) + ": odd " + side +
                         " token count");
      }
      std::vector<Sym> syms;
      for (std::size_t i = 0; i < toks.size(); i += 2) {
        auto s = codec.decode(toks[i], toks[i + 1]);
        if (!s) {
          throw CodecError("line " + std::to_string(lineno) + ": undecodable pair '" +
                           toks[i] + " " + toks[i + 1] + "'");
        }
        syms.push_back(*s);
      }
      return syms;
    };
    LagRule rule;
    rule.lhs = decode_side(tokens_of(line.substr(0, arrow)), "context");
    rule.rhs = decode_side(tokens_of(line.substr(arrow + 2)), "output");
    out.push_back(std::move(rule));
  }
  return out;
}

Transcript reference_transcript(const LagSystem& sys, const TokenPairCodec& codec) {
  Transcript t;
  t.reserve(sys.rules().size());
  for (const LagRule& rule : sys.rules()) {
    TranscriptRecord rec;
    for (Sym s : rule.lhs) {
      const auto& [a, b] = codec.encode(s);
      rec.context.push_back(a);
      rec.context.push_back(b);
    }
    for (Sym s : rule.rhs) {
      const auto& [a, b] = codec.encode(s);
      rec.response.push_back(a);
      rec.response.push_back(b);
    }
    t.push_back(std::move(rec));
  }
  return t;
}

VerifyReport verify_transcript(const LagSystem& sys, const TokenPairCodec& codec,
                               const Transcript& transcript) {
  VerifyReport rep;
  std::unordered_set<const LagRule*> exercised;
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    const TranscriptRecord& rec = transcript[i];
    auto decode_tokens = [&](const std::vector<std::string>& toks, const char* side) {
      if (toks.size() % 2 != 0 || toks.empty()) {
        throw CodecError("record " + std::to_string(i) + ": odd " + side +
                         " token count");
      }
      std::vector<Sym> syms;
      for (std::size_t j = 0; j < toks.size(); j += 2) {
        auto s = codec.decode(toks[j], toks[j + 1]);
        if (!s) {
          throw CodecError("record " + std::to_string(i) + ": undecodable pair '" +
                           toks[j] + " " + toks[j + 1] + "' in " + side);
        }
        syms.push_back(*s);
      }
      return syms;
    };
    std::vector<Sym> ctx = decode_tokens(rec.context, "context");
    std::vector<Sym> resp = decode_tokens(rec.response, "response");
    const LagRule* rule = sys.match(ctx);
    if (rule == nullptr) {
      rep.failed += 1;
      rep.mismatches.push_back({static_cast<std::int64_t>(i), "unknown-context",
                                "no rule for this context"});
      continue;
    }
    exercised.insert(rule);
    if (resp == rule->rhs) {
      rep.passed += 1;
    } else {
      rep.failed += 1;
      std::string want;
      for (Sym s : rule->rhs) {
        const auto& [a, b] = codec.encode(s);
        if (!want.empty()) want += ' ';
        want += a + " " + b;
      }
      std::string ctx_names;
      for (Sym s : rule->lhs) {
        if (!ctx_names.empty()) ctx_names += ' ';
        ctx_names += sys.name(s);
      }
      rep.mismatches.push_back({static_cast<std::int64_t>(i), "response-mismatch",
                                "expected '" + want + "' for context [" + ctx_names +
                                    "]"});
    }
  }
  rep.coverage = sys.rules().empty()
                     ? 0.0
                     : static_cast<double>(exercised.size()) /
                           static_cast<double>(sys.rules().size());
  return rep;
}

}  // namespace lagsim
