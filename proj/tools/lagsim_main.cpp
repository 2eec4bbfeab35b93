// Command-line front end: compile machines into rewrite systems, run either
// side of the correspondence, and check its laws.
//
// Exit codes: 0 success / all checks pass, 1 a verification reported failures,
// 2 usage or input problems.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "lagsim/compiler.hpp"
#include "lagsim/control.hpp"
#include "lagsim/decoding.hpp"
#include "lagsim/json_io.hpp"

using namespace lagsim;

namespace {

constexpr const char* kDefaultPreamble =
    "Below is a complete rule table. Each line shows a pattern of tokens, then ->, "
    "then the tokens it produces. Given a pattern, reply with exactly the produced "
    "tokens, in order, separated by single spaces, and nothing else.";

TuringMachine load_tm(const std::string& spec) {
  if (spec == "u15_2") return build_u15_2();
  return TuringMachine(tm_spec_from_json(load_json_file(spec)));
}

LagSystem load_sys(const std::string& path) {
  return lag_from_json(load_json_file(path));
}

// Commas split on commas, otherwise whitespace splits on whitespace,
// otherwise every character is its own symbol.
std::vector<std::string> split_input(const std::string& s) {
  std::vector<std::string> parts;
  if (s.find(',') != std::string::npos) {
    std::istringstream in(s);
    std::string piece;
    while (std::getline(in, piece, ',')) {
      if (!piece.empty()) parts.push_back(piece);
    }
  } else if (s.find_first_of(" \t") != std::string::npos) {
    std::istringstream in(s);
    std::string piece;
    while (in >> piece) parts.push_back(piece);
  } else {
    for (char c : s) parts.emplace_back(1, c);
  }
  return parts;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    save_text_file(out_path, text);
  }
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

// run-lag and decode print the same shape on purpose: on the same system and
// input their outputs are byte-identical, which is the whole point.
std::string run_summary(const LagSystem& sys, const char* halt, std::int64_t iters,
                        const std::vector<Sym>& live) {
  Json j{{"halt", halt},
         {"iterations", iters},
         {"len", static_cast<std::int64_t>(live.size())},
         {"string", sys.to_names(live)}};
  return j.dump() + "\n";
}

struct Options {
  std::string tm, sys, input, out, transcript, preamble, range = "3..8";
  int i0 = 1;
  int stride = 1;
  int repeat = 1;
  std::int64_t max_iters = 10'000'000;
  std::int64_t max_steps = 100'000;
};

int cmd_compile(const Options& o) {
  CompiledSystem cs = compile(load_tm(o.tm));
  std::string system_json = pretty(lag_to_json(cs.sys));
  if (o.out.empty()) {
    emit("", system_json);
  } else {
    save_text_file(o.out, system_json);
    emit("", pretty(census_to_json(cs.census)));
  }
  return 0;
}

int cmd_run_tm(const Options& o) {
  TuringMachine tm = load_tm(o.tm);
  TapeState st = tm_init(tm, split_input(o.input), o.i0);
  TmRunResult res = run_tm(tm, std::move(st), o.max_steps, o.stride);
  std::ostringstream body;
  write_tm_trace(body, tm, res.trace);
  std::vector<std::string> memory;
  for (TapeSym s : res.final_state.memory) memory.push_back(tm.symbol_name(s));
  Json summary{{"halt", to_string(res.reason)},
               {"steps", res.final_state.steps},
               {"state", tm.state_name(res.final_state.state)},
               {"i", res.final_state.head},
               {"memory", memory}};
  body << summary.dump() << "\n";
  emit(o.out, body.str());
  return 0;
}

int cmd_run_lag(const Options& o) {
  LagSystem sys = load_sys(o.sys);
  LagRunResult res = run_lag(sys, split_input(o.input), o.max_iters, o.stride);
  std::ostringstream body;
  write_lag_trace(body, sys, res.trace);
  std::vector<Sym> live(res.final_state.str.begin(), res.final_state.str.end());
  body << run_summary(sys, to_string(res.reason), res.final_state.cursor, live);
  emit(o.out, body.str());
  return 0;
}

int cmd_decode(const Options& o) {
  LagSystem sys = load_sys(o.sys);
  DeterministicModel model = make_table_model(sys);
  DecodeResult res = ext_decode(model, sys.to_syms(split_input(o.input)),
                                sys.halt_set(), o.max_iters, o.stride);
  std::ostringstream body;
  write_lag_trace(body, sys, res.trace);
  std::vector<Sym> live(res.sequence.begin() + res.consumed, res.sequence.end());
  body << run_summary(sys, to_string(res.reason), res.consumed, live);
  emit(o.out, body.str());
  return 0;
}

int cmd_verify_equivalence(const Options& o) {
  TuringMachine tm = load_tm(o.tm);
  CompiledSystem cs = compile(tm);
  EquivalenceReport rep = verify_equivalence(tm, cs, split_input(o.input), o.i0,
                                             o.max_steps, o.max_iters);
  emit(o.out, pretty(equivalence_report_to_json(rep)));
  return rep.passed ? 0 : 1;
}

int cmd_verify_rotation(const Options& o) {
  auto [lo, hi] = parse_range(o.range);
  LawReport rep = verify_rotation_laws(lo, hi, {"0", "1"});
  emit(o.out, pretty(law_report_to_json(rep)));
  return rep.all_passed ? 0 : 1;
}

int cmd_verify_transcript(const Options& o) {
  LagSystem sys = load_sys(o.sys);
  TokenPairCodec codec = build_codec(sys);
  std::ifstream in(o.transcript);
  if (!in) throw IoError("cannot open " + o.transcript);
  Transcript t = read_transcript(in);
  VerifyReport rep = verify_transcript(sys, codec, t);
  emit(o.out, pretty(verify_report_to_json(rep)));
  return rep.failed == 0 ? 0 : 1;
}

int cmd_export_prompts(const Options& o) {
  LagSystem sys = load_sys(o.sys);
  TokenPairCodec codec = build_codec(sys);
  std::string preamble =
      o.preamble.empty() ? kDefaultPreamble : load_text_file(o.preamble);
  while (!preamble.empty() && (preamble.back() == '\n' || preamble.back() == '\r')) {
    preamble.pop_back();
  }
  emit(o.out, emit_prompt_pack(sys, codec, preamble, o.repeat));
  if (!o.transcript.empty()) {
    std::ostringstream body;
    write_transcript(body, reference_transcript(sys, codec));
    save_text_file(o.transcript, body.str());
  }
  return 0;
}

int cmd_stats(const Options& o) {
  Json j;
  if (!o.tm.empty()) {
    TuringMachine tm = load_tm(o.tm);
    int left = 0, right = 0;
    std::set<StateId> right_targets;
    for (const auto& [key, t] : tm.transitions()) {
      if (t.move < 0) ++left;
      if (t.move > 0) {
        ++right;
        right_targets.insert(t.next);
      }
    }
    j["machine"] = Json{{"states", tm.state_count()},
                        {"alphabet", tm.alphabet_size()},
                        {"transitions", static_cast<std::int64_t>(tm.transitions().size())},
                        {"halting", static_cast<std::int64_t>(tm.halting_pairs().size())},
                        {"left", left},
                        {"right", right},
                        {"rightTargets", static_cast<std::int64_t>(right_targets.size())}};
    j["compiled"] = census_to_json(compile(tm).census);
  }
  if (!o.sys.empty()) {
    LagSystem sys = load_sys(o.sys);
    LagClass cls = classify(sys);
    j["system"] = Json{{"n", cls.n},
                       {"k", cls.k},
                       {"lengthPreserving", cls.length_preserving},
                       {"rules", static_cast<std::int64_t>(sys.rules().size())},
                       {"symbols", static_cast<std::int64_t>(sys.rule_alphabet().size())},
                       {"halt", static_cast<std::int64_t>(sys.halt_set().size())}};
  }
  if (j.empty()) throw BoundsError("stats needs --tm and/or --sys");
  emit(o.out, pretty(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turing machines, (N, K) rewrite systems, and window decoding"};
  app.require_subcommand(1);
  Options o;

  auto add_tm = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--tm", o.tm, "machine: built-in name (u15_2) or JSON path");
    if (required) opt->required();
  };
  auto add_sys = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--sys", o.sys, "system JSON path");
    if (required) opt->required();
  };
  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", o.out, "output path (default: stdout)");
  };
  auto add_input = [&](CLI::App* c) {
    c->add_option("--input", o.input, "symbols: comma, space, or per-character")
        ->required();
  };

  auto* c_compile = app.add_subcommand(
      "compile", "compile a machine into its rewrite system");
  add_tm(c_compile, true);
  c_compile->add_option("--out", o.out,
                        "write the system here and print its census instead");

  auto* c_run_tm = app.add_subcommand("run-tm", "run a machine, one JSON line per step");
  add_tm(c_run_tm, true);
  add_input(c_run_tm);
  c_run_tm->add_option("--i0", o.i0, "initial head cell, 1-based (default 1)");
  c_run_tm->add_option("--max-steps", o.max_steps, "step budget (default 100000)")
      ->check(CLI::PositiveNumber);
  c_run_tm->add_option("--stride", o.stride, "record every k-th step; 0 = summary only")
      ->check(CLI::NonNegativeNumber);
  add_out(c_run_tm);

  auto* c_run_lag = app.add_subcommand(
      "run-lag", "run a rewrite system, one JSON line per iteration");
  add_sys(c_run_lag, true);
  add_input(c_run_lag);
  c_run_lag->add_option("--max-iters", o.max_iters, "iteration budget (default 10^7)")
      ->check(CLI::PositiveNumber);
  c_run_lag->add_option("--stride", o.stride, "record every k-th iteration; 0 = summary only")
      ->check(CLI::NonNegativeNumber);
  add_out(c_run_lag);

  auto* c_decode = app.add_subcommand(
      "decode", "window-decode with the rule-table model; output matches run-lag byte for byte");
  add_sys(c_decode, true);
  add_input(c_decode);
  c_decode->add_option("--max-iters", o.max_iters, "iteration budget (default 10^7)")
      ->check(CLI::PositiveNumber);
  c_decode->add_option("--stride", o.stride, "record every k-th iteration; 0 = summary only")
      ->check(CLI::NonNegativeNumber);
  add_out(c_decode);

  auto* c_veq = app.add_subcommand(
      "verify-equivalence", "machine vs compiled system: snapshots and iteration counts");
  add_tm(c_veq, true);
  add_input(c_veq);
  c_veq->add_option("--i0", o.i0, "initial head cell, 1-based (default 1)");
  c_veq->add_option("--max-steps", o.max_steps, "machine steps to verify (default 100000)")
      ->check(CLI::PositiveNumber);
  c_veq->add_option("--max-iters", o.max_iters, "iteration budget (default 10^7)")
      ->check(CLI::PositiveNumber);
  add_out(c_veq);

  auto* c_vrot = app.add_subcommand(
      "verify-rotation", "closed-form iteration counts of the four tag-rule laws");
  c_vrot->add_option("--n", o.range, "ring sizes lo..hi (default 3..8)");
  add_out(c_vrot);

  auto* c_vtr = app.add_subcommand(
      "verify-transcript", "check recorded context/response pairs against a system");
  add_sys(c_vtr, true);
  c_vtr->add_option("--transcript", o.transcript, "JSONL transcript path")->required();
  add_out(c_vtr);

  auto* c_export = app.add_subcommand(
      "export-prompts", "render a system as a plain-text rule table");
  add_sys(c_export, true);
  c_export->add_option("--preamble", o.preamble, "preamble text file (default: built-in)");
  c_export->add_option("--repeat", o.repeat, "repeat the rule block (default 1)")
      ->check(CLI::PositiveNumber);
  c_export->add_option("--transcript", o.transcript,
                       "also write the reference transcript here");
  add_out(c_export);

  auto* c_stats = app.add_subcommand("stats", "shape summary of a machine and/or system");
  add_tm(c_stats, false);
  add_sys(c_stats, false);
  add_out(c_stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_compile) return cmd_compile(o);
    if (*c_run_tm) return cmd_run_tm(o);
    if (*c_run_lag) return cmd_run_lag(o);
    if (*c_decode) return cmd_decode(o);
    if (*c_veq) return cmd_verify_equivalence(o);
    if (*c_vrot) return cmd_verify_rotation(o);
    if (*c_vtr) return cmd_verify_transcript(o);
    if (*c_export) return cmd_export_prompts(o);
    if (*c_stats) return cmd_stats(o);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
