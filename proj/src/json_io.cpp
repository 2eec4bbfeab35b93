#include "lagsim/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace lagsim {

Json tm_to_json(const TuringMachine& tm) {
  Json j;
  Json states = Json::array();
  for (StateId q = 0; q < tm.state_count(); ++q) states.push_back(tm.state_name(q));
  Json alphabet = Json::array();
  for (TapeSym s = 0; s < tm.alphabet_size(); ++s) alphabet.push_back(tm.symbol_name(s));
  j["states"] = std::move(states);
  j["alphabet"] = std::move(alphabet);
  j["blank"] = tm.symbol_name(tm.blank());
  j["start"] = tm.state_name(tm.start_state());
  Json halting = Json::array();
  for (const auto& [q, s] : tm.halting_pairs()) {
    halting.push_back(Json::array({tm.state_name(q), tm.symbol_name(s)}));
  }
  j["halting"] = std::move(halting);
  Json rows = Json::array();
  for (const auto& [key, t] : tm.transitions()) {
    rows.push_back({{"state", tm.state_name(key.first)},
                    {"read", tm.symbol_name(key.second)},
                    {"write", tm.symbol_name(t.write)},
                    {"move", t.move},
                    {"next", tm.state_name(t.next)}});
  }
  j["transitions"] = std::move(rows);
  return j;
}

TmSpec tm_spec_from_json(const Json& j) {
  TmSpec spec;
  try {
    spec.states = j.at("states").get<std::vector<std::string>>();
    spec.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    spec.blank = j.at("blank").get<std::string>();
    spec.start = j.at("start").get<std::string>();
    for (const Json& pair : j.at("halting")) {
      spec.halting.emplace_back(pair.at(0).get<std::string>(),
                                pair.at(1).get<std::string>());
    }
    for (const Json& row : j.at("transitions")) {
      TmSpec::Row r;
      r.state = row.at("state").get<std::string>();
      r.read = row.at("read").get<std::string>();
      r.write = row.at("write").get<std::string>();
      r.move = row.at("move").get<int>();
      r.next = row.at("next").get<std::string>();
      spec.transitions.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("machine definition: ") + e.what());
  }
  return spec;
}

Json lag_to_json(const LagSystem& sys) {
  Json j;
  j["n"] = sys.context_len();
  j["k"] = sys.max_out();
  std::vector<std::string> halt;
  for (Sym s : sys.halt_set()) halt.push_back(sys.name(s));
  std::sort(halt.begin(), halt.end());
  j["halt"] = halt;
  Json rules = Json::array();
  for (const LagRule& r : sys.rules()) {
    rules.push_back({{"lhs", sys.to_names(r.lhs)}, {"rhs", sys.to_names(r.rhs)}});
  }
  j["rules"] = std::move(rules);
  return j;
}

LagSystem lag_from_json(const Json& j) {
  try {
    LagSystem sys(j.at("n").get<int>(), j.at("k").get<int>());
    for (const Json& rule : j.at("rules")) {
      std::vector<Sym> lhs, rhs;
      for (const Json& name : rule.at("lhs")) {
        lhs.push_back(sys.intern(name.get<std::string>()));
      }
      for (const Json& name : rule.at("rhs")) {
        rhs.push_back(sys.intern(name.get<std::string>()));
      }
      sys.add_rule(std::move(lhs), std::move(rhs));
    }
    if (j.contains("halt")) {
      for (const Json& name : j.at("halt")) {
        sys.add_halt(sys.intern(name.get<std::string>()));
      }
    }
    return sys;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("system definition: ") + e.what());
  }
}

Json census_to_json(const Census& c) {
  Json families = Json::object();
  for (const auto& [key, count] : c.families) families[key] = count;
  return Json{{"rules", c.rules},
              {"symbols", c.symbols},
              {"pairRules", c.pair_rules},
              {"families", std::move(families)}};
}

Json law_report_to_json(const LawReport& rep) {
  Json results = Json::array();
  for (const LawResult& r : rep.results) {
    results.push_back({{"n", r.n},
                       {"law", to_string(r.law)},
                       {"expected", r.expected_iters},
                       {"matched", r.matched_iter},
                       {"firstDivergence", r.first_divergence},
                       {"passed", r.passed},
                       {"note", r.note}});
  }
  return Json{{"allPassed", rep.all_passed}, {"results", std::move(results)}};
}

Json equivalence_report_to_json(const EquivalenceReport& rep) {
  Json gaps = Json::array();
  for (const GapRecord& g : rep.gaps) {
    gaps.push_back({{"k", g.k},
                    {"fromIter", g.iter_from},
                    {"toIter", g.iter_to},
                    {"expected", g.expected},
                    {"observed", g.observed},
                    {"move", std::string(1, g.move)},
                    {"gapOk", g.gap_ok},
                    {"snapshotOk", g.snapshot_ok}});
  }
  return Json{{"passed", rep.passed},
              {"verifiedSteps", rep.verified_steps},
              {"machineHalt", to_string(rep.oracle_reason)},
              {"haltMatched", rep.halt_matched},
              {"checkpoints", rep.points},
              {"iterations", rep.lag_iters},
              {"note", rep.note},
              {"gaps", std::move(gaps)}};
}

Json verify_report_to_json(const VerifyReport& rep) {
  Json mismatches = Json::array();
  for (const TranscriptMismatch& m : rep.mismatches) {
    mismatches.push_back(
        {{"record", m.record}, {"kind", m.kind}, {"detail", m.detail}});
  }
  return Json{{"passed", rep.passed},
              {"failed", rep.failed},
              {"coverage", rep.coverage},
              {"mismatches", std::move(mismatches)}};
}

void write_tm_trace(std::ostream& out, const TuringMachine& tm,
                    const std::vector<TmStepRecord>& trace) {
  for (const TmStepRecord& r : trace) {
    Json line{{"k", r.k},
              {"q", tm.state_name(r.q)},
              {"i", r.head},
              {"write", tm.symbol_name(r.write)},
              {"len", r.len}};
    out << line.dump() << '\n';
  }
}

void write_lag_trace(std::ostream& out, const LagSystem& sys,
                     const std::vector<LagIterRecord>& trace) {
  for (const LagIterRecord& r : trace) {
    Json line{{"iter", r.iter},
              {"ctx", sys.to_names(r.ctx)},
              {"out", sys.to_names(r.out)},
              {"len", r.len}};
    out << line.dump() << '\n';
  }
}

void write_transcript(std::ostream& out, const Transcript& t) {
  for (const TranscriptRecord& rec : t) {
    Json line{{"context", rec.context}, {"response", rec.response}};
    out << line.dump() << '\n';
  }
}

Transcript read_transcript(std::istream& in) {
  Transcript t;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Json j = Json::parse(line);
      TranscriptRecord rec;
      rec.context = j.at("context").get<std::vector<std::string>>();
      rec.response = j.at("response").get<std::vector<std::string>>();
      t.push_back(std::move(rec));
    } catch (const Json::exception& e) {
      throw ParseError("transcript line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return t;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string load_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void save_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace lagsim
