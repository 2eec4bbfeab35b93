#pragma once

// JSON (de)serialization for machines, rewrite systems, reports and traces,
// plus the JSONL transcript format.  Ordered JSON throughout, so emitted
// files are byte-stable across runs.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lagsim/compiler.hpp"
#include "lagsim/control.hpp"
#include "lagsim/decoding.hpp"
#include "lagsim/lag.hpp"
#include "lagsim/machine.hpp"

namespace lagsim {

using Json = nlohmann::ordered_json;

// {"states", "alphabet", "blank", "start", "halting": [[state, read]...],
//  "transitions": [{"state", "read", "write", "move": +-1, "next"}...]}
Json tm_to_json(const TuringMachine& tm);
TmSpec tm_spec_from_json(const Json& j);

// {"n", "k", "halt": [names], "rules": [{"lhs": [names], "rhs": [names]}...]}
// "halt" may be omitted when empty.
Json lag_to_json(const LagSystem& sys);
LagSystem lag_from_json(const Json& j);

Json census_to_json(const Census& c);
Json law_report_to_json(const LawReport& rep);
Json equivalence_report_to_json(const EquivalenceReport& rep);
Json verify_report_to_json(const VerifyReport& rep);

// JSONL, one object per line.
// Machine steps: {"k", "q", "i", "write", "len"}.
void write_tm_trace(std::ostream& out, const TuringMachine& tm,
                    const std::vector<TmStepRecord>& trace);
// Rewrite / decode iterations: {"iter", "ctx", "out", "len"}.
void write_lag_trace(std::ostream& out, const LagSystem& sys,
                     const std::vector<LagIterRecord>& trace);

// JSONL transcripts: {"context": [tokens], "response": [tokens]}.
void write_transcript(std::ostream& out, const Transcript& t);
Transcript read_transcript(std::istream& in);

Json load_json_file(const std::string& path);
std::string load_text_file(const std::string& path);
void save_text_file(const std::string& path, std::string_view text);

}  // namespace lagsim
