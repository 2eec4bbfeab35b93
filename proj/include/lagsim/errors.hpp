#pragma once

#include <stdexcept>
#include <string>

namespace lagsim {

// Bad machine/system/model definitions: conflicting rules, dangling state
// names, empty outputs, oversized outputs.
struct DefinitionError : std::runtime_error {
  explicit DefinitionError(const std::string& what) : std::runtime_error(what) {}
};

// A symbol that is not part of the alphabet it is used against.
struct AlphabetError : DefinitionError {
  explicit AlphabetError(const std::string& what) : DefinitionError(what) {}
};

// Out-of-range arguments: head positions, size ranges, iteration ranges.
struct BoundsError : std::runtime_error {
  explicit BoundsError(const std::string& what) : std::runtime_error(what) {}
};

// Token-pair mapping problems: alphabet too large, symbol not covered,
// undecodable token sequence.
struct CodecError : std::runtime_error {
  explicit CodecError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input files: JSON shape, trace records, transcript lines.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// File system problems: unreadable or unwritable paths.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lagsim
