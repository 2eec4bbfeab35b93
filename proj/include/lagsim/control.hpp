#pragma once

// Position-control rule generators over (data, tag) pairs, plus the rotation
// laws that characterise them.
//
// A control system rewrites a circular string of pairs: every pattern ab -> c
// over tags is instantiated for all data symbols x, y as (x,a)(y,b) -> (x,c),
// so the data coordinate of the surviving pair is copied, never altered.  The
// tag alphabet steers a marker around the ring:
//
//   rp      { __->_ , _p->p , p_->_ }            marker keep-alive: p drifts one
//                                                step counterclockwise per n-1
//                                                iterations, ring period n(n-1)
//   rleft   { __->_ , _L->l , L_->_ }            L resolves to l one step
//                                                counterclockwise in n-1 iters
//   rt      rp + 6 patterns                      t seeds a w/p pair that walks
//                                                the marker clockwise; period n(n-1)
//   rright  rt + 19 patterns                     R resolves to r one step
//                                                clockwise in n(n-1)^2+n+1 iters
//
// Tags: _ p L l t w R d g z v r  (12).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lagsim/lag.hpp"

namespace lagsim {

enum class Tag : std::uint8_t { none, p, L, l, t, w, R, d, g, z, v, r };
inline constexpr int kTagCount = 12;

const char* tag_name(Tag t);  // none -> "_"

struct TagPattern {
  Tag a, b, c;  // ab -> c
};

std::span<const TagPattern> rp_patterns();      // 3
std::span<const TagPattern> rleft_patterns();   // 3
std::span<const TagPattern> rt_patterns();      // 9  (rp + 6)
std::span<const TagPattern> rright_patterns();  // 28 (rt + 19)

// Rendered pair symbol: "<data>|<tag>", e.g. "x|p", "x|_".
std::string pair_name(std::string_view data, Tag t);

// Width-2, output-1 systems instantiating the patterns over a base alphabet.
LagSystem build_rp(const std::vector<std::string>& base);
LagSystem build_rleft(const std::vector<std::string>& base);
LagSystem build_rt(const std::vector<std::string>& base);
LagSystem build_rright(const std::vector<std::string>& base);

enum class RotationLaw { LeftMove, RpPeriod, RtPeriod, RightMove };

const char* to_string(RotationLaw law);

// Closed-form completion count of a law at ring size n.
std::int64_t law_iterations(RotationLaw law, int n);

struct LawResult {
  int n = 0;
  RotationLaw law = RotationLaw::LeftMove;
  std::int64_t expected_iters = 0;
  std::int64_t matched_iter = -1;      // first iteration whose string equals the target
  std::int64_t first_divergence = -1;  // first iteration differing from a pristine run
  bool passed = false;
  std::string note;
};

struct LawReport {
  std::vector<LawResult> results;
  bool all_passed = true;
};

// Runs one law on a caller-supplied system (ring size n, data over base).
// The run is compared iteration-by-iteration against a freshly generated
// system, so a corrupted rule set reports where it first strays.  Exactness
// is checked as first-target-occurrence == expected count; the data string is
// an aperiodic necklace so no earlier rotation can alias the target.
// Requires n >= 3 and at least two base symbols.
LawResult check_law(const LagSystem& sys, RotationLaw law, int n,
                    const std::vector<std::string>& base);

// All four laws for every n in [n_lo, n_hi] on freshly built systems.
LawReport verify_rotation_laws(int n_lo, int n_hi,
                               const std::vector<std::string>& base);

}  // namespace lagsim
