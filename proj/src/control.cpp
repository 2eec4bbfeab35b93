#include "lagsim/control.hpp"

#include <array>

namespace lagsim {

namespace {

using enum Tag;

constexpr std::array<TagPattern, 3> kRp{{
    {none, none, none}, {none, p, p}, {p, none, none},
}};

constexpr std::array<TagPattern, 3> kRleft{{
    {none, none, none}, {none, L, l}, {L, none, none},
}};

constexpr std::array<TagPattern, 9> kRt{{
    {none, none, none}, {none, p, p}, {p, none, none},
    {none, t, p}, {none, w, none}, {t, none, w},
    {w, none, w}, {w, p, t}, {p, w, none},
}};

constexpr std::array<TagPattern, 28> kRright{{
    {none, none, none}, {none, p, p}, {p, none, none},
    {none, t, p}, {none, w, none}, {t, none, w},
    {w, none, w}, {w, p, t}, {p, w, none},
    {none, R, d}, {none, d, none}, {none, g, z},
    {none, z, p}, {none, v, v}, {none, r, none},
    {R, none, t}, {w, d, v}, {w, z, w},
    {p, d, none}, {d, none, d}, {d, t, g},
    {d, p, g}, {d, v, r}, {g, none, none},
    {g, w, none}, {z, none, d}, {v, none, none},
    {v, d, none},
}};

LagSystem instantiate(std::span<const TagPattern> patterns,
                      const std::vector<std::string>& base) {
  if (base.empty()) throw BoundsError("base alphabet must be nonempty");
  LagSystem sys(2, 1);
  for (const TagPattern& pat : patterns) {
    for (const std::string& x : base) {
      for (const std::string& y : base) {
        Sym a = sys.intern(pair_name(x, pat.a));
        Sym b = sys.intern(pair_name(y, pat.b));
        Sym c = sys.intern(pair_name(x, pat.c));
        sys.add_rule({a, b}, {c});
      }
    }
  }
  return sys;
}

}  // namespace

const char* tag_name(Tag t) {
  static constexpr const char* kNames[kTagCount] = {"_", "p", "L", "l", "t", "w",
                                                    "R", "d", "g", "z", "v", "r"};
  return kNames[static_cast<int>(t)];
}

std::span<const TagPattern> rp_patterns() { return kRp; }
std::span<const TagPattern> rleft_patterns() { return kRleft; }
std::span<const TagPattern> rt_patterns() { return kRt; }
std::span<const TagPattern> rright_patterns() { return kRright; }

std::string pair_name(std::string_view data, Tag t) {
  std::string out(data);
  out += '|';
  out += tag_name(t);
  return out;
}

LagSystem build_rp(const std::vector<std::string>& base) { return instantiate(kRp, base); }
LagSystem build_rleft(const std::vector<std::string>& base) { return instantiate(kRleft, base); }
LagSystem build_rt(const std::vector<std::string>& base) { return instantiate(kRt, base); }
LagSystem build_rright(const std::vector<std::string>& base) { return instantiate(kRright, base); }

const char* to_string(RotationLaw law) {
  switch (law) {
    case RotationLaw::LeftMove: return "left-move";
    case RotationLaw::RpPeriod: return "rp-period";
    case RotationLaw::RtPeriod: return "rt-period";
    case RotationLaw::RightMove: return "right-move";
  }
  return "?";
}

std::int64_t law_iterations(RotationLaw law, int n) {
  const std::int64_t m = n;
  switch (law) {
    case RotationLaw::LeftMove: return m - 1;
    case RotationLaw::RpPeriod:
    case RotationLaw::RtPeriod: return m * (m - 1);
    case RotationLaw::RightMove: return m * (m - 1) * (m - 1) + m + 1;
  }
  return 0;
}

namespace {

struct LawSetup {
  std::vector<std::string> initial;  // pair names, ring order
  std::vector<std::string> target;   // expected string at the completion count
};

LawSetup law_setup(RotationLaw law, int n, const std::vector<std::string>& base) {
  // Aperiodic data necklace: one base[1], everything else base[0].  Distinct
  // rotations of the ring stay distinct, so target matching is positionally
  // exact even over a two-symbol base.
  std::vector<std::string> d(n + 1);
  for (int j = 1; j <= n; ++j) d[j] = base[j == 1 ? 1 : 0];

  Tag start_tag = Tag::none;
  switch (law) {
    case RotationLaw::LeftMove: start_tag = Tag::L; break;
    case RotationLaw::RpPeriod: start_tag = Tag::p; break;
    case RotationLaw::RtPeriod: start_tag = Tag::t; break;
    case RotationLaw::RightMove: start_tag = Tag::R; break;
  }

  LawSetup s;
  s.initial.reserve(n);
  for (int j = 1; j <= n; ++j) {
    s.initial.push_back(pair_name(d[j], j == n - 1 ? start_tag : Tag::none));
  }
  switch (law) {
    case RotationLaw::LeftMove:
      // (d_n,_)(d_1,_)...(d_{n-2},l)(d_{n-1},_): the marker lands one step
      // counterclockwise of where L stood.
      s.target.push_back(pair_name(d[n], Tag::none));
      for (int j = 1; j <= n - 1; ++j) {
        s.target.push_back(pair_name(d[j], j == n - 2 ? Tag::l : Tag::none));
      }
      break;
    case RotationLaw::RpPeriod:
    case RotationLaw::RtPeriod:
      s.target = s.initial;  // ring returns to its exact start
      break;
    case RotationLaw::RightMove:
      // (d_2,_)...(d_{n-1},_)(d_n,r)(d_1,_): one step clockwise.
      for (int j = 2; j <= n; ++j) {
        s.target.push_back(pair_name(d[j], j == n ? Tag::r : Tag::none));
      }
      s.target.push_back(pair_name(d[1], Tag::none));
      break;
  }
  return s;
}

std::vector<std::string> render(const LagSystem& sys, const std::deque<Sym>& str) {
  std::vector<std::string> out;
  out.reserve(str.size());
  for (Sym s : str) out.push_back(sys.name(s));
  return out;
}

}  // namespace

LawResult check_law(const LagSystem& sys, RotationLaw law, int n,
                    const std::vector<std::string>& base) {
  if (n < 3) throw BoundsError("rotation laws need ring size n >= 3");
  if (base.size() < 2) throw BoundsError("rotation laws need >= 2 base symbols");

  LawResult res;
  res.n = n;
  res.law = law;
  res.expected_iters = law_iterations(law, n);

  const LawSetup setup = law_setup(law, n, base);

  LagSystem ref = [&] {
    switch (law) {
      case RotationLaw::LeftMove: return build_rleft(base);
      case RotationLaw::RpPeriod: return build_rp(base);
      case RotationLaw::RtPeriod: return build_rt(base);
      default: return build_rright(base);
    }
  }();

  auto init_state = [&](const LagSystem& s) {
    std::vector<Sym> syms;
    syms.reserve(setup.initial.size());
    for (const auto& name : setup.initial) {
      auto id = s.find(name);
      if (!id) throw AlphabetError("law string symbol '" + name + "' unknown to system");
      syms.push_back(*id);
    }
    return lag_init(std::move(syms));
  };

  LagState st = init_state(sys);
  LagState ref_st = init_state(ref);

  for (std::int64_t t = 1; t <= res.expected_iters; ++t) {
    LagStep r = lag_step(sys, st);
    LagStep rr = lag_step(ref, ref_st);
    if (rr != LagStep::Continue) {
      res.note = "reference run halted unexpectedly";
      return res;
    }
    if (r != LagStep::Continue) {
      res.note = "halted by no-match at iteration " + std::to_string(t);
      if (res.first_divergence < 0) res.first_divergence = t;
      return res;
    }
    auto got = render(sys, st.str);
    if (res.first_divergence < 0 && got != render(ref, ref_st.str)) {
      res.first_divergence = t;
    }
    if (res.matched_iter < 0 && got == setup.target) res.matched_iter = t;
  }
  res.passed = res.matched_iter == res.expected_iters;
  if (!res.passed && res.matched_iter < 0) res.note = "target never reached";
  if (!res.passed && res.matched_iter >= 0) res.note = "target reached off-count";
  return res;
}

LawReport verify_rotation_laws(int n_lo, int n_hi,
                               const std::vector<std::string>& base) {
  if (n_lo < 3) throw BoundsError("rotation laws need ring size n >= 3");
  if (n_hi < n_lo) throw BoundsError("empty ring-size range");
  LawReport report;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (RotationLaw law : {RotationLaw::LeftMove, RotationLaw::RpPeriod,
                            RotationLaw::RtPeriod, RotationLaw::RightMove}) {
      LagSystem sys = [&] {
        switch (law) {
          case RotationLaw::LeftMove: return build_rleft(base);
          case RotationLaw::RpPeriod: return build_rp(base);
          case RotationLaw::RtPeriod: return build_rt(base);
          default: return build_rright(base);
        }
      }();
      report.results.push_back(check_law(sys, law, n, base));
      report.all_passed = report.all_passed && report.results.back().passed;
    }
  }
  return report;
}

}  // namespace lagsim
