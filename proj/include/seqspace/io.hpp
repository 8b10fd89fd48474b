#pragma once

// JSON encoding of sequences, specs and reports ("schema": "seqspace/1").
// Every number that carries a value is a decimal string; plain JSON
// integers appear only for sizes, indices and counters.

#include <string>
#include <vector>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include "verify.hpp"

namespace seqspace {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "seqspace/1";

/// Malformed JSON input; `pointer` names the offending field.
class JsonError : public InvalidInput {
 public:
  JsonError(std::string pointer, const std::string& what)
      : InvalidInput((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw JsonError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(child(path, key), "missing field");
  return *it;
}

inline const Json& array_at(const Json& j, const std::string& path, std::size_t n = 0) {
  if (!j.is_array()) throw JsonError(path, "expected an array");
  if (n && j.size() != n) throw JsonError(path, "expected " + std::to_string(n) + " elements");
  return j;
}

/// Rationals come as decimal strings; integer literals are tolerated,
/// floating-point literals are not (they have already lost digits).
inline Rational read_rational(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(parse_bigint(j.dump()));
  } catch (const InvalidInput& e) {
    throw JsonError(path, e.what());
  }
  if (j.is_number_float()) throw JsonError(path, "floating-point literal; write the value as a decimal string");
  throw JsonError(path, "expected a decimal string");
}

inline BigInt read_integer(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    if (j.is_number_integer()) return parse_bigint(j.dump());
  } catch (const InvalidInput& e) {
    throw JsonError(path, e.what());
  }
  throw JsonError(path, "expected an integer");
}

inline unsigned long read_small(const Json& j, const std::string& path, unsigned long max) {
  BigInt v = read_integer(j, path);
  if (v < 0 || v > max) throw JsonError(path, "out of range [0, " + std::to_string(max) + "]");
  return v.get_ui();
}

inline std::vector<Rational> read_values(const Json& j, const std::string& path) {
  array_at(j, path);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_rational(j[i], child(path, i)));
  return out;
}

inline Json values_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(format_rational(q));
  return a;
}

/// Indices stay JSON integers while they fit, as in the schema.
inline Json index_json(const BigInt& n) {
  if (n.fits_ulong_p()) return Json(n.get_ui());
  return Json(n.get_str());
}

template <class F>
auto rethrow_at(const std::string& path, F fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const JsonError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw JsonError(path, e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sequences

inline Json to_json(const Sequence& x) {
  Json j;
  j["kind"] = kind_name(x.kind());
  switch (x.kind()) {
    case Kind::catalog: {
      const auto& h = x.harmonic_params();
      j["name"] = "harmonic";
      if (h.scale != 1) j["scale"] = format_rational(h.scale);
      if (h.offset != 0) j["offset"] = h.offset.get_str();
      break;
    }
    case Kind::finite: {
      Json e = Json::array();
      for (const auto& [n, v] : x.nonzero_entries()) e.push_back(Json::array({detail::index_json(n), format_rational(v)}));
      j["entries"] = e;
      break;
    }
    case Kind::blocks: {
      Json b = Json::array();
      for (const auto& r : x.runs().head) b.push_back(Json::array({format_rational(r.pattern[0]), r.repeat.get_str()}));
      j["blocks"] = b;
      const Rational& t = x.runs().cycle[0];
      j["tail"] = t == 0 ? Json("zero") : Json::array({"const", format_rational(t)});
      break;
    }
    case Kind::periodic: j["pattern"] = detail::values_json(x.runs().cycle); break;
    case Kind::rle: {
      Json runs = Json::array();
      for (const auto& r : x.runs().head) runs.push_back({{"pattern", detail::values_json(r.pattern)}, {"repeat", r.repeat.get_str()}});
      j["runs"] = runs;
      j["cycle"] = detail::values_json(x.runs().cycle);
      break;
    }
  }
  return j;
}

inline Sequence sequence_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  const std::string kind = [&] {
    const Json& k = field(j, path, "kind");
    if (!k.is_string()) throw JsonError(child(path, "kind"), "expected a string");
    return k.get<std::string>();
  }();
  if (kind == "finite") {
    const std::string ep = child(path, "entries");
    const Json& e = array_at(field(j, path, "entries"), ep);
    std::vector<std::pair<BigInt, Rational>> entries;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string p = child(ep, i);
      array_at(e[i], p, 2);
      BigInt n = read_integer(e[i][0], child(p, 0));
      if (n < 1) throw JsonError(child(p, 0), "indices start at 1");
      if (!entries.empty() && n <= entries.back().first) throw JsonError(child(p, 0), "indices must be strictly increasing");
      Rational v = read_rational(e[i][1], child(p, 1));
      if (v == 0) throw JsonError(child(p, 1), "finite entries must be nonzero");
      entries.emplace_back(n, v);
    }
    return rethrow_at(ep, [&] { return Sequence::finite(entries); });
  }
  if (kind == "blocks") {
    const std::string bp = child(path, "blocks");
    const Json& b = array_at(field(j, path, "blocks"), bp);
    std::vector<std::pair<Rational, BigInt>> blocks;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string p = child(bp, i);
      array_at(b[i], p, 2);
      Rational v = read_rational(b[i][0], child(p, 0));
      BigInt c = read_integer(b[i][1], child(p, 1));
      if (c < 1) throw JsonError(child(p, 1), "block counts must be >= 1");
      blocks.emplace_back(v, c);
    }
    std::optional<Rational> tail;
    if (j.contains("tail")) {
      const Json& t = j["tail"];
      const std::string tp = child(path, "tail");
      if (t.is_string() && t.get<std::string>() == "zero") {
      } else if (t.is_array() && t.size() == 2 && t[0] == "const") {
        tail = read_rational(t[1], child(tp, 1));
      } else {
        throw JsonError(tp, "expected \"zero\" or [\"const\", value]");
      }
    }
    return rethrow_at(bp, [&] { return Sequence::blocks(blocks, tail); });
  }
  if (kind == "periodic") {
    const std::string pp = child(path, "pattern");
    auto v = read_values(field(j, path, "pattern"), pp);
    return rethrow_at(pp, [&] { return Sequence::periodic(v); });
  }
  if (kind == "rle") {
    const std::string rp = child(path, "runs");
    const Json& runs = array_at(field(j, path, "runs"), rp);
    RunForm f;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const std::string p = child(rp, i);
      Run r{read_values(field(runs[i], p, "pattern"), child(p, "pattern")), read_integer(field(runs[i], p, "repeat"), child(p, "repeat"))};
      if (r.pattern.empty()) throw JsonError(child(p, "pattern"), "run pattern must be nonempty");
      if (r.repeat < 1) throw JsonError(child(p, "repeat"), "run repeat must be >= 1");
      f.head.push_back(std::move(r));
    }
    f.cycle = read_values(field(j, path, "cycle"), child(path, "cycle"));
    if (f.cycle.empty()) throw JsonError(child(path, "cycle"), "cycle must be nonempty");
    return rethrow_at(path, [&] { return Sequence::from_runs(std::move(f), Kind::rle); });
  }
  if (kind == "catalog") {
    const Json& name = field(j, path, "name");
    if (name != "harmonic") throw JsonError(child(path, "name"), "unknown catalog entry (only \"harmonic\")");
    Rational s = j.contains("scale") ? read_rational(j["scale"], child(path, "scale")) : Rational(1);
    BigInt k = j.contains("offset") ? read_integer(j["offset"], child(path, "offset")) : BigInt(0);
    return rethrow_at(path, [&] { return Sequence::harmonic(s, k); });
  }
  throw JsonError(child(path, "kind"), "unknown sequence kind '" + kind + "'");
}

/// Squares w_1..w_m of a finite sequence given by its items' square roots:
/// {"kind":"roots","squares":["1","1/2",...]} stands for (sqrt w_1, sqrt w_2, ...).
inline bool is_roots_json(const Json& j) { return j.is_object() && j.contains("kind") && j["kind"] == "roots"; }

inline std::vector<Rational> roots_from_json(const Json& j, const std::string& path = "") {
  auto w = detail::read_values(detail::field(j, path, "squares"), detail::child(path, "squares"));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0) throw JsonError(detail::child(detail::child(path, "squares"), i), "squares must be >= 0");
  }
  return w;
}

// ---------------------------------------------------------------------------
// Specs

inline Json to_json(const PsiSpec& psi) {
  if (psi.is_log()) return {{"family", "log"}, {"base", psi.natural() ? std::string("e") : format_rational(*psi.base)}};
  return {{"family", "table"}, {"values", detail::values_json(psi.values)}};
}

inline PsiSpec psi_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  const Json& fam = field(j, path, "family");
  if (fam == "log") {
    if (!j.contains("base") || j["base"] == "e") return PsiSpec::natural_log();
    Rational b = read_rational(j["base"], child(path, "base"));
    return rethrow_at(child(path, "base"), [&] { return PsiSpec::log_base(b); });
  }
  if (fam == "table") {
    auto v = read_values(field(j, path, "values"), child(path, "values"));
    return rethrow_at(child(path, "values"), [&] { return PsiSpec::table(v); });
  }
  throw JsonError(child(path, "family"), "expected \"log\" or \"table\"");
}

/// Psi from a command-line token: "log:e", "log:2", or a path-free table "table:1,2,3".
inline PsiSpec parse_psi(const std::string& s) {
  if (s == "e" || s == "log" || s == "log:e" || s == "ln") return PsiSpec::natural_log();
  if (s.rfind("log:", 0) == 0) return PsiSpec::log_base(parse_rational(s.substr(4)));
  if (s.rfind("table:", 0) == 0) {
    std::vector<Rational> v;
    std::stringstream in(s.substr(6));
    for (std::string item; std::getline(in, item, ',');) v.push_back(parse_rational(item));
    return PsiSpec::table(std::move(v));
  }
  throw InvalidInput("unknown Psi '" + s + "' (use log:e, log:<base> or table:v1,v2,...)");
}

inline Json to_json(const SpaceSpec& s) {
  using V = SpaceSpec::Variant;
  switch (s.variant) {
    case V::lp: return {{"space", "lp"}, {"p", format_rational(s.p)}};
    case V::linf: return {{"space", "linf"}};
    case V::wl1: return {{"space", "wl1"}, {"weights", to_json(s.weights)}};
    case V::marcinkiewicz: return {{"space", "marcinkiewicz"}, {"psi", to_json(s.psi)}};
    case V::garling: return {{"space", "garling"}};
  }
  return {};
}

inline SpaceSpec space_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  const Json& kind = field(j, path, "space");
  if (kind == "lp") {
    Rational p = read_rational(field(j, path, "p"), child(path, "p"));
    return rethrow_at(child(path, "p"), [&] { return SpaceSpec::lp(p); });
  }
  if (kind == "linf") return SpaceSpec::linf();
  if (kind == "wl1") {
    Sequence w = sequence_from_json(field(j, path, "weights"), child(path, "weights"));
    return rethrow_at(child(path, "weights"), [&] { return SpaceSpec::weighted_l1(w); });
  }
  if (kind == "marcinkiewicz") return SpaceSpec::marcinkiewicz(psi_from_json(field(j, path, "psi"), child(path, "psi")));
  if (kind == "garling") return SpaceSpec::garling();
  throw JsonError(child(path, "space"), "unknown space");
}

/// Space from a command-line token: "lp:2", "linf", "marcinkiewicz:log:2",
/// "garling", "wl1:half" (w_1 = 1/2, w_n = 1 otherwise).
inline SpaceSpec parse_space(const std::string& s, const PsiSpec& default_psi) {
  if (s == "linf") return SpaceSpec::linf();
  if (s == "garling") return SpaceSpec::garling();
  if (s == "wl1:half" || s == "wl1") return half_first_weight_space();
  if (s.rfind("lp:", 0) == 0) return SpaceSpec::lp(parse_rational(s.substr(3)));
  if (s == "marcinkiewicz" || s == "m") return SpaceSpec::marcinkiewicz(default_psi);
  if (s.rfind("marcinkiewicz:", 0) == 0) return SpaceSpec::marcinkiewicz(parse_psi(s.substr(14)));
  throw InvalidInput("unknown space '" + s + "' (use lp:<p>, linf, wl1, marcinkiewicz[:<psi>], garling)");
}

inline Json to_json(const EstimatorSpec& e) {
  Json j{{"method", method_name(e.method)}, {"window", std::to_string(e.window)}, {"offset", e.offset.get_str()}};
  if (e.method == EstimatorSpec::Method::iterated_cesaro) j["depth"] = e.depth;
  if (e.method == EstimatorSpec::Method::dilation_averaged) j["stages"] = e.stages;
  return j;
}

inline EstimatorSpec estimator_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  const Json& m = field(j, path, "method");
  unsigned long w = j.contains("window") ? read_small(j["window"], child(path, "window"), kMaxWindow) : 10'000;
  BigInt off = j.contains("offset") ? read_integer(j["offset"], child(path, "offset")) : BigInt(0);
  return rethrow_at(path, [&] {
    if (m == "cesaro") return EstimatorSpec::cesaro(w, off);
    if (m == "iterated_cesaro") {
      unsigned d = j.contains("depth") ? static_cast<unsigned>(read_small(j["depth"], child(path, "depth"), 64)) : 2;
      EstimatorSpec e = EstimatorSpec::iterated(d, w);
      e.offset = off;
      return e;
    }
    if (m == "dilation_averaged") {
      unsigned n = j.contains("stages") ? static_cast<unsigned>(read_small(j["stages"], child(path, "stages"), kMaxStages)) : 8;
      return EstimatorSpec::dilation_averaged(n, w, off);
    }
    throw JsonError(child(path, "method"), "expected cesaro, iterated_cesaro or dilation_averaged");
  });
}

inline Json to_json(const InjectionSpec& pi) {
  using T = InjectionSpec::Type;
  Json j{{"map", injection_name(pi.type)}};
  if (pi.type == T::finite_permutation) j["images"] = pi.images;
  if (pi.type == T::finite_injection) {
    Json a = Json::array();
    for (auto [n, m] : pi.pairs) a.push_back(Json::array({n, m}));
    j["pairs"] = a;
  }
  if (pi.type == T::shift) j["k"] = pi.shift.get_str();
  return j;
}

inline InjectionSpec injection_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  using T = InjectionSpec::Type;
  const Json& m = field(j, path, "map");
  for (T t : {T::finite_permutation, T::finite_injection, T::shift, T::dilation2, T::evens_to_all, T::odds_to_all,
              T::interleave_with_zeros}) {
    if (m != injection_name(t)) continue;
    return rethrow_at(path, [&] {
      if (t == T::finite_permutation) {
        std::vector<std::uint64_t> images;
        const std::string ip = child(path, "images");
        const Json& a = array_at(field(j, path, "images"), ip);
        for (std::size_t i = 0; i < a.size(); ++i) images.push_back(read_small(a[i], child(ip, i), kMaxFiniteEntries));
        return InjectionSpec::permutation(std::move(images));
      }
      if (t == T::finite_injection) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        const std::string pp = child(path, "pairs");
        const Json& a = array_at(field(j, path, "pairs"), pp);
        for (std::size_t i = 0; i < a.size(); ++i) {
          array_at(a[i], child(pp, i), 2);
          pairs.emplace_back(read_small(a[i][0], child(child(pp, i), 0), ~0UL), read_small(a[i][1], child(child(pp, i), 1), ~0UL));
        }
        return InjectionSpec::injection(std::move(pairs));
      }
      BigInt k = t == T::shift && j.contains("k") ? read_integer(j["k"], child(path, "k")) : BigInt(0);
      return InjectionSpec::named(t, k);
    });
  }
  throw JsonError(child(path, "map"), "unknown map");
}

inline IndexSetSpec index_set_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  const Json& s = field(j, path, "set");
  auto indices = [&] {
    std::vector<BigInt> out;
    const std::string ip = child(path, "indices");
    const Json& a = array_at(field(j, path, "indices"), ip);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(read_integer(a[i], child(ip, i)));
    return out;
  };
  return rethrow_at(path, [&] {
    if (s == "evens") return IndexSetSpec::evens();
    if (s == "odds") return IndexSetSpec::odds();
    if (s == "explicit") return IndexSetSpec::explicit_set(indices());
    if (s == "complement") return IndexSetSpec::complement_of(indices());
    throw JsonError(child(path, "set"), "expected evens, odds, explicit or complement");
  });
}

// ---------------------------------------------------------------------------
// Results

/// [lo, hi] with outward rounding; an exact value prints the same decimal twice.
inline Json interval_json(const Interval& v, int digits, bool exact = false) {
  if (exact) {
    std::string m = v.mid_string(digits);
    return Json::array({m, m});
  }
  return Json::array({v.lo_string(digits), v.hi_string(digits)});
}

inline Interval interval_from_json(const Json& j, const std::string& path = "") {
  detail::array_at(j, path, 2);
  for (int i = 0; i < 2; ++i) {
    if (!j[i].is_string()) throw JsonError(detail::child(path, static_cast<std::size_t>(i)), "expected a decimal string");
  }
  return detail::rethrow_at(path, [&] { return Interval::from_strings(j[0].get<std::string>(), j[1].get<std::string>()); });
}

inline Json to_json(const NormResult& r, int digits) {
  Json j{{"space", r.space}};
  if (r.divergent) {
    j["value"] = Json::array({r.value.lo_string(digits), "inf"});
  } else {
    j["value"] = interval_json(r.value, digits, r.exact);
  }
  j["exact"] = r.exact;
  if (r.exact_value) j["exact_value"] = format_rational(*r.exact_value);
  j["divergent"] = r.divergent;
  j["certificate"] = r.certificate;
  return j;
}

inline Json to_json(const Membership& m, int digits) {
  Json j{{"status", status_name(m.status)}, {"certificate", m.certificate}};
  j["norm"] = to_json(m.norm, digits);
  return j;
}

inline Json to_json(const LimitEstimate& e, int digits) {
  Json j;
  j["value"] = e.value.mid_string(digits);
  j["interval"] = interval_json(e.interval, digits, e.exact);
  j["exact"] = e.exact;
  if (e.exact_value) j["exact_value"] = format_rational(*e.exact_value);
  j["estimator"] = to_json(e.spec);
  if (!e.note.empty()) j["note"] = e.note;
  if (e.dilation_residual) j["dilation_residual"] = interval_json(*e.dilation_residual, digits);
  if (e.dilation_bound) j["dilation_bound"] = format_rational(*e.dilation_bound);
  return j;
}

inline Json to_json(const GammaEstimate& g, int digits) {
  Json j;
  j["value"] = g.value.mid_string(digits);
  j["interval"] = interval_json(g.interval, digits, g.exact);
  j["exact"] = g.exact;
  if (g.exact_value) j["exact_value"] = format_rational(*g.exact_value);
  j["positive_part"] = to_json(g.positive, digits);
  j["negative_part"] = to_json(g.negative, digits);
  return j;
}

inline Json to_json(const AxiomReport& r, int digits) {
  Json j;
  j["estimate"] = to_json(r.estimate, digits);
  j["shift_residual"] = interval_json(r.shift_residual, digits);
  j["positivity_applies"] = r.positivity_applies;
  j["positivity_holds"] = r.positivity_holds;
  j["norm_bound_holds"] = r.norm_bound_holds;
  if (r.agreement_residual) j["agreement_residual"] = interval_json(*r.agreement_residual, digits);
  if (r.product_residual) j["product_residual"] = interval_json(*r.product_residual, digits);
  if (r.product_limit) j["product_limit"] = format_rational(*r.product_limit);
  return j;
}

inline Json to_json(const PsiReport& r, int digits) {
  Json j;
  j["psi"] = to_json(r.psi);
  j["n_max"] = r.n_max.get_str();
  j["psi1"] = interval_json(r.psi1, digits, r.psi1.is_point());
  j["psi1_is_one"] = r.psi1_is_one;
  j["monotonicity_violation"] = interval_json(r.monotonicity_violation, digits, r.monotonicity_violation.is_point());
  Json decay = Json::array(), doubling = Json::array();
  for (const auto& [n, v] : r.decay) decay.push_back({{"n", n.get_str()}, {"psi_over_n", interval_json(v, digits)}});
  for (const auto& [n, v] : r.doubling) doubling.push_back({{"n", n.get_str()}, {"ratio", interval_json(v, digits)}});
  j["decay"] = decay;
  j["doubling"] = doubling;
  j["doubling_trends_to_one"] = r.doubling_trends_to_one;
  j["grows"] = r.grows;
  return j;
}

inline Json to_json(const SandwichReport& r, int digits) {
  Json j;
  j["n_checked"] = r.n_checked;
  j["left_violations"] = r.left_violations;
  j["right_violations"] = r.right_violations;
  j["first_violation"] = r.first_violation ? Json(*r.first_violation) : Json();
  j["left_slack"] = Json::array({format_rational(r.left_slack_min), format_rational(r.left_slack_max)});
  j["right_slack"] = Json::array({format_rational(r.right_slack_min), format_rational(r.right_slack_max)});
  j["doubling_max"] = interval_json(r.doubling_max, digits);
  j["holds"] = r.holds();
  return j;
}

// ---------------------------------------------------------------------------
// Witnesses

inline Json to_json(const WeightedL1Witness& w) {
  Json j;
  j["space"] = to_json(half_first_weight_space());
  j["unit_norms"] = detail::values_json(w.unit_norms);
  j["membership_trials"] = w.membership_trials;
  j["membership_invariant"] = w.membership_invariant;
  j["norms_differ"] = w.norms_differ;
  j["passed"] = w.passed();
  return j;
}

inline Json to_json(const RenormReport& r) {
  Json j;
  j["gamma_ones"] = format_rational(r.gamma_ones);
  j["gamma_alternating"] = format_rational(r.gamma_alternating);
  j["norm_ones"] = format_rational(r.norm_ones);
  j["norm_alternating"] = format_rational(r.norm_alternating);
  j["norm_of_rearrangement"] = format_rational(r.norm_of_rearrangement);
  j["split_identity_holds"] = r.split_identity_holds;
  j["halves_are_rearrangements"] = r.halves_are_rearrangements;
  j["inconsistent"] = r.inconsistent;
  return j;
}

inline Json to_json(const GarlingResult& g, int digits) {
  Json j;
  j["value"] = interval_json(g.value, digits, g.exact.has_value());
  j["enclosure"] = interval_json(g.enclosure, digits);
  j["exact"] = g.exact.has_value();
  if (g.exact) j["exact_value"] = format_rational(*g.exact);
  Json sel = Json::array();
  for (auto i : g.selection) sel.push_back(i + 1);
  j["selection"] = sel;
  return j;
}

inline Json to_json(const GarlingWitness& w, int digits) {
  Json j;
  j["m"] = w.m;
  j["x"] = to_json(w.x, digits);
  j["y"] = to_json(w.y, digits);
  j["harmonic_number"] = format_rational(w.harmonic_lower);
  j["upper_bound"] = interval_json(w.upper_bound, digits);
  j["x_is_harmonic"] = w.x_is_harmonic;
  j["x_enclosure_tight"] = w.x_enclosure_tight;
  j["y_below_bound"] = w.y_below_bound;
  j["norms_differ"] = w.norms_differ;
  j["enumeration_agrees"] = w.enumeration_agrees ? Json(*w.enumeration_agrees) : Json();
  j["passed"] = w.passed();
  return j;
}

inline Json to_json(const OscillationReport& r, int digits) {
  Json j;
  j["passed"] = r.passed;
  j["failures"] = r.failures;
  j["counterexample"] = r.counterexample ? Json(r.counterexample->get_str()) : Json();
  j["candidates"] = r.candidates;
  j["max_ratio"] = interval_json(r.max_ratio, digits);
  j["argmax"] = r.argmax.get_str();
  j["odd_min"] = interval_json(r.odd_min, digits);
  j["even_max"] = interval_json(r.even_max, digits);
  j["oscillation_lower_bound"] = format_rational(r.oscillation);
  return j;
}

/// c_k are exact dyadic rationals, so the stage list reproduces the witness bit for bit.
inline Json to_json(const OscillationWitness& w) {
  Json j;
  j["psi"] = to_json(w.psi);
  j["precision"] = w.precision;
  Json st = Json::array();
  for (std::size_t k = 0; k < w.stages.size(); ++k) {
    const auto& s = w.stages[k];
    st.push_back({{"k", k + 1},
                  {"c", format_rational(s.c)},
                  {"c_decimal", Interval(s.c).mid_string(w.precision)},
                  {"N", s.n.get_str()},
                  {"T", s.t.get_str()},
                  {"ratio", interval_json(s.ratio, w.precision)}});
  }
  j["stages"] = st;
  if (w.sup_bound) j["sup_bound"] = interval_json(*w.sup_bound, w.precision);
  return j;
}

inline OscillationWitness oscillation_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  OscillationWitness w;
  w.psi = psi_from_json(field(j, path, "psi"), child(path, "psi"));
  w.precision = static_cast<int>(read_small(field(j, path, "precision"), child(path, "precision"), 100'000));
  if (w.precision < kMinDigits) throw JsonError(child(path, "precision"), "precision below the minimum");
  PrecisionScope scope(w.precision);
  const std::string sp = child(path, "stages");
  const Json& st = array_at(field(j, path, "stages"), sp);
  Rational sum = 0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const std::string p = child(sp, i);
    OscillationStage s;
    s.c = read_rational(field(st[i], p, "c"), child(p, "c"));
    s.n = read_integer(field(st[i], p, "N"), child(p, "N"));
    s.t = read_integer(field(st[i], p, "T"), child(p, "T"));
    if (s.n < 1) throw JsonError(child(p, "N"), "block lengths must be >= 1");
    BigInt expect = (w.stages.empty() ? BigInt(0) : w.stages.back().t) + s.n;
    if (s.t != expect) throw JsonError(child(p, "T"), "T must be the running sum of N");
    // Ratios are derived data: recompute them as the construction does.
    sum += s.c * Rational(s.n);
    {
      PrecisionScope stage(stage_digits(w.precision, s.t));
      s.ratio = Interval(sum) / w.psi(s.t);
    }
    if (st[i].contains("ratio") && !s.ratio.intersects(interval_from_json(st[i]["ratio"], child(p, "ratio")))) {
      throw JsonError(child(p, "ratio"), "stored ratio disagrees with c, N and T");
    }
    w.stages.push_back(std::move(s));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Verification reports

inline Json to_json(const SuiteFailure& f) {
  return {{"seed", f.seed}, {"digest", f.digest}, {"residual", f.residual}, {"detail", f.detail}, {"support", f.support}};
}

inline SuiteFailure failure_from_json(const Json& j) {
  return {j.at("seed").get<std::uint64_t>(), j.at("digest").get<std::string>(), j.at("residual").get<std::string>(),
          j.at("detail").get<std::string>(), j.at("support").get<std::size_t>()};
}

/// Wall time goes to the report only with `timing`; it is the one
/// non-reproducible field.
inline Json to_json(const VerificationReport& r, bool timing = false) {
  Json j;
  j["suite"] = r.suite;
  j["target"] = r.target;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["checks"] = r.checks;
  j["inverted"] = r.inverted;
  j["passed"] = r.passed();
  Json f = Json::array(), v = Json::array();
  for (const auto& x : r.failures) f.push_back(to_json(x));
  for (const auto& x : r.violations) v.push_back(to_json(x));
  j["failures"] = f;
  j["violations"] = v;
  j["min_violation_support"] = r.min_violation_support ? Json(*r.min_violation_support) : Json();
  j["max_residual"] = format_rational(r.max_residual);
  if (timing) j["wall_seconds"] = std::to_string(r.wall_seconds);
  return j;
}

inline VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.suite = j.at("suite").get<std::string>();
  r.target = j.at("target").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.trials = j.at("trials").get<std::size_t>();
  r.checks = j.at("checks").get<std::size_t>();
  r.inverted = j.at("inverted").get<bool>();
  for (const auto& x : j.at("failures")) r.failures.push_back(failure_from_json(x));
  for (const auto& x : j.at("violations")) r.violations.push_back(failure_from_json(x));
  if (!j.at("min_violation_support").is_null()) r.min_violation_support = j["min_violation_support"].get<std::size_t>();
  r.max_residual = parse_rational(j.at("max_residual").get<std::string>());
  if (j.contains("wall_seconds")) r.wall_seconds = std::stod(j["wall_seconds"].get<std::string>());
  return r;
}

/// Top-level document: schema tag, the reproducibility header, then the payload.
inline Json document(const std::string& command, int digits, std::optional<std::uint64_t> seed, Json payload) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["precision"] = digits;
  j["seed"] = seed ? Json(*seed) : Json();
  for (auto it = payload.begin(); it != payload.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace seqspace
