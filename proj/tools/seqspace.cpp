// seqspace: command-line front end.
//
// stdout carries the JSON/CSV payload, stderr the log. Exit status: 0 on
// success, 2 when a checked assertion fails, 1 on usage or input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "seqspace/io.hpp"

namespace {

using namespace seqspace;

enum class Format { json, table, csv };

struct Config {
  int precision = kDefaultDigits;
  /// Normalized default (Psi(1) = 1); the oscillation witness uses log:e unless Psi is set.
  std::string psi = "log:2";
  bool psi_set = false;
  std::uint64_t seed = 1;
  Format format = Format::json;
  /// Estimator results wider than this fail with exit 2 (unset: no check).
  std::optional<Rational> width_cap;
  std::size_t trials = 1000;
  bool timing = false;
  bool quiet = false;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "table") return Format::table;
  if (s == "csv") return Format::csv;
  throw InvalidInput("format must be json, table or csv");
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Plain-text config: one `key = value` per line, `#` starts a comment.
void load_config(const std::string& path, Config& c) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidInput(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "precision") c.precision = std::stoi(value);
      else if (key == "psi") {
        c.psi = value;
        c.psi_set = true;
      }
      else if (key == "seed") c.seed = std::stoull(value);
      else if (key == "format") c.format = parse_format(value);
      else if (key == "width_cap") c.width_cap = parse_rational(value);
      else if (key == "trials") c.trials = std::stoull(value);
      else throw InvalidInput("unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw InvalidInput(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    } catch (const InvalidInput& e) {
      throw InvalidInput(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

/// A path, "-" for stdin, inline JSON, or the name "harmonic".
Json read_json_arg(const std::string& arg) {
  std::string text;
  if (arg == "-") {
    text = slurp(std::cin);
  } else if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw InvalidInput("cannot open '" + arg + "'");
    text = slurp(in);
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("malformed JSON in '" + arg + "': " + e.what());
  }
}

/// Accepts a bare sequence or a document whose "result" is one.
std::pair<const Json*, std::string> locate_sequence(const Json& j) {
  if (j.is_object() && !j.contains("kind") && j.contains("result")) return {&j["result"], "/result"};
  return {&j, ""};
}

Sequence read_sequence(const std::string& arg) {
  if (arg == "harmonic") return Sequence::harmonic();
  Json j = read_json_arg(arg);
  auto [node, path] = locate_sequence(j);
  return sequence_from_json(*node, path);
}

class Output {
 public:
  explicit Output(const Config& c) : c_(c) {}

  void emit(const std::string& command, Json payload) const {
    Json doc = document(command, c_.precision, c_.seed, std::move(payload));
    if (c_.format == Format::table) {
      table(doc, "");
    } else {
      std::cout << doc.dump(2) << '\n';
    }
  }
  void log(const std::string& s) const {
    if (!c_.quiet) std::cerr << s << '\n';
  }
  bool csv() const { return c_.format == Format::csv; }
  void no_csv(const std::string& command) const {
    if (csv()) throw InvalidInput("'" + command + "' has no CSV form; use --format json or table");
  }

 private:
  static void table(const Json& j, const std::string& path) {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) table(it.value(), path.empty() ? it.key() : path + "." + it.key());
    } else if (j.is_array() && !j.empty() && !(j.size() == 2 && j[0].is_string() && j[1].is_string())) {
      for (std::size_t i = 0; i < j.size(); ++i) table(j[i], path + "[" + std::to_string(i) + "]");
    } else if (j.is_array()) {
      std::cout << path << '\t' << (j.empty() ? "[]" : "[" + j[0].get<std::string>() + ", " + j[1].get<std::string>() + "]") << '\n';
    } else {
      std::cout << path << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
  }
  const Config& c_;
};

Json rationals_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(format_rational(q));
  return a;
}

InjectionSpec parse_map(const std::string& s) {
  using T = InjectionSpec::Type;
  if (!s.empty() && s[0] == '{') return injection_from_json(Json::parse(s));
  if (s == "dilation2") return InjectionSpec::named(T::dilation2);
  if (s == "evens_to_all") return InjectionSpec::named(T::evens_to_all);
  if (s == "odds_to_all") return InjectionSpec::named(T::odds_to_all);
  if (s == "interleave_with_zeros") return InjectionSpec::named(T::interleave_with_zeros);
  if (s.rfind("shift:", 0) == 0) return InjectionSpec::named(T::shift, parse_bigint(s.substr(6)));
  if (s.rfind("perm:", 0) == 0) {
    std::vector<std::uint64_t> images;
    std::stringstream in(s.substr(5));
    for (std::string item; std::getline(in, item, ',');) images.push_back(parse_bigint(trim(item)).get_ui());
    return InjectionSpec::permutation(std::move(images));
  }
  throw InvalidInput("unknown map '" + s + "' (shift:<k>, dilation2, evens_to_all, odds_to_all, interleave_with_zeros, perm:<images>, or JSON)");
}

IndexSetSpec parse_set(const std::string& s) {
  if (!s.empty() && s[0] == '{') return index_set_from_json(Json::parse(s));
  if (s == "evens") return IndexSetSpec::evens();
  if (s == "odds") return IndexSetSpec::odds();
  auto list = [](const std::string& t) {
    std::vector<BigInt> out;
    std::stringstream in(t);
    for (std::string item; std::getline(in, item, ',');) out.push_back(parse_bigint(trim(item)));
    return out;
  };
  if (s.rfind("explicit:", 0) == 0) return IndexSetSpec::explicit_set(list(s.substr(9)));
  if (s.rfind("complement:", 0) == 0) return IndexSetSpec::complement_of(list(s.substr(11)));
  throw InvalidInput("unknown index set '" + s + "' (evens, odds, explicit:<i,j,..>, complement:<i,j,..>)");
}

struct EstimatorArgs {
  std::string json;
  std::string method = "cesaro";
  unsigned long window = 10'000;
  std::string offset = "0";
  unsigned depth = 2;
  unsigned stages = 8;

  void add_to(CLI::App* app) {
    app->add_option("--estimator", json, "EstimatorSpec as JSON (overrides the flags below)");
    app->add_option("--method", method, "cesaro | iterated_cesaro | dilation_averaged")->capture_default_str();
    app->add_option("--window", window, "averaging window W")->capture_default_str();
    app->add_option("--offset", offset, "window start offset m (big integer)")->capture_default_str();
    app->add_option("--depth", depth, "iterations for iterated_cesaro")->capture_default_str();
    app->add_option("--stages", stages, "dilation stages for dilation_averaged")->capture_default_str();
  }
  EstimatorSpec spec() const {
    if (!json.empty()) return estimator_from_json(read_json_arg(json));
    BigInt m = parse_bigint(offset);
    if (method == "cesaro") return EstimatorSpec::cesaro(window, m);
    if (method == "iterated_cesaro") {
      EstimatorSpec e = EstimatorSpec::iterated(depth, window);
      e.offset = m;
      e.validate();
      return e;
    }
    if (method == "dilation_averaged") return EstimatorSpec::dilation_averaged(stages, window, m);
    throw InvalidInput("unknown estimator method '" + method + "'");
  }
};

int check_width(const Config& c, const Output& out, const Interval& v) {
  if (!c.width_cap) return 0;
  if (certainly_le(v.width(), Interval(*c.width_cap))) return 0;
  out.log("estimate wider than width_cap " + format_rational(*c.width_cap));
  return 2;
}

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence spaces, rearrangements, Banach-limit estimators and witnesses"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::string config_path, format_name, psi_flag;
  int precision_flag = 0;
  std::uint64_t seed_flag = 0;
  auto* opt_precision = app.add_option("--precision,-P", precision_flag, "significant decimal digits (>= 20)");
  app.add_option("--config", config_path, "key = value config file");
  auto* opt_format = app.add_option("--format", format_name, "json | table | csv");
  auto* opt_psi = app.add_option("--psi", psi_flag, "default Psi: log:e, log:<base> or table:<v1,v2,...>");
  auto* opt_seed = app.add_option("--seed", seed_flag, "random seed");
  app.add_flag("--timing", cfg.timing, "include wall-clock times in verification reports");
  app.add_flag("--quiet,-q", cfg.quiet, "no log on stderr");

  std::string seq_arg, space_arg, other_arg, map_arg, set_arg, op_arg;
  std::size_t count = 0;
  bool membership_flag = false, axioms_flag = false;

  auto* c_norm = app.add_subcommand("norm", "norm of a sequence in a space");
  c_norm->add_option("--seq", seq_arg, "sequence JSON (path, '-', inline, or 'harmonic')")->required();
  c_norm->add_option("--space", space_arg, "lp:<p> | linf | wl1 | marcinkiewicz[:<psi>] | garling | JSON")->required();
  c_norm->add_flag("--membership", membership_flag, "also report member / non_member / unknown");

  std::size_t prefix = 16;
  auto* c_rearr = app.add_subcommand("rearrange", "decreasing rearrangement x*");
  c_rearr->add_option("--seq", seq_arg)->required();
  c_rearr->add_option("--prefix", prefix, "terms of x* to list")->capture_default_str();
  std::size_t oracle_n = 0;
  c_rearr->add_option("--oracle", oracle_n, "compare the first N <= 64 terms against the inf-sup definition");

  auto* c_close = app.add_subcommand("closeup", "closing up x' (nonzero terms in order)");
  c_close->add_option("--seq", seq_arg)->required();
  c_close->add_option("--prefix", prefix)->capture_default_str();

  auto* c_apply = app.add_subcommand("apply", "index maps, restrictions and pointwise algebra");
  c_apply->add_option("--seq", seq_arg)->required();
  auto* g_apply = c_apply->add_option_group("operation");
  g_apply->add_option("--map", map_arg, "shift:<k> | dilation2 | evens_to_all | odds_to_all | interleave_with_zeros | perm:<images> | JSON");
  g_apply->add_option("--restrict", set_arg, "evens | odds | explicit:<i,..> | complement:<i,..> | JSON");
  g_apply->add_option("--op", op_arg, "abs | negate | pos_part | neg_part | scale:<lambda> | add | subtract | multiply");
  g_apply->require_option(1);
  c_apply->add_option("--with", other_arg, "second operand for add / subtract / multiply");
  c_apply->add_option("--prefix", prefix)->capture_default_str();

  auto* c_sums = app.add_subcommand("sums", "partial sums s_n of x*");
  c_sums->add_option("--seq", seq_arg)->required();
  c_sums->add_option("--n", count, "number of sums")->required();

  EstimatorArgs est;
  auto* c_limit = app.add_subcommand("limit", "Banach-limit estimate");
  c_limit->add_option("--seq", seq_arg)->required();
  est.add_to(c_limit);
  c_limit->add_flag("--axioms", axioms_flag, "shift, positivity, norm and product-rule residuals");

  EstimatorArgs gest;
  auto* c_gamma = app.add_subcommand("gamma", "symmetric functional gamma on m_Psi");
  c_gamma->add_option("--seq", seq_arg)->required();
  gest.add_to(c_gamma);
  c_gamma->add_option("--rows", count, "with --format csv: rows of the ratio trajectory s_n / Psi(n)");

  auto* c_witness = app.add_subcommand("witness", "constructions that separate the statements");
  c_witness->require_subcommand(1);
  std::size_t trials = 100;
  auto* w_wl1 = c_witness->add_subcommand("wl1", "l_1 with w_1 = 1/2");
  w_wl1->add_option("--trials", trials)->capture_default_str();
  auto* w_renorm = c_witness->add_subcommand("renorm", "renorming contradiction for gamma on l_inf");
  unsigned garling_m = 4;
  auto* w_garling = c_witness->add_subcommand("garling", "x^m against y^m in the Garling space");
  w_garling->add_option("--m", garling_m, "length m")->capture_default_str();
  unsigned stages = 5, depth = 8;
  std::string check_path;
  auto* w_osc = c_witness->add_subcommand("oscillate", "element of m_Psi whose ratio sequence oscillates");
  w_osc->add_option("--stages", stages, "number of blocks S")->capture_default_str();
  w_osc->add_option("--depth", depth, "interior candidates per block")->capture_default_str();
  w_osc->add_option("--check", check_path, "verify a stored witness JSON instead of constructing one");

  std::string suite = "all";
  SuiteParams sp;
  auto* c_verify = app.add_subcommand("verify", "property suites");
  c_verify->add_option("--suite", suite, "suite id or 'all'")->capture_default_str();
  c_verify->add_option("--space", space_arg, "space for SYMM-NORM, THM1-EQ, CLOSE-UP");
  auto* opt_trials = c_verify->add_option("--trials", sp.trials, "trials per suite");
  c_verify->add_option("--n", sp.n, "prefix length N")->capture_default_str();
  c_verify->add_option("--permutations", sp.permutations, "permutations per input")->capture_default_str();
  c_verify->add_option("--stages", sp.stages, "stages for OSC-WITNESS")->capture_default_str();

  std::string n_arg = "1048576";
  auto* c_psi = app.add_subcommand("psi-report", "checks of Psi: concavity proxies and the doubling ratio");
  c_psi->add_option("--n", n_arg, "largest n examined")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  Output out(cfg);
  try {
    if (!config_path.empty()) load_config(config_path, cfg);
    if (const char* env = std::getenv("SEQSPACE_PRECISION")) {
      try {
        cfg.precision = std::stoi(env);
      } catch (const std::logic_error&) {
        throw InvalidInput("SEQSPACE_PRECISION must be an integer");
      }
    }
    if (opt_precision->count()) cfg.precision = precision_flag;
    if (opt_format->count()) cfg.format = parse_format(format_name);
    if (opt_psi->count()) {
      cfg.psi = psi_flag;
      cfg.psi_set = true;
    }
    if (opt_seed->count()) cfg.seed = seed_flag;
    if (cfg.precision < kMinDigits) throw InvalidInput("precision must be at least " + std::to_string(kMinDigits) + " digits");
    PrecisionScope scope(cfg.precision);
    const int P = cfg.precision;
    const PsiSpec psi = parse_psi(cfg.psi);
    auto space_of = [&](const std::string& s) {
      if (!s.empty() && s[0] == '{') return space_from_json(Json::parse(s));
      return parse_space(s, psi);
    };

    if (*c_norm) {
      SpaceSpec space = space_of(space_arg);
      Json input = seq_arg == "harmonic" ? to_json(Sequence::harmonic()) : read_json_arg(seq_arg);
      auto [node, path] = locate_sequence(input);
      NormResult r;
      Json payload{{"input", *node}};
      if (is_roots_json(*node)) {
        if (space.variant != SpaceSpec::Variant::garling) throw InvalidInput("'roots' input is accepted only by the Garling norm");
        r = garling_norm_of_squares(roots_from_json(*node, path));
      } else {
        Sequence x = sequence_from_json(*node, path);
        if (membership_flag) {
          Membership m = membership(space, x);
          r = m.norm;
          payload["membership"] = status_name(m.status);
          payload["membership_certificate"] = m.certificate;
        } else {
          r = norm(space, x);
        }
      }
      out.log("norm in " + r.space + ": [" + r.value.lo_string(12) + ", " + r.value.hi_string(12) + "]" +
              (r.exact ? " exact" : "") + (r.divergent ? " divergent" : ""));
      if (out.csv()) {
        std::cout << "space,lo,hi,exact,divergent\n"
                  << r.space << ',' << r.value.lo_string(P) << ',' << (r.divergent ? "inf" : r.value.hi_string(P)) << ','
                  << (r.exact ? "true" : "false") << ',' << (r.divergent ? "true" : "false") << '\n';
        return 0;
      }
      payload["space_spec"] = to_json(space);
      Json fields = to_json(r, P);
      for (auto& [k, v] : fields.items()) payload[k] = v;
      out.emit("norm", payload);
      return 0;
    }

    if (*c_rearr || *c_close) {
      Sequence x = read_sequence(seq_arg);
      Sequence y = *c_rearr ? decreasing_rearrangement(x) : closing_up(x);
      auto terms = y.prefix(prefix);
      std::optional<bool> oracle_ok;
      if (*c_rearr && oracle_n > 0) {
        oracle_ok = rearrangement_oracle(x, oracle_n) == y.prefix(oracle_n);
        out.log("inf-sup oracle over " + std::to_string(oracle_n) + " terms: " + verdict(*oracle_ok));
      }
      if (out.csv()) {
        std::cout << "n,value\n";
        for (std::size_t i = 0; i < terms.size(); ++i) std::cout << i + 1 << ',' << format_rational(terms[i]) << '\n';
      } else {
        Json payload{{"input", to_json(x)}, {"result", to_json(y)}, {"prefix", rationals_json(terms)}};
        if (oracle_ok) payload["oracle_agrees"] = *oracle_ok;
        out.emit(*c_rearr ? "rearrange" : "closeup", payload);
      }
      return oracle_ok && !*oracle_ok ? 2 : 0;
    }

    if (*c_apply) {
      Sequence x = read_sequence(seq_arg);
      Sequence y;
      Json op;
      if (!map_arg.empty()) {
        InjectionSpec pi = parse_map(map_arg);
        y = apply_map(x, pi);
        op = {{"map", to_json(pi)}};
      } else if (!set_arg.empty()) {
        y = restrict(x, parse_set(set_arg));
        op = {{"restrict", set_arg}};
      } else {
        op = {{"op", op_arg}};
        if (op_arg == "abs") y = abs(x);
        else if (op_arg == "negate") y = negate(x);
        else if (op_arg == "pos_part") y = pos_part(x);
        else if (op_arg == "neg_part") y = neg_part(x);
        else if (op_arg.rfind("scale:", 0) == 0) y = scale(parse_rational(op_arg.substr(6)), x);
        else if (op_arg == "add" || op_arg == "subtract" || op_arg == "multiply") {
          if (other_arg.empty()) throw InvalidInput("--op " + op_arg + " needs --with");
          Sequence z = read_sequence(other_arg);
          y = op_arg == "add" ? add(x, z) : op_arg == "subtract" ? subtract(x, z) : multiply(x, z);
          op["with"] = to_json(z);
        } else {
          throw InvalidInput("unknown --op '" + op_arg + "'");
        }
      }
      auto terms = y.prefix(prefix);
      if (out.csv()) {
        std::cout << "n,value\n";
        for (std::size_t i = 0; i < terms.size(); ++i) std::cout << i + 1 << ',' << format_rational(terms[i]) << '\n';
      } else {
        out.emit("apply", {{"input", to_json(x)}, {"operation", op}, {"result", to_json(y)}, {"prefix", rationals_json(terms)}});
      }
      return 0;
    }

    if (*c_sums) {
      Sequence x = read_sequence(seq_arg);
      if (count < 1 || count > kMaxCsvRows) throw InvalidInput("--n must be in [1, 10^6]");
      auto s = partial_sums(x, count);
      if (out.csv()) {
        std::cout << "n,s_n\n";
        for (std::size_t i = 0; i < s.size(); ++i) std::cout << i + 1 << ',' << format_rational(s[i]) << '\n';
      } else {
        out.emit("sums", {{"input", to_json(x)}, {"sums", rationals_json(s)}});
      }
      return 0;
    }

    if (*c_limit) {
      out.no_csv("limit");
      Sequence x = read_sequence(seq_arg);
      EstimatorSpec spec = est.spec();
      Json payload{{"input", to_json(x)}};
      LimitEstimate e;
      int code = 0;
      if (axioms_flag) {
        AxiomReport r = axiom_residuals(spec, to_stream(x), one_plus_reciprocal());
        e = r.estimate;
        payload["axioms"] = to_json(r, P);
      } else {
        e = estimate_limit(spec, x);
      }
      payload["estimate"] = to_json(e, P);
      code = check_width(cfg, out, e.interval);
      out.log("limit estimate " + e.value.mid_string(20) + (e.exact ? " (exact)" : ""));
      out.emit("limit", payload);
      return code;
    }

    if (*c_gamma) {
      Sequence x = read_sequence(seq_arg);
      if (out.csv()) {
        if (count == 0) throw InvalidInput("CSV trajectories need --rows");
        write_ratio_csv(std::cout, psi, x, count, P);
        return 0;
      }
      EstimatorSpec spec = gest.spec();
      GammaEstimate g = symmetric_functional(psi, spec, x);
      out.log("gamma " + g.value.mid_string(20) + (g.exact ? " (exact)" : ""));
      out.emit("gamma", {{"input", to_json(x)}, {"psi", to_json(psi)}, {"gamma", to_json(g, P)}});
      return check_width(cfg, out, g.interval);
    }

    if (*w_wl1) {
      out.no_csv("witness wl1");
      WeightedL1Witness w = weighted_l1_witness(cfg.seed, trials);
      out.log("weighted l_1 witness: " + verdict(w.passed()));
      out.emit("witness wl1", to_json(w));
      return w.passed() ? 0 : 2;
    }
    if (*w_renorm) {
      out.no_csv("witness renorm");
      RenormReport r = renorm_contradiction();
      out.log(std::string("renorming contradiction: ") + (r.inconsistent ? "exhibited" : "NOT exhibited"));
      out.emit("witness renorm", to_json(r));
      return r.inconsistent ? 0 : 2;
    }
    if (*w_garling) {
      out.no_csv("witness garling");
      GarlingWitness w = garling_witness(garling_m);
      out.log("Garling witness m = " + std::to_string(garling_m) + ": " + verdict(w.passed()));
      out.emit("witness garling", to_json(w, P));
      return w.passed() ? 0 : 2;
    }
    if (*w_osc) {
      OscillationWitness w;
      if (!check_path.empty()) {
        w = oscillation_from_json([&] {
          Json j = read_json_arg(check_path);
          return j.contains("witness") ? j["witness"] : j;
        }());
      } else {
        w = oscillating_construct(stages, cfg.psi_set ? psi : PsiSpec::natural_log(), P);
      }
      OscillationReport r = oscillating_verify(w, depth);
      w.sup_bound = r.max_ratio;
      out.log("oscillation witness, " + std::to_string(w.stages.size()) + " stages: " + verdict(r.passed));
      for (const auto& f : r.failures) out.log("  " + f);
      if (out.csv()) {
        write_oscillation_csv(std::cout, r, P);
      } else {
        out.emit("witness oscillate", {{"witness", to_json(w)}, {"verification", to_json(r, P)}});
      }
      return r.passed ? 0 : 2;
    }

    if (*c_verify) {
      sp.seed = cfg.seed;
      sp.psi = psi;
      if (!opt_trials->count()) sp.trials = cfg.trials;
      if (!space_arg.empty()) sp.space = space_of(space_arg);
      std::vector<std::string> ids;
      if (suite == "all") {
        ids = suite_catalog();
      } else {
        ids.push_back(suite);
      }
      Json reports = Json::array();
      bool all_passed = true;
      if (out.csv()) std::cout << "suite,target,trials,checks,inverted,failures,violations,passed\n";
      for (const auto& id : ids) {
        VerificationReport r = run_suite(id, sp);
        all_passed = all_passed && r.passed();
        std::ostringstream line;
        line << id << " [" << r.target << "] " << verdict(r.passed()) << ": " << r.checks << " checks, " << r.failures.size()
             << " failures";
        if (r.inverted) line << ", " << r.violations.size() << " expected violations";
        line << " (" << r.wall_seconds << " s)";
        out.log(line.str());
        for (const auto& f : r.failures) out.log("  seed " + std::to_string(f.seed) + " " + f.digest + ": " + f.detail);
        if (out.csv()) {
          std::cout << r.suite << ',' << r.target << ',' << r.trials << ',' << r.checks << ',' << (r.inverted ? "true" : "false")
                    << ',' << r.failures.size() << ',' << r.violations.size() << ',' << (r.passed() ? "true" : "false") << '\n';
        }
        reports.push_back(to_json(r, cfg.timing));
      }
      if (!out.csv()) out.emit("verify", {{"passed", all_passed}, {"reports", reports}});
      return all_passed ? 0 : 2;
    }

    if (*c_psi) {
      out.no_csv("psi-report");
      PsiReport r = psi_axiom_report(psi, parse_bigint(n_arg));
      out.log("Psi " + psi.id() + ": doubling ratios " + (r.doubling_trends_to_one ? "decrease to 1" : "do NOT decrease to 1"));
      out.emit("psi-report", to_json(r, P));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
