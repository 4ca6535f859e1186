#include "fock/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fock/constants.hpp"
#include "fock/errors.hpp"
#include "fock/explorer.hpp"
#include "fock/io.hpp"
#include "fock/ratio.hpp"

namespace fock::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flag values as given on the command line; unset means "take from --config or default".
struct Flags {
  std::optional<double> p, alpha, tol;
  std::optional<int> n, degree, restarts, monomial;
  std::optional<long> kmax, budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format, out;
  std::string config;
};

struct Config {
  std::string command;
  double p = 4.0;
  double alpha = 1.0;
  int n = 1;
  long kmax = 100;
  int degree = 4;
  int restarts = 8;
  std::uint64_t seed = 0;
  std::optional<double> tol;  // command-specific default
  long budget = 10000;
  std::optional<int> monomial;
  std::string format = "csv";
  std::string out;  // empty: the `out` stream
};

const std::vector<std::string> kConfigKeys{"p",      "alpha",  "n",        "kmax",   "degree",  "restarts",
                                           "seed",   "tol",    "budget",   "format", "out",     "monomial"};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--p", f.p, "Lebesgue exponent, 1 < p < inf");
  sub->add_option("--alpha", f.alpha, "Gaussian weight parameter, > 0");
  sub->add_option("--n", f.n, "complex dimension");
  sub->add_option("--kmax", f.kmax, "largest monomial degree in the sweep");
  sub->add_option("--degree", f.degree, "maximal polynomial degree in the search");
  sub->add_option("--restarts", f.restarts, "search restarts");
  sub->add_option("--seed", f.seed, "RNG seed (default 0)");
  sub->add_option("--tol", f.tol, "convergence tolerance, > 0");
  sub->add_option("--budget", f.budget, "objective evaluations per restart");
  sub->add_option("--monomial", f.monomial, "explore: fix h = z^j and search over f only");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--out", f.out, "output path (default stdout)");
  sub->add_option("--config", f.config, "JSON file with the same keys as the flags; flags win");
}

template <class T>
void merge(T& dst, const std::optional<T>& flag, const json& cfg, const char* key) {
  if (flag) {
    dst = *flag;
  } else if (cfg.contains(key)) {
    try {
      dst = cfg.at(key).get<T>();
    } catch (const json::exception&) {
      throw UsageError(std::string("config key '") + key + "' has the wrong type");
    }
  }
}

template <class T>
void merge(std::optional<T>& dst, const std::optional<T>& flag, const json& cfg, const char* key) {
  T v{};
  if (flag || cfg.contains(key)) {
    merge(v, flag, cfg, key);
    dst = v;
  }
}

Config resolve(const std::string& command, const Flags& f) {
  json cfg = json::object();
  if (!f.config.empty()) {
    std::ifstream is(f.config);
    if (!is) throw UsageError("cannot open config file " + f.config);
    try {
      cfg = json::parse(is);
    } catch (const json::exception& e) {
      throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, _] : cfg.items()) {
      if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  }
  Config c;
  c.command = command;
  merge(c.p, f.p, cfg, "p");
  merge(c.alpha, f.alpha, cfg, "alpha");
  merge(c.n, f.n, cfg, "n");
  merge(c.kmax, f.kmax, cfg, "kmax");
  merge(c.degree, f.degree, cfg, "degree");
  merge(c.restarts, f.restarts, cfg, "restarts");
  merge(c.seed, f.seed, cfg, "seed");
  merge(c.tol, f.tol, cfg, "tol");
  merge(c.budget, f.budget, cfg, "budget");
  merge(c.monomial, f.monomial, cfg, "monomial");
  merge(c.format, f.format, cfg, "format");
  merge(c.out, f.out, cfg, "out");

  if (!std::isfinite(c.p) || !(c.p > 1.0)) throw UsageError("--p must satisfy 1 < p < inf");
  if (!std::isfinite(c.alpha) || !(c.alpha > 0.0)) throw UsageError("--alpha must be positive");
  if (c.n < 1) throw UsageError("--n must be >= 1");
  if (c.kmax < 0) throw UsageError("--kmax must be >= 0");
  if (c.degree < 0 || c.degree > 60) throw UsageError("--degree must lie in [0, 60]");
  if (c.restarts < 1) throw UsageError("--restarts must be >= 1");
  if (c.tol && !(std::isfinite(*c.tol) && *c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.budget < 1) throw UsageError("--budget must be >= 1");
  if (c.monomial && *c.monomial < 0) throw UsageError("--monomial must be >= 0");
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
  if (c.n != 1 && command != "constants") throw UsageError("only --n 1 is supported by " + command);
  return c;
}

json envelope(const Config& c) {
  return {{"schema", io::kSchema}, {"command", c.command}};
}

std::string fmt(double x) { return io::format_double(x); }

struct Output {
  json payload;
  io::CsvTable table;
  std::string summary;
  int status = kExitOk;
};

Output cmd_constants(const Config& c) {
  const double cp = c_p(c.p);
  const double half = std::pow(cp, 0.5 * c.n);
  const double full = std::pow(cp, c.n);
  const double pc = conjugate_exponent(c.p);
  Output o;
  o.payload = envelope(c);
  o.payload.update({{"p", c.p}, {"alpha", c.alpha}, {"n", c.n}, {"c_p", cp}, {"c_p_half_n", half},
                    {"c_p_n", full}, {"p_conj", pc}});
  o.table = {{"p", "n", "c_p", "c_p_half_n", "c_p_n", "p_conj"},
             {{fmt(c.p), std::to_string(c.n), fmt(cp), fmt(half), fmt(full), fmt(pc)}}};
  o.summary = "C_p=" + fmt(cp) + " C_p^(n/2)=" + fmt(half) + " C_p^n=" + fmt(full) + " p'=" + fmt(pc);
  return o;
}

Output cmd_sweep(const Config& c) {
  const ExponentPair ep(c.p);
  const std::vector<SweepRow> rows = monomial_sweep(ep, c.kmax);
  Output o;
  o.payload = envelope(c);
  o.payload.update({{"p", c.p}, {"kmax", c.kmax}, {"sqrt_cp", std::sqrt(ep.c_p())},
                    {"final_gap", rows.back().gap}, {"rows", io::sweep_to_json(rows)}});
  o.table = io::sweep_to_csv(rows);
  o.summary = "ratio(" + std::to_string(c.kmax) + ")=" + fmt(rows.back().ratio) +
              " gap_to_sqrt_cp=" + fmt(rows.back().gap) + " gap_to_cp=" + fmt(ep.c_p() - rows.back().ratio);
  return o;
}

Output cmd_gaussian(const Config& c) {
  const ExponentPair ep(c.p);
  const GaussianFamilySup s = gaussian_family_sup(ep, c.alpha, c.tol.value_or(1e-9), c.seed);
  const double sq = std::sqrt(ep.c_p());
  Output o;
  o.payload = envelope(c);
  o.payload.update({{"p", c.p}, {"alpha", c.alpha}, {"sup", s.value}, {"sqrt_cp", sq}, {"c_p", ep.c_p()},
                    {"gap_to_sqrt_cp", sq - s.value}, {"gap_to_cp", ep.c_p() - s.value}, {"x", s.x}, {"y", s.y},
                    {"steps", s.steps}, {"spot_check", s.spot_check}, {"not_attained", s.not_attained}});
  o.table = {{"p", "alpha", "sup", "sqrt_cp", "gap_to_sqrt_cp", "gap_to_cp", "x", "y", "steps", "not_attained"},
             {{fmt(c.p), fmt(c.alpha), fmt(s.value), fmt(sq), fmt(sq - s.value), fmt(ep.c_p() - s.value),
               fmt(s.x), fmt(s.y), std::to_string(s.steps), s.not_attained ? "true" : "false"}}};
  o.summary = "sup=" + fmt(s.value) + " gap_to_sqrt_cp=" + fmt(sq - s.value) + " gap_to_cp=" + fmt(ep.c_p() - s.value);
  return o;
}

Output cmd_explore(const Config& c) {
  SearchConfig sc;
  sc.p = c.p;
  sc.alpha = c.alpha;
  sc.degree = c.degree;
  sc.restarts = c.restarts;
  sc.seed = c.seed;
  sc.tol = c.tol.value_or(sc.tol);
  sc.budget = c.budget;
  const SearchReport r = c.monomial ? maximize_ratio_monomial_fixed(*c.monomial, sc) : maximize_ratio_free(sc);
  Output o;
  o.payload = envelope(c);
  o.payload["config"] = {{"p", sc.p},         {"alpha", sc.alpha}, {"degree", sc.degree},
                         {"restarts", sc.restarts}, {"seed", sc.seed}, {"tol", sc.tol},
                         {"budget", sc.budget}};
  if (c.monomial) o.payload["config"]["monomial"] = *c.monomial;
  o.payload.update(io::report_to_json(r));
  o.table = io::history_to_csv(r);
  o.summary = "best_ratio=" + fmt(r.best_ratio) + " gap_to_sqrt_cp=" + fmt(r.gap_to_sqrt_cp) +
              " gap_to_cp=" + fmt(r.gap_to_cp) + (r.converged ? "" : " (not converged)");
  if (r.best_ratio > c_p(c.p) * (1.0 + 1e-9)) o.status = kExitInvariant;
  return o;
}

Output cmd_verify(const Config& c) {
  InvariantCounts counts;
  if (c.restarts != Config{}.restarts) counts.search_restarts = c.restarts;
  const InvariantReport r = run_invariant_suite(c.seed, counts);
  Output o;
  o.payload = envelope(c);
  o.payload.update(io::invariants_to_json(r));
  o.table = io::invariants_to_csv(r);
  long failed = 0;
  for (const InvariantEntry& e : r.entries) failed += e.passed ? 0 : 1;
  o.summary = std::to_string(r.entries.size() - failed) + "/" + std::to_string(r.entries.size()) +
              " invariants passed (seed " + std::to_string(c.seed) + ")";
  o.status = r.all_passed() ? kExitOk : kExitInvariant;
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp Hoelder constants on Gaussian Fock spaces", "fock-sharp"};
  app.require_subcommand(1);
  Flags flags;
  const std::map<std::string, std::string> commands{
      {"constants", "print C_p, C_p^(n/2), C_p^n and p'"},
      {"monomial-sweep", "ratio on monomials z^k for k = 0..kmax"},
      {"gaussian-opt", "supremum of the ratio over quadratic exponentials"},
      {"explore", "multi-restart search over polynomial pairs"},
      {"verify", "run the randomized invariant suite"}};
  for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fock-sharp: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  Output o;
  Config c;
  try {
    c = resolve(command, flags);
    if (command == "constants") o = cmd_constants(c);
    else if (command == "monomial-sweep") o = cmd_sweep(c);
    else if (command == "gaussian-opt") o = cmd_gaussian(c);
    else if (command == "explore") o = cmd_explore(c);
    else o = cmd_verify(c);
  } catch (const UsageError& e) {
    err << "fock-sharp " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "fock-sharp " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fock-sharp " << command << ": " << e.what() << "\n";
    return kExitInvariant;
  }

  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) {
      err << "fock-sharp: cannot write " << c.out << "\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = c.out.empty() ? out : file;
  if (c.format == "json") {
    o.payload["summary"] = o.summary;
    sink << o.payload.dump(2) << "\n";
  } else {
    io::write_csv(sink, o.table);
  }
  err << o.summary << "\n";
  return o.status;
}

}  // namespace fock::cli
