#include "fock/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fock/errors.hpp"

namespace fock::io {
namespace {

using nlohmann::json;

// JSON has no infinities; they are emitted as null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json poly_to_json(const HoloPoly& f) {
  json terms = json::array();
  for (const auto& [j, a] : f.terms()) {
    terms.push_back({{"index", j.components()}, {"re", a.real()}, {"im", a.imag()}});
  }
  return {{"n", f.dim()}, {"terms", terms}};
}

HoloPoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms") || !j["terms"].is_array()) {
    throw std::invalid_argument("polynomial JSON needs \"n\" and \"terms\"");
  }
  const int n = j["n"].get<int>();
  if (n < 1) throw std::invalid_argument("polynomial JSON: n must be >= 1");
  HoloPoly f = HoloPoly::constant(n, 0.0);
  for (const json& t : j["terms"]) {
    const auto index = t.at("index").get<std::vector<int>>();
    if (static_cast<int>(index.size()) != n) throw DimensionMismatch("polynomial JSON: index length != n");
    for (int k : index) {
      if (k < 0) throw std::invalid_argument("polynomial JSON: negative exponent");
    }
    const cplx a(t.at("re").get<double>(), t.value("im", 0.0));
    f = f + HoloPoly::monomial(MultiIndex(index), a);
  }
  return f;
}

json report_to_json(const SearchReport& r) {
  json history = json::array();
  for (const HistoryEntry& h : r.history) {
    history.push_back({{"iteration", h.restart},
                       {"ratio", number(h.ratio)},
                       {"best_ratio", number(h.best_ratio)},
                       {"evaluations", h.evaluations},
                       {"converged", h.converged}});
  }
  return {{"p", r.p},
          {"best_ratio", number(r.best_ratio)},
          {"gap_to_sqrt_cp", number(r.gap_to_sqrt_cp)},
          {"gap_to_cp", number(r.gap_to_cp)},
          {"evaluations", r.evaluations},
          {"converged", r.converged},
          {"best_restart", r.best_restart},
          {"best_f", poly_to_json(r.best_f)},
          {"best_h", poly_to_json(r.best_h)},
          {"history", history}};
}

json sweep_to_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const SweepRow& r : rows) out.push_back({{"k", r.k}, {"ratio", r.ratio}, {"gap", r.gap}});
  return out;
}

json invariants_to_json(const InvariantReport& r) {
  json entries = json::array();
  for (const InvariantEntry& e : r.entries) {
    entries.push_back({{"name", e.name},
                       {"samples", e.samples},
                       {"worst_margin", number(e.worst_margin)},
                       {"passed", e.passed}});
  }
  return {{"seed", r.seed}, {"all_passed", r.all_passed()}, {"entries", entries}};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return x;
}

void write_csv(std::ostream& os, const CsvTable& t) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw std::invalid_argument("CSV row width differs from header");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

CsvTable sweep_to_csv(const std::vector<SweepRow>& rows) {
  CsvTable t{{"k", "ratio", "gap"}, {}};
  for (const SweepRow& r : rows) t.rows.push_back({std::to_string(r.k), format_double(r.ratio), format_double(r.gap)});
  return t;
}

std::vector<SweepRow> sweep_from_csv(const CsvTable& t) {
  if (t.header != std::vector<std::string>{"k", "ratio", "gap"}) throw std::invalid_argument("not a sweep table");
  std::vector<SweepRow> rows;
  for (const auto& r : t.rows) rows.push_back({std::stol(r[0]), parse_double(r[1]), parse_double(r[2])});
  return rows;
}

CsvTable history_to_csv(const SearchReport& r) {
  CsvTable t{{"iteration", "ratio", "best_ratio", "evaluations", "converged"}, {}};
  for (const HistoryEntry& h : r.history) {
    t.rows.push_back({std::to_string(h.restart), format_double(h.ratio), format_double(h.best_ratio),
                      std::to_string(h.evaluations), h.converged ? "true" : "false"});
  }
  return t;
}

CsvTable invariants_to_csv(const InvariantReport& r) {
  CsvTable t{{"name", "samples", "worst_margin", "passed"}, {}};
  for (const InvariantEntry& e : r.entries) {
    t.rows.push_back({e.name, std::to_string(e.samples), format_double(e.worst_margin), e.passed ? "true" : "false"});
  }
  return t;
}

}  // namespace fock::io
