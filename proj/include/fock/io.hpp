#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fock/explorer.hpp"
#include "fock/poly.hpp"

// JSON and CSV encodings shared by the command line tool and the tests.

namespace fock::io {

inline constexpr const char* kSchema = "fock-sharp/1";

/// {"n": int, "terms": [{"index": [j1..jn], "re": x, "im": y}]}
nlohmann::json poly_to_json(const HoloPoly& f);
/// Throws DimensionMismatch on inconsistent index lengths, std::invalid_argument on malformed input.
HoloPoly poly_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SearchReport& r);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows);
nlohmann::json invariants_to_json(const InvariantReport& r);

/// Shortest-safe decimal form: 17 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double x);
/// Inverse of format_double; throws std::invalid_argument on trailing garbage.
double parse_double(const std::string& s);

/// Minimal CSV table: header row plus data rows, comma separated, no quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const CsvTable& t);
/// Throws std::invalid_argument when a row's width differs from the header.
CsvTable read_csv(std::istream& is);

CsvTable sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(const CsvTable& t);
/// One row per restart: iteration, ratio, best_ratio, evaluations, converged.
CsvTable history_to_csv(const SearchReport& r);
CsvTable invariants_to_csv(const InvariantReport& r);

}  // namespace fock::io
