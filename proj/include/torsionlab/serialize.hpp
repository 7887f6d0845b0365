#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torsionlab/asymptotics.hpp"
#include "torsionlab/knot_invariants.hpp"

namespace torsionlab {

/// Wire records: everything the CLI emits, reduced to doubles and strings
/// ahead of serialization.

struct TorsionRecord {
  int n = 0;
  int j = 0;
  std::int64_t N = 0;
  double log_magnitude = 0.0;
  std::optional<double> value_re, value_im;
  std::string provenance;
};

struct RepImageRecord {
  std::string generator;
  std::array<double, 8> entries;  // row-major 2x2, (re, im) pairs
};

struct RepRecord {
  std::string kind;  // "metabelian" or "surgery"
  int n = 0;
  std::optional<int> k, j;
  std::optional<double> u;
  std::optional<std::pair<std::int64_t, std::int64_t>> xi;  // numer/denom
  std::optional<int> p_k;
  std::vector<RepImageRecord> images;
  double max_residual = 0.0;
  bool irreducible = false;
  bool metabelian_tag = false;
};

std::string to_json(const TorsionRecord& r);
std::string to_json(const std::vector<RepRecord>& reps);
std::string to_json(const AsymptoticsReport& rep);
std::string to_json(const std::vector<AsymptoticsReport>& reps);
std::string to_json(const LimitSet& ls, int n);

std::string to_csv(const TorsionRecord& r);
/// Columns N,seq,limit,abs_error; multi-report emission separates blocks with
/// '# n=.. j=..' comment lines.
std::string to_csv(const std::vector<AsymptoticsReport>& reps);

/// Fixed-width human tables, rounded to 12 significant digits.
std::string to_table(const TorsionRecord& r);
std::string to_table(const std::vector<RepRecord>& reps);
std::string to_table(const std::vector<AsymptoticsReport>& reps);
std::string to_table(const LimitSet& ls, int n);

std::string format_sig12(double v);
std::string format_full(double v);

}  // namespace torsionlab
