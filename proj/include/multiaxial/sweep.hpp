#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multiaxial/families.hpp"

namespace multiaxial {

/// count evenly spaced values from start to stop inclusive.
struct SweepRange {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  double value(int i) const;
};

/// "r1=0.01:0.82:200" or "theta=pi/4" (a single value). Throws ParseError.
SweepRange parse_sweep_range(std::string_view text);

struct SweepColumns {
  bool psd = true;
  bool ppt = true;
  bool cls = true;
};

/// "psd,ppt,class". Throws ParseError on unknown names.
SweepColumns parse_sweep_columns(std::string_view text);

struct SweepOptions {
  Family family = Family::uniaxial;
  /// Varied fastest; boundaries are bisected along this parameter.
  SweepRange primary;
  /// Outer grid, first entry slowest.
  std::vector<SweepRange> scans;
  std::map<std::string, double> fixed;
  SweepColumns columns;
  /// Bisection stops once the bracket is narrower than this.
  double bisect_tol = 1e-9;
  int threads = 1;
  Tolerances tol;
};

enum class RowKind { grid, psd_boundary, ppt_boundary };

std::string_view row_kind_name(RowKind k);

struct SweepRow {
  RowKind kind = RowKind::grid;
  std::size_t scan_index = 0;  // position on the outer grid
  std::map<std::string, double> params;
  double min_eigenvalue = 0.0;
  /// Empty when PPT is undetermined (j != 1).
  std::optional<double> ppt_min_eigenvalue;
  std::string signature;
};

/// Grid rows in grid order, each outer line followed by its boundary rows.
/// Throws DomainError for parameter errors.
std::vector<SweepRow> run_sweep(const SweepOptions& options);

/// CSV with 17 significant digits. Columns: kind, every parameter in family
/// order, then min_eigenvalue / ppt_min_eigenvalue / signature as requested.
std::string format_sweep_csv(const SweepOptions& options, const std::vector<SweepRow>& rows);

}  // namespace multiaxial
