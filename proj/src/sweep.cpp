#include "multiaxial/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "multiaxial/classify.hpp"
#include "multiaxial/errors.hpp"
#include "multiaxial/io.hpp"

namespace multiaxial {

namespace {

struct PointValues {
  double min_eigenvalue = 0.0;
  std::optional<double> ppt_min;
  std::string signature;
};

PointValues evaluate_point(const SweepOptions& opt, const std::map<std::string, double>& params, bool want_class) {
  const FamilyState st = build_family(FamilySpec{opt.family, params}, opt.tol);
  PointValues v;
  v.min_eigenvalue = validate(st.rho, opt.tol).min_eigenvalue;
  if (st.rho.j() == HalfInteger(1)) v.ppt_min = ppt_two_qubit(symmetric_to_two_qubit(st.rho), opt.tol.psd).min_eigenvalue;
  if (want_class) {
    try {
      v.signature = class_signature(st.rho, opt.tol).str();
    } catch (const Error& e) {
      v.signature = std::string("error: ") + e.what();
    }
  }
  return v;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Predicate used for a boundary kind: true on the "allowed" side.
bool satisfied(RowKind kind, const PointValues& v, const Tolerances& tol) {
  if (kind == RowKind::psd_boundary) return v.min_eigenvalue >= -tol.psd;
  return v.ppt_min && *v.ppt_min >= -tol.psd;
}

std::string csv_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

double SweepRange::value(int i) const {
  if (count <= 1) return start;
  if (i == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

SweepRange parse_sweep_range(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ParseError("range '" + std::string(text) + "' must look like name=start:stop:count or name=value", 0);
  }
  SweepRange r;
  r.name = std::string(text.substr(0, eq));
  const std::string_view spec = text.substr(eq + 1);
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const auto colon = spec.find(':', pos);
    parts.push_back(spec.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) {
    r.start = r.stop = evaluate_expression(parts[0]);
    r.count = 1;
  } else if (parts.size() == 3) {
    r.start = evaluate_expression(parts[0]);
    r.stop = evaluate_expression(parts[1]);
    const double c = evaluate_expression(parts[2]);
    if (c < 1 || c != std::floor(c)) throw ParseError("range count must be a positive integer in '" + std::string(text) + "'", eq + 1);
    r.count = static_cast<int>(c);
  } else {
    throw ParseError("range '" + std::string(text) + "' must have 1 or 3 ':'-separated fields", eq + 1);
  }
  return r;
}

SweepColumns parse_sweep_columns(std::string_view text) {
  SweepColumns c{false, false, false};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (item == "psd") c.psd = true;
    else if (item == "ppt") c.ppt = true;
    else if (item == "class") c.cls = true;
    else if (!item.empty()) throw ParseError("unknown report column '" + std::string(item) + "' (use psd, ppt, class)", pos);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return c;
}

std::string_view row_kind_name(RowKind k) {
  switch (k) {
    case RowKind::grid: return "grid";
    case RowKind::psd_boundary: return "psd_boundary";
    case RowKind::ppt_boundary: return "ppt_boundary";
  }
  return "?";
}

std::vector<SweepRow> run_sweep(const SweepOptions& opt) {
  const auto& names = family_parameters(opt.family);
  const auto known = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  std::vector<std::string> used{opt.primary.name};
  for (const auto& s : opt.scans) used.push_back(s.name);
  for (const auto& [n, v] : opt.fixed) used.push_back(n);
  for (const auto& n : used) {
    if (!known(n)) {
      throw DomainError("family " + std::string(family_name(opt.family)) + " has no parameter '" + n + "'; expected " +
                        family_ranges(opt.family));
    }
    if (std::count(used.begin(), used.end(), n) > 1) throw DomainError("parameter '" + n + "' given more than once");
  }
  if (opt.primary.count < 1) throw DomainError("primary range needs at least one point");

  // Outer grid points, first scan slowest.
  std::vector<std::map<std::string, double>> lines{opt.fixed};
  for (const auto& s : opt.scans) {
    std::vector<std::map<std::string, double>> next;
    for (const auto& base : lines)
      for (int i = 0; i < s.count; ++i) {
        auto p = base;
        p[s.name] = s.value(i);
        next.push_back(std::move(p));
      }
    lines = std::move(next);
  }

  const auto n_primary = static_cast<std::size_t>(opt.primary.count);
  const std::size_t n_grid = lines.size() * n_primary;
  const auto grid_params = [&](std::size_t idx) {
    auto p = lines[idx / n_primary];
    p[opt.primary.name] = opt.primary.value(static_cast<int>(idx % n_primary));
    return p;
  };

  // Fail fast on parameter errors before spawning work.
  (void)build_family(FamilySpec{opt.family, grid_params(0)}, opt.tol);

  std::vector<PointValues> grid(n_grid);
  parallel_for(n_grid, opt.threads, [&](std::size_t i) { grid[i] = evaluate_point(opt, grid_params(i), opt.columns.cls); });

  struct Bracket {
    std::size_t line, left;
    RowKind kind;
  };
  std::vector<Bracket> brackets;
  for (std::size_t l = 0; l < lines.size(); ++l)
    for (std::size_t i = 0; i + 1 < n_primary; ++i)
      for (RowKind kind : {RowKind::psd_boundary, RowKind::ppt_boundary}) {
        if (kind == RowKind::psd_boundary && !opt.columns.psd) continue;
        if (kind == RowKind::ppt_boundary && (!opt.columns.ppt || !grid[l * n_primary].ppt_min)) continue;
        const auto& a = grid[l * n_primary + i];
        const auto& b = grid[l * n_primary + i + 1];
        if (satisfied(kind, a, opt.tol) != satisfied(kind, b, opt.tol)) brackets.push_back({l, i, kind});
      }

  std::vector<SweepRow> boundary(brackets.size());
  parallel_for(brackets.size(), opt.threads, [&](std::size_t bi) {
    const Bracket& br = brackets[bi];
    double lo = opt.primary.value(static_cast<int>(br.left));
    double hi = opt.primary.value(static_cast<int>(br.left + 1));
    const bool lo_side = satisfied(br.kind, grid[br.line * n_primary + br.left], opt.tol);
    auto p = lines[br.line];
    while (std::abs(hi - lo) > opt.bisect_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      p[opt.primary.name] = mid;
      if (satisfied(br.kind, evaluate_point(opt, p, false), opt.tol) == lo_side) lo = mid;
      else hi = mid;
    }
    p[opt.primary.name] = 0.5 * (lo + hi);
    const PointValues v = evaluate_point(opt, p, opt.columns.cls);
    boundary[bi] = SweepRow{br.kind, br.line, p, v.min_eigenvalue, v.ppt_min, v.signature};
  });

  std::vector<SweepRow> rows;
  rows.reserve(n_grid + boundary.size());
  std::size_t b = 0;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    for (std::size_t i = 0; i < n_primary; ++i) {
      const auto& v = grid[l * n_primary + i];
      rows.push_back(SweepRow{RowKind::grid, l, grid_params(l * n_primary + i), v.min_eigenvalue, v.ppt_min, v.signature});
    }
    while (b < boundary.size() && boundary[b].scan_index == l) rows.push_back(boundary[b++]);
  }
  return rows;
}

std::string format_sweep_csv(const SweepOptions& opt, const std::vector<SweepRow>& rows) {
  std::vector<std::string> params;
  for (const auto& n : family_parameters(opt.family)) {
    const bool present = n == opt.primary.name || opt.fixed.count(n) ||
                         std::any_of(opt.scans.begin(), opt.scans.end(), [&](const SweepRange& s) { return s.name == n; });
    if (present) params.push_back(n);
  }
  std::ostringstream os;
  os << "kind";
  for (const auto& n : params) os << "," << n;
  if (opt.columns.psd) os << ",min_eigenvalue";
  if (opt.columns.ppt) os << ",ppt_min_eigenvalue";
  if (opt.columns.cls) os << ",signature";
  os << "\n";
  for (const auto& r : rows) {
    os << row_kind_name(r.kind);
    for (const auto& n : params) os << "," << csv_number(r.params.at(n));
    if (opt.columns.psd) os << "," << csv_number(r.min_eigenvalue);
    if (opt.columns.ppt) os << "," << (r.ppt_min_eigenvalue ? csv_number(*r.ppt_min_eigenvalue) : "undetermined");
    if (opt.columns.cls) os << ",\"" << r.signature << "\"";
    os << "\n";
  }
  return os.str();
}

}  // namespace multiaxial
