// Command-line front end: analyze, compare, generate, sweep, selftest.
//
// Exit codes: 0 success, 1 usage or parse error, 2 validation failure.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multiaxial/errors.hpp"
#include "multiaxial/io.hpp"
#include "multiaxial/report.hpp"
#include "multiaxial/selftest.hpp"
#include "multiaxial/sweep.hpp"

namespace {

using namespace multiaxial;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;

struct CommonFlags {
  Tolerances tol;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_format = true) {
  cmd->add_option("--tol-angle", flags.tol.angle, "Angle below which axes are identical (rad)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-zero", flags.tol.zero, "Tensor rank treated as absent below this")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  if (with_format) {
    cmd->add_option("--format", flags.format, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "text"}));
  }
  cmd->add_option("--out", flags.out, "Write output here instead of stdout");
}

void emit(const CommonFlags& flags, const std::string& text) {
  if (flags.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(flags.out, text);
  }
}

int report_error(const std::exception& e) {
  std::cerr << "error: " << e.what();
  if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe && pe->position() != ParseError::npos) {
    std::cerr << " (at byte " << pe->position() << ")";
  }
  std::cerr << "\n";
  if (dynamic_cast<const ValidationError*>(&e)) return kInvalid;
  return kUsage;
}

// Inline JSON when the argument starts with '{', otherwise a file path.
std::string json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  return read_text_file(arg);
}

int cmd_analyze(const std::string& path, const CommonFlags& flags) {
  const StateDocument doc = read_state_file(path);
  const AnalysisReport rep = analyze(doc.rho, flags.tol);
  emit(flags, flags.format == "text" ? format_report_text(rep) : format_report_json(rep));
  return rep.ok() ? kOk : kInvalid;
}

int cmd_compare(const std::string& a, const std::string& b, const CommonFlags& flags) {
  const StateDocument da = read_state_file(a);
  const StateDocument db = read_state_file(b);
  const LuVerdict v = lu_equivalent(da.rho, db.rho, flags.tol);
  if (flags.format == "text") {
    std::string text = std::string(equivalence_name(v.verdict)) + ": " + v.reason + "\n";
    if (v.witness) {
      text += "witness (alpha, beta, gamma) = (" + std::to_string(v.witness->alpha) + ", " +
              std::to_string(v.witness->beta) + ", " + std::to_string(v.witness->gamma) + ") rad\n";
    }
    emit(flags, text);
  } else {
    emit(flags, to_json(v).dump(2) + "\n");
  }
  return kOk;
}

int cmd_generate(const std::string& spec_arg, bool amplitudes, const CommonFlags& flags) {
  const FamilySpec spec = parse_family_spec(json_argument(spec_arg));
  const FamilyState st = build_family(spec, flags.tol);
  emit(flags, (amplitudes && st.pure) ? format_state(*st.pure) : format_state(st.rho));
  if (!st.in_range) {
    std::cerr << "warning: " << st.note << "\n";
    return kInvalid;
  }
  return kOk;
}

int cmd_sweep(const std::string& family, const std::string& vary, const std::vector<std::string>& scans,
              const std::vector<std::string>& fixed, const std::string& columns, double bisect_tol, int threads,
              const CommonFlags& flags) {
  SweepOptions opt;
  opt.family = parse_family(family);
  opt.primary = parse_sweep_range(vary);
  for (const auto& s : scans) opt.scans.push_back(parse_sweep_range(s));
  for (const auto& f : fixed) {
    const SweepRange r = parse_sweep_range(f);
    if (r.count != 1) throw ParseError("--fix takes name=value, got '" + f + "'");
    opt.fixed[r.name] = r.start;
  }
  opt.columns = parse_sweep_columns(columns);
  opt.bisect_tol = bisect_tol;
  opt.threads = threads;
  opt.tol = flags.tol;
  emit(flags, format_sweep_csv(opt, run_sweep(opt)));
  return kOk;
}

int cmd_selftest() {
  int failed = 0;
  for (const auto& c : run_selftest()) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) {
      std::cout << ": " << c.detail;
      ++failed;
    }
    std::cout << "\n";
  }
  return failed == 0 ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiaxial classification of symmetric multi-qubit states"};
  app.require_subcommand(1);

  CommonFlags analyze_flags;
  std::string analyze_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Full decomposition report of a state file");
  analyze_cmd->add_option("state", analyze_path, "State or tensor JSON file")->required();
  add_common(analyze_cmd, analyze_flags);

  CommonFlags compare_flags;
  std::string compare_a, compare_b;
  auto* compare_cmd = app.add_subcommand("compare", "Local-unitary equivalence of two states");
  compare_cmd->add_option("first", compare_a, "State file")->required();
  compare_cmd->add_option("second", compare_b, "State file")->required();
  add_common(compare_cmd, compare_flags);

  CommonFlags generate_flags;
  std::string generate_spec;
  bool generate_amplitudes = false;
  auto* generate_cmd = app.add_subcommand("generate", "Write a family member as a state file");
  generate_cmd->add_option("spec", generate_spec, "Family spec JSON file, or inline JSON")->required();
  generate_cmd->add_flag("--amplitudes", generate_amplitudes, "Write pure states as amplitude vectors");
  add_common(generate_cmd, generate_flags, false);

  CommonFlags sweep_flags;
  std::string sweep_family, sweep_vary, sweep_columns = "psd,ppt,class";
  std::vector<std::string> sweep_scans, sweep_fixed;
  double sweep_bisect = 1e-9;
  int sweep_threads = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Scan family parameters and bisect PSD/PPT boundaries (CSV)");
  sweep_cmd->add_option("--family", sweep_family, "Family name")->required();
  sweep_cmd->add_option("--vary", sweep_vary, "Bisected parameter, name=start:stop:count")->required();
  sweep_cmd->add_option("--scan", sweep_scans, "Outer grid parameter, name=start:stop:count");
  sweep_cmd->add_option("--fix", sweep_fixed, "Fixed parameter, name=value");
  sweep_cmd->add_option("--report", sweep_columns, "Columns: psd,ppt,class")->capture_default_str();
  sweep_cmd->add_option("--bisect-tol", sweep_bisect, "Boundary bracket width")->capture_default_str()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--threads", sweep_threads, "Worker threads")->capture_default_str()->check(CLI::Range(1, 256));
  add_common(sweep_cmd, sweep_flags, false);

  auto* selftest_cmd = app.add_subcommand("selftest", "Check the reference corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze_path, analyze_flags);
    if (*compare_cmd) return cmd_compare(compare_a, compare_b, compare_flags);
    if (*generate_cmd) return cmd_generate(generate_spec, generate_amplitudes, generate_flags);
    if (*sweep_cmd) {
      return cmd_sweep(sweep_family, sweep_vary, sweep_scans, sweep_fixed, sweep_columns, sweep_bisect, sweep_threads,
                       sweep_flags);
    }
    if (*selftest_cmd) return cmd_selftest();
  } catch (const std::exception& e) {
    return report_error(e);
  }
  return kUsage;
}
