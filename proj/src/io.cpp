#include "multiaxial/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "multiaxial/errors.hpp"

namespace multiaxial {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

const json& member(const json& doc, const char* key, const char* context) {
  if (!doc.is_object()) throw ParseError(std::string(context) + " must be a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string(context) + " is missing \"" + key + "\"");
  return *it;
}

HalfInteger parse_spin(const json& value) {
  try {
    if (value.is_string()) return HalfInteger::parse(value.get<std::string>());
    if (value.is_number()) return HalfInteger::from_double(value.get<double>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad spin: ") + e.what());
  }
  throw ParseError("\"j\" must be a string such as \"3/2\" or a number");
}

double number(const json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return evaluate_expression(value.get<std::string>());
  throw ParseError(where + " must be a number");
}

Complex parse_complex(const json& value, const std::string& where) {
  if (value.is_number() || value.is_string()) return {number(value, where), 0.0};
  if (value.is_object()) {
    const double re = value.contains("re") ? number(value["re"], where + ".re") : 0.0;
    const double im = value.contains("im") ? number(value["im"], where + ".im") : 0.0;
    return {re, im};
  }
  if (value.is_array() && value.size() == 2) return {number(value[0], where), number(value[1], where)};
  throw ParseError(where + " must be a number or {\"re\": ..., \"im\": ...}");
}

ordered_json complex_json(Complex c) {
  ordered_json e;
  e["re"] = c.real();
  e["im"] = c.imag();
  return e;
}

std::string where(std::size_t r) { return "[" + std::to_string(r) + "]"; }

// Recursive-descent evaluator for parameter expressions.
class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : s_(text) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression '" + std::string(s_) + "': " + msg + " at offset " + std::to_string(pos_), pos_);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  double atom() {
    skip();
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "pi") return std::numbers::pi;
      if (name == "sqrt") {
        if (!eat('(')) fail("expected '(' after sqrt");
        const double v = sum();
        if (!eat(')')) fail("expected ')'");
        return std::sqrt(v);
      }
      pos_ = start;
      fail("unknown name '" + std::string(name) + "'");
    }
    const char* begin = s_.data() + pos_;
    char* end = nullptr;
    const std::string tail(begin, s_.size() - pos_);
    const double v = std::strtod(tail.c_str(), &end);
    if (end == tail.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - tail.c_str());
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

double evaluate_expression(std::string_view text) { return ExpressionParser(text).parse(); }

StateDocument parse_state(std::string_view text) {
  const json doc = parse_json(text);
  if (doc.is_object() && doc.contains("tensors") && !doc.contains("matrix") && !doc.contains("amplitudes")) {
    return {reconstruct_density(parse_tensors(text)), std::nullopt};
  }
  const HalfInteger j = parse_spin(member(doc, "j", "state document"));
  try {
    require_spin(j);
  } catch (const std::domain_error& e) {
    throw StructuralError(e.what());
  }
  if (doc.contains("basis") && doc["basis"] != "jm_descending") {
    throw ParseError("unsupported basis " + doc["basis"].dump() + "; only \"jm_descending\" is defined");
  }
  const int n = dimension(j);

  if (doc.contains("amplitudes")) {
    const json& amps = doc["amplitudes"];
    if (!amps.is_array()) throw ParseError("\"amplitudes\" must be an array");
    if (static_cast<int>(amps.size()) != n) {
      throw StructuralError("j = " + j.str() + " needs " + std::to_string(n) + " amplitudes, got " +
                            std::to_string(amps.size()));
    }
    ComplexVector a(n);
    for (int i = 0; i < n; ++i) a(i) = parse_complex(amps[static_cast<std::size_t>(i)], "amplitudes" + where(i));
    PureState psi(j, std::move(a));
    DensityMatrix rho = pure_to_density(psi);
    return {std::move(rho), std::move(psi)};
  }

  const json& rows = member(doc, "matrix", "state document");
  if (!rows.is_array()) throw ParseError("\"matrix\" must be an array of rows");
  if (static_cast<int>(rows.size()) != n) {
    throw StructuralError("j = " + j.str() + " needs a " + std::to_string(n) + "x" + std::to_string(n) +
                          " matrix, got " + std::to_string(rows.size()) + " rows");
  }
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw StructuralError("matrix row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)], "matrix" + where(r) + where(c));
  }

  double defect = 0.0;
  int bad_r = 0, bad_c = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (const double d = std::abs(m(r, c) - std::conj(m(c, r))); d > defect) {
        defect = d;
        bad_r = r;
        bad_c = c;
      }
  if (defect > kInputHermiticityTol) {
    std::ostringstream os;
    os << "matrix is not Hermitian: |rho[" << bad_r << "][" << bad_c << "] - conj(rho[" << bad_c << "][" << bad_r
       << "])| = " << defect << " exceeds " << kInputHermiticityTol;
    throw ValidationError(os.str());
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  return {DensityMatrix(j, std::move(h)), std::nullopt};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error("write to '" + path + "' failed");
}

StateDocument read_state_file(const std::string& path) { return parse_state(read_text_file(path)); }

std::string format_state(const DensityMatrix& rho) {
  ordered_json doc;
  doc["j"] = rho.j().str();
  doc["basis"] = "jm_descending";
  ordered_json rows = ordered_json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string format_state(const PureState& psi) {
  ordered_json doc;
  doc["j"] = psi.j().str();
  doc["basis"] = "jm_descending";
  ordered_json amps = ordered_json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) amps.push_back(complex_json(psi.amplitudes()(i)));
  doc["amplitudes"] = std::move(amps);
  return doc.dump(2) + "\n";
}

SphericalTensorSet parse_tensors(std::string_view text) {
  const json doc = parse_json(text);
  const HalfInteger j = parse_spin(member(doc, "j", "tensor document"));
  try {
    require_spin(j);
  } catch (const std::domain_error& e) {
    throw StructuralError(e.what());
  }
  const json& ranks = member(doc, "tensors", "tensor document");
  if (!ranks.is_object()) throw ParseError("\"tensors\" must map rank to a component list");
  SphericalTensorSet t(j);
  for (const auto& [key, comps] : ranks.items()) {
    int k = -1;
    try {
      std::size_t used = 0;
      k = std::stoi(key, &used);
      if (used != key.size()) k = -1;
    } catch (const std::exception&) {
    }
    if (k < 0 || k > t.max_rank()) throw StructuralError("rank '" + key + "' outside 0.." + std::to_string(t.max_rank()));
    if (!comps.is_array()) throw ParseError("tensors[\"" + key + "\"] must be an array");
    for (const auto& c : comps) {
      if (!c.is_object() || !c.contains("q") || !c["q"].is_number_integer()) {
        throw ParseError("tensors[\"" + key + "\"] entries need an integer \"q\"");
      }
      const int q = c["q"].get<int>();
      if (q < -k || q > k) throw StructuralError("q = " + std::to_string(q) + " outside rank " + key);
      t.rank(k)[q] = parse_complex(c, "tensors[\"" + key + "\"]");
    }
  }
  return t;
}

std::string format_tensors(const SphericalTensorSet& t) {
  ordered_json doc;
  doc["j"] = t.j().str();
  ordered_json ranks = ordered_json::object();
  for (int k = 0; k <= t.max_rank(); ++k) {
    ordered_json comps = ordered_json::array();
    for (int q = -k; q <= k; ++q) {
      ordered_json e;
      e["q"] = q;
      e["re"] = t(k, q).real();
      e["im"] = t(k, q).imag();
      comps.push_back(std::move(e));
    }
    ranks[std::to_string(k)] = std::move(comps);
  }
  doc["tensors"] = std::move(ranks);
  return doc.dump(2) + "\n";
}

FamilySpec parse_family_spec(std::string_view text) {
  const json doc = parse_json(text);
  const json& name = member(doc, "family", "family spec");
  if (!name.is_string()) throw ParseError("\"family\" must be a string");
  FamilySpec spec;
  spec.family = parse_family(name.get<std::string>());
  if (doc.contains("params")) {
    const json& params = doc["params"];
    if (!params.is_object()) throw ParseError("\"params\" must be an object");
    for (const auto& [key, value] : params.items()) {
      if (value.is_string() && (key == "j" || key == "m")) {
        // Spins may be written as fractions.
        try {
          spec.params[key] = HalfInteger::parse(value.get<std::string>()).value();
          continue;
        } catch (const std::invalid_argument&) {
        }
      }
      spec.params[key] = number(value, "params." + key);
    }
  }
  return spec;
}

}  // namespace multiaxial
