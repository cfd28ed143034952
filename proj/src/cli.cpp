#include "nkinf/cli.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nkinf {

using nlohmann::ordered_json;

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view text, const QRingPtr& ring) : text_(text), ring_(ring) {}

  QPolynomial parse() {
    QPolynomial sum(ring_);
    skip_space();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      QPolynomial term = parse_term();
      sum += negative ? -term : term;
      skip_space();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      negative = peek() == '-';
      ++pos_;
    }
    return sum;
  }

 private:
  QPolynomial parse_term() {
    Rational coeff(1L);
    Monomial mono;
    bool first = true;
    while (true) {
      skip_space();
      if (at_end()) fail(first ? "expected a term" : "expected a factor");
      if (is_digit(peek())) {
        coeff *= parse_number();
      } else if (is_name_start(peek())) {
        std::size_t start = pos_;
        std::string name = parse_name();
        auto index = ring_->index_of(name);
        if (!index) fail("undeclared variable '" + name + "'", start);
        unsigned power = 1;
        skip_space();
        if (peek() == '^') {
          ++pos_;
          skip_space();
          power = parse_exponent();
        }
        unsigned total = mono[*index] + power;
        if (total > std::numeric_limits<std::uint16_t>::max()) fail("exponent too large", start);
        mono.set(*index, total);
      } else {
        fail(first ? "expected a term" : "expected a factor");
      }
      first = false;
      skip_space();
      if (peek() != '*') break;
      ++pos_;
    }
    if (coeff.is_zero()) return QPolynomial(ring_);
    return QPolynomial::from_sorted(ring_, {{mono, coeff}});
  }

  Rational parse_number() {
    mpz_class num = parse_digits();
    skip_space();
    if (peek() != '/') return Rational(num);
    ++pos_;
    skip_space();
    std::size_t start = pos_;
    if (at_end() || !is_digit(peek())) fail("expected a denominator");
    mpz_class den = parse_digits();
    if (den == 0) fail("zero denominator", start);
    return Rational(num, den);
  }

  mpz_class parse_digits() {
    std::size_t start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  unsigned parse_exponent() {
    std::size_t start = pos_;
    if (at_end() || !is_digit(peek())) fail("expected an exponent");
    while (!at_end() && is_digit(peek())) ++pos_;
    if (pos_ - start > 5) fail("exponent too large", start);
    unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    if (e > std::numeric_limits<std::uint16_t>::max()) fail("exponent too large", start);
    return e;
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())) != 0) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  std::string_view text_;
  QRingPtr ring_;
  std::size_t pos_ = 0;
};

ordered_json integer_strings(const UnivariatePolynomial& rho) {
  ordered_json out = ordered_json::array();
  for (const auto& c : rho.coefficients()) out.push_back(c.str());
  return out;
}

ordered_json value_set_to_json(const ValueSet& vs) {
  ordered_json j;
  j["rho"] = integer_strings(vs.rho);
  ordered_json rational = ordered_json::array();
  for (const auto& r : vs.rational_roots) rational.push_back(r.str());
  ordered_json approx = ordered_json::array();
  for (const auto& r : vs.approx_roots) approx.push_back({r.real(), r.imag()});
  j["roots"] = {{"rational", rational}, {"approx", approx}, {"converged", vs.approx_converged}};
  j["flags"] = vs.flags();
  return j;
}

ValueSet value_set_from_json(const ordered_json& j) {
  ValueSet vs;
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("rho")) coeffs.push_back(Rational::parse(c.get<std::string>()));
  vs.rho = UnivariatePolynomial(std::move(coeffs));
  for (const auto& r : j.at("roots").at("rational")) vs.rational_roots.push_back(Rational::parse(r.get<std::string>()));
  for (const auto& r : j.at("roots").at("approx")) vs.approx_roots.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
  vs.approx_converged = j.at("roots").at("converged").get<bool>();
  for (const auto& flag : j.at("flags")) {
    auto s = flag.get<std::string>();
    if (s == "vertical_component") vs.vertical_component = true;
    if (s == "empty_curve") vs.empty_curve = true;
  }
  return vs;
}

ordered_json bound_to_json(const std::optional<std::int64_t>& b) {
  return b ? ordered_json(*b) : ordered_json("not applicable");
}

std::optional<std::int64_t> bound_from_json(const ordered_json& j) {
  if (j.is_string()) return std::nullopt;
  return j.get<std::int64_t>();
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t used = 0;
  auto v = std::stoull(s, &used, 10);
  if (used != s.size()) throw std::invalid_argument("bad unsigned integer " + s);
  return v;
}

std::string set_text(const ValueSet& vs) {
  if (vs.empty()) return "{}";
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& r : vs.rational_roots) {
    os << (first ? "" : ", ") << r.str();
    first = false;
  }
  std::size_t irrational = static_cast<std::size_t>(vs.rho.degree()) - vs.rational_roots.size();
  if (irrational > 0) os << (first ? "" : ", ") << irrational << " irrational";
  os << "}";
  return os.str();
}

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

void write_value_set(std::ostream& out, const std::string& indent, const ValueSet& vs) {
  out << indent << std::left << std::setw(10) << "rho" << vs.rho.str() << "\n";
  out << indent << std::setw(10) << "values" << set_text(vs) << "\n";
  if (!vs.approx_roots.empty()) {
    out << indent << std::setw(10) << "approx";
    for (std::size_t i = 0; i < vs.approx_roots.size(); ++i) {
      out << (i == 0 ? "" : ", ") << complex_text(vs.approx_roots[i]);
    }
    out << (vs.approx_converged ? "" : "  (not converged)") << "\n";
  }
  auto flags = vs.flags();
  if (!flags.empty()) {
    out << indent << std::setw(10) << "flags";
    for (std::size_t i = 0; i < flags.size(); ++i) out << (i == 0 ? "" : ", ") << flags[i];
    out << "\n";
  }
}

std::string joined(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i == 0 ? "" : ", ") + items[i];
  return s;
}

}  // namespace

QPolynomial parse_polynomial(std::string_view text, const QRingPtr& ring) { return Parser(text, ring).parse(); }

std::vector<std::string> parse_variable_list(std::string_view text) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])) != 0) ++pos;
    std::size_t start = pos;
    if (pos >= text.size() || !is_name_start(text[pos])) throw ParseError("expected a variable name", pos);
    while (pos < text.size() && is_name_char(text[pos])) ++pos;
    std::string name(text.substr(start, pos - start));
    if (std::find(names.begin(), names.end(), name) != names.end()) {
      throw ParseError("repeated variable '" + name + "'", start);
    }
    names.push_back(std::move(name));
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])) != 0) ++pos;
    if (pos >= text.size()) break;
    if (text[pos] != ',') throw ParseError("expected ','", pos);
    ++pos;
  }
  if (names.size() > kMaxVariables) throw ParseError("too many variables", 0);
  return names;
}

ordered_json report_to_json(const DetectionReport& report, bool timings) {
  ordered_json j;
  j["schema"] = kJsonSchemaVersion;
  j["input"] = report.input;
  j["variables"] = report.variables;
  j["degree"] = report.degree;
  j["method"] = to_string(report.method);
  j["config"] = {{"seed", std::to_string(report.config.seed)},
                 {"runs", report.config.runs},
                 {"coeff_bound", std::to_string(report.config.coeff_bound)},
                 {"force_general_case", report.config.force_general_case},
                 {"tolerance", report.config.tolerance}};
  ordered_json runs = ordered_json::array();
  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const auto& run = report.runs[r];
    ordered_json rj;
    rj["index"] = r;
    rj["seed"] = std::to_string(run.seed);
    rj["variant"] = run.variant;
    rj["attempts"] = run.attempts;
    rj["dimension"] = run.dimension;
    if (run.coefficients) {
      rj["coefficients"] = {{"a", run.coefficients->a}, {"b", run.coefficients->b}, {"beta", run.coefficients->beta}};
    }
    if (!run.coordinate_change.empty()) rj["coordinate_change"] = run.coordinate_change;
    if (!run.steps.empty()) {
      ordered_json steps = ordered_json::array();
      for (const auto& s : run.steps) {
        ordered_json sj = {{"step", s.step},       {"variables", s.slice_variables}, {"beta", s.beta},
                           {"attempts", s.attempts}, {"dimension", s.dimension}};
        sj.update(value_set_to_json(s.values));
        steps.push_back(std::move(sj));
      }
      rj["steps"] = std::move(steps);
    }
    rj.update(value_set_to_json(run.values));
    if (timings) rj["millis"] = run.millis;
    runs.push_back(std::move(rj));
  }
  j["runs"] = std::move(runs);
  j["s_final"] = value_set_to_json(report.s_final);
  j["critical_values"] = value_set_to_json(report.critical);
  j["bounds"] = {{"nk", bound_to_json(report.bounds.nk)},
                 {"superpolar", bound_to_json(report.bounds.superpolar)},
                 {"kinf", bound_to_json(report.bounds.kinf)}};
  ordered_json noncritical = ordered_json::array();
  for (const auto& z : report.approx_noncritical) noncritical.push_back({z.real(), z.imag()});
  j["approx_noncritical"] = std::move(noncritical);
  j["warnings"] = report.warnings;
  return j;
}

DetectionReport report_from_json(const ordered_json& j) {
  if (j.at("schema").get<int>() != kJsonSchemaVersion) throw std::invalid_argument("unsupported report schema");
  DetectionReport report;
  report.input = j.at("input").get<std::string>();
  report.variables = j.at("variables").get<std::vector<std::string>>();
  report.degree = j.at("degree").get<int>();
  report.method = method_from_string(j.at("method").get<std::string>());
  const auto& cfg = j.at("config");
  report.config.seed = parse_u64(cfg.at("seed").get<std::string>());
  report.config.runs = cfg.at("runs").get<int>();
  report.config.coeff_bound = std::stoll(cfg.at("coeff_bound").get<std::string>());
  report.config.force_general_case = cfg.at("force_general_case").get<bool>();
  report.config.tolerance = cfg.at("tolerance").get<double>();
  for (const auto& rj : j.at("runs")) {
    RunRecord run;
    run.seed = parse_u64(rj.at("seed").get<std::string>());
    run.variant = rj.at("variant").get<std::string>();
    run.attempts = rj.at("attempts").get<int>();
    run.dimension = rj.at("dimension").get<int>();
    if (rj.contains("coefficients")) {
      const auto& c = rj.at("coefficients");
      run.coefficients = SuperPolarCoefficients{c.at("a").get<std::vector<std::vector<std::int64_t>>>(),
                                                c.at("b").get<std::vector<std::vector<std::vector<std::int64_t>>>>(),
                                                c.at("beta").get<std::vector<std::int64_t>>()};
    }
    if (rj.contains("coordinate_change")) {
      run.coordinate_change = rj.at("coordinate_change").get<std::vector<std::vector<std::int64_t>>>();
    }
    if (rj.contains("steps")) {
      for (const auto& sj : rj.at("steps")) {
        StepRecord s;
        s.step = sj.at("step").get<int>();
        s.slice_variables = sj.at("variables").get<std::vector<std::string>>();
        s.beta = sj.at("beta").get<std::vector<std::int64_t>>();
        s.attempts = sj.at("attempts").get<int>();
        s.dimension = sj.at("dimension").get<int>();
        s.values = value_set_from_json(sj);
        run.steps.push_back(std::move(s));
      }
    }
    run.values = value_set_from_json(rj);
    if (rj.contains("millis")) run.millis = rj.at("millis").get<double>();
    report.runs.push_back(std::move(run));
  }
  report.s_final = value_set_from_json(j.at("s_final"));
  report.critical = value_set_from_json(j.at("critical_values"));
  const auto& b = j.at("bounds");
  report.bounds = {bound_from_json(b.at("nk")), bound_from_json(b.at("superpolar")), bound_from_json(b.at("kinf"))};
  for (const auto& z : j.at("approx_noncritical")) {
    report.approx_noncritical.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  }
  report.warnings = j.at("warnings").get<std::vector<std::string>>();
  return report;
}

ordered_json document_to_json(const RunConfig& config, const std::vector<DetectionReport>& reports) {
  if (reports.size() == 1) return report_to_json(reports.front(), config.timings);
  ordered_json j;
  j["schema"] = kJsonSchemaVersion;
  j["method"] = config.method;
  ordered_json list = ordered_json::array();
  for (const auto& r : reports) list.push_back(report_to_json(r, config.timings));
  j["reports"] = std::move(list);
  return j;
}

void write_text_report(std::ostream& out, const DetectionReport& report) {
  const auto& cfg = report.config;
  out << "f = " << report.input << "   in C[" << joined(report.variables) << "], degree " << report.degree << "\n";
  out << "method " << to_string(report.method) << ", " << cfg.runs << " run(s), seed " << cfg.seed
      << ", coefficients in [-" << cfg.coeff_bound << ", " << cfg.coeff_bound << "]"
      << (cfg.force_general_case ? ", general case forced" : "") << "\n";
  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const auto& run = report.runs[r];
    out << "\nrun " << r << "  seed " << run.seed << "  " << run.variant << "  attempts " << run.attempts
        << "  dim " << run.dimension << "\n";
    for (const auto& s : run.steps) {
      out << "  step " << s.step << " in (" << joined(s.slice_variables) << ")\n";
      write_value_set(out, "    ", s.values);
    }
    write_value_set(out, "  ", run.values);
  }
  out << "\nS (intersection of runs)\n";
  write_value_set(out, "  ", report.s_final);
  out << "\ncritical values\n";
  write_value_set(out, "  ", report.critical);
  if (!report.approx_noncritical.empty()) {
    out << "\nvalues of S away from critical values\n  ";
    for (std::size_t i = 0; i < report.approx_noncritical.size(); ++i) {
      out << (i == 0 ? "" : ", ") << complex_text(report.approx_noncritical[i]);
    }
    out << "\n";
  }
  auto bound = [](const std::optional<std::int64_t>& b) { return b ? std::to_string(*b) : std::string("n/a"); };
  out << "\nbounds  nk " << bound(report.bounds.nk) << "  superpolar " << bound(report.bounds.superpolar) << "  kinf "
      << bound(report.bounds.kinf) << "\n";
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
}

int run_cli(const RunConfig& config, const std::vector<std::string>& variables, const std::string& polynomial,
            std::ostream& out, std::ostream& err) {
  std::vector<Method> methods;
  QPolynomial f(make_ring<RationalField>({"x"}));
  try {
    if (config.method == "both") {
      methods = {Method::super_polar, Method::iterated_polar};
    } else {
      methods = {method_from_string(config.method)};
    }
    if (config.detector.runs < 1) throw std::invalid_argument("--runs must be at least 1");
    if (config.detector.coeff_bound < 2) throw std::invalid_argument("--coeff-bound must be at least 2");
    if (variables.size() < 2) throw std::invalid_argument("at least two variables are required");
    f = parse_polynomial(polynomial, make_ring<RationalField>(variables));
    if (f.is_constant()) throw std::invalid_argument("the polynomial is constant");
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitParseError;
  }

  std::vector<DetectionReport> reports;
  try {
    for (auto m : methods) reports.push_back(run_detection(f, m, config.detector));
  } catch (const DimensionGuardExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExitGuardExhausted;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }

  if (config.json) {
    out << document_to_json(config, reports).dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i > 0) out << "\n" << std::string(60, '-') << "\n\n";
      write_text_report(out, reports[i]);
    }
  }
  return kExitOk;
}

}  // namespace nkinf
