#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "selberg/verify.hpp"

namespace selberg {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

json rational_list(const std::vector<BigRational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(q.to_string());
  return out;
}

BigRational parse_rational(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return BigRational::parse(j.get<std::string>());
    if (j.is_number_integer()) return BigRational(j.get<long>());
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
  bad(where, "expected an integer or a \"p/q\" string");
}

std::vector<BigRational> parse_rational_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<BigRational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_rational(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <typename Int>
Int parse_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<Int>();
}

std::string points_text(const std::vector<BigRational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s + ")";
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complex_text(const ComplexF& z) {
  if (z.imag() == 0.0) return number(z.real());
  return number(z.real()) + (z.imag() < 0 ? "" : "+") + number(z.imag()) + "i";
}

json complex_json(const ComplexF& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json spec_to_json(const IntegralSpec& spec) {
  json j;
  j["theorem"] = std::string(to_string(spec.theorem));
  j["n"] = spec.n;
  j["r"] = spec.r;
  j["lambda"] = spec.lambda.parts();
  j["alpha"] = spec.alpha.to_string();
  j["beta"] = spec.beta.to_string();
  j["gamma"] = spec.gamma.to_string();
  j["alphas"] = rational_list(spec.alphas);
  j["points"] = rational_list(spec.points);
  j["method"] = std::string(to_string(spec.method));
  j["m"] = spec.m;
  j["n_samples"] = spec.n_samples;
  j["seed"] = spec.seed;
  j["tolerance"] = spec.tolerance ? json(*spec.tolerance) : json(nullptr);
  j["label"] = spec.label;
  return j;
}

IntegralSpec spec_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  static const std::vector<std::string> known = {"theorem", "n", "r", "lambda", "alpha", "beta", "gamma", "alphas",
                                                 "points", "method", "m", "n_samples", "seed", "tolerance", "label"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) bad(where + "." + key, "unknown field");
  }
  IntegralSpec spec;
  if (!j.contains("theorem") || !j["theorem"].is_string()) bad(where + ".theorem", "missing or not a string");
  try {
    spec.theorem = theorem_from_string(j["theorem"].get<std::string>());
  } catch (const std::exception& e) {
    bad(where + ".theorem", e.what());
  }
  auto field = [&](const char* key) { return where + "." + key; };
  if (j.contains("n")) spec.n = parse_int<int>(j["n"], field("n"));
  if (j.contains("r")) spec.r = parse_int<int>(j["r"], field("r"));
  if (j.contains("lambda")) {
    const json& l = j["lambda"];
    if (!l.is_array()) bad(field("lambda"), "expected an array of integers");
    std::vector<int> parts;
    for (std::size_t i = 0; i < l.size(); ++i) {
      parts.push_back(parse_int<int>(l[i], field("lambda") + "[" + std::to_string(i) + "]"));
    }
    try {
      spec.lambda = Partition(parts);
    } catch (const std::exception& e) {
      bad(field("lambda"), e.what());
    }
  }
  if (j.contains("alpha")) spec.alpha = parse_rational(j["alpha"], field("alpha"));
  if (j.contains("beta")) spec.beta = parse_rational(j["beta"], field("beta"));
  if (j.contains("gamma")) spec.gamma = parse_rational(j["gamma"], field("gamma"));
  if (j.contains("alphas")) spec.alphas = parse_rational_list(j["alphas"], field("alphas"));
  if (j.contains("points")) spec.points = parse_rational_list(j["points"], field("points"));
  if (j.contains("method")) {
    if (!j["method"].is_string()) bad(field("method"), "expected a string");
    try {
      spec.method = method_from_string(j["method"].get<std::string>());
    } catch (const std::exception& e) {
      bad(field("method"), e.what());
    }
  } else if (spec.theorem == Theorem::Recursion || spec.theorem == Theorem::IdentityChain ||
             spec.theorem == Theorem::Reduction) {
    spec.method = Method::Exact;
  }
  if (j.contains("m")) spec.m = parse_int<int>(j["m"], field("m"));
  if (j.contains("n_samples")) spec.n_samples = parse_int<std::int64_t>(j["n_samples"], field("n_samples"));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad(field("seed"), "expected a nonnegative integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerance") && !j["tolerance"].is_null()) {
    if (!j["tolerance"].is_number() || !(j["tolerance"].get<double>() > 0.0)) {
      bad(field("tolerance"), "expected a positive number");
    }
    spec.tolerance = j["tolerance"].get<double>();
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) bad(field("label"), "expected a string");
    spec.label = j["label"].get<std::string>();
  }
  return spec;
}

std::vector<IntegralSpec> suite_from_json(const json& j) {
  const json* cases = &j;
  if (j.is_object() && j.contains("cases")) cases = &j["cases"];
  if (!cases->is_array()) bad("config", "expected an array of cases");
  std::vector<IntegralSpec> out;
  for (std::size_t i = 0; i < cases->size(); ++i) {
    out.push_back(spec_from_json((*cases)[i], "config[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string params_digest(const IntegralSpec& spec) {
  std::ostringstream os;
  os << "n=" << spec.n;
  switch (spec.theorem) {
    case Theorem::T1:
      os << " r=" << spec.r << " x=" << points_text(spec.points) << " alpha=" << points_text(spec.alphas);
      break;
    case Theorem::DixonAnderson:
      os << " x=" << points_text(spec.points) << " alpha=" << points_text(spec.alphas);
      break;
    case Theorem::T2:
    case Theorem::CrossT2T3:
      os << " r=" << spec.r << " alpha=" << spec.alpha << " beta=" << spec.beta << " gamma=" << spec.gamma;
      break;
    case Theorem::T3:
    case Theorem::Recursion:
    case Theorem::Reduction:
      os << " lambda=" << spec.lambda << " alpha=" << spec.alpha << " beta=" << spec.beta << " gamma=" << spec.gamma;
      break;
    case Theorem::T4:
      os << " lambda=" << spec.lambda << " gamma=" << spec.gamma;
      if (!spec.points.empty()) os << " x=" << points_text(spec.points);
      break;
    case Theorem::Jn:
      os << " y=" << points_text(spec.points) << " alpha=" << spec.alpha << " beta=" << spec.beta
         << " gamma=" << spec.gamma;
      break;
    case Theorem::IdentityChain:
      os << " r=" << spec.r << " gamma=" << spec.gamma;
      break;
  }
  os << " method=" << to_string(spec.method);
  if (spec.method == Method::MonteCarlo) os << " seed=" << spec.seed;
  return os.str();
}

json report_to_json(const VerificationReport& report) {
  json j;
  j["spec"] = spec_to_json(report.spec);
  j["params"] = params_digest(report.spec);
  j["lhs"] = complex_json(report.lhs);
  j["rhs"] = complex_json(report.rhs);
  j["abs_residual"] = report.abs_residual;
  j["rel_residual"] = report.rel_residual;
  j["std_error"] = report.std_error ? json(*report.std_error) : json(nullptr);
  j["tolerance"] = report.tolerance;
  j["passed"] = report.passed;
  j["wall_time_ms"] = report.wall_time_ms;
  j["method_detail"] = report.method_detail;
  j["message"] = report.message;
  return j;
}

json reports_to_json(const std::vector<VerificationReport>& reports) {
  json list = json::array();
  for (const auto& r : reports) list.push_back(report_to_json(r));
  return list;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "theorem,params,lhs,rhs,residual,pass\n";
  for (const auto& r : reports) {
    // MC rows carry the absolute residual (the tolerance is 4σ); others relative.
    const double residual = r.std_error ? r.abs_residual : r.rel_residual;
    os << to_string(r.spec.theorem) << ',' << csv_field(params_digest(r.spec)) << ',' << csv_field(complex_text(r.lhs))
       << ',' << csv_field(complex_text(r.rhs)) << ',' << number(residual) << ',' << (r.passed ? "true" : "false")
       << '\n';
  }
  return os.str();
}

void print_pretty(std::ostream& os, const VerificationReport& r) {
  char line[160];
  os << (r.passed ? "PASS " : "FAIL ") << to_string(r.spec.theorem) << ' ' << params_digest(r.spec) << '\n';
  std::snprintf(line, sizeof line, "     lhs=%s  rhs=%s\n", complex_text(r.lhs).c_str(), complex_text(r.rhs).c_str());
  os << line;
  if (r.std_error) {
    std::snprintf(line, sizeof line, "     |diff|=%.3e  sigma=%.3e  tol(4 sigma)=%.3e  %.1f ms\n", r.abs_residual,
                  *r.std_error, r.tolerance, r.wall_time_ms);
  } else {
    std::snprintf(line, sizeof line, "     rel=%.3e  tol=%.1e  %.1f ms\n", r.rel_residual, r.tolerance,
                  r.wall_time_ms);
  }
  os << line;
  if (!r.message.empty()) os << "     " << r.message << '\n';
}

}  // namespace selberg
