#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "selberg/symfunc.hpp"
#include "selberg/verify.hpp"

namespace selberg::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

BigRational rational_flag(const std::string& flag, const std::string& text) {
  try {
    return BigRational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

std::vector<BigRational> rational_list_flag(const std::string& flag, const std::string& text) {
  std::vector<BigRational> out;
  if (text.empty()) return out;
  for (const auto& item : split_commas(text)) out.push_back(rational_flag(flag, item));
  return out;
}

Partition partition_flag(const std::string& text) {
  std::vector<int> parts;
  if (!text.empty()) {
    for (const auto& item : split_commas(text)) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw UsageError("--lambda: '" + item + "' is not an integer");
      parts.push_back(v);
    }
  }
  try {
    return Partition(parts);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--lambda: ") + e.what());
  }
}

// Raw flag values shared by the subcommands that take parameters.
struct Params {
  std::string theorem = "T2";
  int n = 2;
  int r = 0;
  std::string lambda;
  std::optional<std::string> alpha;
  std::string beta = "1";
  std::optional<std::string> gamma;
  std::string alphas;
  std::string points;
  std::string method = "nested";
  int m = kDefaultNodes;
  std::int64_t samples = kDefaultMcSamples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

IntegralSpec to_spec(const Params& p) {
  IntegralSpec s;
  try {
    s.theorem = theorem_from_string(p.theorem);
    s.method = method_from_string(p.method);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (s.theorem == Theorem::Recursion || s.theorem == Theorem::IdentityChain || s.theorem == Theorem::Reduction) {
    s.method = Method::Exact;
  }
  s.n = p.n;
  s.r = p.r;
  s.lambda = partition_flag(p.lambda);
  s.alpha = rational_flag("alpha", p.alpha.value_or("1"));
  s.beta = rational_flag("beta", p.beta);
  s.gamma = rational_flag("gamma", p.gamma.value_or("1"));
  s.alphas = rational_list_flag("alphas", p.alphas);
  s.points = rational_list_flag("points", p.points);
  s.m = p.m;
  s.n_samples = p.samples;
  if (p.seed) s.seed = *p.seed;
  s.tolerance = p.tolerance;
  return s;
}

void add_param_flags(CLI::App* cmd, Params& p) {
  cmd->add_option("--theorem", p.theorem, "T1 T2 T3 T4 DixonAnderson Jn Recursion IdentityChain Reduction CrossT2T3");
  cmd->add_option("--n", p.n, "number of variables");
  cmd->add_option("--r", p.r);
  cmd->add_option("--lambda", p.lambda, "partition, e.g. 2,1");
  cmd->add_option("--alpha", p.alpha, "rational p/q");
  cmd->add_option("--beta", p.beta, "rational p/q");
  cmd->add_option("--gamma", p.gamma, "rational p/q");
  cmd->add_option("--alphas", p.alphas, "per-point exponents, e.g. 1,1/2,3/2");
  cmd->add_option("--points", p.points, "ordered points, e.g. 0,1/2,2");
  cmd->add_option("--method", p.method, "nested | mc | exact");
  cmd->add_option("--m", p.m, "quadrature nodes per level");
  cmd->add_option("--samples", p.samples, "Monte Carlo samples");
  cmd->add_option("--seed", p.seed, "Monte Carlo seed");
  cmd->add_option("--tolerance", p.tolerance, "override the default tolerance");
}

struct Output {
  std::string format = "pretty";
  std::string path;
};

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path);
  if (!file) throw UsageError("cannot open '" + o.path + "' for writing");
  file << text;
}

std::string render_reports(const std::vector<VerificationReport>& reports, const std::string& format) {
  if (format == "json") return reports_to_json(reports).dump(2) + "\n";
  if (format == "csv") return reports_to_csv(reports);
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : reports) {
    print_pretty(os, r);
    passed += r.passed ? 1 : 0;
  }
  os << reports.size() << " cases, " << passed << " passed, " << reports.size() - passed << " failed\n";
  return os.str();
}

std::string render_poly(const SparsePoly& p, const std::string& format, const json& meta) {
  if (format == "json") {
    json j = meta;
    j["poly"] = p;
    j["pretty"] = p.to_pretty();
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "partition,coefficient\n";
    const auto terms = p.monomial_expansion();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) os << '"' << it->first.to_string() << "\"," << it->second << '\n';
    return os.str();
  }
  return p.to_pretty() + "\n";
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ComplexF closed_form(const IntegralSpec& s) {
  auto dbl = [](const std::vector<BigRational>& v) {
    std::vector<double> out;
    for (const auto& q : v) out.push_back(q.to_double());
    return out;
  };
  auto cpx = [](const std::vector<BigRational>& v) {
    std::vector<ComplexF> out;
    for (const auto& q : v) out.emplace_back(q.to_double(), 0.0);
    return out;
  };
  const double a = s.alpha.to_double();
  const double b = s.beta.to_double();
  const double g = s.gamma.to_double();
  switch (s.theorem) {
    case Theorem::T1: return theorem1_rhs(dbl(s.points), cpx(s.alphas), s.r);
    case Theorem::T2:
    case Theorem::CrossT2T3: return rz_rhs(s.n, s.r, a, b, g);
    case Theorem::T3:
    case Theorem::Reduction: return kadell_rhs(s.n, s.lambda, a, b, g);
    case Theorem::T4: return oo_prefactor(s.lambda, s.n, g);
    case Theorem::DixonAnderson: return dixon_anderson_rhs(dbl(s.points), cpx(s.alphas));
    case Theorem::Jn: return jn_closed(dbl(s.points), a, b, g);
    case Theorem::Recursion: return kadell_step_factor(s.n, s.lambda, a, b, g);
    case Theorem::IdentityChain:
      return pochhammer(ComplexF(g, 0.0), static_cast<unsigned>(std::max(s.r, 0)));
  }
  return {};
}

int run_checked(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical and exact checks of Selberg-type integrals and Jack polynomial identities"};
  app.require_subcommand(1);
  app.fallthrough();
  Output output;
  app.add_option("--format", output.format, "pretty | json | csv")
      ->check(CLI::IsMember({"pretty", "json", "csv"}));
  app.add_option("--out", output.path, "write output to a file instead of stdout");

  Params params;

  auto* jack = app.add_subcommand("jack", "print the monic Jack polynomial P_lambda in the monomial basis");
  std::string jack_lambda;
  int jack_n = 0;
  std::optional<std::string> jack_alpha;
  std::optional<std::string> jack_gamma;
  jack->add_option("--lambda", jack_lambda, "partition, e.g. 2,1")->required();
  jack->add_option("--n", jack_n, "number of variables (default: length of lambda)");
  auto* alpha_opt = jack->add_option("--alpha", jack_alpha, "Jack parameter p/q");
  jack->add_option("--gamma", jack_gamma, "use alpha = 1/gamma")->excludes(alpha_opt);

  auto* fr = app.add_subcommand("fr", "print f_r(x; gamma) in the monomial basis");
  int fr_r = 0;
  int fr_n = 2;
  std::string fr_gamma = "1";
  fr->add_option("--r", fr_r)->required();
  fr->add_option("--n", fr_n)->required();
  fr->add_option("--gamma", fr_gamma);

  auto* rhs = app.add_subcommand("rhs", "evaluate a closed form from the given parameters");
  add_param_flags(rhs, params);

  auto* verify_cmd = app.add_subcommand("verify", "run one verification case");
  add_param_flags(verify_cmd, params);

  auto* suite = app.add_subcommand("suite", "run the built-in suite or a JSON config of cases");
  std::string config_path;
  bool parallel = false;
  std::optional<std::uint64_t> suite_seed;
  suite->add_option("--config", config_path, "JSON array of cases");
  suite->add_flag("--parallel", parallel, "run cases concurrently");
  suite->add_option("--seed", suite_seed, "base seed for Monte Carlo cases (case i gets seed + i)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (jack->parsed()) {
    const Partition lambda = partition_flag(jack_lambda);
    const std::size_t n = jack_n > 0 ? static_cast<std::size_t>(jack_n) : std::max<std::size_t>(lambda.length(), 1);
    if (lambda.length() > n) throw UsageError("--lambda has more parts than --n");
    BigRational alpha = 1;
    if (jack_alpha) alpha = rational_flag("alpha", *jack_alpha);
    if (jack_gamma) {
      const BigRational g = rational_flag("gamma", *jack_gamma);
      if (g.sign() <= 0) throw UsageError("--gamma must be positive");
      alpha = BigRational(1) / g;
    }
    if (alpha.sign() <= 0) throw UsageError("--alpha must be positive");
    const SparsePoly p = jack_P(lambda, JackParam(alpha), n);
    const json meta{{"lambda", lambda.parts()}, {"n", n}, {"alpha", alpha.to_string()}};
    emit(output, render_poly(p, output.format, meta), out);
    return 0;
  }

  if (fr->parsed()) {
    if (fr_r < 0 || fr_n < 1) throw UsageError("need --r >= 0 and --n >= 1");
    const BigRational g = rational_flag("gamma", fr_gamma);
    const SparsePoly p = f_r(fr_r, static_cast<std::size_t>(fr_n), g);
    const json meta{{"r", fr_r}, {"n", fr_n}, {"gamma", g.to_string()}};
    emit(output, render_poly(p, output.format, meta), out);
    return 0;
  }

  if (rhs->parsed()) {
    const IntegralSpec s = to_spec(params);
    ComplexF value;
    try {
      value = closed_form(s);
    } catch (const PoleError& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    if (output.format == "json") {
      json j{{"theorem", params.theorem}, {"params", params_digest(s)}, {"re", value.real()}, {"im", value.imag()}};
      emit(output, j.dump(2) + "\n", out);
    } else if (output.format == "csv") {
      emit(output, "theorem,re,im\n" + params.theorem + "," + number(value.real()) + "," + number(value.imag()) + "\n",
           out);
    } else {
      std::string text = number(value.real());
      if (value.imag() != 0.0) text += (value.imag() < 0 ? "" : "+") + number(value.imag()) + "i";
      emit(output, text + "\n", out);
    }
    return 0;
  }

  if (verify_cmd->parsed()) {
    const IntegralSpec s = to_spec(params);
    try {
      validate(s);
    } catch (const PoleError&) {
      // reported as a failed case below
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const VerificationReport report = verify(s);
    emit(output, render_reports({report}, output.format), out);
    return report.passed ? 0 : 1;
  }

  std::vector<IntegralSpec> specs;
  if (config_path.empty()) {
    specs = default_suite();
  } else {
    std::ifstream file(config_path);
    if (!file) throw UsageError("cannot read config '" + config_path + "'");
    json j;
    try {
      j = json::parse(file);
    } catch (const json::parse_error& e) {
      throw UsageError("config: " + std::string(e.what()));
    }
    try {
      specs = suite_from_json(j);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (suite_seed) {
    for (std::size_t i = 0; i < specs.size(); ++i) specs[i].seed = *suite_seed + i;
  }
  const auto reports = run_suite(specs, SuiteOptions{parallel});
  emit(output, render_reports(reports, output.format), out);
  for (const auto& r : reports) {
    if (!r.passed) return 1;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_checked(args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace selberg::cli
