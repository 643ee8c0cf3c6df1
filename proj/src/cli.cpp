#include "limitcert/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "limitcert/expr.hpp"
#include "limitcert/kernel.hpp"
#include "limitcert/numerics.hpp"
#include "limitcert/serialize.hpp"
#include "limitcert/witness.hpp"

namespace limitcert::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string expression;
  std::string profile_file;
  std::string format;
  unsigned long long seed = kDefaultSeed;
  std::string radii = std::string(kDefaultRadii);
  std::size_t samples = kDefaultSamples;
  ProbeOptions probe;
  bool no_royal_path = false;
  std::string lambda;
  std::string t_grid = std::string(kDefaultTGrid);
  std::string cert_file = "-";
};

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) {
    return {};
  }
  return text.substr(first, text.find_last_not_of(" \t") - first + 1);
}

// Fields are trimmed of surrounding blanks.
std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) {
      return parts;
    }
    start = pos + 1;
  }
}

std::string read_all(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_file(const std::string& path, std::istream& in) {
  if (path == "-") {
    return read_all(in);
  }
  std::ifstream file(path);
  if (!file) {
    throw UsageError("cannot open '" + path + "'");
  }
  return read_all(file);
}

Profile load_profile(const Config& cfg, std::istream& in) {
  if (cfg.expression.empty() == cfg.profile_file.empty()) {
    throw UsageError("give exactly one of an expression or --profile FILE");
  }
  if (!cfg.expression.empty()) {
    return parse(cfg.expression);
  }
  const std::string text = read_file(cfg.profile_file, in);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(FormatCategory::MalformedJson, e.what());
  }
  return profile_from_json(doc);
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

void check_format(const Config& cfg, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), cfg.format) == allowed.end()) {
    throw UsageError("output format '" + cfg.format + "' is not supported by this command");
  }
}

std::string join_rationals(const std::vector<ExactRational>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += (i ? ", " : "") + xs[i].to_string();
  }
  return out;
}

void describe_certificate(std::ostream& out, const Certificate& cert, int depth) {
  const std::string indent(2 * static_cast<std::size_t>(depth), ' ');
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Base1D>) {
          out << indent << "BASE_1D d=" << node.d << " m=" << node.m << " (|f| = |x|^"
              << (node.d - ExactRational(2 * static_cast<long>(node.m))) << ")\n";
        } else if constexpr (std::is_same_v<T, Sandwich>) {
          out << indent << "SANDWICH j=" << node.j << " bound exponents ("
              << join_rationals(node.bound_exponents) << ")\n";
        } else {
          out << indent << "INDUCTIVE j=" << node.j << " K=" << node.k_const.factor << "*("
              << node.k_const.base << ")^(" << node.k_const.exponent << ") child d=("
              << join_rationals(node.child_d) << ")\n";
          if (node.child) {
            describe_certificate(out, *node.child, depth + 1);
          }
        }
      },
      cert.node);
}

int cmd_decide(const Config& cfg, std::ostream& out, std::istream& in) {
  check_format(cfg, {"json", "human"});
  const Decision d = decide(load_profile(cfg, in));
  if (cfg.format == "human") {
    out << to_string(d.verdict) << "  sigma = " << d.sigma;
    if (d.limit_value) {
      out << "  limit = " << d.limit_value->numerator();
    }
    out << '\n';
  } else {
    emit(out, to_json(d));
  }
  return kDefinite;
}

int cmd_witness(const Config& cfg, std::ostream& out, std::istream& in) {
  check_format(cfg, {"json", "human"});
  const GeneralizedProfile gp = generalize(load_profile(cfg, in));
  const NonexistenceWitness w = find_nonexistence_witness(gp);
  if (cfg.format == "json") {
    emit(out, to_json(w));
    return kDefinite;
  }
  if (const auto* div = std::get_if<DivergentWitness>(&w)) {
    out << "DIVERGENT: f = " << div->path.g_lambda << " * t^(" << div->path.e
        << ") along lambda = (" << join_rationals(div->path.lambda) << ")\n";
  } else {
    const auto& dep = std::get<PathDependentWitness>(w);
    out << "PATH_DEPENDENT: f = " << dep.value_a << " along lambda = ("
        << join_rationals(dep.path_a.lambda) << "), f = " << dep.value_b << " along lambda = ("
        << join_rationals(dep.path_b.lambda) << ")\n";
  }
  return kDefinite;
}

int cmd_certify(const Config& cfg, std::ostream& out, std::istream& in) {
  check_format(cfg, {"json", "human"});
  const GeneralizedProfile gp = generalize(load_profile(cfg, in));
  const Certificate cert = build_certificate(gp);
  if (cfg.format == "human") {
    out << "sigma = " << sigma(gp) << '\n';
    describe_certificate(out, cert, 0);
  } else {
    emit(out, to_json(gp, cert));
  }
  return kDefinite;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::istream& in) {
  check_format(cfg, {"json", "human"});
  if (cfg.cert_file == "-" && cfg.profile_file == "-") {
    throw UsageError("the certificate and the profile cannot both come from stdin");
  }
  const GeneralizedProfile gp = generalize(load_profile(cfg, in));
  const Certificate cert = certificate_from_text(read_file(cfg.cert_file, in));
  const CheckResult result = check_certificate(gp, cert);
  if (cfg.format == "human") {
    out << (result.ok ? "PASS" : "FAIL: " + result.failure) << '\n';
  } else {
    Json doc;
    doc["result"] = result.ok ? "PASS" : "FAIL";
    doc["failure"] = result.ok ? Json(nullptr) : Json(result.failure);
    emit(out, doc);
  }
  return kDefinite;
}

int cmd_probe(const Config& cfg, std::ostream& out, std::istream& in) {
  check_format(cfg, {"json", "csv", "human"});
  const Profile p = load_profile(cfg, in);
  ProbeOptions options = cfg.probe;
  options.inject_royal_path = !cfg.no_royal_path;
  const ProbeReport report = limit_probe(p, parse_grid(cfg.radii), cfg.samples, cfg.seed, options);
  if (cfg.format == "json") {
    emit(out, to_json(report));
  } else if (cfg.format == "csv") {
    out << "r,sup\n";
    for (std::size_t k = 0; k < report.radii.size(); ++k) {
      out << format_double(report.radii[k]) << ',' << format_double(report.sup_estimates[k])
          << '\n';
    }
  } else {
    for (std::size_t k = 0; k < report.radii.size(); ++k) {
      out << "r = " << format_double(report.radii[k])
          << "  sup|f| ~ " << format_double(report.sup_estimates[k]) << '\n';
    }
    out << to_string(report.trend_verdict) << '\n';
  }
  return report.trend_verdict == Trend::Inconclusive ? kInconclusive : kDefinite;
}

int cmd_path(const Config& cfg, std::ostream& out, std::istream& in) {
  check_format(cfg, {"csv", "json"});
  const Profile p = load_profile(cfg, in);
  const GeneralizedProfile gp = generalize(p);
  std::vector<ExactRational> lambda;
  if (cfg.lambda.empty()) {
    lambda.assign(p.n(), ExactRational(1));
  } else {
    for (auto part : split(cfg.lambda, ',')) {
      lambda.push_back(ExactRational::parse(part));
    }
  }
  const RoyalPath path = royal_path(gp, lambda);
  const std::vector<double> grid = parse_grid(cfg.t_grid);

  Json rows = Json::array();
  if (cfg.format == "csv") {
    out << 't';
    for (std::size_t i = 1; i <= p.n(); ++i) {
      out << ",x" << i;
    }
    out << ",f\n";
  }
  for (double t : grid) {
    const auto x = path_point(path, t);
    double f = 0.0;
    if (p.has_unit_coefficients()) {
      f = eval_along_path(p, path, t);
    } else {
      try {
        f = eval_f(p, x);
      } catch (const std::domain_error&) {
        f = std::numeric_limits<double>::quiet_NaN();
      }
    }
    if (cfg.format == "csv") {
      out << format_double(t);
      for (double xi : x) {
        out << ',' << format_double(xi);
      }
      out << ',' << format_double(f) << '\n';
    } else {
      rows.push_back(Json{{"t", t}, {"x", x}, {"f", std::isfinite(f) ? Json(f) : Json(nullptr)}});
    }
  }
  if (cfg.format == "json") {
    Json doc;
    doc["path"] = to_json(path);
    doc["rows"] = std::move(rows);
    emit(out, doc);
  }
  return kDefinite;
}

int cmd_c1(const Config& cfg, std::ostream& out, std::istream& in) {
  check_format(cfg, {"json", "human"});
  const C1Report report = c1_sufficient(load_profile(cfg, in));
  if (cfg.format == "human") {
    out << to_string(report.verdict) << "  sigma = " << report.sigma
        << "  1 + max ratio = " << (ExactRational(1) + report.max_ratio);
    if (!report.reason.empty()) {
      out << "  (" << report.reason << ')';
    }
    out << '\n';
  } else {
    emit(out, to_json(report));
  }
  return kDefinite;
}

void add_input(CLI::App* sub, Config& cfg, const std::string& formats) {
  sub->add_option("expression", cfg.expression, "Rational function, e.g. \"x*y/(x^2+y^2)\"");
  sub->add_option("--profile", cfg.profile_file, "Read the profile from a JSON file ('-' = stdin)");
  sub->add_option("--format", cfg.format, "Output format: " + formats);
}

} // namespace

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> grid;
  const auto fields = split(spec, ':');
  if (fields.size() == 4) {
    const double start = parse_number(fields[0]);
    const double end = parse_number(fields[1]);
    std::size_t count = 0;
    auto [ptr, ec] =
        std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), count);
    if (ec != std::errc{} || ptr != fields[3].data() + fields[3].size() || count < 1) {
      throw std::invalid_argument("grid count must be a positive integer");
    }
    if (fields[2] == "geometric") {
      grid = geometric_grid(start, end, count);
    } else if (fields[2] == "linear") {
      for (std::size_t k = 0; k < count; ++k) {
        grid.push_back(count == 1 ? start
                                  : start + (end - start) * static_cast<double>(k) /
                                                static_cast<double>(count - 1));
      }
    } else {
      throw std::invalid_argument("grid kind must be 'geometric' or 'linear'");
    }
  } else if (fields.size() == 1) {
    for (auto part : split(spec, ',')) {
      grid.push_back(parse_number(part));
    }
  } else {
    throw std::invalid_argument("grid must be start:end:kind:count or a comma list");
  }
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app{"Exact limit decisions for x1^a1...xN^aN / (c1 x1^(2m1) + ... + cN xN^(2mN)) "
               "at the origin"};
  app.name("limitcert");
  app.require_subcommand(1);
  Config cfg;

  auto* decide_cmd = app.add_subcommand("decide", "Decide whether the limit at 0 exists");
  add_input(decide_cmd, cfg, "json (default) or human");

  auto* witness_cmd =
      app.add_subcommand("witness", "Royal-path evidence that the limit does not exist");
  add_input(witness_cmd, cfg, "json (default) or human");

  auto* certify_cmd = app.add_subcommand("certify", "Certificate that the limit is 0");
  add_input(certify_cmd, cfg, "json (default) or human");

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate against an expression");
  add_input(verify_cmd, cfg, "json (default) or human");
  verify_cmd->add_option("--cert", cfg.cert_file, "Certificate JSON file ('-' = stdin)")
      ->capture_default_str();

  auto* probe_cmd = app.add_subcommand("probe", "Sample sup|f| on shrinking shells");
  add_input(probe_cmd, cfg, "json (default), csv or human");
  probe_cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  probe_cmd->add_option("--radii", cfg.radii, "Shell radii grid")->capture_default_str();
  probe_cmd->add_option("--samples", cfg.samples, "Samples per shell")->capture_default_str();
  probe_cmd->add_option("--decay-factor", cfg.probe.decay_factor, "TENDS_TO_ZERO threshold")
      ->capture_default_str();
  probe_cmd->add_option("--growth-factor", cfg.probe.growth_factor, "DIVERGES threshold")
      ->capture_default_str();
  probe_cmd->add_option("--band-factor", cfg.probe.band_factor, "BOUNDED_AWAY band")
      ->capture_default_str();
  probe_cmd->add_flag("--no-royal-path", cfg.no_royal_path,
                      "Do not inject the royal-path point on each shell");

  auto* path_cmd = app.add_subcommand("path", "CSV samples of f along a royal path");
  add_input(path_cmd, cfg, "csv (default) or json");
  path_cmd->add_option("--lambda", cfg.lambda, "Comma-separated positive rationals");
  path_cmd->add_option("--t-grid", cfg.t_grid, "Parameter grid")->capture_default_str();

  auto* c1_cmd = app.add_subcommand("c1", "Sufficient condition for C^1 at the origin");
  add_input(c1_cmd, cfg, "json (default) or human");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  if (cfg.format.empty()) {
    cfg.format = path_cmd->parsed() ? "csv" : "json";
  }

  try {
    if (decide_cmd->parsed()) {
      return cmd_decide(cfg, out, in);
    }
    if (witness_cmd->parsed()) {
      return cmd_witness(cfg, out, in);
    }
    if (certify_cmd->parsed()) {
      return cmd_certify(cfg, out, in);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(cfg, out, in);
    }
    if (probe_cmd->parsed()) {
      return cmd_probe(cfg, out, in);
    }
    if (path_cmd->parsed()) {
      return cmd_path(cfg, out, in);
    }
    if (c1_cmd->parsed()) {
      return cmd_c1(cfg, out, in);
    }
  } catch (const ParseError& e) {
    err << render_diagnostic(cfg.expression, e.diagnostic());
  } catch (const FormatError& e) {
    err << "error: input rejected [" << to_string(e.category()) << "]: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsageError;
}

} // namespace limitcert::cli
