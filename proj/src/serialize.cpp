#include "limitcert/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace limitcert {

namespace {

Json rationals(const std::vector<ExactRational>& xs) {
  Json arr = Json::array();
  for (const auto& x : xs) {
    arr.push_back(x.to_string());
  }
  return arr;
}

Json integers(const std::vector<BigInt>& xs) {
  Json arr = Json::array();
  for (const auto& x : xs) {
    arr.push_back(to_string(x));
  }
  return arr;
}

Json floats(const std::vector<double>& xs) {
  Json arr = Json::array();
  for (double x : xs) {
    if (std::isfinite(x)) {
      arr.push_back(x);
    } else {
      arr.push_back(x > 0 ? "inf" : (x < 0 ? "-inf" : "nan"));
    }
  }
  return arr;
}

[[noreturn]] void schema(const std::string& message) {
  throw FormatError(FormatCategory::SchemaViolation, message);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) {
    schema(where + " must be an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    schema(where + " is missing \"" + key + "\"");
  }
  return *it;
}

ExactRational rational_field(const Json& value, const std::string& where) {
  if (!value.is_string()) {
    schema(where + " must be a \"num/den\" string");
  }
  try {
    return ExactRational::parse(value.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw FormatError(FormatCategory::BadRational,
                      where + " is not an exact rational: " + value.get<std::string>());
  }
}

std::vector<ExactRational> rational_list(const Json& value, const std::string& where) {
  if (!value.is_array()) {
    schema(where + " must be an array");
  }
  std::vector<ExactRational> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(rational_field(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::uint64_t unsigned_field(const Json& value, const std::string& where) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    schema(where + " must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

Certificate node_from_json(const Json& node, const std::string& where) {
  const Json& kind = field(node, "kind", where);
  if (!kind.is_string()) {
    schema(where + ".kind must be a string");
  }
  const auto k = kind.get<std::string>();
  if (k == "BASE_1D") {
    Base1D base;
    base.d = rational_field(field(node, "d", where), where + ".d");
    const auto m = unsigned_field(field(node, "m", where), where + ".m");
    if (m < 1 || m > std::numeric_limits<Exponent>::max()) {
      schema(where + ".m is out of range");
    }
    base.m = static_cast<Exponent>(m);
    return Certificate{base};
  }
  if (k == "SANDWICH") {
    Sandwich s;
    s.j = unsigned_field(field(node, "j", where), where + ".j");
    s.bound_exponents =
        rational_list(field(node, "bound_exponents", where), where + ".bound_exponents");
    return Certificate{std::move(s)};
  }
  if (k == "INDUCTIVE") {
    Inductive step;
    step.j = unsigned_field(field(node, "j", where), where + ".j");
    const Json& k_const = field(node, "k_const", where);
    const std::string kw = where + ".k_const";
    step.k_const.base = rational_field(field(k_const, "base", kw), kw + ".base");
    step.k_const.exponent = rational_field(field(k_const, "exponent", kw), kw + ".exponent");
    step.k_const.factor = rational_field(field(k_const, "factor", kw), kw + ".factor");
    step.child_d = rational_list(field(node, "child_d", where), where + ".child_d");
    step.child = std::make_shared<const Certificate>(
        node_from_json(field(node, "child", where), where + ".child"));
    return Certificate{std::move(step)};
  }
  schema(where + ".kind \"" + k + "\" is not one of BASE_1D, SANDWICH, INDUCTIVE");
}

} // namespace

std::string_view to_string(FormatCategory c) {
  switch (c) {
  case FormatCategory::MalformedJson:
    return "MALFORMED_JSON";
  case FormatCategory::SchemaViolation:
    return "SCHEMA_VIOLATION";
  case FormatCategory::BadRational:
    return "BAD_RATIONAL";
  }
  return "?";
}

FormatError::FormatError(FormatCategory category, const std::string& message)
    : std::runtime_error(message), category_(category) {}

Json to_json(const Decision& d) {
  Json out;
  out["sigma"] = d.sigma.to_string();
  out["verdict"] = std::string(to_string(d.verdict));
  out["limit"] = d.limit_value ? Json(d.limit_value->to_string()) : Json(nullptr);
  return out;
}

Json to_json(const RoyalPath& path) {
  Json out;
  out["p"] = to_string(path.weights.p);
  out["p_vec"] = integers(path.weights.p_vec);
  out["lambda"] = rationals(path.lambda);
  out["e"] = to_string(path.e);
  out["g"] = path.g_lambda.to_string();
  return out;
}

Json to_json(const NonexistenceWitness& w) {
  Json out;
  if (const auto* div = std::get_if<DivergentWitness>(&w)) {
    out["kind"] = "DIVERGENT";
    out["path"] = to_json(div->path);
  } else {
    const auto& dep = std::get<PathDependentWitness>(w);
    out["kind"] = "PATH_DEPENDENT";
    out["path_a"] = to_json(dep.path_a);
    out["path_b"] = to_json(dep.path_b);
    out["value_a"] = dep.value_a.to_string();
    out["value_b"] = dep.value_b.to_string();
  }
  return out;
}

Json certificate_node_to_json(const Certificate& cert) {
  return std::visit(
      [](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        Json out;
        if constexpr (std::is_same_v<T, Base1D>) {
          out["kind"] = "BASE_1D";
          out["d"] = node.d.to_string();
          out["m"] = node.m;
        } else if constexpr (std::is_same_v<T, Sandwich>) {
          out["kind"] = "SANDWICH";
          out["j"] = node.j;
          out["bound_exponents"] = rationals(node.bound_exponents);
        } else {
          out["kind"] = "INDUCTIVE";
          out["j"] = node.j;
          out["k_const"] = Json{{"base", node.k_const.base.to_string()},
                                {"exponent", node.k_const.exponent.to_string()},
                                {"factor", node.k_const.factor.to_string()}};
          out["child_d"] = rationals(node.child_d);
          out["child"] = node.child ? certificate_node_to_json(*node.child) : Json(nullptr);
        }
        return out;
      },
      cert.node);
}

Json to_json(const GeneralizedProfile& gp, const Certificate& cert) {
  Json out;
  out["schema"] = std::string(kCertificateSchema);
  out["sigma"] = sigma(gp).to_string();
  out["root"] = certificate_node_to_json(cert);
  return out;
}

Json to_json(const ProbeReport& report) {
  Json out;
  out["radii"] = floats(report.radii);
  out["sup_estimates"] = floats(report.sup_estimates);
  out["samples_per_shell"] = report.samples_per_shell;
  out["seed"] = report.seed;
  out["trend_verdict"] = std::string(to_string(report.trend_verdict));
  return out;
}

Json to_json(const C1Report& report) {
  Json out;
  out["sigma"] = report.sigma.to_string();
  out["max_ratio"] = report.max_ratio.to_string();
  out["condition_holds"] = report.condition_holds;
  out["applicable"] = report.applicable;
  out["verdict"] = std::string(to_string(report.verdict));
  out["reason"] = report.reason.empty() ? Json(nullptr) : Json(report.reason);
  return out;
}

Json to_json(const Profile& p) {
  Json out;
  out["a"] = p.a();
  out["m"] = p.m();
  out["c"] = rationals(p.c());
  return out;
}

Certificate certificate_from_json(const Json& doc) {
  const Json& tag = field(doc, "schema", "certificate");
  if (!tag.is_string() || tag.get<std::string>() != kCertificateSchema) {
    schema("certificate schema must be \"" + std::string(kCertificateSchema) + "\"");
  }
  return node_from_json(field(doc, "root", "certificate"), "root");
}

Certificate certificate_from_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(FormatCategory::MalformedJson, e.what());
  }
  return certificate_from_json(doc);
}

Profile profile_from_json(const Json& doc) {
  const auto exponents = [&](const char* key) {
    const Json& arr = field(doc, key, "profile");
    if (!arr.is_array()) {
      schema(std::string("profile.") + key + " must be an array");
    }
    std::vector<Exponent> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto v = unsigned_field(arr[i], std::string("profile.") + key);
      if (v > std::numeric_limits<Exponent>::max()) {
        schema(std::string("profile.") + key + " entry is too large");
      }
      out.push_back(static_cast<Exponent>(v));
    }
    return out;
  };
  auto a = exponents("a");
  auto m = exponents("m");
  std::vector<ExactRational> c;
  if (auto it = doc.find("c"); it != doc.end()) {
    if (!it->is_array()) {
      schema("profile.c must be an array");
    }
    for (const auto& entry : *it) {
      if (entry.is_string()) {
        c.push_back(rational_field(entry, "profile.c"));
      } else if (entry.is_number_integer()) {
        c.emplace_back(entry.get<long long>());
      } else if (entry.is_number_float()) {
        c.push_back(ExactRational::parse(format_double(entry.get<double>())));
      } else {
        schema("profile.c entries must be numbers or \"num/den\" strings");
      }
    }
  } else {
    c.assign(a.size(), ExactRational(1));
  }
  return Profile::make(std::move(a), std::move(m), std::move(c));
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), ptr);
}

} // namespace limitcert
