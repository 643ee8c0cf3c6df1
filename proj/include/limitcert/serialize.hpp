#pragma once

// JSON shapes for the command-line surface. Exact quantities are always
// strings: rationals as "num/den", big integers in decimal.

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "limitcert/kernel.hpp"
#include "limitcert/numerics.hpp"
#include "limitcert/witness.hpp"

namespace limitcert {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kCertificateSchema = "limitcert.certificate/1";

enum class FormatCategory { MalformedJson, SchemaViolation, BadRational };

std::string_view to_string(FormatCategory c);

/// A JSON document that does not match the expected shape.
class FormatError : public std::runtime_error {
public:
  FormatError(FormatCategory category, const std::string& message);

  FormatCategory category() const { return category_; }

private:
  FormatCategory category_;
};

Json to_json(const Decision& d);
Json to_json(const RoyalPath& path);
Json to_json(const NonexistenceWitness& w);
/// Node only, without the schema envelope.
Json certificate_node_to_json(const Certificate& cert);
/// {"schema", "sigma", "root"}
Json to_json(const GeneralizedProfile& gp, const Certificate& cert);
Json to_json(const ProbeReport& report);
Json to_json(const C1Report& report);
Json to_json(const Profile& p);

/// Throws FormatError.
Certificate certificate_from_json(const Json& doc);
Certificate certificate_from_text(std::string_view text);

/// {"a": [...], "m": [...], "c": [...]} with c optional (default all 1).
/// Coefficients may be "p/q" strings, integers, or decimals (converted from
/// their shortest decimal form). Throws FormatError or std::invalid_argument.
Profile profile_from_json(const Json& doc);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double value);

} // namespace limitcert
