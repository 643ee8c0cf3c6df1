#include "limitcert/expr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <unordered_map>

namespace limitcert {

namespace {

bool is_letter(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) != 0; }
bool is_digit(char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParsedExpression run() {
    parse_numerator();
    skip_ws();
    expect('/', "expected '/' between numerator and denominator");
    skip_ws();
    expect('(', "expected '(' to open the denominator");
    parse_denominator();
    skip_ws();
    expect(')', "expected ')' to close the denominator");
    skip_ws();
    if (!at_end()) {
      error(pos_, ParseCategory::Syntax, "unexpected trailing input");
    }
    return assemble();
  }

private:
  struct Numerated {
    std::string name;
    std::size_t offset;
    std::uint64_t exponent;
  };

  struct DenominatorTerm {
    std::string name;
    ExactRational coefficient;
    Exponent half_degree;
  };

  [[noreturn]] void error(std::size_t offset, ParseCategory category, std::string message) const {
    throw ParseError(ParseDiagnostic{std::min(offset, text_.empty() ? 0 : text_.size() - 1),
                                     std::move(message), category});
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void expect(char ch, const char* message) {
    if (peek() != ch) {
      error(pos_, ParseCategory::Syntax, message);
    }
    ++pos_;
  }

  std::string read_identifier() {
    const std::size_t start = pos_;
    ++pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                         text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view read_digits() {
    const std::size_t start = pos_;
    while (!at_end() && is_digit(text_[pos_])) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  /// nat after '^'; returns the value and its offset.
  std::pair<std::uint64_t, std::size_t> read_exponent() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() == '-') {
      error(start, ParseCategory::Syntax, "exponents must be non-negative integers");
    }
    const std::string_view digits = read_digits();
    if (digits.empty()) {
      error(start, ParseCategory::Syntax, "expected an integer exponent after '^'");
    }
    std::uint64_t value = 0;
    for (char ch : digits) {
      value = value * 10 + static_cast<std::uint64_t>(ch - '0');
      if (value > std::numeric_limits<Exponent>::max()) {
        error(start, ParseCategory::Syntax, "exponent is too large");
      }
    }
    return {value, start};
  }

  void parse_numerator() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() == '(') {
      error(start, ParseCategory::NotMonomialNumerator,
            "numerator must be a bare monomial such as x^2*y, without parentheses");
    }
    if (is_digit(peek()) || peek() == '.') {
      const std::string_view digits = read_digits();
      if (digits != "1") {
        error(start, ParseCategory::NotMonomialNumerator,
              "numerator must have coefficient 1 (write 1 or a product of variables)");
      }
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        error(pos_, ParseCategory::NotMonomialNumerator, "numerator must be a single monomial");
      }
      if (peek() != '/') {
        error(pos_, ParseCategory::NotMonomialNumerator,
              "numerator must be either 1 or a product of variables");
      }
      return;
    }
    if (!is_letter(peek())) {
      error(start, ParseCategory::Syntax, "expected a variable or 1 in the numerator");
    }
    while (true) {
      parse_factor();
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (is_digit(peek())) {
          error(pos_, ParseCategory::NotMonomialNumerator,
                "numerator must not carry a numeric coefficient");
        }
        if (!is_letter(peek())) {
          error(pos_, ParseCategory::Syntax, "expected a variable after '*'");
        }
      } else if (is_letter(peek())) {
        // implicit multiplication
      } else if (peek() == '+' || peek() == '-') {
        error(pos_, ParseCategory::NotMonomialNumerator, "numerator must be a single monomial");
      } else if (is_digit(peek())) {
        error(pos_, ParseCategory::NotMonomialNumerator,
              "numerator must not carry a numeric coefficient");
      } else {
        return;
      }
    }
  }

  void parse_factor() {
    const std::size_t offset = pos_;
    std::string name = read_identifier();
    std::uint64_t exponent = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      exponent = read_exponent().first;
    }
    auto it = std::find_if(numerator_.begin(), numerator_.end(),
                           [&](const Numerated& f) { return f.name == name; });
    if (it == numerator_.end()) {
      numerator_.push_back(Numerated{std::move(name), offset, exponent});
    } else {
      it->exponent += exponent;
      if (it->exponent > std::numeric_limits<Exponent>::max()) {
        error(offset, ParseCategory::Syntax, "exponent is too large");
      }
    }
  }

  std::optional<ExactRational> read_coefficient() {
    const std::size_t start = pos_;
    if (!is_digit(peek()) && peek() != '.') {
      return std::nullopt;
    }
    read_digits();
    if (peek() == '.') {
      ++pos_;
      read_digits();
    }
    std::string literal(text_.substr(start, pos_ - start));
    const std::size_t after_number = pos_;
    skip_ws();
    if (peek() == '/' && literal.find('.') == std::string::npos) {
      ++pos_;
      skip_ws();
      const std::size_t den_start = pos_;
      const std::string_view den = read_digits();
      if (den.empty()) {
        error(den_start, ParseCategory::Syntax, "expected a denominator after '/'");
      }
      if (den.find_first_not_of('0') == std::string_view::npos) {
        error(den_start, ParseCategory::Syntax, "coefficient has a zero denominator");
      }
      literal += "/" + std::string(den);
    } else {
      pos_ = after_number;
    }
    ExactRational value;
    try {
      value = ExactRational::parse(literal);
    } catch (const std::invalid_argument&) {
      error(start, ParseCategory::Syntax, "malformed coefficient '" + literal + "'");
    }
    if (value.sign() <= 0) {
      error(start, ParseCategory::NonpositiveCoefficient, "coefficients must be positive");
    }
    return value;
  }

  void parse_term() {
    skip_ws();
    if (peek() == '-') {
      error(pos_, ParseCategory::NonpositiveCoefficient, "coefficients must be positive");
    }
    if (peek() == '+') {
      ++pos_;
      skip_ws();
    }
    ExactRational coefficient(1);
    if (auto c = read_coefficient()) {
      coefficient = *c;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      }
    }
    if (!is_letter(peek())) {
      error(pos_, ParseCategory::Syntax, "expected a variable in the denominator term");
    }
    const std::size_t var_offset = pos_;
    std::string name = read_identifier();
    skip_ws();
    if (peek() != '^') {
      error(var_offset, ParseCategory::OddDenominatorExponent,
            "denominator term '" + name + "' has exponent 1; exponents must be even and >= 2");
    }
    ++pos_;
    const auto [exponent, exp_offset] = read_exponent();
    if (exponent % 2 == 1) {
      error(exp_offset, ParseCategory::OddDenominatorExponent,
            "denominator exponent " + std::to_string(exponent) + " is odd");
    }
    if (exponent == 0) {
      error(exp_offset, ParseCategory::Syntax, "denominator exponents must be >= 2");
    }
    const bool duplicate = std::any_of(denominator_.begin(), denominator_.end(),
                                       [&](const DenominatorTerm& t) { return t.name == name; });
    if (duplicate) {
      error(var_offset, ParseCategory::DuplicateDenominatorTerm,
            "variable '" + name + "' appears more than once in the denominator");
    }
    denominator_.push_back(
        DenominatorTerm{std::move(name), coefficient, static_cast<Exponent>(exponent / 2)});
  }

  void parse_denominator() {
    parse_term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        parse_term();
      } else if (peek() == '-') {
        error(pos_, ParseCategory::NonpositiveCoefficient,
              "subtracted term has a negative coefficient");
      } else {
        return;
      }
    }
  }

  ParsedExpression assemble() const {
    std::vector<std::string> names;
    for (const auto& f : numerator_) {
      names.push_back(f.name);
    }
    for (const auto& t : denominator_) {
      if (std::find(names.begin(), names.end(), t.name) == names.end()) {
        names.push_back(t.name);
      }
    }
    std::vector<Exponent> a(names.size(), 0);
    std::vector<Exponent> m(names.size(), 0);
    std::vector<ExactRational> c(names.size());
    for (std::size_t i = 0; i < numerator_.size(); ++i) {
      const auto& f = numerator_[i];
      const bool known = std::any_of(denominator_.begin(), denominator_.end(),
                                     [&](const DenominatorTerm& t) { return t.name == f.name; });
      if (!known) {
        error(f.offset, ParseCategory::UnknownVariable,
              "variable '" + f.name + "' does not appear in the denominator");
      }
      a[i] = static_cast<Exponent>(f.exponent);
    }
    for (const auto& t : denominator_) {
      const auto idx = static_cast<std::size_t>(
          std::find(names.begin(), names.end(), t.name) - names.begin());
      m[idx] = t.half_degree;
      c[idx] = t.coefficient;
    }
    return ParsedExpression{Profile::make(std::move(a), std::move(m), std::move(c)),
                            std::move(names)};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Numerated> numerator_;
  std::vector<DenominatorTerm> denominator_;
};

std::string coefficient_text(const ExactRational& c) {
  if (c.is_integer()) {
    return to_string(c.numerator());
  }
  return c.to_string();
}

} // namespace

std::string_view to_string(ParseCategory c) {
  switch (c) {
  case ParseCategory::Syntax:
    return "SYNTAX";
  case ParseCategory::NotMonomialNumerator:
    return "NOT_MONOMIAL_NUMERATOR";
  case ParseCategory::OddDenominatorExponent:
    return "ODD_DENOMINATOR_EXPONENT";
  case ParseCategory::NonpositiveCoefficient:
    return "NONPOSITIVE_COEFFICIENT";
  case ParseCategory::UnknownVariable:
    return "UNKNOWN_VARIABLE";
  case ParseCategory::DuplicateDenominatorTerm:
    return "DUPLICATE_DENOMINATOR_TERM";
  }
  return "?";
}

ParseError::ParseError(ParseDiagnostic diagnostic)
    : std::runtime_error(std::string(to_string(diagnostic.category)) + " at byte " +
                         std::to_string(diagnostic.byte_offset) + ": " + diagnostic.message),
      diagnostic_(std::move(diagnostic)) {}

ParsedExpression parse_expression(std::string_view text) { return Parser(text).run(); }

Profile parse(std::string_view text) { return parse_expression(text).profile; }

std::vector<std::string> default_variable_names(std::size_t n) {
  if (n <= 3) {
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(n);
    return names;
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) {
    names.push_back("x" + std::to_string(i));
  }
  return names;
}

std::string format(const Profile& p) {
  const auto names = default_variable_names(p.n());
  // Variable order follows first appearance, so a zero exponent that precedes
  // a positive one is written out as v^0.
  std::size_t last_positive = p.n();
  for (std::size_t i = 0; i < p.n(); ++i) {
    if (p.a()[i] > 0) {
      last_positive = i;
    }
  }
  std::string numerator;
  if (last_positive == p.n()) {
    numerator = "1";
  } else {
    for (std::size_t i = 0; i <= last_positive; ++i) {
      if (!numerator.empty()) {
        numerator += "*";
      }
      numerator += names[i];
      if (p.a()[i] != 1) {
        numerator += "^" + std::to_string(p.a()[i]);
      }
    }
  }
  std::string denominator;
  for (std::size_t i = 0; i < p.n(); ++i) {
    if (i > 0) {
      denominator += " + ";
    }
    if (p.c()[i] != 1) {
      denominator += coefficient_text(p.c()[i]) + "*";
    }
    denominator += names[i] + "^" + std::to_string(2 * static_cast<std::uint64_t>(p.m()[i]));
  }
  return numerator + "/(" + denominator + ")";
}

std::string render_diagnostic(std::string_view text, const ParseDiagnostic& diagnostic) {
  std::string out = "error [" + std::string(to_string(diagnostic.category)) + "] at byte " +
                    std::to_string(diagnostic.byte_offset) + ": " + diagnostic.message + "\n";
  out += "  " + std::string(text) + "\n";
  out += "  " + std::string(diagnostic.byte_offset, ' ') + "^\n";
  return out;
}

} // namespace limitcert
