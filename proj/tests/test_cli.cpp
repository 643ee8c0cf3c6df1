#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "limitcert/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::ostringstream out;
  std::ostringstream err;
  std::istringstream in(stdin_text);
  const int code = limitcert::cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Outcome& o) { return nlohmann::json::parse(o.out); }

class TempDir {
public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("limitcert_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto file = path_ / name;
    std::ofstream(file) << text;
    return file.string();
  }

private:
  std::filesystem::path path_;
};

const char* const kEx1 = "x^3*y^2*z/(x^4+y^12+z^14)";
const char* const kEx2 = "x^3*y^2*z^2/(x^4+y^12+z^14)";

} // namespace

TEST(CliDecide, ReferenceExamplesGolden) {
  const auto r1 = run({"decide", kEx1});
  EXPECT_EQ(r1.code, 0);
  EXPECT_EQ(r1.out, "{\n  \"sigma\": \"83/84\",\n  \"verdict\": \"NO_LIMIT\",\n  \"limit\": null\n}\n");
  const auto r2 = run({"decide", kEx2});
  EXPECT_EQ(r2.code, 0);
  EXPECT_EQ(r2.out, "{\n  \"sigma\": \"89/84\",\n  \"verdict\": \"LIMIT_ZERO\",\n  \"limit\": \"0/1\"\n}\n");
}

TEST(CliDecide, HumanFormat) {
  const auto r = run({"decide", kEx1, "--format", "human"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("NO_LIMIT"), std::string::npos);
  EXPECT_NE(r.out.find("83/84"), std::string::npos);
}

TEST(CliDecide, ProfileFileAndStdin) {
  TempDir dir;
  const std::string doc = R"({"a": [3, 2, 2], "m": [2, 6, 7], "c": ["1/2", 3, 0.25]})";
  const auto file = dir.write("p.json", doc);
  const auto from_file = run({"decide", "--profile", file});
  EXPECT_EQ(from_file.code, 0);
  EXPECT_EQ(json_of(from_file)["verdict"], "LIMIT_ZERO");
  const auto from_stdin = run({"decide", "--profile", "-"}, doc);
  EXPECT_EQ(from_stdin.out, from_file.out);
}

TEST(CliDecide, UsageAndParseErrors) {
  const auto odd = run({"decide", "x/(x^3+y^2)"});
  EXPECT_EQ(odd.code, 1);
  EXPECT_TRUE(odd.out.empty());
  EXPECT_NE(odd.err.find("ODD_DENOMINATOR_EXPONENT"), std::string::npos);
  EXPECT_NE(odd.err.find("     ^"), std::string::npos);

  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"decide"}).code, 1);
  EXPECT_EQ(run({"decide", kEx1, "--format", "csv"}).code, 1);
  EXPECT_EQ(run({"decide", "--profile", "/nonexistent/profile.json"}).code, 1);
  const auto bad_json = run({"decide", "--profile", "-"}, "{\"a\": [1], \"m\": [0]}");
  EXPECT_EQ(bad_json.code, 1);
}

TEST(CliWitness, DivergentAndPathDependent) {
  const auto r = run({"witness", kEx1});
  EXPECT_EQ(r.code, 0);
  const auto doc = json_of(r);
  EXPECT_EQ(doc["kind"], "DIVERGENT");
  EXPECT_EQ(doc["path"]["p_vec"], nlohmann::json({"42", "14", "12"}));
  EXPECT_EQ(doc["path"]["e"], "-2");
  EXPECT_EQ(doc["path"]["g"], "1/3");
  EXPECT_EQ(doc["path"]["lambda"], nlohmann::json({"1/1", "1/1", "1/1"}));

  const auto pd = json_of(run({"witness", "x*y/(x^2+y^2)"}));
  EXPECT_EQ(pd["kind"], "PATH_DEPENDENT");
  EXPECT_EQ(pd["value_a"], "1/2");
  EXPECT_EQ(pd["value_b"], "2/5");

  EXPECT_EQ(run({"witness", kEx2}).code, 1);
}

TEST(CliCertify, TreeShape) {
  const auto r = run({"certify", "x*y^3/(x^2+y^4)"});
  EXPECT_EQ(r.code, 0);
  const auto doc = json_of(r);
  EXPECT_EQ(doc["schema"], "limitcert.certificate/1");
  EXPECT_EQ(doc["root"]["kind"], "INDUCTIVE");
  EXPECT_EQ(doc["root"]["j"], 0);
  EXPECT_EQ(doc["root"]["k_const"]["factor"], "1/2");
  EXPECT_EQ(doc["root"]["child_d"], nlohmann::json({"6/1"}));
  EXPECT_EQ(doc["root"]["child"]["kind"], "BASE_1D");
  EXPECT_EQ(run({"certify", kEx1}).code, 1);
}

TEST(CliVerify, RoundTripOnFixtures) {
  TempDir dir;
  const std::vector<std::string> fixtures{
      kEx2,
      "x*y^3/(x^2+y^4)",
      "x^2*y^2/(x^2+y^2)",
      "x^4*y^4/(x^2+y^2)",
      "x*y*z/(x^2+y^2+z^2)",
      "x^2*y*z/(2x^2+1/3*y^4+z^6)",
      "x^5/(x^4)",
      "x1*x2*x3*x4^3/(x1^2+x2^2+x3^2+x4^2)",
  };
  for (std::size_t k = 0; k < fixtures.size(); ++k) {
    const auto cert = run({"certify", fixtures[k]});
    ASSERT_EQ(cert.code, 0) << fixtures[k] << cert.err;
    const auto file = dir.write("c" + std::to_string(k) + ".json", cert.out);
    const auto verified = run({"verify", fixtures[k], "--cert", file});
    EXPECT_EQ(verified.code, 0);
    EXPECT_EQ(json_of(verified)["result"], "PASS") << fixtures[k];
    const auto via_stdin = run({"verify", fixtures[k]}, cert.out);
    EXPECT_EQ(json_of(via_stdin)["result"], "PASS") << fixtures[k];
  }
}

TEST(CliVerify, TamperedAndMalformedCertificates) {
  auto doc = json_of(run({"certify", "x*y^3/(x^2+y^4)"}));
  doc["root"]["child_d"] = nlohmann::json({"5/1"});
  const auto tampered = run({"verify", "x*y^3/(x^2+y^4)"}, doc.dump());
  EXPECT_EQ(tampered.code, 0);
  const auto result = json_of(tampered);
  EXPECT_EQ(result["result"], "FAIL");
  EXPECT_TRUE(result["failure"].is_string());

  // A valid certificate for a different problem fails too.
  const auto other = run({"certify", "x^2*y^2/(x^2+y^2)"});
  EXPECT_EQ(json_of(run({"verify", "x*y^3/(x^2+y^4)"}, other.out))["result"], "FAIL");

  const auto malformed = run({"verify", "x*y^3/(x^2+y^4)"}, "{not json");
  EXPECT_EQ(malformed.code, 1);
  EXPECT_NE(malformed.err.find("MALFORMED_JSON"), std::string::npos);

  const auto schema = run({"verify", "x*y^3/(x^2+y^4)"}, R"({"schema": "other/1", "root": {}})");
  EXPECT_EQ(schema.code, 1);
  EXPECT_NE(schema.err.find("SCHEMA_VIOLATION"), std::string::npos);

  auto bad_rational = json_of(run({"certify", "x*y^3/(x^2+y^4)"}));
  bad_rational["root"]["k_const"]["base"] = "1/0";
  const auto rational = run({"verify", "x*y^3/(x^2+y^4)"}, bad_rational.dump());
  EXPECT_EQ(rational.code, 1);
  EXPECT_NE(rational.err.find("BAD_RATIONAL"), std::string::npos);
}

TEST(CliPath, ConstantAlongSaddle) {
  const auto r = run({"path", "x*y/(x^2+y^2)", "--lambda", "1,1", "--t-grid", "1:1e-6:geometric:13"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "t,x1,x2,f");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "0.5") << line;
  }
  EXPECT_EQ(rows, 13);
}

TEST(CliPath, DefaultsAndDivergence) {
  const auto r = run({"path", kEx1, "--t-grid", "0.1,0.01"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(header, "t,x1,x2,x3,f");
  const double f1 = std::stod(first.substr(first.rfind(',') + 1));
  const double f2 = std::stod(second.substr(second.rfind(',') + 1));
  EXPECT_NEAR(f2 / f1, 100.0, 1e-9);
  EXPECT_EQ(run({"path", kEx1, "--lambda", "1,0,1"}).code, 1);
  EXPECT_EQ(run({"path", kEx1, "--lambda", "1,1"}).code, 1);
}

TEST(CliProbe, ReportAndExitCodes) {
  const auto r = run({"probe", kEx2});
  EXPECT_EQ(r.code, 0);
  const auto doc = json_of(r);
  EXPECT_EQ(doc["trend_verdict"], "TENDS_TO_ZERO");
  EXPECT_EQ(doc["seed"], 42);
  EXPECT_EQ(doc["samples_per_shell"], 4096);
  EXPECT_EQ(doc["radii"].size(), 11u);

  // A one-sample probe with a zero-width band cannot settle the saddle.
  const auto inconclusive = run({"probe", "x*y/(x^2+y^2)", "--samples", "1", "--no-royal-path", "--band-factor",
                                 "1", "--radii", "1e-1,1e-2,1e-3,1e-4"});
  EXPECT_EQ(inconclusive.code, 2);
  EXPECT_EQ(json_of(inconclusive)["trend_verdict"], "INCONCLUSIVE");

  EXPECT_EQ(run({"probe", kEx2, "--radii", "1e-1,1e-2"}).code, 1);
  EXPECT_EQ(run({"probe", kEx2, "--radii", "1:2:cubic:4"}).code, 1);
}

TEST(CliC1, Verdicts) {
  EXPECT_EQ(json_of(run({"c1", "x^4*y^4/(x^2+y^2)"}))["verdict"], "C1_YES");
  const auto unknown = json_of(run({"c1", kEx2}));
  EXPECT_EQ(unknown["verdict"], "UNKNOWN");
  EXPECT_EQ(unknown["sigma"], "89/84");
}

TEST(CliDeterminism, ByteIdenticalRuns) {
  const std::vector<std::vector<std::string>> configs{
      {"probe", kEx1, "--seed", "7", "--samples", "512"},
      {"probe", "x^2*y*z/(2x^2+1/3*y^4+z^6)", "--seed", "99", "--radii", "1e-1:1e-9:geometric:9"},
      {"path", kEx1, "--t-grid", "1:1e-3:linear:7"},
      {"path", "x*y/(x^2+y^2)", "--lambda", "1/2,3"},
      {"certify", kEx2},
      {"witness", "x*y/(x^2+y^2)"},
  };
  for (const auto& args : configs) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << args[0];
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(CliGrid, Specs) {
  using limitcert::cli::parse_grid;
  const auto g = parse_grid("1:1e-6:geometric:13");
  ASSERT_EQ(g.size(), 13u);
  EXPECT_EQ(g.front(), 1.0);
  EXPECT_EQ(g.back(), 1e-6);
  EXPECT_EQ(parse_grid("0:1:linear:5"), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
  EXPECT_EQ(parse_grid("0.5, 0.25,0.125"), (std::vector<double>{0.5, 0.25, 0.125}));
  EXPECT_THROW(parse_grid(""), std::invalid_argument);
  EXPECT_THROW(parse_grid("1:2:geometric"), std::invalid_argument);
  EXPECT_THROW(parse_grid("1:2:geometric:x"), std::invalid_argument);
}
