#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "support/independent.hpp"
#include "tk/cli.hpp"
#include "tk/random.hpp"

namespace tk {
namespace {

using cli::json;
using testing::same_function;

RationalFunction poly(std::vector<Complex> c) { return RationalFunction::polynomial(ComplexPolynomial(std::move(c))); }

// ---- expression parser ----

TEST(Parser, ZbarSquared) {
  EXPECT_TRUE(same_function(expr::parse_rational("zbar^2"), RationalFunction::monomial(-2)));
}

TEST(Parser, ConjugatedBlaschkeFactor) {
  const auto r = expr::parse_rational("conj(B(0.5))*zbar");
  const auto b = poly({-0.5, 1.0}) / poly({1.0, -0.5});
  EXPECT_TRUE(same_function(r, circle_conjugate(b) * RationalFunction::monomial(-1)));
  const auto e = expr::parse_expression("conj(B(0.5))*zbar");
  EXPECT_TRUE(expr::same_tree(e.root, expr::parse_expression(expr::print(e)).root));
}

TEST(Parser, RationalLiteral) {
  EXPECT_TRUE(same_function(expr::parse_rational("(z+0.5)/(1+0.5*z)"), poly({0.5, 1.0}) / poly({1.0, 0.5})));
}

TEST(Parser, ComplexLiteralsAndScientificNotation) {
  EXPECT_TRUE(same_function(expr::parse_rational("1+2i"), RationalFunction::constant(Complex(1, 2))));
  EXPECT_TRUE(same_function(expr::parse_rational("2.5e-1*z"), RationalFunction::monomial(1, 0.25)));
  EXPECT_TRUE(same_function(expr::parse_rational("-i*z^-2"), RationalFunction::monomial(-2, Complex(0, -1))));
  EXPECT_TRUE(same_function(expr::parse_rational("B(0.5i)"),
                            poly({Complex(0, -0.5), 1.0}) / poly({1.0, Complex(0, 0.5)})));
}

TEST(Parser, PrecedenceAndAssociativity) {
  const Complex z(0.3, 0.4);
  auto eval = [&](const char* t) { return expr::parse_rational(t)(z); };
  EXPECT_NEAR(std::abs(eval("1-z-z^2") - (1.0 - z - z * z)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eval("1/z/2") - 1.0 / z / 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eval("2*z^3") - 2.0 * z * z * z), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eval("-(z+1)^2") + (z + 1.0) * (z + 1.0)), 0.0, 1e-14);
}

TEST(Parser, SyntaxErrorsCarryPositions) {
  for (const auto& [text, pos] : std::vector<std::pair<std::string, std::size_t>>{
           {"z+", 2}, {"(z", 2}, {"z^1.5", 3}, {"q", 0}, {"z)", 1}, {"B(z)", 2}}) {
    try {
      expr::parse_expression(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::SyntaxError) << text;
      ASSERT_TRUE(e.position().has_value()) << text;
      EXPECT_EQ(*e.position(), pos) << text;
    }
  }
  EXPECT_THROW(expr::parse_expression(""), Error);
}

TEST(Parser, BlaschkeParameterMustLieInTheDisc) {
  try {
    expr::parse_expression("B(1.5)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BlaschkeParameterOutOfDisc);
  }
}

TEST(Parser, DivisionByZero) {
  try {
    expr::parse_rational("z/(z-z)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(Parser, PrintParseRoundTripOnTrees) {
  for (const char* text : {"zbar^2", "conj(B(0.5))*zbar", "(z+0.5)/(1+0.5*z)", "-z^-3+(1+2i)*conj(z-0.25)",
                           "1/(1-z)^2", "B(-0.3+0.4i)*B(0)", "2-(3-z)", "z/(z/2)"}) {
    const auto e = expr::parse_expression(text);
    const auto again = expr::parse_expression(expr::print(e));
    EXPECT_TRUE(expr::same_tree(e.root, again.root)) << text << " -> " << expr::print(e);
  }
}

TEST(Parser, CanonicalPrintParsesBackToTheSameFunction) {
  random::Engine rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random::symbol(rng, 8).value();
    const auto back = expr::parse_rational(format_rational(r));
    EXPECT_TRUE(same_function(back, r, 1e-10)) << format_rational(r);
    EXPECT_EQ(format_rational(back), format_rational(r));
  }
}

// ---- run_command ----

struct Outcome {
  int code;
  std::string out, err;
  json doc;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  Outcome o{code, out.str(), err.str(), json()};
  o.doc = json::parse(o.out, nullptr, false);
  return o;
}

TEST(Cli, DimExample) {
  const auto o = run({"dim", "--symbol", "zbar^2"});
  ASSERT_EQ(o.code, 0) << o.out << o.err;
  EXPECT_EQ(o.doc["result"]["dimension"], 2);
}

TEST(Cli, M2Example) {
  const auto o = run({"m2", "--g", "zbar", "--h", "zbar^2"});
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.doc["result"]["dimension"], 2);
  EXPECT_EQ(o.doc["result"]["basis"], json::array({"1", "z"}));
}

TEST(Cli, MaximalExample) {
  const auto o = run({"maximal", "--vector", "1+0.5*z", "--symbol", "zbar^2"});
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.doc["result"]["is_maximal"], false);
  EXPECT_EQ(o.doc["result"]["witness_zero"], "-0.5");
}

TEST(Cli, EveryCommandEmitsAValidEnvelope) {
  const std::vector<std::vector<std::string>> invocations{
      {"kernel", "--symbol", "(2*z+1)/(z^4*(2+z))"},
      {"kernel", "--symbol", "zbar^3", "--verify-inline"},
      {"dim", "--symbol", "conj(B(0.5))*zbar"},
      {"minkernel", "--vector", "1-z"},
      {"maximal", "--vector", "z", "--symbol", "zbar^2"},
      {"factor", "--mode", "inner-outer", "--f", "(z-0.5)*(z-2)"},
      {"factor", "--mode", "wiener-hopf", "--f", "(z+0.5)/(1+0.5*z)"},
      {"mult", "--w", "1+z", "--g", "zbar", "--h", "zbar^2"},
      {"m2", "--g", "zbar^2", "--h", "zbar^5"},
      {"minf", "--g", "zbar", "--h", "zbar^3"},
      {"include", "--g", "zbar", "--h", "zbar^2"},
      {"equal", "--g", "zbar^2", "--h", "zbar^2*conj(1+z/3)/(1+z/3)"},
      {"equiv", "--g1", "conj(z*B(0.5))", "--g2", "zbar^2"},
      {"crofoot", "--w", "1/(1-0.5*z)", "--theta", "z"},
      {"surjective", "--w", "1+z", "--g", "zbar", "--h", "zbar^2"},
      {"rigid", "--p", "1+0.5*z"},
      {"cayley", "--mode", "function", "--f", "1/(s+i)^2"},
      {"cayley", "--mode", "symbol", "--f", "(s-i)/(s+i)"},
      {"verify", "--suite", "paper-examples"},
  };
  std::set<std::string> seen;
  for (const auto& args : invocations) {
    const auto o = run(args);
    ASSERT_EQ(o.code, 0) << args[0] << ": " << o.out << o.err;
    ASSERT_FALSE(o.doc.is_discarded()) << args[0];
    const auto problems = cli::validate_envelope(o.doc);
    EXPECT_TRUE(problems.empty()) << args[0] << ": " << (problems.empty() ? "" : problems.front());
    EXPECT_EQ(o.doc["command"], args[0]);
    EXPECT_EQ(o.doc["seed"], 42);
    seen.insert(args[0]);
  }
  EXPECT_EQ(seen.size(), 16u);
}

TEST(Cli, RawFieldsCarryFullPrecision) {
  const auto o = run({"kernel", "--symbol", "(2*z+1)/(z^4*(2+z))"});
  ASSERT_EQ(o.code, 0);
  const auto& raw = o.doc["result"]["basis_raw"][0];
  EXPECT_DOUBLE_EQ(raw["poles"].size(), 0);
  EXPECT_NEAR(raw["zeros"][0]["value"][0].get<double>(), -2.0, 1e-14);
  EXPECT_EQ(o.doc["inputs"]["symbol"], format_rational(expr::parse_rational("(2*z+1)/(z^4*(2+z))")));
}

TEST(Cli, InlineVerificationReportsOracle) {
  const auto o = run({"--verify-inline", "kernel", "--symbol", "zbar^3"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.doc["result"]["oracle"]["dimension"], 3);
  EXPECT_LT(o.doc["result"]["oracle"]["principal_angle"].get<double>(), 1e-8);
}

TEST(Cli, GlobalFlagsAfterTheSubcommand) {
  const auto o = run({"dim", "--symbol", "zbar", "--seed", "7", "--tol", "1e-6"});
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.doc["seed"], 7);
  EXPECT_DOUBLE_EQ(o.doc["tolerances"]["verification"].get<double>(), 1e-6);
}

TEST(Cli, SyntaxErrorExitsTwoWithPosition) {
  const auto o = run({"dim", "--symbol", "zbar^"});
  EXPECT_EQ(o.code, 2);
  EXPECT_EQ(o.doc["error"], "SyntaxError");
  EXPECT_EQ(o.doc["position"], 5);
  EXPECT_FALSE(o.err.empty());
}

TEST(Cli, PreconditionErrorsExitTwo) {
  EXPECT_EQ(run({"kernel", "--symbol", "1-z"}).doc["error"], "NotInvertibleOnCircle");
  EXPECT_EQ(run({"kernel", "--symbol", "1-z"}).code, 2);
  EXPECT_EQ(run({"crofoot", "--w", "1", "--theta", "1+z/2"}).doc["error"], "PreconditionViolation");
  EXPECT_EQ(run({"mult", "--w", "1", "--g", "z", "--h", "zbar"}).doc["error"], "TrivialKernel");
  EXPECT_EQ(run({"cayley", "--mode", "function", "--f", "s/(s+i)"}).doc["error"], "NotSquareIntegrable");
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"frobnicate"}, {"kernel"}, {"factor", "--mode", "sideways", "--f", "z"}, {"verify", "--suite", "nope"}}) {
    const auto o = run(args);
    EXPECT_EQ(o.code, 2);
    EXPECT_EQ(o.doc["error"], "UsageError");
  }
}

TEST(Cli, TextMode) {
  const auto o = run({"--text", "dim", "--symbol", "zbar^2"});
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("result.dimension: 2"), std::string::npos) << o.out;
  EXPECT_EQ(o.out.find("_raw"), std::string::npos);
}

TEST(Cli, ReportFileHoldsTheSameDocument) {
  const auto path = std::filesystem::temp_directory_path() / "tk_report_test.json";
  const auto o = run({"dim", "--symbol", "zbar^2", "--report", path.string()});
  ASSERT_EQ(o.code, 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(json::parse(buf.str()), o.doc);
  std::filesystem::remove(path);
}

TEST(Cli, VerifySuiteReportsChecks) {
  const auto o = run({"verify", "--suite", "paper-examples", "--seed", "42"});
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.doc["result"]["failed"], 0);
  EXPECT_GE(o.doc["result"]["passed"].get<int>(), 15);
  for (const auto& c : o.doc["result"]["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c["name"];
}

TEST(Cli, HelpExitsZero) {
  const auto o = run({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("kernel"), std::string::npos);
}

TEST(Cli, EnvelopeValidatorRejectsBrokenDocuments) {
  EXPECT_FALSE(cli::validate_envelope(json::parse(R"({"command":"x"})")).empty());
  EXPECT_FALSE(cli::validate_envelope(json::parse(
                   R"({"command":"x","inputs":{"a":1},"result":{},"warnings":[],"tolerances":{},"seed":1})"))
                   .empty());
  EXPECT_TRUE(cli::validate_envelope(json::parse(
                  R"({"command":"x","inputs":{"a":"z"},"result":{},"warnings":[],"tolerances":{"t":1e-8},"seed":1})"))
                  .empty());
}

}  // namespace
}  // namespace tk
