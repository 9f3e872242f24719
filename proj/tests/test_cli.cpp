#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"
#include "tmoment/io.hpp"

using namespace tmtest;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = tmoment::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string seq_text(const HermSeq& s) { return serialize(covariance_document(s)); }

}  // namespace

TEST_CASE("spectrum of the constant sequence is a single atom") {
  const Result r = run({"spectrum", "-"}, seq_text(scalar_seq({1, 1})));
  REQUIRE(r.code == 0);
  const MeasureDocument doc = parse_measure(r.out);
  REQUIRE(doc.atoms.size() == 1);
  CHECK(std::abs(doc.atoms[0].w(0, 0) - 1.0) < 1e-10);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["atoms"][0]["angle"].get<double>() == 0.0);
  CHECK(doc.density_samples.size() == 720);
  for (const auto& s : doc.density_samples) CHECK(s.value.norm() < 1e-10);
  CHECK(doc.report->pass);
}

TEST_CASE("check reports the first failing Toeplitz matrix") {
  const Result r = run({"check", "-"}, seq_text(scalar_seq({1, 2})));
  CHECK(r.code == 2);
  CHECK(r.err.find("T₁ not nonnegative Hermitian") != std::string::npos);
  const Result ok = run({"check", "-"}, seq_text(scalar_seq({1, 1, 1})));
  CHECK(ok.code == 0);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["class"] == "TND");
  CHECK(j["central_order"] == 1);
  const std::string gamma = R"({"q": 1, "kind": "gamma", "coeffs": [[[[1, 0]]], [[[4, 0]]]]})";
  CHECK(run({"check", "-"}, gamma).code == 2);
}

TEST_CASE("extend pads the trivial sequence with zeros") {
  const Result r = run({"extend", "--length", "4", "-"}, seq_text(scalar_seq({1})));
  REQUIRE(r.code == 0);
  const HermSeq s = covariances(parse_sequence(r.out));
  REQUIRE(s.size() == 4);
  CHECK(s[0](0, 0) == Complex(1, 0));
  for (std::size_t j = 1; j < 4; ++j) CHECK(std::abs(s[j](0, 0)) == 0.0);
}

TEST_CASE("spectrum output verifies against its embedded sequence") {
  for (const HermSeq& s : {scalar_seq({1}), scalar_seq({1, 1}), diag_seq(), rotated_seq(3), scalar_seq({2, 0.5, 0.1})}) {
    const Result sp = run({"spectrum", "--density-samples", "32"}, seq_text(s));
    REQUIRE(sp.code == 0);
    const Result v = run({"verify", "-"}, sp.out);
    CHECK(v.code == 0);
    CHECK(nlohmann::json::parse(v.out)["pass"] == true);
  }
}

TEST_CASE("output is deterministic") {
  const std::string in = seq_text(rotated_seq(3));
  CHECK(run({"spectrum", "--density-samples", "8"}, in).out == run({"spectrum", "--density-samples", "8"}, in).out);
}

TEST_CASE("ar-spectrum surfaces tail mismatches") {
  const Result r = run({"ar-spectrum", "--order", "1", "--density-samples", "8"}, seq_text(scalar_seq({1, 1, 0.2})));
  CHECK(r.code == 0);
  CHECK(r.err.find("not autoregressive") != std::string::npos);
  CHECK_FALSE(parse_measure(r.out).warnings.empty());
}

TEST_CASE("eval-phi evaluates the central Caratheodory function") {
  const Result r = run({"eval-phi", "--z", "0.5,0", "--z", "0,0"}, seq_text(scalar_seq({1, 1})));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j[0]["phi"][0][0][0].get<double>() == doctest::Approx(3.0));
  CHECK(j[1]["phi"][0][0][0].get<double>() == doctest::Approx(1.0));
  CHECK(run({"eval-phi", "--z", "2,0"}, seq_text(scalar_seq({1, 1}))).code == 1);
}

TEST_CASE("error exit codes") {
  CHECK(run({"spectrum", "-"}, "{not json").code == 1);
  CHECK(run({"spectrum", "/nonexistent/file.json"}, "").code == 1);
  CHECK(run({"spectrum", "-"}, seq_text(scalar_seq({1, 2}))).code == 2);
  CHECK(run({"nonsense"}, "").code == 1);
  const Result bad = run({"verify", "--sequence", "-", "-"}, "");
  CHECK(bad.code == 1);
}

TEST_CASE("tolerance flags are accepted") {
  const Result r = run({"--psd-tol", "1e-8", "--root-tol", "1e-6", "--rank-rtol", "1e-9", "--verify-tol", "1e-7",
                        "spectrum", "--density-samples", "4", "-"},
                       seq_text(scalar_seq({1, 1})));
  CHECK(r.code == 0);
  CHECK(parse_measure(r.out).report->tol == 1e-7);
  const Result help = run({"--help"}, "");
  CHECK(help.code == 0);
  CHECK(help.out.find("--psd-tol") != std::string::npos);
}
