#include <filesystem>

#include "doctest.h"
#include "json.hpp"
#include "psfwb/commands.hpp"
#include "psfwb/error.hpp"
#include "psfwb/fixtures.hpp"
#include "psfwb/io.hpp"
#include "psfwb/report.hpp"

using namespace psfwb;

namespace {

std::string field(const Report& r, const std::string& type, const std::string& key) {
  for (const auto& rec : r.records) {
    if (rec.type != type) continue;
    for (const auto& [k, v] : rec.fields) {
      if (k == key) return render_value(v);
    }
  }
  return "<missing>";
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("every fixture loads and reproduces its headline value") {
  for (const auto& f : bundled_fixtures()) {
    CAPTURE(f.file);
    if (f.kind == DocumentKind::Qbf) {
      CHECK_NOTHROW(parse_qbf_document(f.text));
      continue;
    }
    const Model m = parse_model(f.text);
    const Word w = model_alphabet(m).parse_word(f.headline_word);
    CHECK(evaluate(m, w) == parse_rational(f.headline_value));
  }
}

TEST_CASE("render and parse round trip") {
  const auto a = fixture_wa("fig1a.wa");
  const std::string once = render_wa(a);
  CHECK(render_wa(parse_wa(once)) == once);
  CHECK(parse_wa(once) == a);
  for (const auto& f : bundled_fixtures()) {
    CAPTURE(f.file);
    if (f.kind == DocumentKind::Wa) {
      const auto r = render_wa(parse_wa(f.text));
      CHECK(render_wa(parse_wa(r)) == r);
    } else if (f.kind == DocumentKind::Ccra) {
      const auto r = render_ccra(parse_ccra(f.text));
      CHECK(render_ccra(parse_ccra(r)) == r);
    } else if (f.kind == DocumentKind::Qbf) {
      const auto r = render_qbf_document(parse_qbf_document(f.text));
      CHECK(render_qbf_document(parse_qbf_document(r)) == r);
    }
  }
}

TEST_CASE("copyless violation names the update") {
  const std::string text = R"(psfwb-format ccra v1
states p
initial p
registers x
alphabet a
init x := 1
on p a -> p
  x := x + x
output p := x
)";
  try {
    parse_ccra(text);
    FAIL("expected NotCopyless");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCopyless);
    CHECK(std::string(e.what()).find("x := x + x") != std::string::npos);
    CHECK(std::string(e.what()).find("line 8") != std::string::npos);
  }
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_wa("psfwb-format wa v1\ndim 2\nalphabet a\ninitial 1 0\nfinal 0 1\nmatrix a\n1 0\n0 zz\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    const std::string msg = e.what();
    CHECK(msg.find("line 8") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
  }
  CHECK(code_of([] { parse_wa("psfwb-format ccra v1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_ccra("psfwb-format ccra v1\nstates p\ninitial p\nregisters x\nalphabet a b\n"
                                "init x := 0\non p a -> p\n  x := x\noutput p := x\n"); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("sequence documents") {
  const auto s = parse_sequence("psfwb-format sequence v1\n0\n1\n2\n3\n");
  CHECK(s.terms == RationalVector{0, 1, 2, 3});
  CHECK_FALSE(s.modulus);
  const auto q = exppoly_of_sequence(s);
  CHECK(q.terms.size() == 1);
  CHECK(q.terms.at(1) == UniPoly({Rational(0), Rational(1)}));
  CHECK(render_sequence(parse_sequence(render_sequence(s))) == render_sequence(s));
  const auto m = parse_sequence("psfwb-format sequence v1\nmodulus 3\n1\n1/2\n");
  CHECK(m.modulus == std::optional<std::uint64_t>(3));
  CHECK(code_of([] { parse_sequence("modulus 4\n1\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("exponential polynomial documents") {
  const std::string text = "psfwb-format exppoly v1\n3 : 3/2\n1 : -1/2\n";
  const auto q = parse_exppoly(text);
  CHECK(coeff_sum(q, 0) == 1);
  CHECK(parse_exppoly(render_exppoly(q)) == q);
}

TEST_CASE("file helpers report I/O failures") {
  CHECK(code_of([] { read_file("/nonexistent/dir/file.wa"); }) == ErrorCode::Io);
  CHECK(detect_kind("# note\npsfwb-format sequence v1\n1\n") == std::optional<DocumentKind>(DocumentKind::Sequence));
  CHECK_FALSE(detect_kind("dim 1\n").has_value());
}

TEST_CASE("reports render as text and JSON lines") {
  Report r;
  r.add("verdict").set("verdict", std::string("OBSTRUCTED")).set("primes", std::vector<std::string>{"3", "5"});
  r.add("coeffsum").set("k", 1LL).set("pass", false);
  const std::string text = render_text(r);
  CHECK(text == "psfwb-format report v1\nverdict verdict=OBSTRUCTED primes=[3, 5]\ncoeffsum k=1 pass=false\n");
  std::istringstream lines(render_json_lines(r));
  std::string line;
  std::getline(lines, line);
  const auto j = nlohmann::json::parse(line);
  CHECK(j["type"] == "verdict");
  CHECK(j["primes"] == nlohmann::json::array({"3", "5"}));
  std::getline(lines, line);
  CHECK(nlohmann::json::parse(line)["pass"] == false);
}

TEST_CASE("command reports on the figure fixtures") {
  const Model f5 = parse_model(fixture("fig5.wa").text);
  const auto ob = obstruct_ccra_report(f5, {"eps,aab,eps", "eps,aaaab,eps", "eps,aaaaaab,eps"}, 1,
                                       parse_generators("1,2"), {1});
  CHECK(field(ob, "verdict", "verdict") == "OBSTRUCTED");
  CHECK(field(ob, "verdict", "offending_primes") == "[3, 5, 7]");
  const Model f7 = parse_model(fixture("fig7.ccra").text);
  const auto pa = obstruct_pa_report(f7, {"eps,aab,eps", "eps,aaab,eps", "eps,aaaaab,eps"});
  CHECK(field(pa, "verdict", "verdict") == "OBSTRUCTED");
  CHECK(field(pa, "verdict", "support") == "[2, 3, 5]");
  const auto solve = qbf_solve_report(fixture_qbf("valid_k1.qbf"));
  CHECK(field(solve, "qbf-solve", "verdict") == "VALID");
  CHECK(field(solve, "qbf-solve", "word") == "00#11#");
  const auto z = zeroness_report(parse_model(fixture("fig2_left.ccra").text));
  CHECK(field(z, "zeroness", "zero") == "false");
  CHECK(render_text(obstruct_pa_report(f7, {"eps,aab,eps"})) == render_text(obstruct_pa_report(f7, {"eps,aab,eps"})));
}

TEST_CASE("generator lists") {
  CHECK(parse_generators("1,2,1/2").constants == std::set<Rational>{1, 2, Rational(1, 2)});
  CHECK(code_of([] { parse_generators("1,,2"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_generators(""); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("examples materialise every fixture") {
  const auto dir = std::filesystem::temp_directory_path() / "psfwb_examples_test";
  std::filesystem::remove_all(dir);
  const auto r = examples_report(dir.string());
  std::size_t files = 0;
  for (const auto& rec : r.records) {
    if (rec.type != "fixture") continue;
    ++files;
    for (const auto& [k, v] : rec.fields) {
      if (k == "match") CHECK(render_value(v) == "true");
    }
  }
  CHECK(files == bundled_fixtures().size());
  for (const auto& f : bundled_fixtures()) CHECK(read_file((dir / f.file).string()) == f.text);
  std::filesystem::remove_all(dir);
}
