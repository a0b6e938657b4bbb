#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "vetocore/cli.hpp"
#include "vetocore/core.hpp"
#include "vetocore/generators.hpp"
#include "vetocore/report.hpp"

using namespace vetocore;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "vetocore");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const std::string& contents) {
  const fs::path dir = fs::temp_directory_path() / "vetocore_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << contents;
  return p;
}

const std::string kRemark = "12 3\n7: 1 2 3\n5: 2 1 3\n";

// Collects every string in a report that looks like a number.
void collect_rationals(Json j, std::vector<std::string>& out) {
  if (j.is_object()) j.erase("input_digest");
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-')) out.push_back(s);
  } else if (j.is_structured()) {
    for (const Json& child : j) collect_rationals(child, out);
  }
}

}  // namespace

TEST_SUITE("report_cli") {
  TEST_CASE("core report round-trips its certificates") {
    const fs::path file = scratch("remark.elect", kRemark);
    const Election e = parse_election(kRemark);
    for (int k = 1; k <= 3; ++k) {
      const Run r = cli({"core", "--k", std::to_string(k), file.string()});
      REQUIRE(r.code == kExitOk);
      const Json j = Json::parse(r.out);
      CHECK(j["command"] == "core");
      CHECK(j["input_digest"] == input_digest(kRemark));
      CHECK(j["core"].get<CandidateSet>() == (k == 3 ? CandidateSet{0, 1} : CandidateSet{0}));
      REQUIRE(j["certificates"].size() == 3);
      for (const Json& c : j["certificates"]) CHECK(verify_certificate(e, k, certificate_from_json(c)));
      CHECK(serialize_report(j) == r.out);
    }
  }

  TEST_CASE("forged certificates fail re-verification") {
    const fs::path file = scratch("remark.elect", kRemark);
    Json j = Json::parse(cli({"core", "--k", "1", file.string()}).out);
    Json forged = j["certificates"][1];
    forged["T"] = Json::array({7, 8});
    CHECK_FALSE(verify_certificate(parse_election(kRemark), 1, certificate_from_json(forged)));
  }

  TEST_CASE("protection and distortion reports") {
    const fs::path file = scratch("remark.elect", kRemark);
    const Json p = Json::parse(cli({"protection", file.string()}).out);
    std::vector<int> levels;
    for (const Json& item : p["protection"]) levels.push_back(item["protection"].get<int>());
    CHECK(levels == std::vector<int>{3, 3, 1});

    const Run d = cli({"distortion", "--objective", "utilitarian", file.string()});
    REQUIRE(d.code == kExitOk);
    const Json dj = Json::parse(d.out);
    REQUIRE(dj["results"].size() == 3);
    CHECK(dj["results"][0]["value"] == "17/7");
    CHECK(dj["results"][1]["value"] == "19/5");
    CHECK(dj["results"][2]["value"] == "unbounded");
    CHECK(dj["results"][2]["witness"].is_null());
    const DistanceAssignment x = assignment_from_json(dj["results"][0]["witness"]);
    CHECK(check_assignment(parse_election(kRemark), x).empty());
    CHECK(social_cost(parse_election(kRemark), x, 0, Utilitarian{}) == Rational(17, 7));

    CHECK(cli({"distortion", "--objective", "percentile", "--alpha", "1/2", file.string()}).code == kExitBudgetRefusal);
    const Run one = cli({"distortion", "--objective", "percentile", "--alpha", "1/2", "--candidate", "0", "--serial",
                         scratch("random.elect", write_election(gen_random(4, 3, 5))).string()});
    REQUIRE(one.code == kExitOk);
    const Json oj = Json::parse(one.out);
    CHECK(oj["results"].size() == 1);
    CHECK(oj["results"][0]["alpha"] == "1/2");
  }

  TEST_CASE("rationals are printed canonically") {
    const fs::path file = scratch("random.elect", write_election(gen_random(4, 3, 5)));
    std::vector<std::string> values;
    for (const char* obj : {"utilitarian", "egalitarian"}) {
      collect_rationals(Json::parse(cli({"distortion", "--objective", obj, file.string()}).out), values);
    }
    collect_rationals(Json::parse(cli({"verify-flow", "--k", "3", "--w", "1", "--cstar", "0",
                                       scratch("remark.elect", kRemark).string()})
                                      .out),
                      values);
    REQUIRE(values.size() > 20);
    const std::regex form("-?[0-9]+/[1-9][0-9]*");
    for (const std::string& s : values) {
      CHECK(std::regex_match(s, form));
      CHECK(to_string(parse_rational(s)) == s);
    }
  }

  TEST_CASE("verify-flow report") {
    const Json j =
        Json::parse(cli({"verify-flow", "--k", "3", "--w", "1", "--cstar", "0", scratch("remark.elect", kRemark).string()})
                        .out);
    CHECK(j["max_cost"] == "67/15");
    CHECK(j["bound"] == "7/1");
    CHECK(j["stage1_total"] == "4/1");
    CHECK(cli({"verify-flow", "--k", "1", "--w", "2", "--cstar", "0", scratch("remark.elect", kRemark).string()}).code ==
          kExitInputError);
  }

  TEST_CASE("input errors exit 2 with a named code") {
    const Run bad = cli({"core", "--k", "1", scratch("bad.elect", "2 3\n1 1 3\n3 2 1\n").string()});
    CHECK(bad.code == kExitInputError);
    CHECK(bad.err.rfind("error: NotAPermutation: line 2", 0) == 0);
    CHECK(bad.out.empty());
    CHECK(cli({"core", "--k", "4", scratch("remark.elect", kRemark).string()}).code == kExitInputError);
    CHECK(cli({"core", "--k", "1", "/nonexistent/file"}).code == kExitInputError);
    CHECK(cli({"frobnicate"}).code == kExitInputError);
    CHECK(cli({"distortion", "--objective", "percentile", scratch("remark.elect", kRemark).string()}).code ==
          kExitInputError);
    CHECK(cli({"distortion", "--objective", "utilitarian", "--candidate", "3", scratch("remark.elect", kRemark).string()})
              .code == kExitInputError);
    CHECK(cli({"gen", "--family", "util-lb", "--k", "3", "--m", "3", "-o", scratch("x.elect", "").string()}).code ==
          kExitInputError);
  }

  TEST_CASE("budget refusals exit 3") {
    const fs::path file = scratch("remark.elect", kRemark);
    const Run r = cli({"winners", "--k", "2", "--enumerate", file.string()});
    CHECK(r.code == kExitBudgetRefusal);
    CHECK(r.err.rfind("error: BudgetExceeded", 0) == 0);

    const fs::path small = scratch("small.elect", "3 3\n1 2 3\n2 3 1\n3 1 2\n");
    ::setenv("VETOCORE_BUDGET", "5", 1);
    const Run refused = cli({"distortion", "--objective", "percentile", "--alpha", "1/2", small.string()});
    ::unsetenv("VETOCORE_BUDGET");
    CHECK(refused.code == kExitBudgetRefusal);
    CHECK(cli({"distortion", "--objective", "percentile", "--alpha", "1/2", small.string()}).code == kExitOk);
  }

  TEST_CASE("winners modes") {
    const fs::path file = scratch("small.elect", "4 3\n3: 1 2 3\n1: 2 1 3\n");
    const Json ex = Json::parse(cli({"winners", "--k", "1", "--enumerate", file.string()}).out);
    CHECK(ex["mode"] == "exhaustive");
    CHECK(ex["winners"] == Json::array({0}));
    const Json sm = Json::parse(cli({"winners", "--k", "1", "--enumerate", "--sample", "20", file.string()}).out);
    CHECK(sm["mode"] == "sample");
    const fs::path order = scratch("order.txt", "1 2 3 4\n");
    const Json run = Json::parse(cli({"winners", "--k", "1", "--order", order.string(), file.string()}).out);
    CHECK(run["mode"] == "order");
    CHECK(run["trace"].is_array());
    CHECK(cli({"winners", "--k", "1", file.string()}).code == kExitInputError);
  }

  TEST_CASE("gen writes the instance and its sidecar") {
    const fs::path out = fs::temp_directory_path() / "vetocore_cli_tests" / "lb.elect";
    const Run r = cli({"gen", "--family", "util-lb", "--k", "1", "--m", "2", "--delta", "0", "-o", out.string()});
    REQUIRE(r.code == kExitOk);
    std::ifstream in(out);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "2 2\n2 1\n1 2\n");
    std::ifstream side(out.string() + ".witness.json");
    const Json sidecar = Json::parse(side);
    CHECK(sidecar["family"] == "util-lb");
    CHECK(sidecar["witness"] == Json::array({Json::array({"2/1", "0/1"}), Json::array({"1/1", "1/1"})}));
    CHECK(Json::parse(r.out)["input_digest"] == input_digest(text.str()));
  }

  TEST_CASE("timing is opt-in") {
    const fs::path file = scratch("remark.elect", kRemark);
    CHECK_FALSE(Json::parse(cli({"protection", file.string()}).out).contains("elapsed_ms"));
    CHECK(Json::parse(cli({"--timing", "protection", file.string()}).out).contains("elapsed_ms"));
    CHECK(cli({"protection", file.string()}).out == cli({"protection", file.string()}).out);
  }

  TEST_CASE("digest") {
    CHECK(input_digest("") == "cbf29ce484222325");
    CHECK(input_digest("a") == "af63dc4c8601ec8c");
  }
}
