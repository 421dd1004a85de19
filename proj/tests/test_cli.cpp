#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mvdl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = mvdl::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& file) { return std::string(MVDL_TEST_DATA) + "/" + file; }

}  // namespace

TEST_CASE("help and version") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"eval", "--help"}).code == 0);
  auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.rfind("mvdl ", 0) == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"validate-algebra", "--no-such-flag"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  auto r = run({"eval", "--model", data("missing.json"), "--formula", "p"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"eval", "--model", data("crisp_model.json"), "--formula", "p & & p"}).code == 2);
}

TEST_CASE("validate-algebra") {
  auto r = run({"validate-algebra", "--builtin", "L3", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "L3: all 14 laws pass\n");
  auto j = nlohmann::json::parse(run({"validate-algebra", "--builtin", "G2"}).out);
  CHECK(j.at("ok") == true);
}

TEST_CASE("semiprimal") {
  CHECK(run({"semiprimal", "--builtin", "L2"}).code == 0);
  auto r = run({"semiprimal", "--builtin", "G2"});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out).at("semiprimal") == false);
}

TEST_CASE("eval") {
  auto r = run({"eval", "--model", data("crisp_model.json"), "--formula", "<a> p"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("values") == nlohmann::json::array({"1/2", "0"}));
  auto one = run({"eval", "--model", data("crisp_model.json"), "--formula", "[a] p", "--state", "1", "--format",
                  "text"});
  CHECK(one.out == "1\n");
}

TEST_CASE("reduce") {
  auto r = run({"reduce", "--preset", "game", "--formula", "<(a;b)+c> p", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "<a:ev> <b:ev> p | <c:ev> p\n");
  CHECK(run({"reduce", "--preset", "pdl-crisp", "--formula", "<a*> p"}).code == 2);
}

TEST_CASE("entail reports the countermodel") {
  auto r = run({"entail", "--preset", "pdl-crisp", "--algebra", "B2", "--phi", "p -> [a]p", "--max-n", "2"});
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("status") == "fails");
  CHECK(j.at("counterexample").at("model").at("n") == 2);
  CHECK_FALSE(j.contains("seconds"));
  auto again = run({"entail", "--preset", "pdl-crisp", "--algebra", "B2", "--phi", "p -> [a]p", "--max-n", "2"});
  CHECK(again.out == r.out);
  CHECK(run({"entail", "--preset", "pdl-crisp", "--gamma", "p", "--gamma", "q", "--phi", "p & q"}).code == 0);
}

TEST_CASE("check-safety and budgets") {
  CHECK(run({"check-safety", "--preset", "pdl-labelled", "--algebra", "L2", "--op", "+", "--max-n", "1"}).code == 0);
  auto bad = run({"check-safety", "--variant", "MeetPW", "--kind", "APowerset", "--algebra", "L2",
                  "--max-n-target", "1"});
  CHECK(bad.code == 1);
  CHECK(run({"--budget", "5", "check-safety", "--preset", "pdl-labelled", "--algebra", "L2", "--op", "+"}).code ==
        3);
}

TEST_CASE("check-separation") {
  CHECK(run({"check-separation", "--preset", "pdl-threshold", "--algebra", "L2", "--n", "2"}).code == 0);
  CHECK(run({"check-separation", "--preset", "pdl-threshold", "--algebra", "L2", "--n", "2", "--liftings", "t2"})
            .code == 1);
}

TEST_CASE("verify-rules") {
  auto r = run({"verify-rules", "--preset", "pdl-labelled", "--algebra", "L2", "--max-n", "1"});
  CHECK(r.code == 0);
  auto bad = run({"verify-rules", "--preset", "pdl-crisp", "--op", "+", "--lifting", "box", "--template",
                  "<#1:box> w1 | <#2:box> w1"});
  CHECK(bad.code == 1);
}

TEST_CASE("one-step") {
  auto r = run({"one-step", "--kind", "labelled-diamond", "--algebra", "L2", "--assignment",
                data("diamond_assignment.json")});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("alpha") == nlohmann::json::array({2}));
  CHECK(run({"one-step", "--kind", "instantial", "--assignment", data("diamond_assignment.json")}).code == 2);
}
