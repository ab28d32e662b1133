#include <catch_amalgamated.hpp>

#include <bcher/checks.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bcher;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / ("bcher_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(2); }

std::string bin() {
  const char* b = std::getenv("BCHER_BIN");
  return b ? b : "";
}

// Exit status of the CLI with stdout and stderr sent to files in the scratch directory.
int run(const std::string& args) {
  const fs::path d = scratch();
  std::string cmd = bin() + " " + args + " >" + (d / "stdout").string() + " 2>" + (d / "stderr").string();
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const json b2plus = json::parse(R"({"family": "negative", "m": 2, "mp": 1, "n": 2, "c1": "1/2"})");

json corrupted() {
  json p = b2plus;
  p["corrupt"] = true;
  return p;
}

std::string config_error_location(const json& cfg) {
  try {
    run_check(cfg);
  } catch (const ConfigError& e) {
    return e.location;
  }
  return "<none>";
}

}  // namespace

TEST_CASE("reports") {
  SECTION("pass report round-trips through parse") {
    Report r = run_check(json{{"check", "anticommute"}, {"m", 2}, {"m'", 1}, {"n", 3}, {"c1", "1/2"}, {"D", 4}});
    CHECK(r.status == "pass");
    CHECK(r.counterexample.is_null());
    CHECK(r.version == std::string(BCHER_VERSION));
    Report back = report_from_json(json::parse(report_text(r)));
    CHECK(report_to_json(back) == report_to_json(r));
    CHECK(back.duration_ms == r.duration_ms);
  }
  SECTION("fail reports carry a counterexample") {
    Report r = run_check(json{{"check", "anticommute"}, {"m", 2}, {"mp", 1}, {"n", 3}, {"c1", "1/2"},
                              {"pair_c1", json::array({json::array({1, 2, "1/3"})})}, {"D", 4}});
    CHECK(r.status == "fail");
    REQUIRE(r.counterexample.is_object());
    CHECK(r.counterexample.contains("pair"));
    CHECK(r.counterexample.contains("monomial"));
    CHECK(r.counterexample.contains("value"));
    Report back = report_from_json(report_to_json(r));
    CHECK(back.counterexample == r.counterexample);

    Report p = run_check(json{{"check", "pbw"}, {"presentation", corrupted()}, {"seed", 7}});
    CHECK(p.status == "fail");
    CHECK(p.counterexample.contains("word"));
    CHECK(p.counterexample["leftmost"] != p.counterexample["rightmost"]);
  }
  SECTION("duration is present and non-negative") {
    Report r = run_check(json{{"check", "blocks"}, {"n", 3}, {"Q", -1}});
    json j = report_to_json(r);
    REQUIRE(j.contains("duration_ms"));
    CHECK(j["duration_ms"].get<double>() >= 0);
    CHECK_FALSE(report_to_json(r, false).contains("duration_ms"));
  }
  SECTION("blocks of Q = -1") {
    Report r = run_check(json{{"check", "blocks"}, {"n", 3}, {"Q", -1}});
    CHECK(r.details["blocks"] == json::parse("[[1,2,3]]"));
    CHECK(r.details["negative"] == json::parse("[true]"));
    Report ones = run_check(json{{"check", "blocks"}, {"n", 2}, {"Q", 1}});
    CHECK(ones.details["blocks"] == json::parse("[[1,2]]"));
    CHECK(ones.details["negative"] == json::parse("[false]"));
  }
  SECTION("deterministic given config and seed") {
    json cfg{{"check", "pbw"}, {"presentation", b2plus}, {"trials", 30}, {"seed", 3}};
    CHECK(report_text(run_check(cfg), false) == report_text(run_check(cfg), false));
    json h{{"check", "hilbert"}, {"random", 3}, {"seed", 11}, {"d_max", 3}};
    CHECK(report_text(run_check(h), false) == report_text(run_check(h), false));
  }
  SECTION("emit_report") {
    const fs::path d = scratch();
    Report r = run_check(json{{"check", "blocks"}, {"n", 2}, {"Q", -1}});
    emit_report(r, (d / "r.json").string(), false);
    CHECK(slurp(d / "r.json") == report_text(r, false));
    CHECK_THROWS_AS(emit_report(r, (d / "missing" / "dir" / "r.json").string()), IOError);
  }
}

TEST_CASE("configuration errors carry a location") {
  CHECK(config_error_location(json{{"check", "frobnicate"}}) == "/check");
  CHECK(config_error_location(json{{"m", 2}}) == "/");
  CHECK(config_error_location(json{{"check", "anticommute"}, {"m", 2}, {"mp", 1}, {"n", 2}, {"c1", "1/0"}}) == "/c1");
  CHECK(config_error_location(json{{"check", "anticommute"}, {"m", 2}, {"mp", 1}, {"n", 2}, {"c1", "1/2"}, {"D", 99}}) == "/D");
  CHECK(config_error_location(json{{"check", "verma"}, {"presentation", {{"family", "negative"}, {"m", 2}, {"n", 2}}}}) ==
        "/presentation");
  CHECK(config_error_location(json{{"check", "verma"}, {"presentation", {{"family", "nope"}}}}) == "/presentation/family");
  CHECK(config_error_location(json{{"check", "anticommute"}, {"m", 3}, {"mp", 1}, {"n", 2}, {"c1", "1/2"}}) == "/");
  CHECK(config_error_location(json{{"check", "blocks"}, {"Q", json::array({json::array({1, 2}), json::array({1, 1})})}}) == "/Q");
  CHECK(config_error_location(
            json{{"check", "group"}, {"group", {{"family", "generators"}, {"generators", json::array({{{"perm", {1, 1}}, {"scalars", {1, 1}}}})}}}}) ==
        "/group/generators/0");
  CHECK(config_error_location(json{{"check", "pbw"}, {"presentation", b2plus}, {"trials", 0}}) == "/");
}

TEST_CASE("library errors become error reports") {
  Report r = run_check(json{{"check", "group"}, {"group", {{"family", "w_cc"}, {"m", 2}, {"mp", 1}, {"n", 3}}}, {"cap", 5}});
  CHECK(r.status == "error");
  CHECK(r.details.contains("error"));
  CHECK_FALSE(r.passed());

  Report wrong = run_check(json{{"check", "rmax"}, {"beta", {{"kind", "cherednik_sn"}, {"n", 2}, {"c", "1/2"}}}, {"expect", "full"}});
  CHECK(wrong.status == "fail");
  CHECK(wrong.counterexample["dimension"] == 1);
  CHECK(wrong.counterexample["expected_dimension"] == 4);
}

TEST_CASE("command line") {
  if (bin().empty()) SKIP("BCHER_BIN not set");
  const fs::path d = scratch();
  const std::string dir = d.string();

  write(d / "pass.json", json{{"check", "anticommute"}, {"m", 2}, {"mp", 1}, {"n", 2}, {"c1", "1/2"}, {"D", 3}});
  write(d / "fail.json", json{{"check", "pbw"}, {"presentation", corrupted()}, {"seed", 7}});
  write(d / "bad.json", json{{"check", "anticommute"}, {"m", 2}});
  std::ofstream(d / "garbage.json") << "{ not json";
  write(d / "both.json", json::array({json{{"check", "blocks"}, {"n", 2}, {"Q", -1}},
                                      json{{"check", "pbw"}, {"presentation", corrupted()}, {"seed", 7}}}));
  write(d / "q.json", json{{"n", 3}, {"Q", -1}});
  write(d / "group.json", json{{"family", "w_cc"}, {"m", 2}, {"mp", 1}, {"n", 2}});

  SECTION("exit status") {
    CHECK(run("verify " + dir + "/pass.json") == 0);
    CHECK(run("verify " + dir + "/fail.json") == 1);
    CHECK(run("verify " + dir + "/both.json") == 1);
    CHECK(run("verify " + dir + "/bad.json") == 2);
    CHECK(slurp(d / "stderr").find("missing key 'mp'") != std::string::npos);
    CHECK(run("verify " + dir + "/garbage.json") == 2);
    CHECK(run("verify " + dir + "/nonexistent.json") == 2);
    CHECK(run("frobnicate") != 0);
  }
  SECTION("reports are byte-stable without timing") {
    REQUIRE(run("verify " + dir + "/fail.json --no-timing --out " + dir + "/a.json") == 1);
    REQUIRE(run("verify " + dir + "/fail.json --no-timing --out " + dir + "/b.json") == 1);
    CHECK(slurp(d / "a.json") == slurp(d / "b.json"));
    json a = json::parse(slurp(d / "a.json"));
    CHECK(a["status"] == "fail");
    CHECK_FALSE(a.contains("duration_ms"));

    REQUIRE(run("verify " + dir + "/pass.json --out " + dir + "/t.json") == 0);
    json t = json::parse(slurp(d / "t.json"));
    CHECK(t["duration_ms"].get<double>() >= 0);
    CHECK(report_from_json(t).passed());
  }
  SECTION("blocks and group") {
    REQUIRE(run("blocks --q " + dir + "/q.json") == 0);
    json b = json::parse(slurp(d / "stdout"));
    CHECK(b["blocks"] == json::parse("[[1,2,3]]"));
    REQUIRE(run("group --spec " + dir + "/group.json --enumerate") == 0);
    json g = json::parse(slurp(d / "stdout"));
    CHECK(g["order"] == 4);
    CHECK(g["elements"].size() == 4);
  }
  SECTION("suites") {
    CHECK(run("suite controls --no-timing --out " + dir + "/controls") == 1);
    std::size_t reports = 0;
    for (const auto& e : fs::directory_iterator(d / "controls")) {
      json r = json::parse(slurp(e.path()));
      CHECK(r["status"] == "fail");
      CHECK(r.contains("counterexample"));
      ++reports;
    }
    CHECK(reports >= 5);
    CHECK(run("suite no-such-suite") == 2);
  }
  fs::remove_all(d);
}
