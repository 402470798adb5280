#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(TQFT_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST_CASE("cli omega example") {
  auto r = run("omega --group builtin:Z2 --g 1 --n 1 --decor \"[1]\" --method both");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "formula=2\n"));
  CHECK(contains(r.out, "brute=2\n"));
  CHECK(contains(r.out, "match=true"));
}

TEST_CASE("cli catalan example") {
  auto r = run("catalan --g 0 --n 1 --mu 6");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "value=5\n"));
  auto twisted = run("catalan --g 0 --mu 2,2 --group builtin:Z2 --format csv");
  CHECK(twisted.status == 0);
  CHECK(twisted.out.rfind("g,n,mu,decor,value\n", 0) == 0);
}

TEST_CASE("cli formats") {
  auto csv = run("correlator --g 1 --k 1 --format csv");
  CHECK(csv.out == "g,n,k,value\n1,1,1,1/24\n");
  auto js = run("correlator --g 1 --k 1 --group builtin:Z2 --format json");
  CHECK(js.status == 0);
  auto j = nlohmann::json::parse(js.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  CHECK(j[0]["value"] == "1/12");
  auto text = run("wgn --g 1 --n 1");
  CHECK(text.status == 0);
  CHECK(contains(text.out, "t1"));
  auto frob = run("frobenius --group builtin:S3 --format json");
  auto fj = nlohmann::json::parse(frob.out);
  CHECK(fj["dim"] == 3);
  auto dessin = run("dessin --g 0 --mu 1,1");
  CHECK(dessin.status == 0);
  auto info = run("group-info --group builtin:S3");
  CHECK(contains(info.out, "(1 2 3)"));
}

TEST_CASE("cli exit codes") {
  CHECK(run("omega --g 1").status == 2);
  CHECK(run("catalan --g 0 --mu 6 --format yaml").status == 2);
  CHECK(run("nonsense").status == 2);
  auto bad = run("omega --group builtin:S3 --g 0 --decor '[\"(1 4)\"]'");
  CHECK(bad.status == 2);
  CHECK(contains(bad.out, "(1 4)"));
  CHECK(run("omega --group builtin:S3 --g 2 --n 3 --method brute", "TQFT_BUDGET=10").status == 3);
  CHECK(run("omega --group builtin:S3 --g 0 --n 1", "TQFT_BUDGET=abc").status == 2);
  CHECK(run("wgn --g 0 --n 2").status == 2);
}

TEST_CASE("cli output is deterministic and the cache is transparent") {
  const std::string args = "omega --group builtin:S3 --g 1 --n 2 --format csv";
  auto a = run(args), b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  auto path = std::filesystem::temp_directory_path() / "tqft_cli_test_cache.json";
  std::filesystem::remove(path);
  auto c1 = run(args + " --cache " + path.string());
  CHECK(std::filesystem::exists(path));
  auto c2 = run(args + " --cache " + path.string());
  CHECK(c1.out == a.out);
  CHECK(c2.out == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("cli verify quick") {
  auto r = run("verify --level quick");
  CHECK(r.status == 0);
  CHECK_FALSE(contains(r.out, "FAIL"));
  CHECK(contains(r.out, "tqft-oracle"));
}
