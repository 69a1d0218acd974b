#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string g_cli;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("catalog lists the families") {
  auto r = run("catalog");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("free") != std::string::npos);
  CHECK(r.out.find("inverse-quartic-74") != std::string::npos);
  CHECK(r.out.find("chi-exponential-82") != std::string::npos);
}

TEST_CASE("sample emits deterministic CSV with the printed spot value") {
  const std::string args =
      "sample --family inverse-quartic-74 --g 1 --grid log:1e-2,20,400";
  auto a = run(args);
  auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);  // byte-stable
  CHECK(a.out.find("r,V,phi,chi") != std::string::npos);
  // r=1 is on the grid endpoints? use a direct 3-point linear grid instead
  auto c = run("sample --family inverse-quartic-74 --g 1 --grid lin:1,2,2");
  CHECK(c.out.find("0.36787944117144233") != std::string::npos);  // e^{-1}
}

TEST_CASE("compose with the free base reports the inner node count") {
  auto r = run(
      "compose --base free --inner exponential-70:lambda=-5,mu=1 "
      "--grid log:0.01,20,50 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"node_count\": 1") != std::string::npos);
  CHECK(r.out.find("\"bargmann_bound\": 5.0") != std::string::npos);
}

TEST_CASE("verify exits zero on the correct build") {
  auto r = run("verify --all");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("config errors exit with status 2") {
  CHECK(run("sample --family no-such-family").exit_code == 2);
  CHECK(run("sample").exit_code == 2);
  CHECK(run("compose --base free").exit_code == 2);
  CHECK(run("sample --family free --grid bogus:1,2,3").exit_code == 2);
}

TEST_CASE("config file is honored and flags override it") {
  const char* path = "/tmp/zesolve_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"family": "inverse-quartic-74:g=1", "grid": "lin:1,2,2"})";
  }
  auto from_file = run(std::string("sample --config ") + path);
  CHECK(from_file.exit_code == 0);
  CHECK(from_file.out.find("inverse-quartic-74") != std::string::npos);

  auto overridden = run(std::string("sample --config ") + path + " --family free");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.out.find("sample free") != std::string::npos);
  std::remove(path);
}

TEST_CASE("tolerance profile from flag and environment") {
  auto r = run("compose --base free --inner exponential-70:lambda=-1,mu=1 "
               "--grid log:0.1,10,20 --tol strict --format json");
  CHECK(r.exit_code == 0);
  auto bad = run("compose --base free --inner exponential-70:lambda=-1,mu=1 "
                 "--tol bogus");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("environment tolerance profile") {
  const std::string cmd =
      "ZESOLVE_TOL=fast " + g_cli +
      " compose --base free --inner exponential-70:lambda=-1,mu=1 "
      "--grid log:0.1,10,20 --format json 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  CHECK(WEXITSTATUS(pclose(p)) == 0);
  CHECK(out.find("\"report\"") != std::string::npos);
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  if (argc > 1 && argv[argc - 1][0] != '-') {
    g_cli = argv[argc - 1];
    --argc;
  }
  if (g_cli.empty()) {
    if (const char* env = std::getenv("ZESOLVE_CLI")) g_cli = env;
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-zesolve-binary>\n");
    return 2;
  }
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
