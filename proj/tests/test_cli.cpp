#include "probhull/rng.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// End-to-end runs of the installed binary; PROBHULL_BIN is injected by the
// build so the tests exercise exactly what ships.

namespace
{
namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult
{
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path TempFile(std::string const & name)
{
  return fs::temp_directory_path() / ("probhull_cli_" + name);
}

void WriteFile(fs::path const & path, std::string const & content)
{
  std::ofstream f(path);
  REQUIRE(f.good());
  f << content;
}

std::string ReadFile(fs::path const & path)
{
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult Run(std::string const & args)
{
  fs::path const out = TempFile("stdout.txt");
  fs::path const err = TempFile("stderr.txt");
  std::string const cmd = std::string(PROBHULL_BIN) + " " + args + " > " + out.string() + " 2> " +
                          err.string();
  int const status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = ReadFile(out);
  r.err = ReadFile(err);
  return r;
}

std::string const kSquare = R"({"id": "a", "x": 0.0, "y": 0.0, "sigma": 0.3}
{"id": "b", "x": 4.0, "y": 0.5, "sigma": 0.3}
{"id": "c", "x": 4.5, "y": 4.0, "sigma": 0.3}
{"id": "d", "x": 0.5, "y": 3.5, "sigma": 0.3}
{"id": "e", "x": 2.0, "y": 2.0, "sigma": 0.3}
)";

std::string const kValues = R"({"id": "v1", "x": 3.0, "sigma": 0.4}
{"id": "v2", "x": 7.5, "sigma": 0.2}
{"id": "v3", "x": 1.2, "sigma": 1.0}
{"id": "v4", "x": 5.0, "sigma": 0.3}
)";

fs::path SquareFile()
{
  fs::path const p = TempFile("square.jsonl");
  WriteFile(p, kSquare);
  return p;
}
}  // namespace

TEST_CASE("hull subcommand: text and JSON output")
{
  fs::path const input = SquareFile();
  RunResult const text = Run("hull -i " + input.string());
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("hull (4 of 5 points): a b c d") != std::string::npos);
  CHECK(text.out.find("separation: all beta disks disjoint") != std::string::npos);

  RunResult const js = Run("hull --json -i " + input.string());
  CHECK(js.exit_code == 0);
  json const doc = json::parse(js.out);
  CHECK(doc.at("schema") == "probhull/1");
  CHECK(doc.at("hull") == json::array({"a", "b", "c", "d"}));
  CHECK(doc.at("phi") == 0.95);
}

TEST_CASE("hull subcommand reads stdin when no input file is given")
{
  fs::path const input = SquareFile();
  RunResult const r = Run("hull < " + input.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("a b c d") != std::string::npos);
}

TEST_CASE("hull --svg writes a rendering")
{
  fs::path const input = SquareFile();
  fs::path const svg = TempFile("plot.svg");
  std::error_code ec;
  fs::remove(svg, ec);
  RunResult const r = Run("hull -i " + input.string() + " --svg " + svg.string());
  CHECK(r.exit_code == 0);
  std::string const body = ReadFile(svg);
  CHECK(body.find("<svg") != std::string::npos);
  CHECK(body.find("</svg>") != std::string::npos);
}

TEST_CASE("validation problems exit with code 1")
{
  fs::path const bad_json = TempFile("bad.jsonl");
  WriteFile(bad_json, "not json at all\n");
  RunResult const r1 = Run("hull -i " + bad_json.string());
  CHECK(r1.exit_code == 1);
  CHECK(r1.err.find("error: line 1: invalid JSON") != std::string::npos);

  fs::path const dup = TempFile("dup.jsonl");
  WriteFile(dup, R"({"id": "a", "x": 0, "y": 0, "sigma": 1}
{"id": "a", "x": 2, "y": 1, "sigma": 1}
)");
  RunResult const r2 = Run("hull -i " + dup.string());
  CHECK(r2.exit_code == 1);
  CHECK(r2.err.find("duplicate id \"a\"") != std::string::npos);

  RunResult const r3 = Run("hull -i " + SquareFile().string() + " --phi 1.5");
  CHECK(r3.exit_code == 1);

  RunResult const r4 = Run("hull -i /nonexistent/file.jsonl");
  CHECK(r4.exit_code == 1);
  CHECK(r4.err.find("cannot open input file") != std::string::npos);

  RunResult const r5 = Run("frobnicate");
  CHECK(r5.exit_code == 1);
}

TEST_CASE("general-position violations exit with code 2")
{
  fs::path const shared = TempFile("sharedx.jsonl");
  WriteFile(shared, R"({"id": "a", "x": 1, "y": 0, "sigma": 1}
{"id": "b", "x": 1, "y": 5, "sigma": 1}
)");
  RunResult const r = Run("hull -i " + shared.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("share an x-coordinate") != std::string::npos);

  fs::path const dup_mean = TempFile("dupmean.jsonl");
  WriteFile(dup_mean, R"({"id": "a", "x": 1, "y": 2, "sigma": 1}
{"id": "b", "x": 1, "y": 2, "sigma": 1}
)");
  CHECK(Run("hull -i " + dup_mean.string()).exit_code == 2);
}

TEST_CASE("verify passes a healthy instance and fails a broken one")
{
  // well-separated: tiny sigmas, generous spacing
  std::ostringstream good;
  probhull::RandomStream rs(91);
  for (int i = 0; i < 12; ++i) {
    good << R"({"id": "p)" << i << R"(", "x": )" << (i % 4) * 5 + rs.NextUnit() << R"(, "y": )"
         << (i / 4) * 5 + rs.NextUnit() << R"(, "sigma": 0.05})" << "\n";
  }
  fs::path const good_file = TempFile("good.jsonl");
  WriteFile(good_file, good.str());
  RunResult const ok = Run("verify -i " + good_file.string() + " --trials 200 --phi 0.9");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("pass") != std::string::npos);

  // four pinned corners plus wide interior points: coverage collapses
  std::ostringstream bad;
  bad << R"({"id": "c0", "x": 0.0, "y": 0.0, "sigma": 0.0001})" << "\n"
      << R"({"id": "c1", "x": 10.0, "y": 0.3, "sigma": 0.0001})" << "\n"
      << R"({"id": "c2", "x": 10.3, "y": 10.0, "sigma": 0.0001})" << "\n"
      << R"({"id": "c3", "x": 0.3, "y": 10.3, "sigma": 0.0001})" << "\n";
  for (int i = 0; i < 20; ++i) {
    bad << R"({"id": "w)" << i << R"(", "x": )" << 2.0 + 6.0 * rs.NextUnit() << R"(, "y": )"
        << 2.0 + 6.0 * rs.NextUnit() << R"(, "sigma": 10})" << "\n";
  }
  fs::path const bad_file = TempFile("bad_cover.jsonl");
  WriteFile(bad_file, bad.str());
  RunResult const fail = Run("verify -i " + bad_file.string() + " --trials 100 --json");
  CHECK(fail.exit_code == 3);
  json const doc = json::parse(fail.out);
  CHECK(doc.at("pass") == false);
  CHECK(doc.at("mean_fraction").get<double>() < doc.at("threshold").get<double>());
}

TEST_CASE("max1d and 1d verification")
{
  fs::path const vals = TempFile("vals.jsonl");
  WriteFile(vals, kValues);
  RunResult const r = Run("max1d --json -i " + vals.string());
  CHECK(r.exit_code == 0);
  json const doc = json::parse(r.out);
  CHECK(doc.at("kind") == "max1d");
  CHECK(doc.at("order") == json::array({"v2", "v1", "v4", "v3"}));
  CHECK(doc.at("certificates").size() == 3);

  RunResult const v = Run("verify --one-d -i " + vals.string() + " --trials 200");
  CHECK(v.exit_code == 0);
}

TEST_CASE("envelope and audit subcommands")
{
  fs::path const input = SquareFile();
  RunResult const env = Run("envelope -i " + input.string());
  CHECK(env.exit_code == 0);
  CHECK(env.out.find("upper envelope: a d c") != std::string::npos);
  CHECK(env.out.find("lower envelope: c b a") != std::string::npos);

  RunResult const audit = Run("audit -i " + input.string() + " --trials 100 --json");
  CHECK(audit.exit_code == 0);
  json const doc = json::parse(audit.out);
  CHECK(doc.at("kind") == "audit");
  CHECK(doc.at("exclusion").at("max_excluders_per_point_level").get<int>() <= 1);
  CHECK(doc.at("structure").at("upper").at("max_participants_per_group").get<int>() <= 4);
}

TEST_CASE("help exits cleanly")
{
  RunResult const r = Run("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("hull") != std::string::npos);
}
