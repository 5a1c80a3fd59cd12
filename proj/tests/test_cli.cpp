#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = toybit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("toybit_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

const std::string kState01 = "inputs 0\noutputs 1\nnode s Z 01\nedge s out0\n";
const std::string kState00 = "inputs 0\noutputs 1\nnode s Z\nedge s out0\n";

}  // namespace

TEST_CASE("interpret prints the relation") {
  const auto f = write_temp("s01.toy", kState01);
  const auto r = run({"interpret", f});
  CHECK(r.code == 0);
  CHECK(r.out == ". -> 1\n. -> 4\n");
}

TEST_CASE("eq exit codes") {
  const auto a = write_temp("a.toy", kState01);
  const auto b = write_temp("b.toy", kState00);
  CHECK(run({"eq", a, a}).code == 0);
  const auto r = run({"eq", a, b});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("not equal: ", 0) == 0);
  CHECK(run({"eq", a, "/nonexistent/file.toy"}).code == 2);
}

TEST_CASE("eq --witness prints a trace") {
  const auto a = write_temp("w.toy", kState00);
  const auto r = run({"eq", a, a, "--witness"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n  ") != std::string::npos);
}

TEST_CASE("parse errors exit 2 with line and column") {
  const auto f = write_temp("bad.toy", "inputs 0\noutputs 1\nnode s Q 01\nedge s out0\n");
  const auto r = run({"interpret", f});
  CHECK(r.code == 2);
  CHECK(r.err.find(f + ":3:6:") != std::string::npos);

  const auto j = write_temp("bad.json", "{\n  \"inputs\": 0,\n  \"outputs\": 1,\n  \"nodes\": [ ,\n}\n");
  const auto rj = run({"normalize", j});
  CHECK(rj.code == 2);
  CHECK(rj.err.find(j + ":4:") != std::string::npos);
}

TEST_CASE("format can be forced") {
  const auto f = write_temp("fmt.toy", kState01);
  CHECK(run({"interpret", f, "--format", "text"}).code == 0);
  CHECK(run({"interpret", f, "--format", "tree"}).code == 2);
  CHECK(run({"--format", "text", "interpret", f}).code == 0);
  CHECK(run({"interpret", f, "--format", "xml"}).code == 2);
}

TEST_CASE("normalize bends inputs and reports ZERO") {
  const auto w = write_temp("wire.toy", "inputs 1\noutputs 1\nedge in0 out0\n");
  const auto r = run({"normalize", w});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# 1 inputs bent", 0) == 0);
  const auto z = write_temp("zero.toy", "inputs 0\noutputs 0\nnode a Z 00\nnode b Z 11\nedge a b\n");
  CHECK(run({"normalize", z}).out == "ZERO\n");
  CHECK(run({"normalize", z, "--rgslo"}).out == "ZERO\n");
}

TEST_CASE("rules check") {
  const auto r = run({"rules", "check", "--legs", "1", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("seed 7") != std::string::npos);
  CHECK(run({"rules", "check", "--legs", "9"}).code == 2);
}

TEST_CASE("graphstate") {
  const auto f = write_temp("edge.adj", "0 1\n1 0\n");
  const auto r = run({"graphstate", "--adj", f});
  CHECK(r.code == 0);
  CHECK(r.out.find("S^T J S = 0: yes") != std::string::npos);
  const auto bad = write_temp("loop.adj", "1 0\n0 0\n");
  CHECK(run({"graphstate", "--adj", bad}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"eq", "only-one"}).code == 2);
}
