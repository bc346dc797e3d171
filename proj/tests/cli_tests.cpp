#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "apoint/report.hpp"
#include "cli.hpp"

using namespace apoint;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "apoint");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream is(line);
  for (std::string f; std::getline(is, f, ',');) v.push_back(f);
  return v;
}

}  // namespace

TEST_CASE("csv formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
  Table t;
  t.columns = {{"k", ColumnKind::integer}, {"z", ColumnKind::complex}, {"msg", ColumnKind::text}};
  t.add_row({7LL, cplx(0.5, -2.0), std::string("a, \"b\"")});
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "k,z_re,z_im,msg\n7,0.5,-2,\"a, \"\"b\"\"\"\n");
  CHECK_THROWS_AS(t.add_row({1.5, cplx(0.0), std::string()}), Error);
  CHECK_THROWS_AS(t.add_row({1LL}), Error);
}

TEST_CASE("json round trip") {
  Table t;
  t.columns = {{"k", ColumnKind::integer}, {"x", ColumnKind::real}, {"z", ColumnKind::complex}, {"s", ColumnKind::text}};
  t.add_row({1LL, 0.1, cplx(1.0 / 3.0, -1e-300), std::string("x")});
  t.add_row({-2LL, INFINITY, cplx(NAN, 2.0), std::string("")});
  const auto j = table_to_json(t, {{"seed", 4}});
  const Table back = table_from_json(nlohmann::json::parse(j.dump()));
  CHECK(table_to_json(back, {{"seed", 4}}).dump() == j.dump());
  CHECK(std::get<double>(back.rows[0][1]) == 0.1);
  CHECK(std::get<cplx>(back.rows[0][2]) == cplx(1.0 / 3.0, -1e-300));
  CHECK(std::isnan(std::get<cplx>(back.rows[1][2]).real()));
  CHECK(j["meta"]["seed"] == 4);
}

TEST_CASE("apoints command") {
  const Run r = run({"apoints", "--a", "0", "--tau", "0", "--T", "100"});
  CHECK(r.code == cli::kExitOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 30);
  CHECK(l[0] == "a_re,a_im,beta,gamma,residual,T_effective");
  CHECK(std::abs(std::stod(fields(l[1])[3]) - 14.134725) < 1e-6);
  CHECK(r.err.find("count 29") != std::string::npos);

  const Run empty = run({"apoints", "--a", "0", "--tau", "0", "--T", "10"});
  CHECK(empty.code == cli::kExitOk);
  CHECK(lines(empty.out).size() == 1);

  const Run one = run({"apoints", "--a", "1", "--tau", "1", "--T", "100"});
  CHECK(one.code == cli::kExitOk);
  const double c1 = 100.0 / kTwoPi * std::log(100.0 / (2.0 * kTwoPi * std::exp(1.0)));
  CHECK(one.err.find("expected_count " + format_real(c1)) != std::string::npos);
}

TEST_CASE("formula, sum, count and trivial commands") {
  const Run f = run({"formula", "--id", "fujii-zero", "--T", "1000"});
  CHECK(f.code == cli::kExitOk);
  const auto head = lines(f.out).at(0);
  CHECK(head.find("log_squared_re") != std::string::npos);
  CHECK(head.find("linear_im") != std::string::npos);
  CHECK(head.find("total_re") != std::string::npos);

  const Run s = run({"sum", "--a", "0.5", "--X", "1", "--alpha", "0.25", "--tau", "2", "--T", "500"});
  CHECK(s.code == cli::kExitOk);
  CHECK(lines(s.out).size() == 2);
  CHECK(lines(s.out)[0].find("total_re,total_im") != std::string::npos);

  const Run c = run({"count", "--a", "0", "--tau", "0", "--T", "100"});
  CHECK(c.code == cli::kExitOk);
  CHECK(c.err.find("count 29") != std::string::npos);

  const Run t = run({"trivial", "--a", "0.3", "--kmin", "5", "--kmax", "12"});
  CHECK(t.code == cli::kExitOk);
  CHECK(lines(t.out).size() == 9);
}

TEST_CASE("exit codes") {
  CHECK(run({"verify", "--id", "no-such-formula", "--ladder", "250,500"}).code == cli::kExitUsage);
  CHECK(run({"formula", "--T", "1000"}).code == cli::kExitUsage);
  CHECK(run({"apoints", "--id", "theorem1"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--id", "theorem1", "--ladder", "500,250"}).code == cli::kExitUsage);
  CHECK(run({"apoints", "--a", "0", "--tau", "5", "--T", "5"}).code == cli::kExitUsage);
  CHECK(run({"bogus"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);

  // The displayed residue identity misses the 0.1 bound, so the criterion
  // fails but the table is still written.
  const Run v = run({"verify", "--id", "residue-L", "--delta", "0.2", "--ladder", "1000,10000"});
  CHECK(v.code == cli::kExitCriterion);
  CHECK(lines(v.out).size() == 3);
  CHECK(v.err.find("criterion FAIL") != std::string::npos);

  const Run ok = run({"verify", "--id", "theorem3", "--a", "0", "--X", "1", "--alpha", "0.25", "--ladder", "250,500"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.err.find("exact collapse") != std::string::npos);
}

TEST_CASE("output is deterministic and thread independent") {
  const std::vector<std::string> args = {"verify", "--id", "theorem1", "--X", "1", "--alpha", "0.25",
                                         "--ladder", "250,400", "--seed", "17"};
  auto with = [&](const char* threads) {
    auto a = args;
    a.insert(a.end(), {"--threads", threads});
    return run(a);
  };
  const Run a = with("1"), b = with("1"), c = with("4");
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);

  const Run s1 = run({"apoints", "--a", "0.5,0.5", "--tau", "1", "--T", "120", "--threads", "1"});
  const Run s4 = run({"apoints", "--a", "0.5,0.5", "--tau", "1", "--T", "120", "--threads", "4"});
  CHECK(s1.out == s4.out);
}

TEST_CASE("json output re-parses exactly") {
  const std::string path = "cli_tests_out.json";
  const Run r = run({"apoints", "--a", "0.5", "--tau", "1", "--T", "60", "--format", "json", "--out", path, "--seed", "3"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["meta"]["seed"] == 3);
  CHECK(j["meta"]["command"] == "apoints");
  const Table t = table_from_json(j);
  CHECK(!t.rows.empty());
  CHECK(table_to_json(t, j["meta"]) == j);

  const Run csv = run({"apoints", "--a", "0.5", "--tau", "1", "--T", "60"});
  const auto l = lines(csv.out);
  REQUIRE(l.size() == t.rows.size() + 1);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(std::stod(fields(l[i + 1])[3]) == std::get<double>(t.rows[i][2]));
  }
  std::remove(path.c_str());
}
