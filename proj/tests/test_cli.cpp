#include "support.hpp"

#include "cli.hpp"
#include "pcl/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>

using namespace pcl;
using namespace pcl::testing;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("dispatch examples") {
  auto c = run({"closure", "--field", "GF(2)", "--vars", "t", "--gens", "t^16", "--json"});
  CHECK(c.code == 0);
  auto r = c.report();
  CHECK(r["schema"] == cli::kSchema);
  CHECK(r["result"]["gens"] == json::array({"t"}));
  CHECK(r["result"]["steps"] == 4);

  auto h = run({"hensel", "--field", "GF(2)", "--prec", "33", "--system", "y^2+y+x", "--x", "t", "--y0", "0"});
  CHECK(h.code == 0);
  CHECK(h.out == "t + t^2 + t^4 + t^8 + t^16 + t^32\n");

  auto i = run({"impdeg", "--field", "GF(2)", "--vars", "s,t", "--gens", "", "--json"});
  CHECK(i.code == 0);
  CHECK(i.report()["result"]["impdeg"] == 2);
}

TEST_CASE("exit codes") {
  // domain error
  auto d = run({"hensel", "--system", "y^2+x", "--x", "t", "--y0", "0", "--json"});
  CHECK(d.code == 1);
  CHECK(d.report()["error"]["kind"] == "NonUnitJacobian");
  CHECK_FALSE(d.err.empty());
  // parse and configuration errors
  CHECK(run({"member", "--x", "s*t^(2)", "--gens", "t"}).code == 2);
  CHECK(run({"closure", "--field", "GF(6)", "--gens", "t"}).code == 2);
  CHECK(run({"closure"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"lambda", "--a", "t", "--b", "t", "--index", "5"}).code == 2);
  // resource limit
  auto rl = run({"member", "--x", "t", "--gens", "t^2+t, t^3", "--max-spairs", "1", "--json"});
  CHECK(rl.code == 3);
  CHECK(rl.report()["error"]["kind"] == "ResourceLimit");
  // help is not an error
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("closure") != std::string::npos);
}

TEST_CASE("timing goes to stderr only") {
  auto a = run({"locus", "--a", "t, t^2", "--timing"});
  auto b = run({"locus", "--a", "t, t^2"});
  CHECK(a.out == b.out);
  CHECK(a.out == "<x1^2 + x2>\n");
  CHECK(a.err.find("elapsed_ms") != std::string::npos);
  CHECK(b.err.empty());
}

TEST_CASE("parse_element examples") {
  auto F = session(2, {"t"});
  const auto x = F("1/(t+1)");
  CHECK(x.num().is_one());
  CHECK(x.den().to_string() == "t + 1");
  const auto y = F("t^3 + t^2 + 1");
  CHECK(y.is_polynomial());
  CHECK(y.num().size() == 3);
  CHECK_THROWS_AS(F("s*t^(2)"), UnknownVariable);
}

TEST_CASE("render and parse round trip") {
  std::mt19937_64 rng(2024);
  const std::vector<std::pair<unsigned, unsigned>> fields = {{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}};
  int n = 0;
  for (int i = 0; i < 500; ++i) {
    const auto [p, m] = fields[static_cast<std::size_t>(i) % fields.size()];
    auto F = session(p, {"s", "t"}, m);
    const auto x = random_ratfunc(F.k, rng, 3, 3);
    CAPTURE(x.to_string());
    CHECK(F(x.to_string()) == x);
    ++n;
  }
  CHECK(n == 500);
}

TEST_CASE("reports are deterministic") {
  std::vector<std::string> args = {"surjectivity", "--vars", "s", "--a", "s^2+s", "--b", "s",
                                   "--samples", "30", "--seed", "17", "--json"};
  auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.report()["result"]["lifted"] == 30);
}

TEST_CASE("golden batch") {
  const std::string dir = PCL_GOLDEN_DIR;
  std::ifstream in(dir + "/commands.txt");
  REQUIRE(in.good());
  std::ostringstream out, err;
  const int code = cli::run_batch(in, out, err, 1);
  CHECK(code == 3); // the last golden line hits the S-pair cap
  const std::string expected = slurp(dir + "/expected.jsonl");
  CHECK(out.str() == expected);

  // parallel execution keeps input order
  std::ifstream again(dir + "/commands.txt");
  std::ostringstream pout, perr;
  cli::run_batch(again, pout, perr, 4);
  CHECK(pout.str() == expected);
}
