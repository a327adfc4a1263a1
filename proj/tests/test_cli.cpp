#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "jrp/cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run forge(std::vector<std::string> args) {
  args.insert(args.begin(), "jrp-forge");
  std::ostringstream out, err;
  Run r;
  r.code = jrp::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("jrp_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string file(const std::string& name, const std::string& body) const {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

const char* kSingle = R"({"k0":"1","commodities":[{"id":"a","class":"generic","lambda":"2","h":"1","k":"25"}]})";

}  // namespace

TEST_CASE("cli eval") {
  Scratch s;
  const auto inst = s.file("one.json", kSingle);
  const auto pol = s.file("p.json", R"({"cycles":{"a":"5"}})");
  const auto r = forge({"eval", "--instance", inst, "--policy", pol});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["cost"]["total"]["exact"] == "51/5");

  const auto csv = forge({"eval", "--instance", inst, "--policy", pol, "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 2);
  CHECK(csv.out.find("51/5") != std::string::npos);

  const auto bad = forge({"eval", "--instance", s.file("bad.json", "{\"k0\": "), "--policy", pol});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
  const auto neg = forge({"eval", "--instance",
                          s.file("neg.json", R"({"k0":"1","commodities":[{"id":"a","class":"generic","lambda":"2","h":"-1/2","k":"25"}]})"),
                          "--policy", pol});
  CHECK(neg.code == 2);
  CHECK(forge({"eval", "--instance", inst}).code == 2);
  CHECK(forge({"bogus"}).code == 2);
  CHECK(forge({"--help"}).code == 0);
}

TEST_CASE("cli solve") {
  Scratch s;
  const auto inst = s.file("one.json", kSingle);
  const auto pot = forge({"solve", "--instance", inst, "--method", "pot", "--base", "1"});
  REQUIRE(pot.code == 0);
  CHECK(Json::parse(pot.out)["cycles"]["a"] == "4/1");

  const auto a = forge({"solve", "--instance", inst, "--method", "exhaustive"});
  const auto b = forge({"solve", "--instance", inst, "--method", "exhaustive"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const auto out = s.path("best.json");
  CHECK(forge({"solve", "--instance", inst, "--method", "descent", "--out", out}).code == 0);
  CHECK(forge({"eval", "--instance", inst, "--policy", out}).code == 0);
  const auto seed = forge({"solve", "--instance", inst, "--method", "seed", "--profile", "a=5", "--seed-lo", "none"});
  CHECK(seed.code == 0);
  CHECK(Json::parse(seed.out)["seed_exact"] == false);

  const auto gen = forge({"gen", "--n", "8", "--k-range", "1:20", "--out", s.path("big.json")});
  REQUIRE(gen.code == 0);
  CHECK(forge({"solve", "--instance", s.path("big.json"), "--method", "exhaustive"}).code == 3);
  CHECK(forge({"solve", "--instance", inst, "--k-range", "3:1"}).code == 2);
}

TEST_CASE("cli reduce and sat") {
  Scratch s;
  const auto cnf = s.file("f.cnf", "p cnf 3 1\n1 2 3 0\n");
  const auto r = forge({"reduce", "--cnf", cnf, "--out", s.path("r.json")});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["commodities"]["variable"] == 3);
  CHECK(j["commodities"]["clause"] == 1);
  CHECK(j["commodities"]["constant"] == 3);
  CHECK(j["constants_scheme"] == "pair-product");
  CHECK(fs::exists(s.path("r.json")));

  CHECK(forge({"reduce", "--cnf", s.file("w.cnf", "p cnf 3 1\n1 2 0\n"), "--out", s.path("w.json")}).code == 2);
  const auto rejected = forge({"reduce", "--cnf", cnf, "--out", s.path("x.json"), "--alpha-v-bar", "1000"});
  CHECK(rejected.code == 4);
  CHECK(rejected.err.find("(41, 43)") != std::string::npos);

  const auto sat = forge({"sat", "--cnf", cnf});
  CHECK(sat.code == 0);
  CHECK(Json::parse(sat.out)["satisfiable"] == true);
  CHECK(forge({"sat", "--cnf", cnf, "--max-vars", "2"}).code == 3);
  CHECK(forge({"sat", "--cnf", s.file("junk.cnf", "p cnf 2 1\n1 x 0\n")}).code == 2);
}

TEST_CASE("cli check") {
  Scratch s;
  const auto lem = forge({"check", "--suite", "lemmas", "--n", "2"});
  REQUIRE(lem.code == 0);
  const auto lj = Json::parse(lem.out);
  CHECK(lj["passed"] == true);
  for (const auto& c : lj["checks"]) {
    CHECK(c.contains("lhs"));
    CHECK(c.contains("rhs"));
  }

  const auto cnf = s.file("f.cnf", "p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n");
  const auto rt = forge({"check", "--suite", "roundtrip", "--cnf", cnf});
  REQUIRE(rt.code == 0);
  CHECK(Json::parse(rt.out)["formulas"][0]["sync_iff_sat"] == true);

  const auto pr = forge({"check", "--suite", "pot-ratio", "--count", "10", "--n", "3"});
  CHECK(pr.code == 0);
  CHECK(Json::parse(pr.out)["max_ratio"].get<double>() <= 1.06);
  // an impossible threshold is a property violation, not a usage error
  CHECK(forge({"check", "--suite", "pot-ratio", "--count", "3", "--threshold", "0.5"}).code == 1);

  // with primes from 11 the clause penalty is too small for this formula:
  // the cheapest assignment-policy leaves a clause unsynchronized
  const auto tight = s.file("t.cnf", "p cnf 3 3\n1 2 3 0\n1 2 -3 0\n1 -2 3 0\n");
  CHECK(forge({"check", "--suite", "roundtrip", "--cnf", tight}).code == 0);
  const auto eleven = forge({"check", "--suite", "roundtrip", "--cnf", tight, "--prime-start", "11"});
  CHECK(eleven.code == 1);
  CHECK(Json::parse(eleven.out)["formulas"][0]["sync_iff_sat"] == false);
}

TEST_CASE("cli gen is deterministic") {
  const auto a = forge({"gen", "--n", "4", "--rng-seed", "7"});
  const auto b = forge({"gen", "--n", "4", "--rng-seed", "7"});
  const auto c = forge({"gen", "--n", "4", "--rng-seed", "8"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(Json::parse(a.out)["commodities"].size() == 4);
}
