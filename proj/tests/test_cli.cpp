#include <doctest.h>

#include <json.hpp>

#include "cli_run.hpp"
#include "hyperdisc/exact.hpp"
#include "hyperdisc/hypergraph.hpp"

using namespace hyperdisc;

TEST_CASE("gen then exact") {
  auto g = run_cli("gen --model ind --n 12 --m 10 --p 0.5 --seed 7 --out cli_a.hdg");
  REQUIRE(g.status == 0);
  const auto h = load_hdg("cli_a.hdg");
  CHECK(h.num_vertices() == 12);
  CHECK(h.num_edges() == 10);
  CHECK(to_hdg(h) == slurp("cli_a.hdg"));

  auto e = run_cli("exact --in cli_a.hdg --threads 2");
  REQUIRE(e.status == 0);
  const auto r = disc_exact(h);
  CHECK(e.out == "disc=" + std::to_string(r.disc) + "\n" + r.witness.to_string() + "\n");

  auto bb = run_cli("exact --in cli_a.hdg --solver branch_bound --json");
  REQUIRE(bb.status == 0);
  CHECK(nlohmann::json::parse(bb.out)["disc"] == r.disc);
}

TEST_CASE("dependent model output") {
  auto g = run_cli("gen --model dep --n 9 --m 6 --d 2 --seed 1");
  REQUIRE(g.status == 0);
  const auto h = parse_hdg(g.out);
  for (auto c : degree_profile(h)) CHECK(c == 2);
}

TEST_CASE("colour writes a per-round trace") {
  REQUIRE(run_cli("gen --model dep --n 64 --m 1024 --d 128 --seed 3 --out cli_b.hdg").status == 0);
  auto c = run_cli("colour --in cli_b.hdg --d 128 --seed 4 --trace cli_b.jsonl");
  REQUIRE(c.status == 0);
  CHECK(c.out.rfind("disc=", 0) == 0);
  std::istringstream in(slurp("cli_b.jsonl"));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(nlohmann::json::parse(line)["round_index"] == rows);
    ++rows;
  }
  CHECK(rows > 0);
}

TEST_CASE("bounds") {
  auto b = run_cli("bounds --formula parity_even --params n=7,p=0.5");
  REQUIRE(b.status == 0);
  CHECK(b.out == "0.5\n");
  auto j = run_cli("bounds --formula upper_curve --params n=256,m=8192,d=1024 --json");
  REQUIRE(j.status == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["formula"] == "upper_curve");
  CHECK(doc["value"].get<double>() > 0);
}

TEST_CASE("sweep writes CSV") {
  auto s = run_cli("sweep --n 8 --m 2:6:2 --p 0.5 --seeds 2 --seed 5");
  REQUIRE(s.status == 0);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 1 + 3 * 2);
}

TEST_CASE("failures produce error JSON") {
  auto missing = run_cli("exact --in does_not_exist.hdg", "cli_err1");
  CHECK(missing.status != 0);
  CHECK(nlohmann::json::parse(missing.err)["error"] == "io_error");

  auto bad = run_cli("bounds --formula nope", "cli_err2");
  CHECK(bad.status != 0);
  CHECK(nlohmann::json::parse(bad.err)["error"] == "invalid_parameter");

  auto usage = run_cli("gen --n 3", "cli_err3");
  CHECK(usage.status != 0);
  CHECK(nlohmann::json::parse(usage.err)["error"] == "usage");

  auto range = run_cli("bounds --formula interval_rough --params n=4,p=0.5,L=2,R=1", "cli_err4");
  CHECK(range.status != 0);
  CHECK(nlohmann::json::parse(range.err).contains("message"));
}
