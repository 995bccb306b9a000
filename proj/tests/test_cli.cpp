#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "splitmat/cli.hpp"

using namespace splitmat;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string cur;
  while (std::getline(in, cur))
    if (cur == line) return true;
  return false;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("check reports split status") {
  RunResult split = run_cli({"check", "mw2"});
  CHECK(split.code == 0);
  CHECK(has_line(split.out, "SPLIT yes"));
  CHECK(split.out.find("CERT") == std::string::npos);  // no violations to show
  CHECK(split.out.find("# n=4 r=2") != std::string::npos);

  RunResult nonsplit = run_cli({"check", "s1"});
  CHECK(nonsplit.code == 0);  // the question was answered; 1 is for discrepancies
  CHECK(has_line(nonsplit.out, "SPLIT no"));
  CHECK(nonsplit.out.find("CERT ") != std::string::npos);
  CHECK(nonsplit.out.find("restr_conn=yes contr_conn=yes") != std::string::npos);

  RunResult quiet = run_cli({"--quiet", "check", "mw2"});
  CHECK(quiet.out.find("# ") == std::string::npos);
  CHECK(has_line(quiet.out, "SPLIT yes"));
}

TEST_CASE("check analyzes components of a disconnected matroid") {
  RunResult res = run_cli({"--quiet", "check", "s0"});
  CHECK(res.code == 0);
  CHECK(has_line(res.out, "SPLIT no"));
  CHECK(has_line(res.out, "COMPONENT 0,1,2,3 split=yes uniform=no"));
  CHECK(has_line(res.out, "COMPONENT 4,5,6,7 split=yes uniform=no"));
  CHECK(has_line(res.out, "NONUNIFORM_COMPONENTS 2"));
}

TEST_CASE("check JSON mirrors the text verdict") {
  RunResult res = run_cli({"--format", "json", "check", "s1"});
  CHECK(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j["split"] == false);
  CHECK(j["connected"] == true);
  REQUIRE_FALSE(j["certificates"].empty());
  for (const json& cert : j["certificates"]) {
    CHECK(cert["restriction_connected"] == true);
    CHECK(cert["contraction_connected"] == true);
    CHECK((cert["restriction_uniform"] == false || cert["contraction_uniform"] == false));
  }

  json j2 = json::parse(run_cli({"--format", "json", "check", "mw2"}).out);
  CHECK(j2["split"] == true);
  CHECK(j2["certificates"].empty());

  json j3 = json::parse(run_cli({"--format", "json", "check", "s0"}).out);
  CHECK(j3["split"] == false);
  CHECK(j3["nonuniform_components"] == 2);
  CHECK(j3["components"].size() == 2);
}

TEST_CASE("minor prints a replayable witness") {
  RunResult found = run_cli({"--quiet", "minor", "s1", "mw2"});
  CHECK(found.code == 0);
  CHECK(has_line(found.out, "MINOR yes"));
  CHECK(found.out.find("CONTRACT ") != std::string::npos);
  CHECK(found.out.find("DELETE ") != std::string::npos);
  CHECK(found.out.find("RELABEL 0->") != std::string::npos);

  RunResult missing = run_cli({"--quiet", "minor", "u_2_4", "mw2"});
  CHECK(missing.code == 0);
  CHECK(missing.out == "MINOR no\n");

  json j = json::parse(run_cli({"--format", "json", "minor", "s1", "mw2"}).out);
  CHECK(j["found"] == true);
  CHECK(j["relabel"].size() == 4);
  json j2 = json::parse(run_cli({"--format", "json", "minor", "u_2_4", "mw2"}).out);
  CHECK(j2["found"] == false);
  CHECK_FALSE(j2.contains("relabel"));
}

TEST_CASE("flacets agree between descriptions") {
  RunResult res = run_cli({"flacets", "mw2"});
  CHECK(res.code == 0);
  CHECK(has_line(res.out, "FLACETS combinatorial=0;1;2,3 geometric=0;1;2,3 agree=yes"));
  json j = json::parse(run_cli({"--format", "json", "flacets", "s4"}).out);
  CHECK(j["agree"] == true);
  CHECK(j["combinatorial"] == j["geometric"]);
}

TEST_CASE("polytope prints dimension and facet flats") {
  RunResult res = run_cli({"polytope", "mw2"});
  CHECK(res.code == 0);
  CHECK(has_line(res.out, "DIM 3"));
  CHECK(has_line(res.out, "FACET 0"));
  CHECK(has_line(res.out, "FACET 2,3"));

  RunResult disc = run_cli({"polytope", "s0"});
  CHECK(disc.code == 0);
  CHECK(has_line(disc.out, "DIM 6"));
  CHECK(disc.out.find("FACET") == std::string::npos);

  json j = json::parse(run_cli({"--format", "json", "polytope", "s0"}).out);
  CHECK(j["dim"] == 6);
  CHECK(j["connected"] == false);
  CHECK_FALSE(j.contains("facet_flats"));
}

TEST_CASE("catalog lists and prints named matroids") {
  RunResult list = run_cli({"catalog", "--list"});
  CHECK(list.code == 0);
  CHECK(has_line(list.out, "MW2"));
  CHECK(has_line(list.out, "S4"));
  CHECK(has_line(list.out, "U_<r>_<n>"));

  RunResult s3_text = run_cli({"catalog", "s3"});
  CHECK(s3_text.code == 0);
  std::istringstream replay(s3_text.out);
  std::vector<Matroid> parsed = read_matroids(replay);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].bases() == s3().bases());

  RunResult compact = run_cli({"catalog", "s3", "--compact"});
  CHECK(compact.out.find("BASES ") != std::string::npos);
  std::istringstream replay2(compact.out);
  CHECK(read_matroids(replay2)[0].bases() == s3().bases());

  CHECK(run_cli({"catalog", "nosuch"}).code == 2);
  CHECK(run_cli({"catalog"}).code == 2);
  json j = json::parse(run_cli({"--format", "json", "catalog", "u_1_2"}).out);
  CHECK(j["n"] == 2);
  CHECK(j["r"] == 1);
  CHECK(j["bases"] == json({{0}, {1}}));
}

TEST_CASE("enumerate emits parseable catalogs") {
  RunResult res = run_cli({"enumerate", "--n", "4"});
  CHECK(res.code == 0);
  std::istringstream replay(res.out);
  CHECK(read_matroids(replay).size() == 17);
  CHECK(res.err.find("# n=4 r=2 count=") != std::string::npos);

  RunResult quiet = run_cli({"--quiet", "enumerate", "--n", "4"});
  CHECK(quiet.err.empty());

  RunResult revlex = run_cli({"--quiet", "enumerate", "--n", "4", "--encoding", "revlex"});
  std::istringstream replay2(revlex.out);
  CHECK(read_matroids(replay2).size() == 17);

  Catalog cat = build_catalog(4);
  for (const CatalogShard& shard : cat.by_n[4]) {
    RunResult one = run_cli({"--quiet", "enumerate", "--n", "4", "--rank",
                             std::to_string(shard.r)});
    std::istringstream r(one.out);
    CHECK(read_matroids(r).size() == shard.members.size());
  }
  CHECK(run_cli({"--quiet", "enumerate", "--n", "4", "--rank", "9"}).code == 2);

  json j = json::parse(run_cli({"--format", "json", "enumerate", "--n", "4"}).out);
  std::size_t total = 0;
  for (const json& shard : j["shards"]) total += shard["count"].get<std::size_t>();
  CHECK(total == 17);
}

TEST_CASE("enumerate writes files on request") {
  std::string path =
      (std::filesystem::temp_directory_path() / "splitmat-cli-enum.txt").string();
  RunResult res = run_cli({"--quiet", "enumerate", "--n", "3", "--out", path});
  CHECK(res.code == 0);
  CHECK(res.out.empty());
  CHECK(read_matroid_file(path).size() == 8);
  std::remove(path.c_str());
}

TEST_CASE("enumerate output does not depend on worker count") {
  RunResult serial = run_cli({"--quiet", "enumerate", "--n", "5", "--jobs", "1"});
  RunResult wide = run_cli({"--quiet", "enumerate", "--n", "5", "--jobs", "4"});
  CHECK(serial.code == 0);
  CHECK(wide.code == 0);
  CHECK(serial.out == wide.out);
}

TEST_CASE("verify-theorem summarizes the catalog sweep") {
  RunResult res = run_cli({"verify-theorem", "--max-n", "5"});
  CHECK(res.code == 0);
  CHECK(has_line(res.out, "TOTAL 69 MISMATCHES 0"));
  CHECK(has_line(res.out, "LITERATURE n=5 published=38 actual=38"));
  CHECK(has_line(res.out, "THEOREM ok"));
  CHECK(res.out.find("SPARSE_PAVING") == std::string::npos);

  RunResult sparse = run_cli({"verify-theorem", "--max-n", "4", "--sparse-paving"});
  CHECK(sparse.out.find("SPARSE_PAVING=") != std::string::npos);

  json j = json::parse(run_cli({"--format", "json", "verify-theorem", "--max-n", "5"}).out);
  CHECK(j["ok"] == true);
  CHECK(j["total"] == 69);
  CHECK(j["mismatches"].empty());
  long long total = 0;
  for (const json& row : j["rows"]) total += row["count"].get<long long>();
  CHECK(total == 69);
}

TEST_CASE("matroid sources resolve catalog-first, then files") {
  std::string one = temp_file("splitmat-cli-one.txt", matroid_to_text(mw2()));
  RunResult res = run_cli({"--quiet", "check", one});
  CHECK(res.code == 0);
  CHECK(has_line(res.out, "SPLIT yes"));
  std::remove(one.c_str());

  std::string two =
      temp_file("splitmat-cli-two.txt", matroid_to_text(mw2()) + "\n" + matroid_to_text(s1()));
  RunResult multi = run_cli({"check", two});
  CHECK(multi.code == 2);
  CHECK(multi.err.find("exactly one") != std::string::npos);
  std::remove(two.c_str());

  RunResult gone = run_cli({"check", "/nonexistent/matroid.txt"});
  CHECK(gone.code == 2);
  CHECK(gone.err.find("cannot open") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"check"}).code == 2);
  CHECK(run_cli({"--format", "yaml", "check", "mw2"}).code == 2);
  CHECK(run_cli({"enumerate", "--n", "0"}).code == 2);
  RunResult help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Usage") != std::string::npos);
}

TEST_CASE("global flags are accepted after the subcommand") {
  RunResult before = run_cli({"--format", "json", "check", "mw2"});
  RunResult after = run_cli({"check", "mw2", "--format", "json"});
  CHECK(after.code == 0);
  CHECK(json::parse(after.out) == json::parse(before.out));
}
