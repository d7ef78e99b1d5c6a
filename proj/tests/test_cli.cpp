#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kirch/cli.hpp"
#include "kirch/graph_io.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run kirch_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kirch::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return (std::filesystem::path(KIRCH_FIXTURES_DIR) / name).string();
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

TEST_CASE("transpedance values") {
  CHECK(trim(kirch_run({"transpedance", "-g", fixture("k3.json"), "-s", "a", "-t", "b", "--pair",
                        "a,b"})
                 .out) == "-2");
  for (const char* method : {"contributor", "activation", "cofactor"}) {
    const Run r = kirch_run({"transpedance", "-g", fixture("house-neg34.json"), "-s", "1", "-t", "2",
                             "--pair", "1,2", "--method", method});
    CHECK(r.code == 0);
    CHECK(trim(r.out) == "-12");
  }
  const Run arb = kirch_run({"transpedance", "-g", fixture("house-allpos.json"), "-s", "1", "-t",
                             "2", "--pair", "1,2", "--method", "arborescence"});
  CHECK(trim(arb.out) == "-8");
  CHECK(trim(kirch_run({"transpedance", "-g", fixture("k3.json"), "-s", "a", "-t", "b", "--pair",
                        "a,a"})
                 .out) == "0");
}

TEST_CASE("matrix commands") {
  CHECK(trim(kirch_run({"tau", "-g", fixture("house-allpos.json")}).out) == "11");
  CHECK(trim(kirch_run({"det", "-g", fixture("k3.json")}).out) == "0");
  CHECK(trim(kirch_run({"perm", "-g", fixture("k3.json"), "--signless"}).out) == "16");
  const Run m = kirch_run({"matrix", "-g", fixture("k3.json"), "--format", "json"});
  REQUIRE(m.code == 0);
  const auto doc = nlohmann::json::parse(m.out);
  CHECK(doc.dump().find("-1") != std::string::npos);
}

TEST_CASE("repeated runs are byte identical") {
  const std::vector<std::string> args = {"label", "-g", fixture("c5.json"), "-s", "1", "-t", "3",
                                         "--format", "json"};
  const Run a = kirch_run(args);
  const Run b = kirch_run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Run threaded = kirch_run({"enumerate", "-g", fixture("house-neg34.json"), "--threads", "4"});
  CHECK(threaded.out == kirch_run({"enumerate", "-g", fixture("house-neg34.json")}).out);
}

TEST_CASE("DOT labeling has one arc per ordered adjacency") {
  const Run r = kirch_run({"label", "-g", fixture("k3.json"), "-s", "a", "-t", "b", "--format", "dot"});
  REQUIRE(r.code == 0);
  std::size_t arcs = 0;
  for (std::size_t pos = r.out.find("->"); pos != std::string::npos; pos = r.out.find("->", pos + 2))
    ++arcs;
  CHECK(arcs == 6);
  CHECK(r.out.find("\"a\" -> \"b\" [label=\"-2\"];") != std::string::npos);
}

TEST_CASE("enumeration output") {
  const Run all = kirch_run({"enumerate", "-g", fixture("k3.json")});
  REQUIRE(all.code == 0);
  CHECK(nlohmann::json::parse(all.out).size() == 16);

  const Run none =
      kirch_run({"enumerate", "-g", fixture("k3.json"), "-s", "a", "-t", "b", "--pair", "a,a"});
  CHECK(none.code == 0);
  CHECK(nlohmann::json::parse(none.out) == nlohmann::json::array());

  const Run classes = kirch_run({"enumerate", "-g", fixture("triple-edge.json"), "--what", "classes"});
  REQUIRE(classes.code == 0);
  const auto doc = nlohmann::json::parse(classes.out);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["size"] == 6);
  CHECK(doc[0]["boolean"] == false);
}

TEST_CASE("verify exit codes") {
  CHECK(kirch_run({"verify", "-g", fixture("c5.json"), "-s", "1", "-t", "3"}).code == 0);
  CHECK(kirch_run({"verify", "-g", fixture("st-negative.json"), "-s", "a", "-t", "b"}).code == 0);
  const Run bad = kirch_run({"verify", "-g", fixture("house-neg34.json"), "-s", "1", "-t", "2",
                             "--format", "json"});
  CHECK(bad.code == 1);
  const auto doc = nlohmann::json::parse(bad.out);
  CHECK(doc.dump().find("cycle-conservation") != std::string::npos);
}

TEST_CASE("error exit codes") {
  CHECK(kirch_run({}).code == 2);
  CHECK(kirch_run({"tau", "-g", fixture("k3.json"), "--bogus"}).code == 2);
  CHECK(kirch_run({"tau", "-g", "/nonexistent/graph.json"}).code == 2);
  CHECK(kirch_run({"transpedance", "-g", fixture("k3.json"), "-s", "a", "-t", "z", "--pair", "a,b"})
            .code == 2);
  const Run cap = kirch_run({"transpedance", "-g", fixture("house-neg34.json"), "-s", "1", "-t", "2",
                             "--pair", "1,2", "--method", "arborescence"});
  CHECK(cap.code == 3);
  CHECK_FALSE(cap.err.empty());
  CHECK(kirch_run({"label", "-g", fixture("k3.json"), "-s", "a", "-t", "b", "--format", "svg"}).code ==
        3);
}

TEST_CASE("generated graphs read back") {
  const auto path = std::filesystem::temp_directory_path() / "kirch_cli_gen.json";
  REQUIRE(kirch_run({"gen", "--n", "5", "--seed", "7", "-o", path.string()}).code == 0);
  const kirch::IncidenceStructure g = kirch::read_graph_file(path);
  CHECK(g.vertex_count() == 5);
  const Run again = kirch_run({"gen", "--n", "5", "--seed", "7"});
  std::ifstream in(path);
  std::stringstream saved;
  saved << in.rdbuf();
  CHECK(saved.str() == again.out);
  std::filesystem::remove(path);
}
