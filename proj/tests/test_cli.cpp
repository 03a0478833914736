#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "sumprod/io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sumprod::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("sumprod_cli_" + std::to_string(counter_++) + "_" +
                                         std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const fs::path p = path_ / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
  }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("cli: gen and growth") {
  TempDir dir;
  const auto gen = invoke({"gen", "--family", "interval", "--n", "5"});
  REQUIRE(gen.code == 0);
  const auto a = sumprod::parse_pointset(gen.out);
  CHECK(a.size() == 5);

  const std::string path = dir.file("a.txt", gen.out);
  const auto g = invoke({"growth", "-i", path, "--json"});
  REQUIRE(g.code == 0);
  const json j = json::parse(g.out);
  CHECK(j["sum"] == 9);
  CHECK(j["product"] == 14);
  CHECK(j["run_config"]["subcommand"] == "growth");

  const auto text = invoke({"growth", "-i", dir.file("b.txt", "# pointset v1\ndim 1\n1\n2\n3\n")});
  REQUIRE(text.code == 0);
  CHECK(text.out.find("|A+A| = 5") != std::string::npos);
  CHECK(text.out.find("|A.A| = 6") != std::string::npos);
}

TEST_CASE("cli: D_N matrices") {
  TempDir dir;
  const std::string path = dir.file("d5.txt");
  REQUIRE(invoke({"gen", "--family", "dn", "--n", "5", "-o", path}).code == 0);
  const json j = json::parse(invoke({"growth", "-i", path, "--json"}).out);
  CHECK(j["kind"] == "matset");
  CHECK(j["sum"] == 9);
  CHECK(j["product"] == 9);
  const auto cc = invoke({"check-conditions", "-i", path, "--kappa", "2"});
  CHECK(cc.code == 1);
  CHECK(cc.out.find("condition1") != std::string::npos);
  CHECK(cc.out.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: sumset and prodset round-trip through files") {
  TempDir dir;
  const std::string a = dir.file("a.txt", "# pointset v1\ndim 2\n1 1\n2 4\n");
  const std::string s = dir.file("s.txt");
  REQUIRE(invoke({"sumset", "-i", a, "-o", s}).code == 0);
  CHECK(sumprod::parse_pointset(slurp(s)).size() == 3);
  const auto p = invoke({"prodset", "-i", a, "--with", dir.file("b.txt", "# pointset v1\ndim 2\n-1 1/2\n")});
  REQUIRE(p.code == 0);
  CHECK(sumprod::parse_pointset(p.out).size() == 2);
}

TEST_CASE("cli: malformed input exits 2") {
  TempDir dir;
  const auto bad = invoke({"growth", "-i", dir.file("bad.txt", "# pointset v1\ndim 1\n1\n1/0\n")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 4") != std::string::npos);
  CHECK(invoke({"growth", "-i", dir.file("ragged.txt", "# pointset v1\ndim 2\n1 2\n3\n")}).code == 2);
  CHECK(invoke({"growth", "-i", dir.file("missing.txt")}).code == 2);
  CHECK(invoke({"growth"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"gen", "--family", "nope", "--n", "3"}).code == 2);
  CHECK(invoke({"sweep", "--family", "cn", "--n", "5..2"}).code == 2);
  CHECK(invoke({"search", "--k", "10", "--universe", "-50..50"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("cli: decompose and verify-cert") {
  TempDir dir;
  const std::string c3 = dir.file("c3.txt");
  REQUIRE(invoke({"gen", "--family", "cn", "--n", "3", "-o", c3}).code == 0);
  const std::string cert = dir.file("cert.json");
  const auto dec = invoke({"decompose", "-i", c3, "--m", "2", "-o", cert});
  REQUIRE(dec.code == 0);
  CHECK(dec.out.find("certified lower bound L = 33") != std::string::npos);

  const auto ok = invoke({"verify-cert", "-i", cert});
  CHECK(ok.code == 0);
  CHECK(invoke({"decompose", "--verify-cert", cert}).code == 0);

  json doc = json::parse(slurp(cert));
  CHECK(doc["run_config"]["m"] == 2);
  doc["root"]["children"][0]["size"] = 4;
  const std::string tampered = dir.file("tampered.json", doc.dump());
  const auto bad = invoke({"verify-cert", "-i", tampered});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("problem:") != std::string::npos);
  CHECK(invoke({"verify-cert", "-i", dir.file("junk.json", "{not json")}).code == 2);

  const std::string mixed = dir.file("mixed.txt", "# pointset v1\ndim 2\n1 1\n-1 2\n2 3\n");
  const auto failing = invoke({"decompose", "-i", mixed, "--m", "2", "--constants", "sign_class_base=1"});
  CHECK(failing.code == 1);
  CHECK(invoke({"decompose", "-i", c3, "--constants", "bogus=3"}).code == 2);
  CHECK(invoke({"decompose", "-i", c3, "--m", "1"}).code == 2);
}

TEST_CASE("cli: sweep and search") {
  const auto sw = invoke({"sweep", "--family", "cn", "--n", "2..10", "--json"});
  REQUIRE(sw.code == 0);
  const json j = json::parse(sw.out);
  REQUIRE(j["rows"].size() == 9);
  for (const auto& row : j["rows"]) CHECK(row["within_ceiling"] == true);
  CHECK(j["run_config"]["n"] == "2..10");

  const auto csv = invoke({"sweep", "--family", "dn", "--n", "2..4", "--csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("n,size,sum") != std::string::npos);

  const auto se = invoke({"search", "--k", "3", "--universe", "1..8", "--json"});
  REQUIRE(se.code == 0);
  CHECK(json::parse(se.out)["value"] == 11);
}

TEST_CASE("cli: provenance reproduces the output") {
  const auto first = invoke({"--threads", "2", "gen", "--family", "box", "--n", "12", "--dim", "2",
                             "--seed", "41", "--lo", "-3", "--hi", "3"});
  REQUIRE(first.code == 0);
  const std::string header = first.out.substr(0, first.out.find('\n'));
  const json config = json::parse(header.substr(header.find('{')));
  std::vector<std::string> args = {"--threads", std::to_string(config["threads"].get<unsigned>()),
                                   "gen"};
  for (const auto& [key, value] : config["family"].items()) {
    args.push_back(key == "kind" ? "--family" : "--" + key);
    args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  const auto second = invoke(args);
  REQUIRE(second.code == 0);
  CHECK(second.out == first.out);
}
