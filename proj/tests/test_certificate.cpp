#include <functional>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "sumprod/certificate.hpp"
#include "sumprod/generators.hpp"

using namespace sumprod;
using nlohmann::json;
using testing_support::ps;

namespace {

json certificate_for(const PointSet& a, std::size_t m, bool exhaustive = false) {
  DecomposeOptions o;
  o.m = m;
  o.exhaustive = exhaustive;
  return to_json(decompose(a, o));
}

bool rejects(json doc, const std::function<void(json&)>& tamper) {
  tamper(doc);
  return !check_certificate(doc).ok();
}

}  // namespace

TEST_CASE("certificate document layout") {
  const json doc = certificate_for(cn_family(3), 2);
  CHECK(doc["format"] == kCertificateFormat);
  CHECK(doc["version"] == kCertificateVersion);
  CHECK(doc["constants"]["delta1"] == "588/1759");
  CHECK(doc["theorem_exponent"] == "294/1759");
  CHECK(doc["parameters"]["m"] == 2);
  CHECK(doc["valid"] == true);
  const json& root = doc["root"];
  CHECK(root["branch"] == "structure");
  CHECK(root["growth"]["total"] == 60);
  CHECK(root["sign_refinement"]["pattern"] == "++");
  CHECK(root["structure"]["bound_a"] == 33);
  CHECK(root["structure"]["bound_b"] == 22);
  CHECK(root["lower_bound"] == 33);
  CHECK(root["achieved_exponent"].get<double>() == doctest::Approx(std::log(33.0) / std::log(9.0)));
  for (const auto& q : root["inequalities"]) {
    CHECK(q["verified"] == true);
    CHECK((q["relation"] == ">=" || q["relation"] == "=="));
  }
  CHECK(doc.dump() == certificate_for(cn_family(3), 2).dump());
}

TEST_CASE("re-checker accepts honest certificates") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const std::uint64_t cap = d == 1 ? 9 : 60;
    const PointSet a = random_box(1 + rng() % cap, d, -4, 4, rng());
    const json doc = certificate_for(a, 2 + rng() % 5, trial % 2 == 0);
    const CheckReport r = check_certificate(json::parse(doc.dump()));
    for (const auto& p : r.problems) INFO(p);
    REQUIRE(r.ok());
    REQUIRE(r.lower_bound == doc["root"]["lower_bound"]);
  }
}

TEST_CASE("re-checker catches tampering") {
  const json doc = certificate_for(cn_family(3), 2);
  REQUIRE(check_certificate(doc).ok());
  CHECK(rejects(doc, [](json& d) { d["root"]["size"] = 10; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["growth"]["sum"] = 31; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["structure"]["fibers"][0]["size"] = 4; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["structure"]["bound_a"] = 34; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["lower_bound"] = 59; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["inequalities"][0]["lhs"] = "100"; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["inequalities"][1]["verified"] = false; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["inequalities"].erase(0); }));
  CHECK(rejects(doc, [](json& d) { d["root"]["children"].erase(0); }));
  CHECK(rejects(doc, [](json& d) { d["root"]["children"][1]["input"][0][0] = "7"; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["input"][0][0] = "5"; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["branch"] = "unstructured"; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["structure"]["level"] = 0; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["structure"]["quadruples"][0][0] = 1; }));
  CHECK(rejects(doc, [](json& d) { d["parameters"]["m"] = 9; }));
  CHECK(rejects(doc, [](json& d) { d["constants"]["delta1"] = "1/3"; }));
  CHECK(rejects(doc, [](json& d) { d["format"] = "other"; }));
  CHECK(rejects(doc, [](json& d) { d["valid"] = false; }));
  CHECK(rejects(doc, [](json& d) { d["root"].erase("structure"); }));
  CHECK(rejects(doc, [](json& d) { d["root"]["input"] = "not points"; }));
  CHECK(rejects(doc, [](json& d) { d = json::array(); }));
}

TEST_CASE("re-checker audits the unstructured branch") {
  const PointSet a = ps({{1, 1}, {2, 3}, {3, 7}, {4, 15}});
  const json doc = certificate_for(a, 2);
  REQUIRE(doc["root"]["branch"] == "unstructured");
  CHECK(check_certificate(doc).ok());
  CHECK(rejects(doc, [](json& d) { d["root"]["unstructured"]["line"].erase(0); }));
  CHECK(rejects(doc, [](json& d) { d["root"]["unstructured"]["remaining_size"] = 3; }));
  CHECK(rejects(doc, [](json& d) { d["root"]["children"][0]["growth"]["product"] = 1; }));
}

TEST_CASE("honest invalid certificates are consistent but not valid") {
  DecomposeOptions o;
  o.m = 2;
  o.constants.sign_class_base = 1;
  const json doc = to_json(decompose(ps({{1, 1}, {-1, 2}, {2, 3}}), o));
  CHECK(doc["valid"] == false);
  const CheckReport r = check_certificate(doc);
  CHECK(r.consistent);
  CHECK_FALSE(r.valid);
  CHECK_FALSE(r.ok());
}
