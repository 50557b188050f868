#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "dworklab.h"

using nlohmann::json;

namespace {

// Takes ownership of a returned string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  dwl_string_free(s);
  return out;
}

struct Poly {
  dwl_polynomial* p = nullptr;
  ~Poly() { dwl_polynomial_free(p); }
};

struct Seq {
  dwl_sequence* a = nullptr;
  ~Seq() { dwl_sequence_free(a); }
};

} // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(dwl_status_name(DWL_OK)) == "ok");
  CHECK(std::string(dwl_status_name(DWL_ERR_PARSE)) != std::string(dwl_status_name(DWL_ERR_DOMAIN)));
  CHECK(std::string(dwl_version()).size() > 0);
}

TEST_CASE("parse, format and power") {
  Poly f;
  REQUIRE(dwl_polynomial_parse("x + x^-1", &f.p) == DWL_OK);
  char* text = nullptr;
  REQUIRE(dwl_polynomial_format(f.p, &text) == DWL_OK);
  CHECK(take(text) == "x^-1 + x");
  Poly g;
  REQUIRE(dwl_polynomial_power(f.p, 4, &g.p) == DWL_OK);
  char* ct = nullptr;
  REQUIRE(dwl_constant_term(g.p, &ct) == DWL_OK);
  CHECK(take(ct) == "6");
  char* js = nullptr;
  REQUIRE(dwl_polynomial_to_json(f.p, &js) == DWL_OK);
  auto j = json::parse(take(js));
  CHECK(j["variables"] == json({"x"}));
  Poly h;
  REQUIRE(dwl_polynomial_parse(j.dump().c_str(), &h.p) == DWL_OK);
}

TEST_CASE("errors map to status codes") {
  Poly f;
  CHECK(dwl_polynomial_parse("x +", &f.p) == DWL_ERR_PARSE);
  CHECK(f.p == nullptr);
  CHECK(std::string(dwl_last_error()).size() > 0);
  CHECK(dwl_polynomial_from_catalog("nope", &f.p) == DWL_ERR_DOMAIN);
  CHECK(dwl_polynomial_parse(nullptr, &f.p) == DWL_ERR_INVALID_ARGUMENT);
  REQUIRE(dwl_polynomial_from_catalog("bk24", &f.p) == DWL_OK);
  Seq a;
  CHECK(dwl_period(f.p, 6, "bogus", 0, 0, &a.a) == DWL_ERR_INVALID_ARGUMENT);
  CHECK(dwl_period(f.p, 6, "pruned", 4, 1, &a.a) == DWL_ERR_DOMAIN);
  Seq bad;
  CHECK(dwl_sequence_from_json("{\"values\": 3}", &bad.a) == DWL_ERR_PARSE);
  char* js = nullptr;
  CHECK(dwl_verify_lemma("nonsense", 10, 1, 4, 1, &js) == DWL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("analyze") {
  Poly f;
  REQUIRE(dwl_polynomial_from_catalog("bk62", &f.p) == DWL_OK);
  char* js = nullptr;
  REQUIRE(dwl_analyze(f.p, 5, &js) == DWL_OK);
  auto j = json::parse(take(js));
  CHECK(j["unique"] == true);
  CHECK(j["k"] == "3");
  CHECK(j["kernel_gcd_condition"]["outcome"] == "holds");
  CHECK(dwl_analyze(f.p, 4, &js) == DWL_ERR_DOMAIN);
}

TEST_CASE("period, sequence round trip and congruences") {
  Poly f;
  REQUIRE(dwl_polynomial_from_catalog("negative", &f.p) == DWL_OK);
  Seq a;
  REQUIRE(dwl_period(f.p, 12, nullptr, 0, 0, &a.a) == DWL_OK);
  CHECK(dwl_sequence_length(a.a) == 13);
  char* v = nullptr;
  REQUIRE(dwl_sequence_value(a.a, 3, &v) == DWL_OK);
  CHECK(take(v) == "3");
  CHECK(dwl_sequence_value(a.a, 13, &v) == DWL_ERR_DOMAIN);

  char* js = nullptr;
  REQUIRE(dwl_sequence_to_json(a.a, &js) == DWL_OK);
  Seq b;
  REQUIRE(dwl_sequence_from_json(take(js).c_str(), &b.a) == DWL_OK);
  CHECK(dwl_sequence_length(b.a) == 13);

  dwl_congruence_params params{"d3", 2, 0, 12, 0, 1, 10};
  REQUIRE(dwl_congruence(b.a, &params, &js) == DWL_FINDING);
  auto r = json::parse(take(js));
  CHECK(r["status"] == "fail");
  CHECK(r["witnesses"][0]["n"] == 3);

  Poly t;
  REQUIRE(dwl_polynomial_from_catalog("triangle3", &t.p) == DWL_OK);
  Seq c;
  REQUIRE(dwl_period(t.p, 26, "pruned", 3, 2, &c.a) == DWL_OK);
  dwl_congruence_params thm{"thm41", 3, 2, 0, 2, 1, 10};
  REQUIRE(dwl_congruence(c.a, &thm, &js) == DWL_OK);
  CHECK(json::parse(take(js))["status"] == "pass");
  dwl_congruence_params unknown{"d7", 3, 2, 0, 2, 1, 10};
  CHECK(dwl_congruence(c.a, &unknown, &js) == DWL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("decompose and sweeps") {
  Poly f;
  REQUIRE(dwl_polynomial_parse("x + x^-1", &f.p) == DWL_OK);
  char* js = nullptr;
  REQUIRE(dwl_decompose(f.p, 1, 2, 2, &js) == DWL_OK);
  auto j = json::parse(take(js));
  CHECK(j["reconstruction_holds"] == true);
  CHECK(j["layers"].size() == 3);
  CHECK(j["layers"][1]["terms"] == 1);
  REQUIRE(dwl_exchange_sweep(f.p, 3, 2, &js) == DWL_OK);
  CHECK(json::parse(take(js))["failures"] == 0);
  REQUIRE(dwl_verify_lemma("existence", 200, 20240601, 6, 2, &js) == DWL_OK);
  CHECK(json::parse(take(js))["counterexamples"] == 0);
}

TEST_CASE("unit roots") {
  Poly f;
  REQUIRE(dwl_polynomial_from_catalog("chebyshev", &f.p) == DWL_OK);
  Seq a;
  REQUIRE(dwl_period(f.p, 124, nullptr, 0, 0, &a.a) == DWL_OK);
  int in = -1;
  REQUIRE(dwl_domain_check(a.a, 5, "1", &in) == DWL_OK);
  CHECK(in == 1);
  REQUIRE(dwl_domain_check(a.a, 3, "1", &in) == DWL_OK);
  CHECK(in == 0);
  char* js = nullptr;
  REQUIRE(dwl_unit_root(a.a, 5, "1", 2, 0, &js) == DWL_OK);
  auto j = json::parse(take(js));
  CHECK(j["consistent"] == true);
  CHECK(j["steps"].size() == 3);
  CHECK(dwl_unit_root(a.a, 3, "1", 2, 0, &js) == DWL_ERR_DOMAIN);
  CHECK(dwl_unit_root(a.a, 5, "one", 2, 0, &js) == DWL_ERR_PARSE);
}

TEST_CASE("catalog") {
  char* js = nullptr;
  REQUIRE(dwl_catalog_list(&js) == DWL_OK);
  auto list = json::parse(take(js));
  CHECK(list.size() == 6);
  REQUIRE(dwl_catalog_entry("bk24", &js) == DWL_OK);
  CHECK(json::parse(take(js))["polynomial"]["terms"].size() == 23);
  CHECK(dwl_catalog_entry("none", &js) == DWL_ERR_DOMAIN);
}
