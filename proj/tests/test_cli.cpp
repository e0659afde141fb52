#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "json.hpp"

using invfac::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::ofstream f(name);
  f << text;
  return name;
}

double json_value(const std::string& text) { return nlohmann::json::parse(text).at("value").get<double>(); }

}  // namespace

TEST_CASE("eval examples") {
  auto r = invoke({"eval", "nielsen_beta_fac", "z=1", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json_value(r.out) == doctest::Approx(0.6931471806).epsilon(1e-9));

  // power-law tail of order 1/N: the term cap is reached and the estimate says so
  r = invoke({"eval", "rational_p", "p=1", "z=3", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(std::abs(doc.at("value").get<double>() - 0.5) <= doc.at("error_estimate").get<double>());
  CHECK(doc.at("converged") == false);

  r = invoke({"eval", "nielsen_beta_fac", "--z", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("value: 0.3068528194") != std::string::npos);
  CHECK(r.out.find("converged: true") != std::string::npos);

  r = invoke({"eval", "reciprocal", "z=0.5"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("eval errors") {
  auto r = invoke({"eval", "no_such_series", "z=2"});
  CHECK(r.code == 3);
  CHECK(r.err.find("reciprocal") != std::string::npos);
  CHECK(r.err.find("beta_asym") != std::string::npos);

  CHECK(invoke({"eval", "stirling_kernel", "z=2"}).code == 2);
  CHECK(invoke({"eval", "stirling_kernel", "k=1/2", "z=2"}).code == 2);
  CHECK(invoke({"eval", "reciprocal", "z=2", "q=4"}).code == 2);
  CHECK(invoke({"eval", "reciprocal", "z=abc"}).code == 2);
  CHECK(invoke({"eval", "reciprocal", "z=2", "--tol", "-1"}).code == 2);
  CHECK(invoke({"eval", "reciprocal", "z=2", "--format", "xml"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
}

TEST_CASE("eval of constants and asymptotic keys") {
  auto r = invoke({"eval", "zeta", "k=1", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(std::abs(doc.at("value").get<double>() - 1.6449340668) <= doc.at("error_estimate").get<double>());

  r = invoke({"eval", "trigamma_asym", "z=10", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json_value(r.out) == doctest::Approx(0.1051663357).epsilon(1e-9));

  r = invoke({"eval", "incgamma_asym", "x=1", "z=20", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("name,params,value,terms_used,error_estimate,converged\n", 0) == 0);
}

TEST_CASE("json output survives a parse and re-dump unchanged") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"eval", "trigamma_fac", "z=2.5", "--format", "json"},
           {"table", "stirling2", "--rows", "6", "--format", "json"},
           {"verify", "--filter", "04_", "--format", "json"},
       }) {
    const auto r = invoke(args);
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::ordered_json::parse(r.out);
    CHECK(doc.dump(2) + "\n" == r.out);
  }
}

TEST_CASE("tables") {
  auto r = invoke({"table", "stirling1", "rows=5"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 5);
  CHECK(all[4] == "0 6 11 6 1");

  r = invoke({"table", "bernoulli", "--rows", "4"});
  CHECK(r.out == "1\n-1/2\n1/6\n0\n");
  r = invoke({"table", "binet", "--rows", "3"});
  CHECK(r.out == "0\n1/12\n1/12\n");
  r = invoke({"table", "cauchy2", "--rows", "3", "--format", "csv"});
  CHECK(r.out == "n,value\n0,1\n1,1/2\n2,5/6\n");

  CHECK(invoke({"table", "bernoulli", "--rows", "201"}).code == 2);
  CHECK(invoke({"table", "bernoulli", "--rows", "0"}).code == 2);
  CHECK(invoke({"table", "bernoulli", "--rows", "200"}).code == 0);
  CHECK(invoke({"table", "lucas"}).code == 2);
}

TEST_CASE("transforms") {
  const auto ones = write_temp("cli_ones.txt", "1\n1\n1\n1\n");
  auto r = invoke({"transform", "--in", ones, "--direction", "forward"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n1\n2\n6\n");

  const auto forward = write_temp("cli_forward.txt", r.out);
  r = invoke({"transform", forward, "--direction", "inverse"});
  CHECK(r.out == "1\n1\n1\n1\n");

  const auto beta = write_temp("cli_beta.txt", "1/2\n1/4\n1/4\n3/8\n");
  r = invoke({"transform", beta, "--direction", "inverse", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out == "[\n  \"1/2\",\n  \"1/4\",\n  \"0\",\n  \"-1/8\"\n]\n");

  const auto bad = write_temp("cli_bad.txt", "1\n2/3\nx7\n");
  r = invoke({"transform", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  CHECK(invoke({"transform", "cli_missing.txt"}).code == 2);
  CHECK(invoke({"transform", ones, "--direction", "sideways"}).code == 2);

  for (const char* f : {"cli_ones.txt", "cli_forward.txt", "cli_beta.txt", "cli_bad.txt"}) std::remove(f);
}

TEST_CASE("verify subcommand") {
  auto r = invoke({"verify", "filter=04_", "--serial"});
  CHECK(r.code == 0);
  CHECK(r.out.find("overall: PASS") != std::string::npos);

  r = invoke({"verify", "--filter", "09_", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("name,lhs,rhs,abs_diff,tolerance,comparison,pass\n", 0) == 0);

  // tightening tolerances must be honoured
  r = invoke({"verify", "--filter", "07_", "--tol-scale", "0.001"});
  CHECK(r.code == 1);

  CHECK(invoke({"verify", "--filter", "nothing_matches_this"}).code == 2);
  CHECK(invoke({"verify", "--tol-scale", "0"}).code == 2);
}

TEST_CASE("environment variables supply defaults") {
  setenv("INVFAC_FORMAT", "json", 1);
  auto r = invoke({"eval", "nielsen_beta_fac", "z=1"});
  CHECK(r.code == 0);
  CHECK(json_value(r.out) == doctest::Approx(0.6931471806).epsilon(1e-9));
  // flags still win
  r = invoke({"eval", "nielsen_beta_fac", "z=1", "--format", "text"});
  CHECK(r.out.find("value: 0.693147180") != std::string::npos);
  unsetenv("INVFAC_FORMAT");

  setenv("INVFAC_ROWS", "2", 1);
  r = invoke({"table", "bernoulli"});
  CHECK(r.out == "1\n-1/2\n");
  unsetenv("INVFAC_ROWS");

  setenv("INVFAC_MAX_TERMS", "5", 1);
  r = invoke({"eval", "reciprocal", "z=1.5", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out).at("terms_used").get<int>() <= 5);
  unsetenv("INVFAC_MAX_TERMS");
}
