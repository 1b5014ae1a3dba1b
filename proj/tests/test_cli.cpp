#include <catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cuspk::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_cache() {
  static const auto dir = std::filesystem::temp_directory_path() / "cuspk-cli-test-cache";
  return dir;
}

// Every number in the document must be a string.
bool no_json_numbers(const json& j) {
  if (j.is_number()) return false;
  if (j.is_structured())
    for (const auto& item : j)
      if (!no_json_numbers(item)) return false;
  return true;
}

}  // namespace

TEST_CASE("kgroup json output") {
  const auto r = run({"kgroup", "--a", "2", "--b", "3", "--p", "2", "--e", "1", "--j", "0", "--format", "json",
                      "--cache-dir", scratch_cache().string()});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("command") == "kgroup");
  for (const char* key : {"inputs", "result", "checks", "timings_ms"}) CHECK(doc.contains(key));
  CHECK(doc.at("result").at("group_label") == "Z/2");
  CHECK(doc.at("result").at("agree") == true);
  CHECK(doc.at("result").at("group") == json{{"free_rank", "0"}, {"invariant_factors", {"2"}}});
  CHECK(doc.at("result").at("routes").size() == 3);
  CHECK(doc.at("checks").at("length_ok") == true);
  CHECK(no_json_numbers(doc));
  // Canonical form: parse and re-serialize is byte-identical.
  CHECK(doc.dump(2) + "\n" == r.out);
}

TEST_CASE("kgroup odd degree is trivial") {
  const auto r = run({"kgroup", "--a", "2", "--b", "3", "--p", "2", "--j", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("result").at("group_label") == "0");
  CHECK(doc.at("result").at("group").at("invariant_factors").empty());
}

TEST_CASE("kgroup text output and orientation") {
  const auto r = run({"kgroup", "--a", "3", "--b", "2", "--p", "2", "--r", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("K_2(") != std::string::npos);
  CHECK(r.out.find("oriented as a=2, b=3") != std::string::npos);
  CHECK(r.out.find("length         3 (expected 3)") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({"kgroup", "--a", "4", "--b", "6", "--p", "2", "--e", "1", "--j", "0"}).code == 1);
  CHECK(run({"kgroup", "--a", "2", "--b", "3", "--p", "4", "--j", "0"}).code == 1);
  CHECK(run({"kgroup", "--a", "2", "--b", "3", "--p", "2"}).code == 1);
  CHECK(run({"kgroup", "--a", "2", "--b", "3", "--p", "2", "--j", "0", "--routes", "bogus"}).code == 1);
  CHECK(run({"kgroup", "--a", "2", "--b", "3", "--p", "2", "--j", "40"}).code == 1);
  CHECK(run({"kgroup", "--a", "2", "--b", "3", "--p", "2", "--j", "0", "--format", "xml"}).code == 1);
  CHECK(run({"bar", "--a", "2", "--b", "3", "--m-max", "20"}).code == 1);
  CHECK(run({"verify", "--grid", "huge"}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({}).code == 1);
  const auto bad = run({"kgroup", "--a", "4", "--b", "6", "--p", "2", "--j", "0"});
  CHECK(bad.err.find("coprime") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("kgroup") != std::string::npos);
}

TEST_CASE("witt route over its cap is skipped, not an error") {
  const auto r = run({"kgroup", "--a", "2", "--b", "3", "--p", "2", "--j", "0", "--witt-cap", "8", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("result").at("skipped").contains("witt_quotient"));
  CHECK(doc.at("result").at("routes").size() == 2);
}

TEST_CASE("bar command") {
  const auto r = run({"bar", "--a", "2", "--b", "3", "--m-max", "10"});
  REQUIRE(r.code == 0);
  std::size_t lines = 0, agree = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    ++lines;
    agree += line.find("agree") != std::string::npos && line.find("DISAGREE") == std::string::npos;
  }
  CHECK(lines == 10);
  CHECK(agree == 10);

  const auto single = run({"bar", "--a", "2", "--b", "3", "--m", "2", "--format", "json"});
  REQUIRE(single.code == 0);
  const auto doc = json::parse(single.out);
  const auto& w = doc.at("result").at("weights").at(0);
  CHECK(w.at("homology") == json{{"1", {{"free_rank", "0"}, {"invariant_factors", {"2"}}}}});
  CHECK(w.at("agree") == true);
}

TEST_CASE("profile command") {
  const auto r = run({"profile", "--a", "2", "--b", "3", "--p", "2", "--r", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("result").at("total_length") == "3");
  CHECK(doc.at("result").at("sylvester_length") == "3");
  CHECK(doc.at("checks").at("total_matches_sylvester") == true);
  CHECK_FALSE(doc.at("result").at("entries").empty());

  const auto text = run({"profile", "--a", "2", "--b", "3", "--p", "2", "--r", "1"});
  CHECK(text.out.find("total 3") != std::string::npos);
}

TEST_CASE("verify command") {
  const auto quick = run({"verify", "--grid", "quick", "--jobs", "2", "--cache-dir", scratch_cache().string()});
  REQUIRE(quick.code == 0);
  CHECK(quick.out.find("8 points, 0 failures") != std::string::npos);
  CHECK(quick.out.find("verify: PASS") != std::string::npos);

  const auto point = run({"verify", "--a", "2", "--b", "3", "--p", "2", "--e", "1", "--r", "0", "--format", "json"});
  REQUIRE(point.code == 0);
  CHECK(json::parse(point.out).at("result").at("points").size() == 1);

  // Negative control: a corrupted closed form must be flagged with exit 2.
  const auto corrupt = run({"verify", "--a", "2", "--b", "3", "--p", "2", "--r", "0", "--corrupt-h", "1"});
  CHECK(corrupt.code == 2);
  CHECK(corrupt.out.find("FAIL") != std::string::npos);

  const auto with_bar = run({"verify", "--a", "2", "--b", "3", "--p", "2", "--with-bar", "--bar-m-max", "6",
                             "--format", "json"});
  REQUIRE(with_bar.code == 0);
  const auto doc = json::parse(with_bar.out);
  CHECK(doc.at("checks").at("bar") == true);
  CHECK(doc.at("result").at("bar").size() == 4);
}

TEST_CASE("witt-table command writes and reuses the cache") {
  const auto dir = scratch_cache() / "tables";
  std::filesystem::remove_all(dir);
  const auto first = run({"witt-table", "--set", "1,2,3,4,6", "--cache-dir", dir.string(), "--format", "json"});
  REQUIRE(first.code == 0);
  const auto doc = json::parse(first.out);
  CHECK(doc.at("result").at("cached_before") == false);
  CHECK(std::filesystem::exists(doc.at("result").at("file").get<std::string>()));

  const auto second = run({"witt-table", "--a", "2", "--b", "3", "--r", "0", "--cache-dir", dir.string(), "--show"});
  REQUIRE(second.code == 0);
  CHECK(second.out.find("(cached)") != std::string::npos);
  CHECK(second.out.find("cuspk-witt-structure-table") != std::string::npos);

  CHECK(run({"witt-table", "--set", "1,4", "--cache-dir", dir.string()}).code == 1);
  CHECK(run({"witt-table", "--set", "1,x"}).code == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CUSPK_CACHE selects the default cache directory") {
  const auto dir = scratch_cache() / "from-env";
  std::filesystem::remove_all(dir);
  ::setenv("CUSPK_CACHE", dir.string().c_str(), 1);
  const auto r = run({"witt-table", "--set", "1,2", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("result").at("file").get<std::string>().rfind(dir.string(), 0) == 0);
  std::filesystem::remove_all(dir);
}
