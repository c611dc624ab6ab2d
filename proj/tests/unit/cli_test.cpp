#include "landcore/cli.hpp"
#include "landcore/csv.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace landcore;

namespace {

const std::string kData = LANDCORE_TEST_DATA;
const std::string kGolden = LANDCORE_TEST_GOLDEN;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("near-road matches the golden file") {
  const Run r = run({"query", "near-road", "--data", kData + "/towns.json", "--dist", "500", "--road", "A12"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == read_file(kGolden + "/towns_near_road.csv"));
  const Run naive = run({"query", "near-road", "--data", kData + "/towns.json", "--dist", "500", "--road", "A12",
                         "--no-index"});
  CHECK(naive.out == r.out);
}

TEST_CASE("exit codes") {
  CHECK(run({"query", "near-road", "--data", kData + "/towns.json", "--dist", "5", "--road", "Z9"}).code ==
        kExitNotFound);
  const Run walled = run({"ccm", "vector", "--data", kData + "/walled.json", "--from", "10,10", "--to", "75,75"});
  CHECK(walled.code == kExitNotFound);
  CHECK(walled.err.find("no path") != std::string::npos);
  CHECK(run({"query", "area-gt", "--data", kData + "/missing.json", "--threshold", "1"}).code == kExitIo);
  CHECK(run({"query", "area-gt", "--data", kData + "/towns.json"}).code == kExitValidation);
  CHECK(run({"query", "area-gt", "--data", kData + "/towns.json", "--threshold", "-1"}).code == kExitValidation);
  CHECK(run({"frobnicate"}).code == kExitValidation);
  CHECK(run({"stratify", "--data", kData + "/survey.json"}).code == kExitValidation);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("ccm output shape") {
  const Run r = run({"ccm", "raster", "--data", kData + "/refraction.json", "--from", "25,25", "--to", "75,75",
                     "--cell-size", "5"});
  REQUIRE(r.code == kExitOk);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"method", "cost", "vertices"});
  CHECK(rows[1][0] == "RASTER-8");
}

TEST_CASE("stratify is seeded") {
  const std::vector<std::string> args{"stratify", "--data", kData + "/survey.json", "--seed", "5", "--samples", "30"};
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const Run c = run({"stratify", "--data", kData + "/survey.json", "--seed", "6", "--samples", "30"});
  CHECK(c.out != a.out);
}

TEST_CASE("render writes a file") {
  const auto out = std::filesystem::temp_directory_path() / "landcore_cli_test.svg";
  std::filesystem::remove(out);
  const Run r = run({"render", "--data", kData + "/towns.json", "--out", out.string()});
  CHECK(r.code == kExitOk);
  CHECK(read_file(out.string()).find("<svg") != std::string::npos);
  std::filesystem::remove(out);
}

}
