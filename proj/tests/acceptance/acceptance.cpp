// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include "landcore/ccm.hpp"
#include "landcore/cli.hpp"
#include "landcore/csv.hpp"
#include "landcore/document.hpp"
#include "landcore/query.hpp"
#include "landcore/stratification.hpp"
#include "landcore/topology.hpp"

#include "generators.hpp"
#include "oracles.hpp"
#include "query_oracle.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace landcore;
namespace fs = std::filesystem;

namespace {

const std::string kData = LANDCORE_TEST_DATA;
const std::string kGolden = LANDCORE_TEST_GOLDEN;

// Pinned tolerances and limits.
constexpr double kAreaRelTol = 1e-9;
constexpr double kUniformRelTol = 1e-9;
constexpr double kRefractionTol = 0.005;
constexpr double kStderrMultiple = 3.0;
constexpr double kExhaustiveRelTol = 1e-9;
constexpr double kNonRedundancyRatio = 0.6;
constexpr std::size_t kGridInputVertices = 6400;
constexpr std::size_t kGridStoredVertices = 3736;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt(double v) { return format_number(v); }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

// 1 -------------------------------------------------------------------------

Outcome query_equivalence() {
  std::mt19937_64 rng(1001);
  std::size_t mismatches = 0, rows = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const gen::DatasetSpec spec =
        gen::random_dataset(rng, gen::uniform_int(rng, 1, 500), gen::uniform_int(rng, 1, 200), 20000);
    Dataset ds = spec.build();
    ds.build_index();
    const double threshold = gen::uniform(rng, 0, 600000);
    const double x0 = gen::uniform(rng, 0, 16000), y0 = gen::uniform(rng, 0, 16000);
    const double w = gen::uniform(rng, 500, 4000), h = gen::uniform(rng, 500, 4000);
    const double max_len = gen::uniform(rng, 100, 4000);
    const double dist = gen::uniform(rng, 0, 600);
    const std::string after = "19" + std::to_string(gen::uniform_int(rng, 60, 99)) + "-06-15";
    const std::string road = spec.roads[gen::uniform_int(rng, 0, int(spec.roads.size()) - 1)].name;

    const auto want_area = oracle::area_gt(spec, threshold);
    const auto want_box = oracle::bbox_overlapping(spec, {x0, y0, x0 + w, y0 + h});
    const auto want_roads = oracle::roads_short_recent(spec, max_len, after);
    const auto want_near = oracle::near_road(spec, dist, road);
    const auto want_any = oracle::near_any(spec, dist);
    rows += want_area.size() + want_box.size() + want_roads.size() + want_near.size() + want_any.size();
    for (QueryMode mode : {QueryMode::naive, QueryMode::indexed}) {
      mismatches += oracle::names(towns_area_gt(ds, threshold, mode)) != want_area;
      mismatches += oracle::names(towns_bbox_overlapping(ds, Box2({x0, y0}, {x0 + w, y0 + h}), mode)) != want_box;
      mismatches += oracle::names(roads_short_recent(ds, max_len, Date::parse(after), mode)) != want_roads;
      mismatches += oracle::names(towns_near_road(ds, dist, road, mode)) != want_near;
      mismatches += oracle::names(towns_near_any_road(ds, dist, mode)) != want_any;
    }
  }
  return {mismatches == 0, "mismatched result sets " + std::to_string(mismatches) + " of 10000, oracle rows " +
                               std::to_string(rows)};
}

// 2 -------------------------------------------------------------------------

Outcome golden_queries() {
  const std::string data = kData + "/towns.json";
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"towns_area_gt.csv", {"query", "area-gt", "--data", data, "--threshold", "10000"}},
      {"towns_bbox.csv", {"query", "bbox", "--data", data, "--box", "0,0,800,400"}},
      {"towns_roads.csv", {"query", "roads", "--data", data, "--max-len", "5000", "--after", "1990-01-01"}},
      {"towns_near_road.csv", {"query", "near-road", "--data", data, "--dist", "500", "--road", "A12"}},
      {"towns_near_any.csv", {"query", "near-any", "--data", data, "--dist", "500"}},
  };
  std::string failed;
  for (const auto& [golden, args] : cases) {
    const std::string want = read_file(kGolden + "/" + golden);
    for (bool no_index : {false, true}) {
      auto a = args;
      if (no_index) a.push_back("--no-index");
      const CliRun r = cli(a);
      if (r.code != kExitOk || r.out != want) failed += " " + golden + (no_index ? "(naive)" : "(indexed)");
    }
  }
  return {failed.empty(), failed.empty() ? "5 goldens byte-identical in both modes" : "differs:" + failed};
}

// 3 -------------------------------------------------------------------------

Outcome topology_round_trip() {
  std::mt19937_64 rng(1003);
  std::size_t failures = 0, areas_total = 0;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int nx = gen::uniform_int(rng, 1, 9), ny = gen::uniform_int(rng, 1, 9);
    std::vector<int> islands;
    for (int c = 0; c < nx * ny; ++c)
      if (gen::uniform(rng, 0, 1) < 0.1 && static_cast<int>(islands.size()) + nx * ny < 100) islands.push_back(c);
    const auto areas = gen::grid_partition(rng, nx, ny, gen::uniform_int(rng, 1, 5), 0.3, islands);
    areas_total += areas.size();
    const TopologyStore store = build_topology(gen::to_inputs(areas));

    long double want = 0, got = 0;
    for (const auto& a : areas) {
      want += oracle::polygon_area(a.rings);
      const Polygon2 rebuilt = reconstruct_polygon(a.id, store);
      got += area(rebuilt);
      failures += rebuilt.ring_count() != a.rings.size();
    }
    const double rel = static_cast<double>(std::abs(got - want) / want);
    worst = std::max(worst, rel);
    failures += rel > kAreaRelTol;

    std::map<EdgeId, std::vector<std::int64_t>> uses;
    for (const auto& [id, a] : store.areas())
      for (std::int64_t r : a.edge_refs)
        if (r != 0) uses[std::abs(r)].push_back(r);
    for (const auto& [id, e] : store.edges()) {
      const auto& u = uses[id];
      if (e.is_interior())
        failures += !(u.size() == 2 && (u[0] > 0) != (u[1] > 0));
      else
        failures += u.size() != 1;
    }
  }
  return {failures == 0, std::to_string(areas_total) + " areas, worst relative area error " + fmt(worst) +
                             ", failures " + std::to_string(failures)};
}

// 4 -------------------------------------------------------------------------

Outcome non_redundancy() {
  std::mt19937_64 rng(0);
  const auto areas = gen::grid_partition(rng, 10, 10, 16, 0.0, {});
  std::size_t input = 0;
  for (const auto& a : areas)
    for (const auto& ring : a.rings) input += ring.size();
  const TopologyStore store = build_topology(gen::to_inputs(areas));
  std::size_t stored = 0;
  for (const auto& [id, e] : store.edges()) stored += e.line.size();
  const double ratio = double(stored) / double(input);
  const bool pass = input == kGridInputVertices && stored == kGridStoredVertices && ratio < kNonRedundancyRatio;
  return {pass, "stored " + std::to_string(stored) + " of " + std::to_string(input) + " input vertices, ratio " +
                    fmt(ratio)};
}

// 5 -------------------------------------------------------------------------

Outcome sliding_windows() {
  std::mt19937_64 rng(0);
  const auto areas = gen::grid_partition(rng, 10, 10, 4, 0.0, {});
  const TopologyStore store = build_topology(gen::to_inputs(areas));
  std::size_t positions = 0, abox_ok = 0, bbox_failed = 0;
  for (int j = 0; j <= 36; ++j)
    for (int i = 0; i <= 36; ++i) {
      ++positions;
      const double x0 = 0.25 * i, y0 = 0.25 * j;
      const Box2 window({x0, y0}, {x0 + 1, y0 + 1});
      // Direct oracle: every unit cell whose closed box meets the window.
      std::vector<AreaId> want;
      for (const auto& a : areas) {
        const oracle::Bounds b = oracle::bounds_of(a.rings.front());
        if (b.x0 <= x0 + 1 && x0 <= b.x1 && b.y0 <= y0 + 1 && y0 <= b.y1) want.push_back(a.id);
      }
      const WindowResult r = window_query_with(store, window, EdgeSelection::abox);
      bool ok = r.incomplete.empty() && r.areas.size() == want.size();
      for (std::size_t k = 0; ok && k < want.size(); ++k) {
        const auto& [id, poly] = r.areas[k];
        const auto& spec = areas[static_cast<std::size_t>(id - 1)];
        ok = id == want[k] && poly.outer().size() == spec.rings.front().size() &&
             std::abs(area(poly) - oracle::polygon_area(spec.rings)) <= 1e-12;
      }
      abox_ok += ok;
      const WindowResult naive = window_query_with(store, window, EdgeSelection::bbox);
      bbox_failed += !naive.incomplete.empty() || naive.areas.size() != want.size();
    }
  return {abox_ok == positions && bbox_failed >= 1,
          "abox complete at " + std::to_string(abox_ok) + "/" + std::to_string(positions) +
              " positions, bbox variant failed at " + std::to_string(bbox_failed)};
}

// 6 -------------------------------------------------------------------------

Outcome raster_optimality() {
  std::mt19937_64 rng(1006);
  std::size_t instances = 0, inexact = 0, non_monotone = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t nc = gen::uniform_int(rng, 2, 40), nr = gen::uniform_int(rng, 2, 40);
    const double obstacle_p = gen::uniform(rng, 0, 0.3);
    std::vector<double> w(nc * nr);
    for (double& x : w) x = gen::uniform(rng, 0, 1) < obstacle_p ? kInfiniteWeight : gen::uniform(rng, 0.2, 10);
    const std::size_t s = gen::uniform_int(rng, 0, int(w.size()) - 1);
    const std::size_t t = gen::uniform_int(rng, 0, int(w.size()) - 1);
    w[s] = gen::uniform(rng, 0.2, 10);
    w[t] = gen::uniform(rng, 0.2, 10);
    const CostGrid grid({0, 0}, gen::uniform(rng, 0.5, 30), nc, nr, w);
    double costs[3];
    int k = 0;
    for (Connectivity c : {Connectivity::four, Connectivity::eight, Connectivity::sixteen}) {
      ++instances;
      const PathResult r = raster_path(grid, grid.center(s % nc, s / nc), grid.center(t % nc, t / nc), c);
      const double bf = oracle::bellman_ford(grid, s, t, static_cast<int>(c));
      inexact += r.total_cost != bf;
      costs[k++] = r.total_cost;
    }
    non_monotone += !(costs[2] <= costs[1] && costs[1] <= costs[0]);
  }
  return {inexact == 0 && non_monotone == 0, std::to_string(instances) + " solves, inexact " +
                                                 std::to_string(inexact) + ", non-monotone grids " +
                                                 std::to_string(non_monotone)};
}

// 7 -------------------------------------------------------------------------

Outcome ccm_convergence() {
  const CostMap map = to_cost_map(load_document(kData + "/refraction.json"));
  const Point2 s{25, 25}, t{75, 75};
  std::vector<double> vector_costs;
  for (std::size_t m : {1u, 2u, 4u, 8u}) vector_costs.push_back(vector_path(map, s, t, m).total_cost);
  bool vector_monotone = true;
  for (std::size_t i = 1; i < vector_costs.size(); ++i) vector_monotone &= vector_costs[i] <= vector_costs[i - 1];
  const double v8 = vector_costs.back();

  std::vector<double> gaps;
  for (double cs = 5.0; cs >= 0.3125; cs /= 2) {
    const double r8 = raster_path(rasterize(map, cs), s, t, Connectivity::eight).total_cost;
    gaps.push_back(std::abs(r8 - v8) / v8);
  }
  bool gaps_shrink = gaps.size() == 5;
  for (std::size_t i = 1; i < gaps.size(); ++i) gaps_shrink &= gaps[i] < gaps[i - 1];

  // Brute force over 10^6 crossing heights on x = 50.
  double best = kInfiniteWeight;
  for (int k = 0; k <= 1000000; ++k) {
    const double y = 100.0 * k / 1000000;
    best = std::min(best, std::hypot(25.0, y - 25.0) * 1.0 + std::hypot(25.0, 75.0 - y) * 2.0);
  }
  const double rel = (v8 - best) / best;
  std::string detail = "gaps";
  for (double g : gaps) detail += " " + fmt(std::round(g * 1e5) / 1e3) + "%";
  detail += "; vector(1,2,4,8)";
  for (double c : vector_costs) detail += " " + fmt(std::round(c * 1e4) / 1e4);
  detail += "; optimum " + fmt(std::round(best * 1e4) / 1e4) + ", vector(8) +" + fmt(std::round(rel * 1e5) / 1e3) + "%";
  return {gaps_shrink && vector_monotone && std::abs(rel) <= kRefractionTol, detail};
}

// 8 -------------------------------------------------------------------------

Outcome uniform_exactness() {
  std::mt19937_64 rng(1008);
  double worst = 0, worst_offline = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const double wgt = gen::uniform(rng, 0.1, 10);
    const CostMap map({}, Box2({0, 0}, {1000, 600}), wgt);
    const Point2 s{gen::uniform(rng, 0, 1000), gen::uniform(rng, 0, 600)};
    const Point2 t{gen::uniform(rng, 0, 1000), gen::uniform(rng, 0, 600)};
    const PathResult r = vector_path(map, s, t, static_cast<std::size_t>(gen::uniform_int(rng, 1, 8)));
    const double want = wgt * distance(s, t);
    worst = std::max(worst, std::abs(r.total_cost - want) / want);
    for (const Point2& v : r.vertices)
      worst_offline = std::max(worst_offline, std::abs(orient(s, t, v)) / distance(s, t));
  }
  return {worst <= kUniformRelTol && worst_offline <= 1e-9,
          "worst relative cost error " + fmt(worst) + ", worst vertex offset " + fmt(worst_offline) + " m"};
}

// 9 -------------------------------------------------------------------------

Outcome stratified_estimator() {
  // 10×10 blocks of 100 m; each block holds one field strip of fixed width
  // per band, so per-stratum cultivable fractions are 0.8, 0.45 and 0.1.
  std::vector<Field> fields;
  double truth = 0;
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 10; ++i) {
      const double frac = j < 3 ? 0.8 : j < 6 ? 0.45 : 0.1;
      const double x0 = 100.0 * i, y0 = 100.0 * j;
      fields.push_back({Polygon2(Ring({{x0, y0}, {x0 + 100 * frac, y0}, {x0 + 100 * frac, y0 + 100}, {x0, y0 + 100}}))});
      truth += 100 * frac * 100;
    }
  const FieldMap fm(fields, Box2({0, 0}, {1000, 1000}), 100);
  const auto strata = stratify(fm);
  const auto crop = [&](Point2 p) {
    const auto i = std::min<std::size_t>(9, static_cast<std::size_t>(p.x / 100));
    const auto j = std::min<std::size_t>(9, static_cast<std::size_t>(p.y / 100));
    return point_in_polygon(p, fields[j * 10 + i].geometry);
  };

  double sum = 0, sum_var = 0;
  const int runs = 1000;
  for (int seed = 1; seed <= runs; ++seed) {
    const SamplePlan plan = allocate_samples(strata, 60, static_cast<std::uint64_t>(seed));
    std::map<std::int64_t, bool> obs;
    for (const SamplePoint& p : plan.points) obs[p.id] = crop(p.location);
    const AreaEstimate e = estimate_cultivable_area(strata, plan, obs);
    sum += e.area;
    sum_var += e.stderr_ * e.stderr_;
  }
  const double mean = sum / runs;
  const double se = std::sqrt(sum_var / runs / runs);
  const bool mc_ok = std::abs(mean - truth) <= kStderrMultiple * se;

  // Exhaustive sampling: every 1 m² cell centre of every stratum.
  SamplePlan census;
  std::map<std::int64_t, bool> obs;
  census.counts.assign(strata.size(), 0);
  std::int64_t id = 0;
  for (std::size_t h = 0; h < strata.size(); ++h)
    for (const Box2& b : strata[h].blocks)
      for (double y = b.min.y + 0.5; y < b.max.y; y += 1)
        for (double x = b.min.x + 0.5; x < b.max.x; x += 1) {
          census.points.push_back({++id, h, {x, y}});
          obs[id] = crop({x, y});
          ++census.counts[h];
        }
  const AreaEstimate full = estimate_cultivable_area(strata, census, obs);
  const bool exact = std::abs(full.area - truth) <= kExhaustiveRelTol * truth;
  return {mc_ok && exact, "truth " + fmt(truth) + ", mean of " + std::to_string(runs) + " = " +
                              fmt(std::round(mean * 10) / 10) + ", combined SE " + fmt(std::round(se * 10) / 10) +
                              ", |diff|/SE " + fmt(std::round(std::abs(mean - truth) / se * 100) / 100) +
                              ", exhaustive " + fmt(full.area)};
}

// 10 ------------------------------------------------------------------------

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "landcore_acceptance";
  fs::create_directories(dir);
  const auto p = [&](const char* name) { return (dir / name).string(); };
  const std::string towns = kData + "/towns.json", part = kData + "/partition.json";
  const std::string refr = kData + "/refraction.json", survey = kData + "/survey.json";
  const std::string config = kData + "/config.json";
  struct Command {
    std::vector<std::string> args;
    std::vector<std::string> files;
  };
  const std::vector<Command> commands{
      {{"query", "area-gt", "--data", towns, "--threshold", "10000"}, {}},
      {{"query", "bbox", "--data", towns, "--box", "0,0,800,400"}, {}},
      {{"query", "roads", "--data", towns, "--max-len", "5000", "--after", "1990-01-01"}, {}},
      {{"query", "near-road", "--data", towns, "--dist", "500", "--road", "A12"}, {}},
      {{"query", "near-any", "--data", towns, "--dist", "500"}, {}},
      {{"topology", "build", "--data", part, "--out", p("store.json")}, {p("store.json")}},
      {{"topology", "window", "--data", part, "--box", "40,40,60,60"}, {}},
      {{"ccm", "raster", "--data", refr, "--config", config, "--from", "25,25", "--to", "75,75", "--path-csv",
        p("raster.csv")},
       {p("raster.csv")}},
      {{"ccm", "vector", "--data", refr, "--config", config, "--from", "25,25", "--to", "75,75", "--path-csv",
        p("vector.csv")},
       {p("vector.csv")}},
      {{"ccm", "converge", "--data", refr, "--config", config, "--from", "25,25", "--to", "75,75"}, {}},
      {{"stratify", "--data", survey, "--config", config, "--points-csv", p("points.csv")}, {p("points.csv")}},
      {{"report", "--data", survey, "--config", config, "--simulate-outcomes", "--series", kData + "/series.csv"},
       {}},
      {{"render", "--data", survey, "--config", config, "--strata", "--path", p("vector.csv"), "--out",
        p("map.svg")},
       {p("map.svg")}},
  };
  std::size_t differing = 0, failed = 0;
  for (const Command& c : commands) {
    std::vector<std::string> first_files, second_files;
    const CliRun a = cli(c.args);
    for (const auto& f : c.files) first_files.push_back(read_file(f));
    const CliRun b = cli(c.args);
    for (const auto& f : c.files) second_files.push_back(read_file(f));
    failed += a.code != kExitOk || b.code != kExitOk;
    differing += a.out != b.out || first_files != second_files;
  }
  fs::remove_all(dir);
  return {differing == 0 && failed == 0, std::to_string(commands.size()) + " commands, differing " +
                                             std::to_string(differing) + ", failed " + std::to_string(failed)};
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "query/oracle equivalence", 60, query_equivalence},
      {2, "golden query outputs", 5, golden_queries},
      {3, "topology round trip", 30, topology_round_trip},
      {4, "non-redundant storage", 5, non_redundancy},
      {5, "sliding windows", 10, sliding_windows},
      {6, "raster optimality", 60, raster_optimality},
      {7, "CCM convergence", 120, ccm_convergence},
      {8, "uniform-map exactness", 1, uniform_exactness},
      {9, "stratified estimator", 60, stratified_estimator},
      {10, "determinism", 30, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::cout << "criterion " << c.number << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  ("
              << o.detail << "; " << fmt(std::round(secs * 100) / 100) << " s of " << fmt(c.limit_s) << " s"
              << (in_time ? "" : ", over time") << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
