#include "landcore/cli.hpp"

#include "landcore/config.hpp"
#include "landcore/csv.hpp"
#include "landcore/document.hpp"
#include "landcore/error.hpp"
#include "landcore/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>

namespace landcore {

namespace {


struct Options {
  std::string data;
  std::string config;
  std::string out;
  std::string store;
  bool no_index = false;

  double threshold = 0.0;
  std::string box;
  double max_len = 0.0;
  std::string after;
  double dist = 0.0;
  std::string road;
  std::string selection = "abox";

  std::string from;
  std::string to;
  double cell_size = 0.0;
  int connectivity = 0;
  std::size_t steiner = 0;
  std::string path_csv;
  std::string cell_sizes;
  std::string connectivities = "4,8,16";
  std::string steiner_values = "1,2,4,8";
  bool timing = false;

  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string points_csv;
  std::string outcomes;
  std::string series;
  bool simulate_outcomes = false;
  int year = 0;

  std::string path;
  bool strata = false;
};

RunConfig config_of(const Options& o) { return o.config.empty() ? RunConfig{} : load_config(o.config); }

Point2 point_arg(const std::string& s, const char* what) {
  const auto v = parse_number_list(s, 2, what);
  return {v[0], v[1]};
}

Box2 box_arg(const std::string& s) {
  const auto v = parse_number_list(s, 4, "--box");
  if (v[0] > v[2] || v[1] > v[3]) throw ValidationError("--box: expected x0,y0,x1,y1 with x0 <= x1, y0 <= y1");
  return Box2({v[0], v[1]}, {v[2], v[3]});
}

// --seed, then the config file, then LANDCORE_SEED.
std::uint64_t resolve_seed(const CLI::App& cmd, const Options& o, const RunConfig& cfg) {
  if (cmd.count("--seed")) return o.seed;
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("LANDCORE_SEED")) {
    const long long v = parse_integer(env, "LANDCORE_SEED");
    if (v < 0) throw ValidationError("LANDCORE_SEED must be >= 0");
    return static_cast<std::uint64_t>(v);
  }
  throw ValidationError("no seed given: use --seed, a config seed or LANDCORE_SEED");
}

void print_towns(std::ostream& out, const TownRows& rows) {
  out << "name,population,area\n";
  for (const Town* t : rows)
    out << csv_field(t->name) << ',' << t->population << ',' << format_number(area(t->region)) << '\n';
}

int run_query(const std::string& which, const Options& o, std::ostream& out) {
  Dataset ds = to_dataset(load_document(o.data));
  const QueryMode mode = o.no_index ? QueryMode::naive : QueryMode::indexed;
  if (mode == QueryMode::indexed) ds.build_index();
  if (which == "area-gt") {
    print_towns(out, towns_area_gt(ds, o.threshold, mode));
  } else if (which == "bbox") {
    print_towns(out, towns_bbox_overlapping(ds, box_arg(o.box), mode));
  } else if (which == "roads") {
    out << "name,construct,length\n";
    for (const Road* r : roads_short_recent(ds, o.max_len, Date::parse(o.after), mode))
      out << csv_field(r->name) << ',' << r->construct.to_string() << ','
          << format_number(length(r->shape)) << '\n';
  } else if (which == "near-road") {
    print_towns(out, towns_near_road(ds, o.dist, o.road, mode));
  } else {
    out << "town,road\n";
    for (const auto& [t, r] : towns_near_any_road(ds, o.dist, mode))
      out << csv_field(t->name) << ',' << csv_field(r->name) << '\n';
  }
  return kExitOk;
}

int run_topology(const std::string& which, const Options& o, std::ostream& out, std::ostream& err) {
  if (which == "build") {
    const GeoDocument doc = load_document(o.data);
    const std::vector<AreaInput> inputs = to_areas(doc);
    const TopologyStore store = build_topology(inputs);
    const std::string text = serialize_store(store);
    if (o.out.empty()) {
      out << text;
      return kExitOk;
    }
    write_file(o.out, text);
    std::size_t input_vertices = 0;
    for (const auto& [id, poly] : inputs) input_vertices += poly.vertex_count();
    out << "areas,edges,stored_vertices,input_vertices\n"
        << store.areas().size() << ',' << store.edges().size() << ',' << store.stored_vertex_count()
        << ',' << input_vertices << '\n';
    return kExitOk;
  }

  if (o.data.empty() == o.store.empty()) throw ValidationError("window needs exactly one of --data or --store");
  if (o.selection != "abox" && o.selection != "bbox")
    throw ValidationError("--selection must be abox or bbox");
  const TopologyStore store = o.store.empty() ? build_topology(to_areas(load_document(o.data)))
                                              : parse_store(read_file(o.store));
  const WindowResult res = window_query_with(
      store, box_arg(o.box), o.selection == "abox" ? EdgeSelection::abox : EdgeSelection::bbox);
  out << "a_id,rings,vertices,area\n";
  for (const auto& [id, poly] : res.areas)
    out << id << ',' << poly.ring_count() << ',' << poly.vertex_count() << ','
        << format_number(area(poly)) << '\n';
  for (AreaId id : res.incomplete) err << "area " << id << " could not be closed from the selected edges\n";
  return kExitOk;
}

double default_cell_size(const RunConfig& cfg, const CostMap& map) {
  if (cfg.ccm.cell_size) return *cfg.ccm.cell_size;
  return std::max(map.extent().width(), map.extent().height()) / 100.0;
}

int run_ccm(const CLI::App& cmd, const std::string& which, const Options& o, std::ostream& out,
            std::ostream& err) {
  const RunConfig cfg = config_of(o);
  const CostMap map = to_cost_map(load_document(o.data), cfg.ccm.default_weight);
  const Point2 s = point_arg(o.from, "--from");
  const Point2 t = point_arg(o.to, "--to");

  if (which == "converge") {
    std::vector<double> cells;
    if (o.cell_sizes.empty()) {
      double c = cmd.count("--cell-size") ? o.cell_size : default_cell_size(cfg, map);
      for (int i = 0; i < 5; ++i, c /= 2.0) cells.push_back(c);
    } else {
      cells = parse_number_list(o.cell_sizes, 0, "--cell-sizes");
    }
    std::vector<Connectivity> conns;
    for (double c : parse_number_list(o.connectivities, 0, "--connectivities"))
      conns.push_back(connectivity_from_int(static_cast<int>(c)));
    std::vector<std::size_t> ms;
    for (double m : parse_number_list(o.steiner_values, 0, "--steiner-values")) {
      if (!(m >= 1.0) || m != std::floor(m)) throw ValidationError("--steiner-values must be integers >= 1");
      ms.push_back(static_cast<std::size_t>(m));
    }
    const ConvergenceReport report = convergence_report(map, s, t, cells, conns, ms);
    out << "method,resolution_or_m,cost,runtime_ms\n";
    for (const ConvergenceRow& row : report.rows)
      out << row.method.name() << ',' << format_number(row.resolution_or_m) << ','
          << format_number(row.cost) << ',' << (o.timing ? format_number(row.runtime_ms) : "-") << '\n';
    if (!report.raster_monotone) err << "note: raster cost rose with connectivity\n";
    if (!report.vector_monotone) err << "note: vector cost rose with Steiner count\n";
    return kExitOk;
  }

  PathResult path;
  if (which == "raster") {
    const double cell = cmd.count("--cell-size") ? o.cell_size : default_cell_size(cfg, map);
    const Connectivity conn =
        cmd.count("--connectivity") ? connectivity_from_int(o.connectivity) : cfg.ccm.connectivity;
    path = raster_path(rasterize(map, cell), s, t, conn);
  } else {
    const std::size_t m = cmd.count("--steiner") ? o.steiner : cfg.ccm.steiner;
    path = vector_path(map, s, t, m);
  }
  if (!path.found()) {
    err << "no path\n";
    return kExitNotFound;
  }
  out << "method,cost,vertices\n"
      << path.method.name() << ',' << format_number(path.total_cost) << ',' << path.vertices.size() << '\n';
  if (!o.path_csv.empty()) {
    std::string text = "x,y\n";
    for (const Point2& p : path.vertices) text += format_number(p.x) + ',' + format_number(p.y) + '\n';
    write_file(o.path_csv, text);
  }
  return kExitOk;
}

struct Survey {
  FieldMap fields;
  std::vector<Stratum> strata;
  SamplePlan plan;
};

Survey survey_of(const CLI::App& cmd, const Options& o, const RunConfig& cfg) {
  FieldMap fm = to_field_map(load_document(o.data), cfg.strata.block_size);
  std::vector<Stratum> strata = stratify(fm, cfg.strata.thresholds, cfg.strata.priors);
  const std::size_t n = cmd.count("--samples") ? o.samples : cfg.strata.samples;
  SamplePlan plan = allocate_samples(strata, n, resolve_seed(cmd, o, cfg));
  return {std::move(fm), std::move(strata), std::move(plan)};
}

int run_stratify(const CLI::App& cmd, const Options& o, std::ostream& out) {
  const RunConfig cfg = config_of(o);
  const Survey sv = survey_of(cmd, o, cfg);
  nlohmann::ordered_json strata = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < sv.strata.size(); ++i) {
    const Stratum& s = sv.strata[i];
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    row["level"] = to_string(s.level);
    row["blocks"] = s.blocks.size();
    row["area"] = s.area;
    row["prior"] = s.prior_crop_probability;
    row["samples"] = sv.plan.counts[i];
    strata.push_back(std::move(row));
  }
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const SamplePoint& p : sv.plan.points) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    row["id"] = p.id;
    row["stratum"] = to_string(sv.strata[p.stratum].level);
    row["x"] = p.location.x;
    row["y"] = p.location.y;
    points.push_back(std::move(row));
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["seed"] = sv.plan.seed;
  doc["strata"] = std::move(strata);
  doc["points"] = std::move(points);
  out << doc.dump(2) << '\n';

  if (!o.points_csv.empty()) {
    std::string text = "point_id,stratum,x,y\n";
    for (const SamplePoint& p : sv.plan.points)
      text += std::to_string(p.id) + ',' + to_string(sv.strata[p.stratum].level) + ',' +
              format_number(p.location.x) + ',' + format_number(p.location.y) + '\n';
    write_file(o.points_csv, text);
  }
  return kExitOk;
}

bool is_header(const std::vector<std::string>& row) {
  const std::string& f = row.front();
  return !f.empty() && !(std::isdigit(static_cast<unsigned char>(f[0])) || f[0] == '-' || f[0] == '+' || f[0] == '.');
}

std::map<std::int64_t, bool> read_outcomes(const std::string& path) {
  std::map<std::int64_t, bool> obs;
  const auto rows = parse_csv(read_file(path));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0 && is_header(rows[i])) continue;
    if (rows[i].size() != 2) throw DataError(path + ": expected point_id,crop on every row");
    const long long id = parse_integer(rows[i][0], "point_id");
    const long long crop = parse_integer(rows[i][1], "crop");
    if (crop != 0 && crop != 1) throw DataError(path + ": crop must be 0 or 1");
    if (!obs.emplace(id, crop == 1).second)
      throw DataError(path + ": point " + std::to_string(id) + " has two outcomes");
  }
  return obs;
}

std::vector<YearArea> read_series(const std::string& path) {
  std::vector<YearArea> series;
  const auto rows = parse_csv(read_file(path));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0 && is_header(rows[i])) continue;
    if (rows[i].size() != 2) throw DataError(path + ": expected year,area on every row");
    series.push_back({static_cast<int>(parse_integer(rows[i][0], "year")), parse_double(rows[i][1], "area")});
  }
  return series;
}

int run_report(const CLI::App& cmd, const Options& o, std::ostream& out) {
  const RunConfig cfg = config_of(o);
  const Survey sv = survey_of(cmd, o, cfg);
  if (o.outcomes.empty() == !o.simulate_outcomes)
    throw ValidationError("report needs exactly one of --outcomes or --simulate-outcomes");

  std::map<std::int64_t, bool> obs;
  if (o.simulate_outcomes) {
    for (const SamplePoint& p : sv.plan.points) {
      bool crop = false;
      for (const Field& f : sv.fields.fields()) crop = crop || point_in_polygon(p.location, f.geometry);
      obs.emplace(p.id, crop);
    }
  } else {
    obs = read_outcomes(o.outcomes);
  }
  const AreaEstimate est = estimate_cultivable_area(sv.strata, sv.plan, obs);

  LandStats stats;
  stats.year = cmd.count("--year") ? o.year : cfg.year;
  stats.cultivable_area = est.area;
  stats.stderr_ = est.stderr_;
  stats.import_requirement = import_requirement(cfg.demand.population, cfg.demand.per_capita_demand,
                                                est.area, cfg.demand.yield);
  std::string loss;
  if (!o.series.empty()) {
    std::vector<YearArea> series = read_series(o.series);
    const bool listed = std::any_of(series.begin(), series.end(),
                                    [&](const YearArea& y) { return y.year == stats.year; });
    if (!listed) series.push_back({stats.year, est.area});
    stats.loss_rate = -yearly_loss(series).slope_fraction;
    loss = format_number(stats.loss_rate);
  }
  out << "year,cultivable_area,stderr,loss_rate,import_requirement\n"
      << stats.year << ',' << format_number(stats.cultivable_area) << ',' << format_number(stats.stderr_)
      << ',' << loss << ',' << format_number(stats.import_requirement) << '\n';
  return kExitOk;
}

int run_render(const CLI::App& cmd, const Options& o) {
  const GeoDocument doc = load_document(o.data);
  Scene scene;
  for (const auto* group : {&doc.cost_regions, &doc.regions, &doc.fields, &doc.towns})
    for (const Feature& f : *group) scene.polygons.push_back(to_polygon(f));
  for (const Feature& f : doc.roads) scene.polylines.push_back(to_polyline(f));
  if (doc.extent) scene.extent = doc.extent;
  if (!o.path.empty()) {
    const auto rows = parse_csv(read_file(o.path));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == 0 && is_header(rows[i])) continue;
      if (rows[i].size() != 2) throw ValidationError(o.path + ": expected x,y on every row");
      scene.path.push_back({parse_double(rows[i][0], "x"), parse_double(rows[i][1], "y")});
    }
  }
  if (o.strata) {
    const RunConfig cfg = config_of(o);
    scene.strata = stratify(to_field_map(doc, cfg.strata.block_size), cfg.strata.thresholds,
                            cfg.strata.priors);
  }
  (void)cmd;
  write_file(o.out, render_svg(scene));
  return kExitOk;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Land assessment: spatial queries, topology, least-cost paths and crop surveys", "landcore"};
  app.require_subcommand(1);

  const auto data = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("--data", o.data, "dataset JSON file");
    if (required) opt->required();
  };
  const auto config = [&](CLI::App* c) { c->add_option("--config", o.config, "run configuration JSON"); };

  CLI::App* query = app.add_subcommand("query", "town and road queries (CSV)");
  query->require_subcommand(1);
  std::vector<CLI::App*> queries;
  const auto add_query = [&](const char* name, const char* help) {
    CLI::App* q = query->add_subcommand(name, help);
    data(q);
    q->add_flag("--no-index", o.no_index, "scan instead of using the bbox index");
    queries.push_back(q);
    return q;
  };
  add_query("area-gt", "towns with area above a threshold")
      ->add_option("--threshold", o.threshold, "square meters")->required();
  add_query("bbox", "towns whose bbox overlaps a box")
      ->add_option("--box", o.box, "x0,y0,x1,y1")->required();
  CLI::App* roads = add_query("roads", "short roads built after a date");
  roads->add_option("--max-len", o.max_len, "meters")->required();
  roads->add_option("--after", o.after, "YYYY-MM-DD")->required();
  CLI::App* near_road = add_query("near-road", "towns close to a named road");
  near_road->add_option("--dist", o.dist, "meters")->required();
  near_road->add_option("--road", o.road, "road name")->required();
  add_query("near-any", "(town, road) pairs closer than a distance")
      ->add_option("--dist", o.dist, "meters")->required();

  CLI::App* topology = app.add_subcommand("topology", "shared-boundary storage of regions");
  topology->require_subcommand(1);
  CLI::App* build = topology->add_subcommand("build", "build a store from the document's regions");
  data(build);
  build->add_option("--out", o.out, "write the store here and print a summary");
  CLI::App* window = topology->add_subcommand("window", "areas overlapping a window");
  data(window, false);
  window->add_option("--store", o.store, "store JSON written by topology build");
  window->add_option("--box", o.box, "x0,y0,x1,y1")->required();
  window->add_option("--selection", o.selection, "edge filter: abox or bbox");

  CLI::App* ccm = app.add_subcommand("ccm", "least-cost paths over cost regions");
  ccm->require_subcommand(1);
  std::vector<CLI::App*> solvers;
  for (const char* name : {"raster", "vector", "converge"}) {
    CLI::App* c = ccm->add_subcommand(name, std::string(name) == "converge"
                                                ? "convergence table over resolutions and Steiner counts"
                                                : std::string(name) + " solver");
    data(c);
    config(c);
    c->add_option("--from", o.from, "x,y")->required();
    c->add_option("--to", o.to, "x,y")->required();
    c->add_option("--cell-size", o.cell_size, "raster cell size in meters");
    solvers.push_back(c);
  }
  solvers[0]->add_option("--connectivity", o.connectivity, "4, 8 or 16");
  solvers[1]->add_option("--steiner", o.steiner, "Steiner points per edge");
  for (CLI::App* c : {solvers[0], solvers[1]})
    c->add_option("--path-csv", o.path_csv, "write path vertices as x,y CSV");
  solvers[2]->add_option("--cell-sizes", o.cell_sizes, "comma-separated; default halves --cell-size 4 times");
  solvers[2]->add_option("--connectivities", o.connectivities, "comma-separated");
  solvers[2]->add_option("--steiner-values", o.steiner_values, "comma-separated");
  solvers[2]->add_flag("--timing", o.timing, "fill runtime_ms (otherwise '-')");

  CLI::App* strat = app.add_subcommand("stratify", "strata and sample plan (JSON)");
  CLI::App* report = app.add_subcommand("report", "cultivable-area statistics (CSV)");
  for (CLI::App* c : {strat, report}) {
    data(c);
    config(c);
    c->add_option("--seed", o.seed, "sampling seed");
    c->add_option("--samples", o.samples, "total sample points");
  }
  strat->add_option("--points-csv", o.points_csv, "write point_id,stratum,x,y");
  report->add_option("--outcomes", o.outcomes, "CSV of point_id,crop (0/1)");
  report->add_flag("--simulate-outcomes", o.simulate_outcomes, "take outcomes from the field polygons");
  report->add_option("--series", o.series, "CSV of year,area for earlier years");
  report->add_option("--year", o.year, "year of this survey");

  CLI::App* render = app.add_subcommand("render", "draw the document as SVG");
  data(render);
  config(render);
  render->add_option("--out", o.out, "SVG file")->required();
  render->add_option("--path", o.path, "path CSV written by ccm --path-csv");
  render->add_flag("--strata", o.strata, "shade stratification blocks");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    for (CLI::App* q : queries)
      if (q->parsed()) return run_query(q->get_name(), o, out);
    if (build->parsed()) return run_topology("build", o, out, err);
    if (window->parsed()) return run_topology("window", o, out, err);
    for (CLI::App* c : solvers)
      if (c->parsed()) return run_ccm(*c, c->get_name(), o, out, err);
    if (strat->parsed()) return run_stratify(*strat, o, out);
    if (report->parsed()) return run_report(*report, o, out);
    if (render->parsed()) return run_render(*render, o);
  } catch (const NotFoundError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotFound;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  err << "error: no command given\n";
  return kExitValidation;
}

} // namespace landcore
