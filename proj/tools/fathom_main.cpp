// fathom command-line front end: triple checking, classification-table
// verification, deformation sweeps, holonomy runs and catalog listing.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fathom/report.hpp"

namespace {

using namespace fathom;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;   // not-fat / unexpected table failures
constexpr int kExitUncertain = 2;  // inconclusive verdicts, diverged integrations
constexpr int kExitError = 3;      // catalog misses, parse errors

/// Prints the report and honors the FATHOM_OUTPUT_DIR override, the only
/// environment-variable configuration the tool reads.
void emit(const std::string& command, const std::string& ext, const std::string& body) {
  std::cout << body;
  if (const char* dir = std::getenv("FATHOM_OUTPUT_DIR")) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / (command + "." + ext));
    out << body;
  }
}

std::string text_header(const std::string& command, const RunConfig& cfg) {
  std::ostringstream ss;
  ss << "# fathom " << command << " seed=" << cfg.seed << " tolerance=" << cfg.tolerance
     << " grid_density=" << cfg.grid_density << " refine_iters=" << cfg.refine_iters << "\n";
  return ss.str();
}

HomogeneousTriple load_triple(const Catalog& cat, const std::string& g, const std::string& h,
                              const std::string& k) {
  return make_triple(cat.algebra(g), cat.embedding(g, h), cat.embedding(g, k),
                     g + "/" + h + "/" + k);
}

int cmd_check_triple(const RunConfig& cfg, const std::string& g, const std::string& h,
                     const std::string& k) {
  const Catalog& cat = Catalog::instance(cfg.data_dir);
  const HomogeneousTriple tr = load_triple(cat, g, h, k);
  if (tr.dim_p() < 1 || tr.dim_m() < 2) {
    throw dimension_mismatch("check-triple: need dim p >= 1 and dim m >= 2");
  }
  const int density_p = adapted_density(tr.dim_p(), cfg.grid_density);
  const int density_m = adapted_density(tr.dim_m(), cfg.grid_density);
  const FatnessReport fat = fatness_margin(tr, density_p, cfg.refine_iters, cfg.tolerance);
  const FatnessReport fat_dual =
      fatness_via_astar(tr, density_m, cfg.refine_iters, cfg.tolerance);
  const ConstraintReport cons = check_dimensional_constraints(tr.dim_p(), tr.dim_m());
  const SpanReport span = bracket_closure(tr);
  const DualLeafVertical leaf = a_span(tr);

  const bool agree = fat.verdict == fat_dual.verdict;
  const bool is_fat = fat.verdict == FatVerdict::fat;
  const bool consistent =
      agree && (!is_fat || (cons.overall && span.twisted && leaf.dim == tr.dim_p()));
  int exit_code = kExitError;
  if (fat.verdict == FatVerdict::inconclusive || fat_dual.verdict == FatVerdict::inconclusive) {
    exit_code = kExitUncertain;
  } else if (is_fat && consistent) {
    exit_code = kExitOk;
  } else {
    exit_code = kExitNegative;
  }

  Json rep = report_envelope("check-triple", cfg);
  rep["triple"] = Json{{"g", g},
                       {"h", h},
                       {"k", k},
                       {"dim_g", tr.dim_g()},
                       {"dim_h", tr.dim_h()},
                       {"dim_k", tr.dim_k()},
                       {"dim_m", tr.dim_m()},
                       {"dim_p", tr.dim_p()}};
  rep["fatness"] = to_json(fat);
  rep["fatness_dual"] = to_json(fat_dual);
  rep["constraints"] = to_json(cons);
  rep["span"] = to_json(span);
  rep["a_span_dim"] = leaf.dim;
  rep["consistent"] = consistent;
  rep["exit_code"] = exit_code;

  if (cfg.output == "json") {
    emit("check-triple", "json", rep.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << text_header("check-triple", cfg);
    out << "triple " << tr.name << ": dim g=" << tr.dim_g() << " dim m=" << tr.dim_m()
        << " dim p=" << tr.dim_p() << "\n";
    out << "fatness (two-form route): " << to_string(fat.verdict) << " margin=" << fat.margin
        << "\n";
    out << "fatness (A* route):       " << to_string(fat_dual.verdict)
        << " margin=" << fat_dual.margin << "\n";
    out << "note: " << fat.note << "\n";
    out << "dimensional constraints: " << (cons.overall ? "pass" : "fail") << " [" << cons.detail
        << "]\n";
    out << "bracket closure: twisted=" << (span.twisted ? "yes" : "no") << " depth dims=";
    for (size_t i = 0; i < span.depth_dims.size(); ++i) {
      out << (i ? "," : "") << span.depth_dims[i];
    }
    out << "\n";
    out << "A-span dimension: " << leaf.dim << " (dim p = " << tr.dim_p() << ")\n";
    out << "consistent: " << (consistent ? "yes" : "no") << "\n";
    emit("check-triple", "txt", out.str());
  }
  return exit_code;
}

int cmd_tables(const RunConfig& cfg, const std::string& which, const std::string& flags_path) {
  const Catalog& cat = Catalog::instance(cfg.data_dir);
  const auto tables = load_tables(cfg.data_dir + "/tables.txt");
  const auto expected = load_expected_flags(
      flags_path.empty() ? cfg.data_dir + "/expected_flags.txt" : flags_path);
  std::vector<std::string> ids;
  if (which == "all") {
    ids = {"ziller-A", "symmetric-fiber-B", "berard-bergery-C", "table-A", "table-B"};
  } else if (which == "ziller") {
    ids = {"ziller-A"};
  } else if (which == "symmetric-fiber") {
    ids = {"symmetric-fiber-B"};
  } else if (which == "berard-bergery") {
    ids = {"berard-bergery-C"};
  } else if (which == "table-a") {
    ids = {"table-A"};
  } else if (which == "table-b") {
    ids = {"table-B"};
  } else {
    throw catalog_miss("tables: unknown table selector " + which);
  }
  VerifyParams params;
  params.grid_density = cfg.grid_density;
  params.refine_iters = cfg.refine_iters;
  params.tolerance = cfg.tolerance;
  const TableRunResult run = run_tables(cat, tables, expected, ids, params);
  const int exit_code = run.clean ? kExitOk : kExitNegative;

  if (cfg.output == "json") {
    Json rep = report_envelope("tables", cfg);
    rep["which"] = ids;
    Json rows = Json::array();
    for (const auto& [row, verdict] : run.rows) {
      Json r = Json{{"table", row.table_id}, {"id", row.id}};
      r["checks"] = to_json(verdict);
      rows.push_back(r);
    }
    rep["rows"] = rows;
    auto flags_json = [](const std::vector<FlagKey>& v) {
      Json arr = Json::array();
      for (const auto& [t, r, c] : v) arr.push_back(Json{{"table", t}, {"row", r}, {"check", c}});
      return arr;
    };
    rep["observed_flags"] = flags_json(run.observed_flags);
    rep["unexpected_flags"] = flags_json(run.unexpected_flags);
    rep["missing_expected"] = flags_json(run.missing_expected);
    rep["clean"] = run.clean;
    rep["exit_code"] = exit_code;
    emit("tables", "json", rep.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << text_header("tables", cfg);
    for (const auto& [row, verdict] : run.rows) {
      out << row.table_id << " " << row.id << ": dim=" << to_string(verdict.dim_ok)
          << " even_base=" << to_string(verdict.even_base_ok)
          << " multiples=" << to_string(verdict.multiples_ok)
          << " rank=" << to_string(verdict.rank_ok)
          << " symmetric=" << to_string(verdict.symmetric_pair_ok)
          << " fatness=" << to_string(verdict.fatness_ok);
      if (!verdict.flags.empty()) {
        out << " flags=";
        for (size_t i = 0; i < verdict.flags.size(); ++i) {
          out << (i ? "," : "") << verdict.flags[i];
        }
      }
      if (!verdict.notes.empty()) out << " notes:" << verdict.notes;
      out << "\n";
    }
    for (const auto& [t, r, c] : run.unexpected_flags) {
      out << "UNEXPECTED FLAG: " << t << " " << r << " " << c << "\n";
    }
    for (const auto& [t, r, c] : run.missing_expected) {
      out << "MISSING EXPECTED FLAG: " << t << " " << r << " " << c << "\n";
    }
    out << "clean: " << (run.clean ? "yes" : "no") << "\n";
    emit("tables", "txt", out.str());
  }
  return exit_code;
}

int cmd_deform(const RunConfig& cfg, const std::string& g, const std::string& h,
               const std::string& k, const std::vector<double>& ts, int samples) {
  if (ts.empty()) throw dimension_mismatch("deform: need a nonempty t list");
  const Catalog& cat = Catalog::instance(cfg.data_dir);
  const HomogeneousTriple tr = load_triple(cat, g, h, k);
  const auto rows = deform_sweep(tr, ts, samples, cfg.seed);
  const std::string csv = deform_csv(rows);
  if (cfg.output == "json") {
    Json rep = report_envelope("deform", cfg);
    rep["triple"] = Json{{"g", g}, {"h", h}, {"k", k}};
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back(Json{{"t", r.t},
                         {"min_vertizontal", r.min_vertizontal},
                         {"min_eig_Ot", r.min_eig_Ot},
                         {"qt_residual", r.qt_residual}});
    }
    rep["rows"] = arr;
    rep["exit_code"] = kExitOk;
    emit("deform", "json", rep.dump(2) + "\n");
  } else {
    emit("deform", "csv", csv);
  }
  return kExitOk;
}

int cmd_holonomy(const RunConfig& cfg, const std::string& g, const std::string& h,
                 const std::string& k, int x_index, int xi_index) {
  const Catalog& cat = Catalog::instance(cfg.data_dir);
  const HomogeneousTriple tr = load_triple(cat, g, h, k);
  if (x_index < 0 || x_index >= tr.dim_m() || xi_index < 0 || xi_index >= tr.dim_p()) {
    throw dimension_mismatch("holonomy: basis index out of range");
  }
  GeodesicSpec spec;
  spec.direction = Vec::Unit(tr.dim_m(), x_index);
  spec.horizon = cfg.horizon;
  spec.step = cfg.ode_step;
  const Vec xi0 = Vec::Unit(tr.dim_p(), xi_index);
  const FieldTrajectory xi = integrate_holonomy(tr, spec, xi0);
  const FieldTrajectory nu = integrate_dual_holonomy(tr, spec, xi0);
  double pairing_drift = 0.0, norm_drift = 0.0;
  const std::string csv = holonomy_csv(tr, xi, nu, spec.direction, pairing_drift, norm_drift);
  if (cfg.output == "json") {
    Json rep = report_envelope("holonomy", cfg);
    rep["triple"] = Json{{"g", g}, {"h", h}, {"k", k}};
    rep["x_index"] = x_index;
    rep["xi_index"] = xi_index;
    rep["pairing_drift"] = pairing_drift;
    rep["norm_drift"] = norm_drift;
    rep["subspace_drift"] = xi.max_subspace_drift;
    rep["steps"] = static_cast<long>(xi.times.size());
    rep["exit_code"] = kExitOk;
    emit("holonomy", "json", rep.dump(2) + "\n");
  } else {
    emit("holonomy", "csv", csv);
  }
  return kExitOk;
}

int cmd_catalog(const RunConfig& cfg) {
  const Catalog& cat = Catalog::instance(cfg.data_dir);
  if (cfg.output == "json") {
    Json rep = report_envelope("catalog", cfg);
    Json algebras = Json::array();
    for (const auto& rec : cat.all_records()) {
      algebras.push_back(Json{{"name", rec.name},
                              {"dim", rec.dim},
                              {"rank", rec.rank},
                              {"realizable", rec.realizable}});
    }
    rep["algebras"] = algebras;
    Json triples = Json::array();
    for (const auto& t : cat.triples(999)) {
      triples.push_back(Json{{"g", t.g}, {"h", t.h}, {"k", t.k}});
    }
    rep["triples"] = triples;
    rep["exit_code"] = kExitOk;
    emit("catalog", "json", rep.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << text_header("catalog", cfg);
    for (const auto& rec : cat.all_records()) {
      out << rec.name << " dim=" << rec.dim << " rank=" << rec.rank
          << (rec.realizable ? "" : " (arithmetic-only)") << "\n";
    }
    for (const auto& t : cat.triples(999)) {
      out << "triple " << t.g << " / " << t.h << " / " << t.k << "\n";
    }
    emit("catalog", "txt", out.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fathom: fatness, curvature and holonomy computations on homogeneous models"};
  app.set_help_flag("--help", "print usage");  // --h is a triple option below
  app.set_config("--config");

  RunConfig cfg;
  app.add_option("--tolerance", cfg.tolerance, "verdict tolerance");
  app.add_option("--grid-density", cfg.grid_density, "sphere grid density");
  app.add_option("--refine-iters", cfg.refine_iters, "local refinement iterations");
  app.add_option("--ode-step", cfg.ode_step, "RK4 step size");
  app.add_option("--horizon", cfg.horizon, "integration horizon");
  app.add_option("--output", cfg.output, "output format: text, json or csv");
  app.add_option("--seed", cfg.seed, "seed for randomized sampling");
  app.add_option("--data-dir", cfg.data_dir, "fixture directory");

  std::string g, h, k = "e";
  std::string which = "all", flags_path;
  std::string t_list = "0,1,10";
  int samples = 200, x_index = 0, xi_index = 0;

  CLI::App* c_check = app.add_subcommand("check-triple", "fatness and span report for a triple");
  c_check->set_help_flag("--help", "print usage");
  c_check->add_option("--g", g)->required();
  c_check->add_option("--h", h)->required();
  c_check->add_option("--k", k);

  CLI::App* c_tables = app.add_subcommand("tables", "verify the classification table fixtures");
  c_tables->add_option("--which", which,
                       "ziller | symmetric-fiber | berard-bergery | table-a | table-b | all");
  c_tables->add_option("--expected-flags", flags_path, "override the expected-flags file");

  CLI::App* c_deform = app.add_subcommand("deform", "Cheeger deformation sweep (CSV)");
  c_deform->set_help_flag("--help", "print usage");
  c_deform->add_option("--g", g)->required();
  c_deform->add_option("--h", h)->required();
  c_deform->add_option("--k", k);
  c_deform->add_option("--t", t_list, "comma-separated deformation times");
  c_deform->add_option("--samples", samples, "random vertizontal samples per t");

  CLI::App* c_hol = app.add_subcommand("holonomy", "holonomy/dual-holonomy trajectory (CSV)");
  c_hol->set_help_flag("--help", "print usage");
  c_hol->add_option("--g", g)->required();
  c_hol->add_option("--h", h)->required();
  c_hol->add_option("--k", k);
  c_hol->add_option("--x-index", x_index, "horizontal basis direction");
  c_hol->add_option("--xi-index", xi_index, "vertical basis seed");

  app.add_subcommand("catalog", "list catalog records and registered triples");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    cfg.validate();
    if (c_check->parsed()) return cmd_check_triple(cfg, g, h, k);
    if (c_tables->parsed()) return cmd_tables(cfg, which, flags_path);
    if (c_deform->parsed()) {
      std::vector<double> ts;
      std::string item;
      std::istringstream ss(t_list);
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) ts.push_back(std::stod(item));
      }
      return cmd_deform(cfg, g, h, k, ts, samples);
    }
    if (c_hol->parsed()) return cmd_holonomy(cfg, g, h, k, x_index, xi_index);
    return cmd_catalog(cfg);
  } catch (const integration_diverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUncertain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
