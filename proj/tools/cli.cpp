#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entlab/criteria.hpp"
#include "entlab/csv.hpp"
#include "entlab/errors.hpp"
#include "entlab/evolution.hpp"
#include "entlab/plot.hpp"
#include "entlab/sweep.hpp"
#include "json.hpp"

namespace entlab::cli {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct ModelFlags {
  std::string variant{to_string(kDefaultVariant)};
  std::string embedding{to_string(kDefaultEmbedding)};

  void add_to(CLI::App* app) {
    app->add_option("--variant", variant, "Qutrit operator pair: spin1 | gellmann12")
        ->capture_default_str();
    app->add_option("--embedding", embedding,
                    "Lift of the B-C coupling to 18 dims: right-identity | tensor-local")
        ->capture_default_str();
  }
  Evolver evolver() const { return Evolver(parse_variant(variant), parse_embedding(embedding)); }
};

json model_json(const Evolver& ev) {
  return {{"variant", std::string(to_string(ev.variant()))},
          {"embedding", std::string(to_string(ev.embedding()))}};
}

json record_json(const SweepRecord& r) {
  return {{"family", std::string(to_string(r.family))},
          {"alpha", r.alpha},
          {"c0", r.c0},
          {"dt", r.dt},
          {"negativity", r.negativity},
          {"realignment", r.realignment},
          {"red_min_a", r.red_min_a},
          {"red_min_b", r.red_min_b},
          {"label", label_text(r)}};
}

// Applies `key = value` items from a flat TOML/INI document to options that
// were not given on the command line.
void apply_config_file(CLI::App* app, const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw ConfigError("config file '" + path + "' not found");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::Error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty()) {
      throw ConfigError("config file '" + path + "': sections are not supported ('" +
                        item.fullname() + "')");
    }
    CLI::Option* opt = app->get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config") {
      throw ConfigError("config file '" + path + "': unknown key '" + item.name + "'");
    }
    if (opt->count() > 0) continue;
    try {
      opt->add_result(item.inputs);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("config file '" + path + "': key '" + item.name + "': " + e.what());
    }
  }
}

// --- classify -------------------------------------------------------------

struct ClassifyCmd {
  std::string family;
  double alpha = 0.0;
  double c0 = 0.0;
  double dt = 0.0;
  bool allow_out_of_domain = false;
  bool as_json = false;
  ModelFlags model;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("classify", "Evaluate N, R and the reduction criterion at one point");
    sub->add_option("--family", family, "Horodecki family: 1 | 2")->required();
    sub->add_option("--alpha", alpha, "Family parameter alpha")->required();
    sub->add_option("--c0", c0, "Auxiliary-qubit amplitude c0 in [0, 1]")->capture_default_str();
    sub->add_option("--dt", dt, "Coupling-time product Dt")->capture_default_str();
    sub->add_flag("--allow-out-of-domain", allow_out_of_domain,
                  "Accept alpha outside the family's proven domain");
    sub->add_flag("--json", as_json, "Print a JSON object instead of text");
    model.add_to(sub);
  }

  int run(std::ostream& out) const {
    const Evolver ev = model.evolver();
    const SweepRecord rec =
        evaluate_point(parse_family(family), alpha, c0, dt, ev,
                       allow_out_of_domain ? DomainPolicy::kAllowOutOfDomain : DomainPolicy::kStrict);
    if (as_json) {
      json j = record_json(rec);
      j["distillable"] = rec.red_min() < -tol::kReduction;
      j["out_of_domain"] = rec.out_of_domain;
      j["model"] = model_json(ev);
      out << j.dump(2) << '\n';
      return kOk;
    }
    out << "family:       " << to_string(rec.family) << '\n'
        << "alpha:        " << fmt(rec.alpha) << (rec.out_of_domain ? "  (out of domain)" : "") << '\n'
        << "c0:           " << fmt(rec.c0) << '\n'
        << "dt:           " << fmt(rec.dt) << '\n'
        << "model:        " << to_string(ev.variant()) << " / " << to_string(ev.embedding()) << '\n'
        << "negativity:   " << fmt(rec.negativity) << '\n'
        << "realignment:  " << fmt(rec.realignment) << '\n'
        << "red_min_a:    " << fmt(rec.red_min_a) << '\n'
        << "red_min_b:    " << fmt(rec.red_min_b) << '\n'
        << "distillable:  " << (rec.red_min() < -tol::kReduction ? "yes" : "no") << '\n'
        << "label:        " << label_text(rec) << '\n';
    return kOk;
  }
};

// --- sweep ----------------------------------------------------------------

struct SweepCmd {
  std::string family = "2";
  std::string alpha = "0.01:0.99:99";
  std::vector<double> c0{0.7};
  std::string dt = "0:5:1001";
  bool allow_out_of_domain = false;
  std::string out_path;
  std::size_t workers = 0;
  std::string plot_dir;
  std::string plot_kind = "curves";
  std::string config_path;
  ModelFlags model;
  CLI::App* sub = nullptr;

  void add(CLI::App& app) {
    sub = app.add_subcommand("sweep", "Evaluate a (c0, alpha, Dt) grid and write CSV");
    sub->add_option("--family", family, "Horodecki family: 1 | 2")->capture_default_str();
    sub->add_option("--alpha", alpha, "alpha range min:max:steps")->capture_default_str();
    sub->add_option("--c0", c0, "c0 values (comma separated)")->delimiter(',')->capture_default_str();
    sub->add_option("--dt", dt, "Dt range min:max:steps")->capture_default_str();
    sub->add_flag("--allow-out-of-domain", allow_out_of_domain,
                  "Accept alpha outside the family's proven domain");
    sub->add_option("--out", out_path, "Output CSV path ('-' for stdout)");
    sub->add_option("--workers", workers, "Worker threads (default: ENTLAB_WORKERS or all cores)");
    sub->add_option("--plot-dir", plot_dir, "Also write plot data and a gnuplot script here");
    sub->add_option("--plot-kind", plot_kind, "curves | surface")->capture_default_str();
    sub->add_option("--config", config_path, "Flat key = value file with any of these flags");
    model.add_to(sub);
  }

  int run(std::ostream& out, std::ostream& err) {
    if (!config_path.empty()) apply_config_file(sub, config_path);
    if (out_path.empty()) throw ConfigError("sweep: --out is required");

    SweepConfig cfg;
    cfg.family = parse_family(family);
    cfg.alpha = GridRange::parse(alpha);
    cfg.c0_values = c0;
    cfg.dt = GridRange::parse(dt);
    cfg.variant = parse_variant(model.variant);
    cfg.embedding = parse_embedding(model.embedding);
    cfg.domain = allow_out_of_domain ? DomainPolicy::kAllowOutOfDomain : DomainPolicy::kStrict;
    cfg.output_path = out_path;
    cfg.workers = workers;
    const PlotKind kind = parse_plot_kind(plot_kind);

    const auto records = run_sweep(cfg);
    if (out_path == "-") {
      write_csv(out, records);
    } else {
      write_csv_file(out_path, records);
      json meta = {{"family", std::string(to_string(cfg.family))},
                   {"alpha", {cfg.alpha.min, cfg.alpha.max, cfg.alpha.steps}},
                   {"c0", cfg.c0_values},
                   {"dt", {cfg.dt.min, cfg.dt.max, cfg.dt.steps}},
                   {"variant", std::string(to_string(cfg.variant))},
                   {"embedding", std::string(to_string(cfg.embedding))},
                   {"records", records.size()}};
      std::ofstream meta_out(out_path + ".meta.json", std::ios::binary | std::ios::trunc);
      if (!meta_out) throw IoError("cannot write '" + out_path + ".meta.json'");
      meta_out << meta.dump(2) << '\n';
      err << "wrote " << records.size() << " records to " << out_path << " ("
          << to_string(cfg.variant) << " / " << to_string(cfg.embedding) << ")\n";
    }
    if (!plot_dir.empty()) {
      const std::string stem =
          out_path == "-" ? "sweep" : std::filesystem::path(out_path).stem().string();
      const PlotFiles files = emit_plot_data(records, kind, plot_dir, stem);
      err << "wrote " << files.data_files.size() << " plot data files and " << files.script.string()
          << '\n';
    }
    return kOk;
  }
};

// --- region ---------------------------------------------------------------

struct RegionCmd {
  std::string in_path;
  bool as_json = false;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("region", "Extract the distillable region from a sweep CSV");
    sub->add_option("--in", in_path, "Sweep CSV")->required();
    sub->add_flag("--json", as_json, "Print JSON instead of text");
  }

  int run(std::ostream& out) const {
    const auto records = read_csv_file(in_path);
    json groups = json::array();
    for (const auto& group : group_by_c0(records)) {
      const RegionReport rep = find_negative_region(group);
      const auto failures = zero_crossings(group, Quantity::kRealignment);
      json j = {{"family", std::string(to_string(group.front().family))},
                {"c0", group.front().c0},
                {"points", group.size()},
                {"empty", rep.empty()},
                {"negative_points", rep.negative_points}};
      if (!rep.empty()) {
        j["dt_lo"] = rep.dt_lo;
        j["dt_hi"] = rep.dt_hi;
        j["alpha_lo"] = rep.alpha_lo;
        j["alpha_hi"] = rep.alpha_hi;
      }
      j["witness_points"] = json::array();
      for (const auto& w : rep.witness_points) j["witness_points"].push_back(record_json(w));
      j["realignment_crossings"] = json::array();
      for (const auto& c : failures) {
        j["realignment_crossings"].push_back(
            {{"dt", c.dt}, {"alpha", c.alpha}, {"direction", c.upward ? "up" : "down"}});
      }
      if (!as_json) {
        out << "family " << to_string(group.front().family) << ", c0 = " << fmt(group.front().c0)
            << " (" << group.size() << " points)\n";
        if (rep.empty()) {
          out << "  region: empty (reduction criterion never violated)\n";
        } else {
          out << "  dt_lo:    " << fmt(rep.dt_lo) << '\n'
              << "  dt_hi:    " << fmt(rep.dt_hi) << '\n'
              << "  alpha_lo: " << fmt(rep.alpha_lo) << '\n'
              << "  alpha_hi: " << fmt(rep.alpha_hi) << '\n'
              << "  negative points: " << rep.negative_points << '\n'
              << "  witnesses (alpha, dt, min eig):\n";
          for (const auto& w : rep.witness_points) {
            out << "    " << fmt(w.alpha) << "  " << fmt(w.dt) << "  " << fmt(w.red_min()) << '\n';
          }
        }
        std::size_t down = 0;
        for (const auto& c : failures) down += c.upward ? 0 : 1;
        out << "  realignment sign changes: " << failures.size() << " (" << down
            << " to negative)\n";
      }
      groups.push_back(std::move(j));
    }
    if (as_json) out << groups.dump(2) << '\n';
    return kOk;
  }
};

// --- verify-eq16 ----------------------------------------------------------

struct VerifyCmd {
  std::size_t grid = 10;
  double tolerance = 1e-8;
  bool as_json = false;
  ModelFlags model;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "verify-eq16", "Compare the evolved state-1 reduced matrix with its closed form on a grid");
    sub->add_option("--grid", grid, "Points per axis (alpha, c0, Dt)")->capture_default_str();
    sub->add_option("--tol", tolerance, "Match tolerance")->capture_default_str();
    sub->add_flag("--json", as_json, "Print JSON instead of text");
    model.add_to(sub);
  }

  int run(std::ostream& out) const {
    const Evolver ev = model.evolver();
    const ClosedFormGridReport rep = verify_closed_form(ev, grid);
    json entries = json::array();
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = 0; j < 9; ++j) {
        const double r = rep.max_residual[i * 9 + j];
        const bool ok = r <= tolerance;
        mismatches += ok ? 0 : 1;
        entries.push_back({{"entry", entry_label(i, j)}, {"max_residual", r}, {"match", ok}});
      }
    }
    const bool first_row_ok = rep.first_row_max_residual <= tolerance;
    if (as_json) {
      json j = {{"model", model_json(ev)},
                {"grid_points", rep.points},
                {"tolerance", tolerance},
                {"first_row_max_residual", rep.first_row_max_residual},
                {"first_row_match", first_row_ok},
                {"mismatched_entries", mismatches},
                {"entries", entries}};
      out << j.dump(2) << '\n';
      return kOk;
    }
    out << "model: " << to_string(ev.variant()) << " / " << to_string(ev.embedding()) << ", "
        << rep.points << " grid points, tolerance " << fmt(tolerance) << "\n\n";
    out << "max |numeric - closed form| per entry (* = disagrees with closed form):\n";
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = 0; j < 9; ++j) {
        char cell[32];
        const double r = rep.max_residual[i * 9 + j];
        std::snprintf(cell, sizeof cell, " %s %8.1e%c", entry_label(i, j).c_str(), r,
                      r <= tolerance ? ' ' : '*');
        out << cell;
      }
      out << '\n';
    }
    out << "\nfirst row X11..X19 and Hermitian partners: max residual "
        << fmt(rep.first_row_max_residual) << (first_row_ok ? " (match)" : " (MISMATCH)") << '\n'
        << "entries flagged: " << mismatches << " of 81\n";
    return kOk;
  }
};

// --- select-variant -------------------------------------------------------

struct SelectCmd {
  bool as_json = false;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "select-variant", "Rank Hamiltonian variants by agreement with the closed-form first row");
    sub->add_flag("--json", as_json, "Print JSON instead of text");
  }

  int run(std::ostream& out) const {
    const VariantSelection sel = select_variant();
    if (as_json) {
      json cands = json::array();
      for (const auto& c : sel.candidates) {
        cands.push_back({{"variant", std::string(to_string(c.variant))},
                         {"embedding", std::string(to_string(c.embedding))},
                         {"max_deviation", c.max_deviation}});
      }
      out << json{{"candidates", cands},
                  {"winner",
                   {{"variant", std::string(to_string(sel.winner.variant))},
                    {"embedding", std::string(to_string(sel.winner.embedding))},
                    {"max_deviation", sel.winner.max_deviation}}}}
                 .dump(2)
          << '\n';
      return kOk;
    }
    out << "variant      embedding        max deviation (X11..X19)\n";
    for (const auto& c : sel.candidates) {
      char line[128];
      std::snprintf(line, sizeof line, "%-12s %-16s %.3e\n", std::string(to_string(c.variant)).c_str(),
                    std::string(to_string(c.embedding)).c_str(), c.max_deviation);
      out << line;
    }
    out << "winner: " << to_string(sel.winner.variant) << " / " << to_string(sel.winner.embedding)
        << '\n';
    return kOk;
  }
};

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"entlab: entanglement criteria for qutrit pairs coupled to a qubit", "entlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "entlab 0.1.0");

  ClassifyCmd classify;
  SweepCmd sweep;
  RegionCmd region;
  VerifyCmd verify;
  SelectCmd select;
  classify.add(app);
  sweep.add(app);
  region.add(app);
  verify.add(app);
  select.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    if (name == "classify") return classify.run(out);
    if (name == "sweep") return sweep.run(out, err);
    if (name == "region") return region.run(out);
    if (name == "verify-eq16") return verify.run(out);
    if (name == "select-variant") return select.run(out);
    err << "unknown subcommand " << name << '\n';
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace entlab::cli
