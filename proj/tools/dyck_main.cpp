#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "dyck/errors.hpp"
#include "dyck/harness.hpp"
#include "dyck/krieger.hpp"
#include "dyck/periodic.hpp"
#include "dyck/thermo.hpp"

namespace {

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n') c = ' ';
  return s;
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dyck::invalid_input("cannot open output file '" + path + "'");
  fn(out);
  out.flush();
  if (!out) throw dyck::invalid_input("failed writing output file '" + path + "'");
}

std::vector<double> parse_grid(const std::string& text) {
  double lo, hi, step;
  char c1, c2;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || (in >> std::ws, !in.eof()))
    throw dyck::invalid_input("grid must be lo:hi:step, got '" + text + "'");
  if (!(step > 0)) throw dyck::invalid_input("grid step must be positive");
  if (hi < lo) throw dyck::invalid_input("grid upper bound below lower bound");
  if ((hi - lo) / step > 1e6) throw dyck::invalid_input("grid has more than 1e6 points");
  std::vector<double> g;
  for (int i = 0;; ++i) {
    double t = lo + i * step;
    if (t > hi + step * 1e-9) break;
    g.push_back(std::min(t, hi));
  }
  return g;
}

std::pair<int, int> parse_period_span(const std::string& text) {
  auto parse_int = [&](const std::string& part) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (...) {
      used = 0;
    }
    if (used != part.size() || v < 1)
      throw dyck::invalid_input("bad period '" + text + "'");
    return v;
  };
  std::size_t dots = text.find("..");
  if (dots == std::string::npos) {
    int n = parse_int(text);
    return {n, n};
  }
  int a = parse_int(text.substr(0, dots));
  int b = parse_int(text.substr(dots + 2));
  if (b < a) throw dyck::invalid_input("period range '" + text + "' is descending");
  return {a, b};
}

dyck::observable parse_observable(const std::string& spec) {
  if (spec == "indicator-close") return dyck::observable::indicator_close();
  if (spec.rfind("table:", 0) == 0) {
    std::string path = spec.substr(6);
    std::ifstream in(path);
    if (!in) throw dyck::invalid_input("cannot open observable table '" + path + "'");
    return dyck::observable::load_factored(in);
  }
  throw dyck::invalid_input("observable must be indicator-close or table:<path>");
}

struct common_limits {
  int workers = 1;
  std::uint64_t budget = dyck::default_work_budget;

  void attach(CLI::App* cmd) {
    cmd->add_option("--workers", workers, "parallel shards (output is identical for any value)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--budget", budget, "max (M+1)^n states before refusing")
        ->capture_default_str();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic-point census and large-deviation rate functions for the Dyck shift"};
  app.require_subcommand(1);

  // census
  auto* census_cmd = app.add_subcommand("census", "count periodic points by multiplier class");
  int census_M = 2, census_nmax = 8;
  std::string census_out;
  common_limits census_lim;
  census_cmd->add_option("--M", census_M, "number of bracket pairs")->required();
  census_cmd->add_option("--n-max", census_nmax, "count periods 1..n-max")->required();
  census_cmd->add_option("--out", census_out, "CSV path (default stdout)");
  census_lim.attach(census_cmd);
  census_cmd->callback([&] {
    std::vector<dyck::periodic_census> rows;
    for (int n = 1; n <= census_nmax; ++n)
      rows.push_back(dyck::census(census_M, n, census_lim.workers, census_lim.budget));
    with_output(census_out, [&](std::ostream& out) { dyck::write_census_csv(out, rows); });
  });

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "list admissible words, one per line");
  int enum_M = 2, enum_n = 1;
  std::string enum_class, enum_out;
  common_limits enum_lim;
  enum_cmd->add_option("--M", enum_M, "number of bracket pairs")->required();
  enum_cmd->add_option("--n", enum_n, "period")->required();
  enum_cmd->add_option("--class", enum_class, "restrict to one multiplier class")
      ->check(CLI::IsMember({"neg", "pos", "neutral"}));
  enum_cmd->add_option("--out", enum_out, "path (default stdout)");
  enum_lim.attach(enum_cmd);
  enum_cmd->callback([&] {
    dyck::enumeration_options opts;
    opts.workers = enum_lim.workers;
    opts.budget = enum_lim.budget;
    if (enum_class == "neg") opts.class_filter = dyck::multiplier_class::negative;
    if (enum_class == "pos") opts.class_filter = dyck::multiplier_class::positive;
    if (enum_class == "neutral") opts.class_filter = dyck::multiplier_class::neutral;
    with_output(enum_out, [&](std::ostream& out) {
      dyck::for_each_periodic(enum_M, enum_n, opts, [&](const dyck::word& w) {
        out << dyck::format_word(w) << '\n';
      });
    });
  });

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "monoid value of a word: 0, 1 or its normal form");
  int reduce_M = 2;
  std::string reduce_word;
  reduce_cmd->add_option("--M", reduce_M, "number of bracket pairs")->capture_default_str();
  reduce_cmd->add_option("--word", reduce_word, "word, tokens a<k>/b<k>")->required();
  reduce_cmd->callback([&] {
    std::cout << dyck::format_reduced(dyck::reduce(dyck::parse_word(reduce_word, reduce_M)))
              << '\n';
  });

  // krieger
  auto* krieger_cmd = app.add_subcommand("krieger", "collapse maps and their periodic inverses");
  int krieger_M = 2;
  std::string krieger_map, krieger_word;
  krieger_cmd->add_option("--M", krieger_M, "number of bracket pairs")->capture_default_str();
  krieger_cmd->add_option("--map", krieger_map, "phi-a|phi-b forget indices, psi-a|psi-b recover them")
      ->required()
      ->check(CLI::IsMember({"phi-a", "phi-b", "psi-a", "psi-b"}));
  krieger_cmd->add_option("--word", krieger_word, "input word in the map's domain alphabet")
      ->required();
  krieger_cmd->callback([&] {
    if (krieger_map == "phi-a") {
      std::cout << dyck::format_collapsed(
                       dyck::phi_alpha(dyck::parse_word(krieger_word, krieger_M)))
                << '\n';
    } else if (krieger_map == "phi-b") {
      std::cout << dyck::format_collapsed(
                       dyck::phi_beta(dyck::parse_word(krieger_word, krieger_M)))
                << '\n';
    } else if (krieger_map == "psi-a") {
      std::cout << dyck::format_word(dyck::psi_alpha_periodic(dyck::parse_collapsed(
                       krieger_word, krieger_M, dyck::shift_family::alpha)))
                << '\n';
    } else {
      std::cout << dyck::format_word(dyck::psi_beta_periodic(dyck::parse_collapsed(
                       krieger_word, krieger_M, dyck::shift_family::beta)))
                << '\n';
    }
  });

  // witness
  auto* witness_cmd =
      app.add_subcommand("witness", "window pair showing index recovery has unbounded memory");
  int wit_M = 2, wit_N = 1, wit_k1 = 1, wit_k2 = 2;
  std::string wit_out;
  witness_cmd->add_option("--M", wit_M, "number of bracket pairs")->required();
  witness_cmd->add_option("--N", wit_N, "agreement radius")->required();
  witness_cmd->add_option("--k1", wit_k1, "hidden index of the first window")->required();
  witness_cmd->add_option("--k2", wit_k2, "hidden index of the second window")->required();
  witness_cmd->add_option("--out", wit_out, "JSON path (default stdout)");
  witness_cmd->callback([&] {
    dyck::witness_pair wp = dyck::extension_witness(wit_M, wit_N, wit_k1, wit_k2);
    nlohmann::ordered_json j;
    j["N"] = wp.N;
    j["coords"] = {wp.lo, wp.hi};
    j["window1"] = dyck::format_collapsed(wp.window1);
    j["window2"] = dyck::format_collapsed(wp.window2);
    j["image1"] = dyck::format_word(wp.image1);
    j["image2"] = dyck::format_word(wp.image2);
    j["mismatch_at"] = wp.mismatch_at;
    with_output(wit_out, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  });

  // rate
  auto* rate_cmd = app.add_subcommand("rate", "analytic rate function on a grid");
  int rate_M = 2;
  std::string rate_obs = "indicator-close", rate_grid = "0:1:0.05";
  std::string rate_out, rate_svg, rate_pressure_out, rate_pressure_grid = "-5:5:0.25";
  std::string rate_family = "a";
  double rate_c0 = 0;
  bool rate_c0_set = false;
  rate_cmd->add_option("--M", rate_M, "number of bracket pairs")->required();
  rate_cmd->add_option("--observable", rate_obs, "indicator-close or table:<path>")
      ->capture_default_str();
  rate_cmd->add_option("--grid", rate_grid, "t grid lo:hi:step")->capture_default_str();
  rate_cmd->add_option("--c0", rate_c0, "weight shift (default max(1, 1 - min f))")
      ->each([&](const std::string&) { rate_c0_set = true; });
  rate_cmd->add_option("--out", rate_out, "CSV path (default stdout)");
  rate_cmd->add_option("--svg", rate_svg, "also draw the curve to this SVG file");
  rate_cmd->add_option("--pressure-out", rate_pressure_out, "also sample pressure to this CSV");
  rate_cmd->add_option("--pressure-grid", rate_pressure_grid, "s grid for --pressure-out")
      ->capture_default_str();
  rate_cmd->add_option("--family", rate_family, "branch for --pressure-out")
      ->check(CLI::IsMember({"a", "b"}))
      ->capture_default_str();
  rate_cmd->callback([&] {
    dyck::observable f = parse_observable(rate_obs);
    double c0 = rate_c0_set ? rate_c0 : dyck::default_weight_shift(f);
    dyck::rate_curve rc = dyck::compute_rate_curve(rate_M, f, c0, parse_grid(rate_grid));
    with_output(rate_out, [&](std::ostream& out) { dyck::write_rate_csv(out, rc); });
    if (!rate_svg.empty())
      with_output(rate_svg, [&](std::ostream& out) { dyck::write_rate_svg(out, rc, {}); });
    if (!rate_pressure_out.empty()) {
      dyck::shift_family fam =
          rate_family == "a" ? dyck::shift_family::alpha : dyck::shift_family::beta;
      std::vector<dyck::pressure_sample> rows;
      for (double s : parse_grid(rate_pressure_grid))
        rows.push_back({s, dyck::pressure(fam, rate_M, f, c0, s)});
      with_output(rate_pressure_out,
                  [&](std::ostream& out) { dyck::write_pressure_csv(out, rows); });
    }
  });

  // empirical
  auto* emp_cmd = app.add_subcommand("empirical", "finite-period statistics against the analytic rate");
  int emp_M = 2, emp_level = 1;
  std::string emp_span, emp_obs = "indicator-close", emp_scope = "all", emp_out, emp_svg;
  double emp_width = 0.05, emp_c0 = 0;
  bool emp_c0_set = false;
  common_limits emp_lim;
  emp_cmd->add_option("--M", emp_M, "number of bracket pairs")->required();
  emp_cmd->add_option("--n", emp_span, "period or period range a..b")->required();
  emp_cmd->add_option("--observable", emp_obs, "indicator-close or table:<path>")
      ->capture_default_str();
  emp_cmd->add_option("--bin-width", emp_width, "histogram bin width")->capture_default_str();
  emp_cmd->add_option("--scope", emp_scope, "classes to average over")
      ->check(CLI::IsMember({"all", "a0", "b"}))
      ->capture_default_str();
  emp_cmd->add_option("--level", emp_level, "1 = average histogram, 2 = letter concentration")
      ->check(CLI::Range(1, 2))
      ->capture_default_str();
  emp_cmd->add_option("--c0", emp_c0, "weight shift (default max(1, 1 - min f))")
      ->each([&](const std::string&) { emp_c0_set = true; });
  emp_cmd->add_option("--out", emp_out, "CSV path (default stdout)");
  emp_cmd->add_option("--svg", emp_svg, "draw rate curve plus empirical points");
  emp_lim.attach(emp_cmd);
  emp_cmd->callback([&] {
    dyck::experiment_config cfg;
    cfg.M = emp_M;
    auto [n_lo, n_hi] = parse_period_span(emp_span);
    for (int n = n_lo; n <= n_hi; ++n) cfg.periods.push_back(n);
    cfg.f = parse_observable(emp_obs);
    cfg.c0 = emp_c0_set ? emp_c0 : dyck::default_weight_shift(cfg.f);
    cfg.bin_width = emp_width;
    cfg.scope = emp_scope == "all"  ? dyck::ensemble_scope::all
                : emp_scope == "a0" ? dyck::ensemble_scope::alpha_and_neutral
                                    : dyck::ensemble_scope::beta;
    cfg.workers = emp_lim.workers;
    cfg.budget = emp_lim.budget;

    if (emp_level == 2) {
      auto rows = dyck::run_level2_concentration(cfg);
      with_output(emp_out, [&](std::ostream& out) { dyck::write_level2_csv(out, rows); });
      return;
    }
    auto rows = dyck::run_level1(cfg);
    with_output(emp_out, [&](std::ostream& out) { dyck::write_level1_csv(out, rows); });
    if (!emp_svg.empty()) {
      dyck::observable_range rng = dyck::cycle_mean_range(cfg.f);
      std::vector<double> grid;
      for (int i = 0; i <= 200; ++i)
        grid.push_back(rng.lo + (rng.hi - rng.lo) * i / 200.0);
      dyck::rate_curve rc = dyck::compute_rate_curve(cfg.M, cfg.f, cfg.c0, grid);
      with_output(emp_svg, [&](std::ostream& out) { dyck::write_rate_svg(out, rc, rows); });
    }
  });

  // neutral-decay
  auto* neutral_cmd = app.add_subcommand("neutral-decay", "thinning rate of the neutral class");
  int neutral_M = 2, neutral_nmax = 12;
  std::string neutral_out;
  common_limits neutral_lim;
  neutral_cmd->add_option("--M", neutral_M, "number of bracket pairs")->required();
  neutral_cmd->add_option("--n-max", neutral_nmax, "largest period")->required();
  neutral_cmd->add_option("--out", neutral_out, "CSV path (default stdout)");
  neutral_lim.attach(neutral_cmd);
  neutral_cmd->callback([&] {
    auto rows =
        dyck::run_neutral_decay(neutral_M, neutral_nmax, neutral_lim.workers, neutral_lim.budget);
    with_output(neutral_out, [&](std::ostream& out) { dyck::write_neutral_csv(out, rows); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: invalid-input: " << one_line(e.what()) << '\n';
    return 1;
  } catch (const dyck::invalid_input& e) {
    std::cerr << "error: invalid-input: " << one_line(e.what()) << '\n';
    return 1;
  } catch (const dyck::budget_error& e) {
    std::cerr << "error: budget: " << one_line(e.what()) << '\n';
    return 3;
  } catch (const dyck::numeric_error& e) {
    std::cerr << "error: numeric: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << one_line(e.what()) << '\n';
    return 2;
  }
  return 0;
}
