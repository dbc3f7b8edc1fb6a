// gauge_workbench: evaluate, scan and verify the 1S-2S two-photon matrix elements.
//
// Exit codes: 0 pass, 1 verification failure, 2 domain/input error,
// 3 I/O error, 4 oracle convergence failure.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "twophoton/identities.hpp"

namespace {

using namespace twophoton;

enum Exit : int { kPass = 0, kFail = 1, kDomain = 2, kIo = 3, kConvergence = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sci12(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 11);
  if (ec != std::errc{}) return "nan";
  return {buf, end};
}

// Temp file next to the target, then rename, so readers never see a partial file.
void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move report into place at " + path);
  }
}

const std::map<std::string, ClosedFormReading> kReadings{{"derived", ClosedFormReading::derived},
                                                        {"printed", ClosedFormReading::printed},
                                                        {"printed_factor", ClosedFormReading::printed_factor}};

const std::vector<std::string> kQuantities{"q", "p", "f1", "f2", "delta", "beta", "two_color_q"};

// Optional scan columns in their fixed output order.
const std::vector<std::string> kOptionalColumns{"q", "p", "beta"};

struct Options {
  double x = 0.0;
  std::string quantity = "q";
  double x_min = 0.01;
  double x_max = 0.37;
  std::size_t steps = 200;
  std::string out;
  std::vector<std::string> columns;
  std::string profile = "strict";
  std::string constants_file;
  std::size_t grid_points = RadialGrid{}.n_points;
  double r_max = RadialGrid{}.r_max;
  std::string reading = "derived";
};

PhysicalConstants constants_for(const Options& o) {
  try {
    return resolve_constants(o.constants_file.empty() ? std::nullopt : std::optional<std::string>(o.constants_file));
  } catch (const DomainError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

int cmd_compute(const Options& o) {
  const ClosedFormOptions opts{kReadings.at(o.reading), true};
  const FrequencyX x{o.x};
  double value = 0.0;
  std::string unit = "dimensionless";
  if (o.quantity == "beta") {
    value = beta(x, constants_for(o), opts);
    unit = "Hz*m^2/W";
  } else if (o.quantity == "two_color_q") {
    value = two_color_q(x, opts);
  } else {
    const GaugeAmplitudes g = gauge_pair(x, opts);
    const std::map<std::string, double> pick{{"q", g.q}, {"p", g.p}, {"f1", g.f1}, {"f2", g.f2}, {"delta", g.delta}};
    value = pick.at(o.quantity);
  }
  std::cout << sci12(value) << ' ' << unit << '\n';
  return kPass;
}

int cmd_scan(const Options& o) {
  if (!(o.x_min > 0.0 && o.x_min < o.x_max && o.x_max < kTransitionX)) {
    throw DomainError("scan: need 0 < x-min < x-max < 3/8");
  }
  if (o.steps < 2) throw DomainError("scan: --steps must be >= 2");
  std::vector<std::string> extra;
  for (const auto& col : kOptionalColumns) {
    if (std::find(o.columns.begin(), o.columns.end(), col) != o.columns.end()) extra.push_back(col);
  }
  const ClosedFormOptions opts{kReadings.at(o.reading), true};
  const bool want_beta = std::find(extra.begin(), extra.end(), "beta") != extra.end();
  const PhysicalConstants k = want_beta ? constants_for(o) : codata2018();

  // Every row is evaluated before anything is written.
  std::ostringstream csv;
  csv << "x,f1,f2,delta";
  for (const auto& col : extra) csv << ',' << col;
  csv << '\n';
  for (double xv : linspace(o.x_min, o.x_max, o.steps)) {
    const GaugeAmplitudes g = gauge_pair(FrequencyX{xv}, opts);
    csv << sci12(xv) << ',' << sci12(g.f1) << ',' << sci12(g.f2) << ',' << sci12(g.delta);
    for (const auto& col : extra) {
      const double v = col == "q" ? g.q : col == "p" ? g.p : beta(FrequencyX{xv}, k, opts);
      csv << ',' << sci12(v);
    }
    csv << '\n';
  }
  if (o.out.empty() || o.out == "-") {
    std::cout << csv.str();
  } else {
    write_atomically(o.out, csv.str());
  }
  return kPass;
}

nlohmann::ordered_json report_json(const VerificationReport& rep, const Options& o) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema_version"] = "1.0";
  j["constants_provenance"] = rep.constants_provenance;
  j["generated_inputs"] = {{"profile", o.profile},
                           {"reading", o.reading},
                           {"steps", o.steps},
                           {"grid_points", o.grid_points},
                           {"r_max", o.r_max},
                           {"constants_file", o.constants_file}};
  j["checks"] = ordered_json::array();
  for (const auto& c : rep.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"source", to_string(c.source)},
                           {"tolerance", c.tolerance},
                           {"max_residual", c.max_residual()},
                           {"passed", c.passed},
                           {"x_values", c.x_values},
                           {"residuals", c.residuals}});
  }
  j["constants"] = ordered_json::array();
  for (const auto& c : rep.constants) {
    j["constants"].push_back({{"name", c.name},
                              {"computed", c.computed},
                              {"reference", c.reference},
                              {"relative_error", c.relative_error},
                              {"tolerance", c.tolerance},
                              {"tolerance_kind", c.relative ? "relative" : "absolute"},
                              {"passed", c.passed},
                              {"provenance", c.provenance}});
  }
  ordered_json scores = ordered_json::array();
  for (const auto& s : rep.reading_scores) {
    scores.push_back({{"reading", to_string(s.reading)}, {"max_relative_deviation_vs_oracle", s.max_relative_deviation}});
  }
  j["reading_selection"] = {{"used", to_string(rep.reading)},
                            {"oracle_preferred", to_string(best_reading(rep.reading_scores))},
                            {"scores", scores}};
  j["overall_pass"] = rep.overall_pass;
  return j;
}

int cmd_verify(const Options& o) {
  VerifyConfig cfg;
  if (o.profile == "strict") {
    cfg.profile = VerifyProfile::strict;
  } else {
    cfg.profile = VerifyProfile::oracle;
  }
  cfg.reading = kReadings.at(o.reading);
  cfg.grid = RadialGrid{o.grid_points, o.r_max, RadialGrid{}.r_min};
  cfg.n_steps = o.steps;
  cfg.constants = constants_for(o);
  const VerificationReport rep = run_verification(cfg);

  std::cout << "profile " << o.profile << ", reading " << o.reading << ", constants " << rep.constants_provenance
            << '\n';
  for (const auto& c : rep.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << to_string(c.source)
              << "] max_residual=" << sci12(c.max_residual()) << " tol=" << sci12(c.tolerance) << '\n';
  }
  for (const auto& c : rep.constants) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " computed=" << sci12(c.computed)
              << " reference=" << sci12(c.reference) << " rel_err=" << sci12(c.relative_error) << '\n';
  }
  std::cout << "overall " << (rep.overall_pass ? "PASS" : "FAIL") << '\n';
  if (!o.out.empty()) write_atomically(o.out, report_json(rep, o).dump(2) + "\n");
  return rep.overall_pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1S-2S two-photon matrix elements in length and velocity gauge"};
  app.require_subcommand(1);
  Options o;

  auto add_reading = [&](CLI::App* sub) {
    sub->add_option("--reading", o.reading, "closed-form reading")
        ->check(CLI::IsMember({"derived", "printed", "printed_factor"}));
  };
  auto add_constants = [&](CLI::App* sub) {
    sub->add_option("--constants-file", o.constants_file, "constants file (name = value lines)");
  };

  auto* compute = app.add_subcommand("compute", "print one quantity at photon energy x (hartree)");
  compute->add_option("--x", o.x, "photon energy in units of alpha^2 m c^2")->required();
  compute->add_option("--quantity", o.quantity, "q, p, f1, f2, delta, beta or two_color_q")
      ->check(CLI::IsMember(kQuantities));
  add_reading(compute);
  add_constants(compute);

  auto* scan = app.add_subcommand("scan", "CSV of f1, f2, delta over a frequency window");
  scan->add_option("--x-min", o.x_min);
  scan->add_option("--x-max", o.x_max);
  scan->add_option("--steps", o.steps);
  scan->add_option("--out", o.out, "output CSV path (stdout when omitted)");
  scan->add_option("--columns", o.columns, "extra columns: q, p, beta")
      ->delimiter(',')
      ->check(CLI::IsMember(kOptionalColumns));
  add_reading(scan);
  add_constants(scan);

  auto* verify = app.add_subcommand("verify", "run the identity checks and the constants table");
  verify->add_option("--profile", o.profile)->check(CLI::IsMember({"strict", "oracle"}));
  verify->add_option("--out", o.out, "JSON report path");
  verify->add_option("--steps", o.steps, "points in the master-identity grid")->default_val(20);
  verify->add_option("--grid-points", o.grid_points);
  verify->add_option("--r-max", o.r_max);
  add_reading(verify);
  add_constants(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kDomain;
  }

  try {
    if (compute->parsed()) return cmd_compute(o);
    if (scan->parsed()) return cmd_scan(o);
    return cmd_verify(o);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConvergence;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConvergence;
  }
}
