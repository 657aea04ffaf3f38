// Copyright 2026 The ecodiv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECODIV_TOOLS_CLI_HPP
#define ECODIV_TOOLS_CLI_HPP

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecodiv/community.hpp"
#include "ecodiv/error.hpp"
#include "ecodiv/granularity.hpp"
#include "ecodiv/indices.hpp"
#include "ecodiv/ingest.hpp"
#include "ecodiv/monitor.hpp"
#include "ecodiv/similarity.hpp"
#include "ecodiv/survival.hpp"

namespace ecodiv::cli {

inline constexpr const char* kToolName = "ecodiv";
inline constexpr const char* kToolVersion = "1.0.0";

/// Process exit codes.
enum Exit : int { kOk = 0, kValidation = 1, kInput = 2, kAlarm = 3 };

using json = nlohmann::ordered_json;

namespace detail {

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

inline json file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open file", SourceLocation{path.string(), 0});
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return json{{"path", path.string()}, {"sha256", sha256_hex(bytes)}};
}

inline std::string fixed3(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

/// Shortest text that reads back to exactly `value`.
inline std::string exact(double value) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

struct Grid {
  double start = 0.0;
  double stop = 5.0;
  std::size_t steps = 51;

  [[nodiscard]] std::vector<double> orders() const {
    std::vector<double> out;
    out.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
      out.push_back(steps == 1 ? start
                               : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    return out;
  }
};

/// "start:stop:steps", inclusive of both ends.
inline Grid parse_grid(const std::string& text) {
  const auto bad = [&](const std::string& why) {
    return Error(Errc::InvalidGrid, "grid '" + text + "' " + why);
  };
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw bad("must look like start:stop:steps");
  }
  Grid grid;
  const auto number = [&](std::string_view part, double& out) {
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc{} || ptr != part.data() + part.size() || !std::isfinite(out)) throw bad("has a non-numeric bound");
  };
  const std::string_view view(text);
  number(view.substr(0, first), grid.start);
  number(view.substr(first + 1, second - first - 1), grid.stop);
  const auto steps = view.substr(second + 1);
  const auto [ptr, ec] = std::from_chars(steps.data(), steps.data() + steps.size(), grid.steps);
  if (ec != std::errc{} || ptr != steps.data() + steps.size()) throw bad("has a non-integer step count");
  if (grid.steps == 0) throw bad("needs at least one step");
  if (grid.stop < grid.start) throw bad("ends before it starts");
  if (grid.steps == 1 && grid.stop != grid.start) throw bad("needs at least two steps to span an interval");
  if (grid.start < 0.0) throw Error(Errc::NegativeOrder, "grid '" + text + "' includes negative orders");
  return grid;
}

inline std::optional<Unit> unit_option(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto unit = parse_unit(text);
  if (!unit) throw Error(Errc::InvalidArgument, "unknown unit '" + text + "'");
  return unit;
}

inline std::vector<std::string> renormalization_warnings(const Community& c) {
  if (c.unit() == Unit::count) return {};
  const double nominal = c.unit() == Unit::percent ? 100.0 : 1.0;
  if (std::abs(c.raw_total() - nominal) <= 1e-9 * nominal) return {};
  char total[32];
  std::snprintf(total, sizeof total, "%.10g", c.raw_total());
  return {"'" + c.name() + "' " + std::string(to_string(c.unit())) + " weights sum to " + total + "; renormalized"};
}

struct IndexRow {
  std::string index;
  double value;
  double effective_species;
};

inline std::vector<IndexRow> index_table(const Community& c) {
  std::vector<IndexRow> rows;
  for (const auto kind : {IndexKind::richness(), IndexKind::shannon(), IndexKind::gini_simpson(),
                          IndexKind::simpson_concentration()}) {
    const double value = index_value(kind, c);
    rows.push_back({kind.name(), value, to_effective_number(kind, value)});
  }
  return rows;
}

inline json index_json(const std::vector<IndexRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"index", r.index}, {"value", r.value}, {"effective_species", r.effective_species}});
  }
  return out;
}

inline json profile_json(const DiversityProfile& profile) {
  json out = json::array();
  for (const auto& p : profile.points) out.push_back({{"q", p.q}, {"effective_species", p.effective_species}});
  return out;
}

inline json interval_json(const DiversityInterval& interval) {
  return {{"taxonomy", interval.taxonomy_name},
          {"q", interval.q},
          {"lower", interval.lower},
          {"upper", interval.upper}};
}

/// Shared state of one invocation.
struct Context {
  std::ostream& out;
  std::ostream& err;
  json inputs = json::array();
  std::vector<std::string> warnings;

  Community snapshot(const std::string& path, std::optional<Unit> unit) {
    inputs.push_back(file_digest(path));
    auto c = load_snapshot(path, unit);
    for (auto& w : renormalization_warnings(c)) warnings.push_back(std::move(w));
    return c;
  }

  template <typename Loader>
  auto input(const std::string& path, Loader&& load) {
    inputs.push_back(file_digest(path));
    return load(path);
  }

  void emit_json(const std::string& name, json arguments, json results) {
    json envelope;
    envelope["tool"] = kToolName;
    envelope["version"] = kToolVersion;
    envelope["command"] = {{"name", name}, {"arguments", std::move(arguments)}};
    envelope["inputs"] = inputs;
    envelope["results"] = std::move(results);
    envelope["warnings"] = warnings;
    out << envelope.dump(2) << '\n';
  }

  void flush_warnings() {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
  }
};

struct Options {
  // shared
  std::string snapshot;
  std::string unit;
  double q = 1.0;
  bool as_json = false;
  // diversity
  bool all_indices = false;
  // profile / report
  std::string grid = "0:5:51";
  std::string plot_csv;
  bool markdown = false;
  // bounds / report
  std::string taxonomy;
  // similarity
  std::string matrix;
  std::string loc;
  std::string shared;
  // simulate
  SurvivalModel model;
  unsigned threads = 0;
  // monitor
  std::string series;
  double threshold = 0.0;
  std::size_t min_consecutive = 1;
};

inline int cmd_diversity(const Options& o, Context& ctx) {
  const auto c = ctx.snapshot(o.snapshot, unit_option(o.unit));
  const double d = hill_number(c, o.q);
  const auto rows = o.all_indices ? index_table(c) : std::vector<IndexRow>{};
  if (o.as_json) {
    json results{{"community", c.name()},
                 {"species", c.size()},
                 {"richness", richness(c)},
                 {"q", o.q},
                 {"effective_species", d}};
    if (o.all_indices) results["indices"] = index_json(rows);
    ctx.emit_json("diversity",
                  {{"snapshot", o.snapshot}, {"unit", o.unit}, {"q", o.q}, {"all_indices", o.all_indices}},
                  std::move(results));
    return kOk;
  }
  ctx.flush_warnings();
  ctx.out << "community  " << c.name() << " (" << richness(c) << " of " << c.size() << " species present)\n";
  ctx.out << "D(q=" << exact(o.q) << ")     " << fixed3(d) << " esn\n";
  if (o.all_indices) {
    ctx.out << "\nindex                  value  effective species\n";
    for (const auto& r : rows) {
      char line[128];
      std::snprintf(line, sizeof line, "%-21s %6s  %s\n", r.index.c_str(), fixed3(r.value).c_str(),
                    fixed3(r.effective_species).c_str());
      ctx.out << line;
    }
  }
  return kOk;
}

inline int cmd_profile(const Options& o, Context& ctx) {
  const auto grid = parse_grid(o.grid);
  const auto c = ctx.snapshot(o.snapshot, unit_option(o.unit));
  const auto orders = grid.orders();
  const auto profile = diversity_profile(c, orders);
  if (!o.plot_csv.empty()) {
    std::ofstream plot(o.plot_csv, std::ios::binary);
    if (!plot) throw Error(Errc::IoError, "cannot write file", SourceLocation{o.plot_csv, 0});
    plot << "q,effective_species\n";
    for (const auto& p : profile.points) plot << exact(p.q) << ',' << exact(p.effective_species) << '\n';
    if (!plot) throw Error(Errc::IoError, "write failed", SourceLocation{o.plot_csv, 0});
  }
  if (o.as_json) {
    ctx.emit_json("profile", {{"snapshot", o.snapshot}, {"unit", o.unit}, {"q_grid", o.grid}},
                  {{"community", c.name()}, {"profile", profile_json(profile)}});
    return kOk;
  }
  ctx.flush_warnings();
  if (!o.plot_csv.empty()) return kOk;
  ctx.out << "q        D (esn)\n";
  for (const auto& p : profile.points) {
    char line[64];
    std::snprintf(line, sizeof line, "%-8s %s\n", fixed3(p.q).c_str(), fixed3(p.effective_species).c_str());
    ctx.out << line;
  }
  return kOk;
}

inline int cmd_bounds(const Options& o, Context& ctx) {
  const auto c = ctx.snapshot(o.snapshot, unit_option(o.unit));
  const auto taxonomy = ctx.input(o.taxonomy, [](const std::string& p) { return load_taxonomy(p); });
  const auto interval = diversity_interval(c, taxonomy, o.q);
  if (o.as_json) {
    ctx.emit_json("bounds", {{"snapshot", o.snapshot}, {"unit", o.unit}, {"taxonomy", o.taxonomy}, {"q", o.q}},
                  interval_json(interval));
    return kOk;
  }
  ctx.flush_warnings();
  ctx.out << "taxonomy  " << interval.taxonomy_name << "\n";
  ctx.out << "q         " << exact(interval.q) << "\n";
  ctx.out << "lower     " << fixed3(interval.lower) << " esn (coarse)\n";
  ctx.out << "upper     " << fixed3(interval.upper) << " esn (fine)\n";
  return kOk;
}

inline int cmd_similarity(const Options& o, Context& ctx) {
  const bool by_matrix = !o.matrix.empty();
  const bool by_code = !o.loc.empty() || !o.shared.empty();
  if (by_matrix == by_code || (by_code && (o.loc.empty() || o.shared.empty()))) {
    throw Error(Errc::InvalidArgument, "give either --matrix or both --loc and --shared");
  }
  const auto c = ctx.snapshot(o.snapshot, unit_option(o.unit));
  const auto z = by_matrix ? ctx.input(o.matrix, [](const std::string& p) { return load_similarity(p); })
                           : similarity_from_shared_code(
                                 ctx.input(o.loc, [](const std::string& p) { return load_lines_of_code(p); }),
                                 ctx.input(o.shared, [](const std::string& p) { return load_shared_code(p); }));
  const double adjusted = similarity_diversity(c, z, o.q);
  const double plain = hill_number(c, o.q);
  if (o.as_json) {
    json arguments{{"snapshot", o.snapshot}, {"unit", o.unit}, {"q", o.q}};
    if (by_matrix) {
      arguments["matrix"] = o.matrix;
    } else {
      arguments["loc"] = o.loc;
      arguments["shared"] = o.shared;
    }
    ctx.emit_json("similarity", std::move(arguments),
                  {{"community", c.name()}, {"q", o.q}, {"similarity_adjusted", adjusted}, {"unadjusted", plain}});
    return kOk;
  }
  ctx.flush_warnings();
  ctx.out << "similarity-adjusted  " << fixed3(adjusted) << " esn\n";
  ctx.out << "unadjusted           " << fixed3(plain) << " esn\n";
  return kOk;
}

inline json survival_json(const Community& c, const SurvivalReport& r) {
  json species = json::array();
  for (const auto& s : r.per_species) {
    species.push_back({{"label", s.label},
                       {"extinction_probability", s.extinction_probability},
                       {"mean_time_to_extinction", s.mean_time_to_extinction},
                       {"censored", s.censored()},
                       {"censored_trials", s.censored_trials}});
  }
  json curve = json::array();
  for (const auto& p : r.survival_curve) curve.push_back({p.step, p.fraction});
  return {{"community", c.name()},
          {"initial_effective_species", hill_number(c, 1.0)},
          {"trials_run", r.trials_run},
          {"seed", r.seed},
          {"survival_probability", r.final_survival()},
          {"per_species", std::move(species)},
          {"survival_curve", std::move(curve)},
          {"diversity_trajectory", r.diversity_trajectory}};
}

inline int cmd_simulate(const Options& o, Context& ctx) {
  const auto c = ctx.snapshot(o.snapshot, unit_option(o.unit));
  const auto report = simulate(c, o.model, o.threads);
  if (o.as_json) {
    // No --threads here: the output does not depend on it.
    ctx.emit_json("simulate",
                  {{"snapshot", o.snapshot},
                   {"unit", o.unit},
                   {"pop", o.model.population_size},
                   {"shock_rate", o.model.shock_rate},
                   {"kill_fraction", o.model.shock_kill_fraction},
                   {"targeting", o.model.targeting_exponent},
                   {"horizon", o.model.horizon},
                   {"trials", o.model.trials},
                   {"seed", o.model.seed}},
                  survival_json(c, report));
    return kOk;
  }
  ctx.flush_warnings();
  ctx.out << "trials " << report.trials_run << ", horizon " << o.model.horizon << ", seed " << report.seed << "\n";
  ctx.out << "ecosystem survival (>= 2 species at horizon)  " << fixed3(report.final_survival()) << "\n";
  ctx.out << "mean diversity at horizon                     " << fixed3(report.diversity_trajectory.back())
          << " esn\n\n";
  ctx.out << "species                extinction  mean time\n";
  for (const auto& s : report.per_species) {
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %10s  %s%s\n", s.label.c_str(), fixed3(s.extinction_probability).c_str(),
                  fixed3(s.mean_time_to_extinction).c_str(), s.censored() ? " (censored)" : "");
    ctx.out << line;
  }
  return kOk;
}

inline int cmd_monitor(const Options& o, Context& ctx) {
  AlarmPolicy policy{o.q, o.threshold, o.min_consecutive};
  policy.validate();
  const auto files = list_series_files(o.series);
  for (const auto& [stamp, path] : files) ctx.inputs.push_back(file_digest(path));
  const auto series = load_series(o.series, unit_option(o.unit));
  for (const auto& snap : series.snapshots()) {
    for (auto& w : renormalization_warnings(snap.community)) ctx.warnings.push_back(std::move(w));
  }
  const auto points = series_diversity(series, o.q);
  const auto alarms = evaluate(points, policy);
  std::optional<double> slope;
  if (points.size() >= 2) {
    slope = trend(points);
  } else {
    ctx.warnings.emplace_back("trend needs at least two snapshots");
  }
  const int code = alarms.empty() ? kOk : kAlarm;
  if (o.as_json) {
    json diversity = json::array();
    for (const auto& p : points) {
      diversity.push_back({{"timestamp", format_timestamp(p.timestamp)}, {"effective_species", p.effective_species}});
    }
    json fired = json::array();
    for (const auto& a : alarms) {
      fired.push_back({{"timestamp", format_timestamp(a.timestamp)},
                       {"snapshot_index", a.snapshot_index},
                       {"observed", a.observed},
                       {"threshold", a.threshold},
                       {"policy", {{"q", a.policy.q}, {"threshold", a.policy.threshold},
                                   {"direction", "below"}, {"min_consecutive", a.policy.min_consecutive}}}});
    }
    ctx.emit_json("monitor",
                  {{"series", o.series},
                   {"unit", o.unit},
                   {"q", o.q},
                   {"threshold", o.threshold},
                   {"min_consecutive", o.min_consecutive}},
                  {{"series", series.name()},
                   {"q", o.q},
                   {"diversity", std::move(diversity)},
                   {"trend_per_day", slope ? json(*slope) : json(nullptr)},
                   {"alarms", std::move(fired)}});
    return code;
  }
  ctx.flush_warnings();
  ctx.out << "timestamp              D (esn)\n";
  for (const auto& p : points) ctx.out << format_timestamp(p.timestamp) << "   " << fixed3(p.effective_species) << "\n";
  if (slope) {
    char line[64];
    std::snprintf(line, sizeof line, "%.6f", *slope);
    ctx.out << "trend  " << line << " esn/day\n";
  }
  for (const auto& a : alarms) {
    ctx.out << "ALARM  " << format_timestamp(a.timestamp) << "  D=" << fixed3(a.observed) << " < "
            << fixed3(a.threshold) << "\n";
  }
  return code;
}

inline int cmd_report(const Options& o, Context& ctx) {
  const auto grid = parse_grid(o.grid);
  const auto c = ctx.snapshot(o.snapshot, unit_option(o.unit));
  const double headline = hill_number(c, 1.0);
  const auto rows = index_table(c);
  const auto profile = diversity_profile(c, grid.orders());
  std::optional<DiversityInterval> interval;
  if (!o.taxonomy.empty()) {
    const auto taxonomy = ctx.input(o.taxonomy, [](const std::string& p) { return load_taxonomy(p); });
    interval = diversity_interval(c, taxonomy, 1.0);
  }
  if (o.as_json) {
    json results{{"community", c.name()},
                 {"species", c.size()},
                 {"richness", richness(c)},
                 {"effective_species", headline},
                 {"indices", index_json(rows)},
                 {"profile", profile_json(profile)}};
    if (interval) results["bounds"] = interval_json(*interval);
    ctx.emit_json("report",
                  {{"snapshot", o.snapshot}, {"unit", o.unit}, {"taxonomy", o.taxonomy}, {"q_grid", o.grid}},
                  std::move(results));
    return kOk;
  }
  ctx.flush_warnings();
  auto& out = ctx.out;
  out << "# Diversity report: " << c.name() << "\n\n";
  out << "**" << fixed3(headline) << " esn** (Hill number of order 1) over " << richness(c) << " species.\n\n";
  out << "## Species\n\n| species | share |\n|---|---:|\n";
  for (const auto& s : c.species()) out << "| " << s.label << " | " << fixed3(100.0 * s.abundance) << "% |\n";
  out << "\n## Indices\n\n| index | value | effective species |\n|---|---:|---:|\n";
  for (const auto& r : rows) out << "| " << r.index << " | " << fixed3(r.value) << " | " << fixed3(r.effective_species) << " |\n";
  out << "\n## Diversity profile\n\n| q | effective species |\n|---:|---:|\n";
  for (const auto& p : profile.points) out << "| " << fixed3(p.q) << " | " << fixed3(p.effective_species) << " |\n";
  if (interval) {
    out << "\n## Bounds\n\nClassified by `" << interval->taxonomy_name << "`, true diversity lies between "
        << fixed3(interval->lower) << " esn (coarse) and " << fixed3(interval->upper) << " esn (fine).\n";
  }
  if (!ctx.warnings.empty()) {
    out << "\n## Warnings\n\n";
    for (const auto& w : ctx.warnings) out << "- " << w << "\n";
  }
  return kOk;
}

}  // namespace detail

/// Runs one command line (without the program name). Never throws.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::Options;
  Options o;
  CLI::App app{"Effective-number-of-species diversity toolkit", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  const auto common = [&](CLI::App* sub, bool with_q) {
    sub->add_option("snapshot", o.snapshot, "species,share table")->required();
    sub->add_option("--unit", o.unit, "proportion | percent | count (overrides the file)")
        ->check(CLI::IsMember({"proportion", "percent", "count"}));
    if (with_q) sub->add_option("--q", o.q, "Hill order")->capture_default_str();
    sub->add_flag("--json", o.as_json, "machine-readable output");
  };

  auto* diversity = app.add_subcommand("diversity", "effective number of species of one snapshot");
  common(diversity, true);
  diversity->add_flag("--all-indices", o.all_indices, "also report the classical indices");

  auto* profile = app.add_subcommand("profile", "Hill numbers over a range of orders");
  common(profile, false);
  profile->add_option("--q-grid", o.grid, "start:stop:steps")->capture_default_str();
  profile->add_option("--plot-csv", o.plot_csv, "write q,effective_species to this file");

  auto* bounds = app.add_subcommand("bounds", "diversity between coarse and fine classification");
  common(bounds, true);
  bounds->add_option("--taxonomy", o.taxonomy, "fine,coarse mapping")->required();

  auto* similarity = app.add_subcommand("similarity", "diversity discounted by shared code");
  common(similarity, true);
  similarity->add_option("--matrix", o.matrix, "a,b,z similarity file");
  similarity->add_option("--loc", o.loc, "species,lines file");
  similarity->add_option("--shared", o.shared, "a,b,shared_lines file");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo ecosystem survival");
  common(sim, false);
  sim->add_option("--pop", o.model.population_size, "population size N")->capture_default_str();
  sim->add_option("--shock-rate", o.model.shock_rate, "per-step shock probability")->capture_default_str();
  sim->add_option("--kill-fraction", o.model.shock_kill_fraction, "share of the target removed")->capture_default_str();
  sim->add_option("--targeting", o.model.targeting_exponent, "shock targets p_i^targeting")->capture_default_str();
  sim->add_option("--horizon", o.model.horizon, "steps per trial")->capture_default_str();
  sim->add_option("--trials", o.model.trials, "number of trials")->capture_default_str();
  sim->add_option("--seed", o.model.seed, "random seed")->capture_default_str();
  sim->add_option("--threads", o.threads, "worker threads, 0 = all")->capture_default_str();

  auto* monitor = app.add_subcommand("monitor", "diversity over time with threshold alarms");
  monitor->add_option("series", o.series, "directory of YYYYMMDDTHHMMSSZ.csv snapshots")->required();
  monitor->add_option("--unit", o.unit, "proportion | percent | count (overrides the files)")
      ->check(CLI::IsMember({"proportion", "percent", "count"}));
  monitor->add_option("--q", o.q, "Hill order")->capture_default_str();
  monitor->add_option("--threshold", o.threshold, "alarm below this many esn")->required();
  monitor->add_option("--min-consecutive", o.min_consecutive, "violations in a row before alarming")
      ->capture_default_str();
  monitor->add_flag("--json", o.as_json, "machine-readable output");

  auto* report = app.add_subcommand("report", "indices, profile and bounds in one document");
  common(report, false);
  report->add_option("--taxonomy", o.taxonomy, "fine,coarse mapping for a bounds section");
  report->add_option("--q-grid", o.grid, "start:stop:steps")->capture_default_str();
  auto* md = report->add_flag("--markdown", o.markdown, "Markdown output (default)");
  report->get_option("--json")->excludes(md);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  detail::Context ctx{out, err, json::array(), {}};
  try {
    auto* chosen = app.get_subcommands().front();
    const auto& name = chosen->get_name();
    if (name == "diversity") return detail::cmd_diversity(o, ctx);
    if (name == "profile") return detail::cmd_profile(o, ctx);
    if (name == "bounds") return detail::cmd_bounds(o, ctx);
    if (name == "similarity") return detail::cmd_similarity(o, ctx);
    if (name == "simulate") return detail::cmd_simulate(o, ctx);
    if (name == "monitor") return detail::cmd_monitor(o, ctx);
    if (name == "report") return detail::cmd_report(o, ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kInput : kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace ecodiv::cli

#endif  // ECODIV_TOOLS_CLI_HPP
