#pragma once

// Command-line frontend. run() holds all behaviour so tests can drive it
// without spawning processes.
//
// Exit codes: check 0 nonempty / 1 empty; every command 2 on input error,
// 3 on I/O error; selftest 1 on any property failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nstrata/literal.hpp"
#include "nstrata/replay.hpp"
#include "nstrata/report.hpp"
#include "nstrata/selftest.hpp"
#include "nstrata/strata.hpp"
#include "nstrata/svg.hpp"

namespace nstrata::cli {

enum ExitCode : int { kNonempty = 0, kOk = 0, kEmpty = 1, kFailed = 1, kInputError = 2, kIoError = 3 };

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline ConcavePolygon polygon_arg(const std::string& flag, const std::string& text) {
  try {
    return parse_polygon(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(flag + ": " + e.what());
  }
}

inline DominantCocharacter cocharacter_arg(const std::string& text) {
  try {
    return parse_cocharacter(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--mu: ") + e.what());
  }
}

/// Writes to --out when given, otherwise to the stream.
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !(f.flush())) throw std::ios_base::failure("cannot write " + path);
}

struct Globals {
  bool json = false;
  bool witness = false;
  bool certificates = false;
  std::string out;
};

inline int cmd_check(const Globals& g, const std::string& b_text, const std::string& mu_text,
                     const std::string& bp_text, const std::string& engine_choice, std::ostream& out) {
  const ConcavePolygon b = polygon_arg("--b", b_text);
  const DominantCocharacter mu = cocharacter_arg(mu_text);
  const ConcavePolygon bp = polygon_arg("--bprime", bp_text);
  if (b.rank() != mu.rank() || bp.rank() != mu.rank())
    throw InputError("ranks differ: b has " + std::to_string(b.rank()) + ", mu " + std::to_string(mu.rank()) +
                     ", b' " + std::to_string(bp.rank()));

  const auto start = std::chrono::steady_clock::now();
  QueryReport rep;
  rep.b = render_polygon(b);
  rep.mu = render_cocharacter(mu);
  rep.b_prime = render_polygon(bp);

  ModificationSolver solver;
  StratumQuery sq{b, mu, bp};
  if (!mu.is_minuscule()) {
    if (!b.is_semistable())
      throw InputError("--mu " + mu_text + " is not minuscule; only basic b is supported for such mu");
    if (engine_choice != "auto" && engine_choice != "basic")
      throw InputError("engine " + engine_choice + " requires a minuscule cocharacter");
    if (g.witness) throw InputError("--witness requires a minuscule cocharacter");
    rep.engine = "basic";
    rep.decision = basic_stratum_nonempty(b, mu, bp);
  } else {
    StandardReduction r = reduce_to_standard(sq);
    const bool degree_ok = r.query.degree() == r.mu->degree;
    std::string engine = engine_choice;
    if (engine == "auto") engine = b.is_semistable() ? "basic" : has_separated_slopes(b) ? "explicit" : "inductive";
    if (engine == "basic") {
      if (!b.is_semistable()) throw InputError("engine basic requires semistable b");
      rep.decision = basic_stratum_nonempty(b, mu, bp);
    } else if (engine == "explicit") {
      if (!has_separated_slopes(b)) throw InputError("engine explicit requires slopes of b to differ by more than 1");
      rep.decision = degree_ok && explicit_criterion(r.query);
    } else {
      rep.decision = solver.stratum_nonempty(sq) != nullptr;
    }
    rep.engine = engine;
    if (rep.decision && g.witness) {
      rep.certificate = solver.stratum_nonempty(sq);
      if (!rep.certificate) throw std::logic_error("engines disagree on " + rep.b + " / " + rep.b_prime);
    }
  }
  rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::string text;
  if (g.json) {
    text = to_json(rep).dump(2) + "\n";
  } else {
    text = std::string(rep.decision ? "NONEMPTY" : "EMPTY") + "\n";
    text += "b = " + rep.b + ", mu = " + rep.mu + ", b' = " + rep.b_prime + ", engine = " + rep.engine + "\n";
    if (rep.certificate) text += to_json(*rep.certificate).dump(2) + "\n";
  }
  emit(g.out, text, out);
  return rep.decision ? kNonempty : kEmpty;
}

inline int cmd_enumerate(const Globals& g, const std::string& b_text, const std::string& mu_text, std::ostream& out) {
  const ConcavePolygon b = polygon_arg("--b", b_text);
  const DominantCocharacter mu = cocharacter_arg(mu_text);
  if (b.rank() != mu.rank())
    throw InputError("ranks differ: b has " + std::to_string(b.rank()) + ", mu " + std::to_string(mu.rank()));
  if (!mu.is_minuscule()) throw InputError("--mu " + mu_text + " is not minuscule");
  const std::int64_t m = mu.entries().back();
  MinusculeCocharacter standard(mu.rank(), mu.degree() - m * mu.rank());
  ModificationSolver solver;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [bp_standard, cert] : solver.enumerate_nonempty_strata(b, standard)) {
    const std::string literal = render_polygon(shift(bp_standard, -m));
    if (g.certificates)
      list.push_back({{"b_prime", literal}, {"certificate", to_json(*cert)}});
    else
      list.push_back(literal);
  }
  emit(g.out, list.dump() + "\n", out);
  return kOk;
}

/// "literal[:label[:color]]"
inline PlotSeries series_arg(const std::string& spec, std::size_t index) {
  PlotSeries s;
  const auto first = spec.find(':');
  s.polygon = polygon_arg("--polygons", spec.substr(0, first));
  if (first == std::string::npos) {
    s.label = s.polygon.to_string();
    return s;
  }
  const auto second = spec.find(':', first + 1);
  s.label = spec.substr(first + 1, second == std::string::npos ? std::string::npos : second - first - 1);
  if (second != std::string::npos) s.color = spec.substr(second + 1);
  if (s.label.empty()) s.label = "P" + std::to_string(index + 1);
  return s;
}

inline int cmd_plot(const Globals& g, const std::vector<std::string>& specs, std::ostream& out) {
  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < specs.size(); ++i) series.push_back(series_arg(specs[i], i));
  emit(g.out, render_svg(series), out);
  return kOk;
}

inline int cmd_selftest(const Globals& g, const SelfTestOptions& opt, std::ostream& out) {
  if (opt.max_rank < 1 || opt.max_rank > 7) throw InputError("--max-rank must be in [1, 7]");
  if (opt.max_denominator < 1 || opt.max_denominator > 6) throw InputError("--max-denominator must be in [1, 6]");
  std::ostringstream log;
  SelfTestSummary s = run_selftest(opt, log);
  if (g.json) {
    nlohmann::json j{{"passed", s.ok()}, {"queries", s.queries}, {"properties", nlohmann::json::array()}};
    for (const auto& t : s.tallies) {
      nlohmann::json e{{"name", t.name}, {"checked", t.checked}, {"passed", t.ok()}};
      if (t.failure) e["counterexample"] = *t.failure;
      j["properties"].push_back(e);
    }
    emit(g.out, j.dump(2) + "\n", out);
  } else {
    emit(g.out, log.str(), out);
  }
  return s.ok() ? kOk : kFailed;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide nonemptiness of minuscule Newton strata for GL_n", "nstrata"};
  app.require_subcommand(1);
  detail::Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_flag("--witness", g.witness, "Attach a certificate to positive decisions");
  app.add_flag("--certificates", g.certificates, "Attach certificates to enumerated strata");
  app.add_option("--out", g.out, "Write output to this file");

  std::string b_text, mu_text, bp_text, engine = "auto";
  auto* check = app.add_subcommand("check", "Decide whether a stratum is nonempty");
  check->add_option("--b", b_text, "Newton polygon of b, e.g. 2/3^3,3/5^5")->required();
  check->add_option("--mu", mu_text, "min:<n>:<d> or a descending integer tuple")->required();
  check->add_option("--bprime", bp_text, "Newton polygon of b'")->required();
  check->add_option("--engine", engine, "auto, inductive, explicit or basic")
      ->check(CLI::IsMember({"auto", "inductive", "explicit", "basic"}));
  check->fallthrough();

  auto* enumerate = app.add_subcommand("enumerate", "List every b' with a nonempty stratum");
  enumerate->add_option("--b", b_text, "Newton polygon of b")->required();
  enumerate->add_option("--mu", mu_text, "min:<n>:<d> or a descending integer tuple")->required();
  enumerate->fallthrough();

  std::vector<std::string> plot_specs;
  auto* plot = app.add_subcommand("plot", "Render polygons as SVG");
  plot->add_option("--polygons", plot_specs, "literal[:label[:color]], repeatable")->required();
  plot->fallthrough();

  SelfTestOptions st;
  std::string mutate;
  auto* selftest = app.add_subcommand("selftest", "Run the property corpus");
  selftest->add_option("--max-rank", st.max_rank, "Largest rank in the corpus")->capture_default_str();
  selftest->add_option("--max-denominator", st.max_denominator, "Largest slope denominator")->capture_default_str();
  selftest->add_option("--mutate", mutate, "Inject a known fault (skip-extension)")
      ->check(CLI::IsMember({"skip-extension"}))
      ->group("");
  selftest->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (check->parsed()) return detail::cmd_check(g, b_text, mu_text, bp_text, engine, out);
    if (enumerate->parsed()) return detail::cmd_enumerate(g, b_text, mu_text, out);
    if (plot->parsed()) return detail::cmd_plot(g, plot_specs, out);
    st.skip_extension_check = mutate == "skip-extension";
    return detail::cmd_selftest(g, st, out);
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace nstrata::cli
