#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <future>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "boxseries/eigensolver.hpp"
#include "boxseries/numerics.hpp"
#include "boxseries/oracle.hpp"
#include "boxseries/potential.hpp"
#include "boxseries/records.hpp"
#include "boxseries/series.hpp"

namespace boxseries::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

Rational positive_rational(const std::string& text, const char* what) {
  Rational q = parse_rational(text);
  if (q <= 0) throw std::invalid_argument(std::string(what) + " must be positive, got '" + text + "'");
  return q;
}

Rational half_width(const JobConfig& cfg) {
  if (cfg.half_width.empty()) throw std::invalid_argument("--L is required");
  return positive_rational(cfg.half_width, "--L");
}

std::optional<int> parse_terms(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || n < 2) throw std::invalid_argument("--terms must be 'auto' or an integer >= 2");
  return n;
}

Potential build_potential(const JobConfig& cfg) {
  if (!cfg.potential.empty() && !cfg.family.empty()) {
    throw std::invalid_argument("--potential and --family are mutually exclusive");
  }
  if (!cfg.potential.empty()) return parse_potential(cfg.potential);
  if (cfg.family.empty()) throw std::invalid_argument("a potential is required (--potential EXPR or --family NAME)");
  if (cfg.mu2.size() > 1) throw std::invalid_argument("a list of --mu2 values is only accepted by split");
  if (cfg.family == "anharmonic") {
    const Rational mu2 = cfg.mu2.empty() ? Rational(1) : parse_rational(cfg.mu2.front());
    return anharmonic(mu2, parse_rational(cfg.g), cfg.k);
  }
  if (cfg.family == "doublewell") {
    if (cfg.mu2.empty()) throw std::invalid_argument("--family doublewell needs --mu2");
    return double_well(parse_rational(cfg.mu2.front()));
  }
  if (cfg.family == "morse") return morse_series(parse_rational(cfg.v0), parse_rational(cfg.lambda), cfg.morse_terms);
  throw std::invalid_argument("unknown family '" + cfg.family + "'");
}

std::vector<FunctionalKind> kinds_for(const JobConfig& cfg, const Potential& potential) {
  if (cfg.kind == "auto") {
    if (potential.symmetric()) return {FunctionalKind::even, FunctionalKind::odd};
    return {FunctionalKind::determinant};
  }
  const FunctionalKind kind = parse_kind(cfg.kind);
  if (kind != FunctionalKind::determinant && !potential.symmetric()) {
    throw std::invalid_argument("--kind " + cfg.kind + " needs a symmetric potential");
  }
  return {kind};
}

SolverOptions solver_options(const JobConfig& cfg) {
  SolverOptions options;
  options.parallel = !cfg.serial;
  options.max_terms = cfg.max_terms;
  return options;
}

std::vector<EigenvalueRecord> solve_records(const JobConfig& cfg, const Potential& potential, const Rational& width,
                                            const PrecisionContext& ctx) {
  const auto terms = parse_terms(cfg.terms);
  const auto options = solver_options(cfg);
  if (cfg.kind == "auto") return solve_spectrum(potential, width, cfg.count, ctx, terms, options);
  return solve_kind(potential, kinds_for(cfg, potential).front(), width, cfg.count, ctx, terms, options);
}

int exit_for(const std::vector<EigenvalueRecord>& records) {
  const bool all = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.converged; });
  return all ? kExitOk : kExitConvergence;
}

std::string fixed(double value, int decimals) {
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

int cmd_solve(const JobConfig& cfg, std::ostream& out) {
  const Potential potential = build_potential(cfg);
  const auto records = solve_records(cfg, potential, half_width(cfg), make_context(cfg.digits));
  write_records(out, records, parse_output_format(cfg.output));
  return exit_for(records);
}

struct Range {
  Rational lo;
  Rational hi;
  Rational step;
};

Range parse_range(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("--range lo:hi:step is required");
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) throw std::invalid_argument("--range must look like lo:hi:step");
  Range r{parse_rational(text.substr(0, first)), parse_rational(text.substr(first + 1, second - first - 1)),
          parse_rational(text.substr(second + 1))};
  if (r.lo >= r.hi) throw std::invalid_argument("--range is empty (needs lo < hi)");
  if (r.step <= 0) throw std::invalid_argument("--range step must be positive");
  return r;
}

int cmd_scan(const JobConfig& cfg, std::ostream& out) {
  const Potential potential = build_potential(cfg);
  const Rational width = half_width(cfg);
  const Range range = parse_range(cfg.range);
  const auto terms = parse_terms(cfg.terms);
  const auto options = solver_options(cfg);
  const PrecisionContext ctx = make_context(cfg.digits);
  const OutputFormat format = parse_output_format(cfg.output);
  const long bits = ctx.working_bits();
  const BigReal lo(range.lo, bits);
  const BigReal hi(range.hi, bits);
  const BigReal step(range.step, bits);

  if (format == OutputFormat::csv) out << "type,kind,I,E,sign,log10_abs,e_lo,e_hi\n";
  for (const FunctionalKind kind : kinds_for(cfg, potential)) {
    const int used = terms ? *terms : auto_truncation(potential, kind, {lo, hi}, width, ctx, options);
    const auto samples = scan_samples(potential, kind, width, used, lo, hi, step, ctx, options);
    const std::string name(to_string(kind));
    for (const auto& p : samples) {
      const std::string e = p.energy.to_decimal(cfg.digits);
      if (format == OutputFormat::csv) {
        out << "sample," << name << ',' << used << ',' << e << ',' << p.sign << ',' << fixed(p.log10_abs, 6)
            << ",,\n";
      } else {
        json j{{"type", "sample"}, {"kind", name}, {"I", used}, {"E", e}, {"sign", p.sign}};
        j["log10_abs"] = std::isinf(p.log10_abs) ? json(nullptr) : json(p.log10_abs);
        out << j.dump() << '\n';
      }
    }
    for (const auto& b : brackets_from_samples(samples, kind)) {
      const std::string a = b.lo.to_decimal(cfg.digits);
      const std::string z = b.hi.to_decimal(cfg.digits);
      if (format == OutputFormat::csv) {
        out << "bracket," << name << ',' << used << ",,,," << a << ',' << z << '\n';
      } else {
        out << json{{"type", "bracket"}, {"kind", name}, {"I", used}, {"e_lo", a}, {"e_hi", z}}.dump() << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_split(const JobConfig& cfg, std::ostream& out) {
  if (!cfg.potential.empty() || (!cfg.family.empty() && cfg.family != "doublewell")) {
    throw std::invalid_argument("split works on the doublewell family only");
  }
  if (cfg.mu2.empty()) throw std::invalid_argument("split needs --mu2 (one value or a comma list)");
  const Rational width = half_width(cfg);
  const PrecisionContext ctx = make_context(cfg.digits);
  const auto options = solver_options(cfg);

  std::vector<Potential> wells;
  for (const auto& m : cfg.mu2) wells.push_back(double_well(positive_rational(m, "--mu2")));
  std::vector<SplittingReport> reports;
  if (options.parallel) {
    std::vector<std::future<SplittingReport>> futures;
    for (const auto& w : wells) {
      futures.push_back(std::async(std::launch::async, [&, w] { return splitting(w, width, ctx, options); }));
    }
    for (auto& f : futures) reports.push_back(f.get());
  } else {
    for (const auto& w : wells) reports.push_back(splitting(w, width, ctx, options));
  }
  write_splittings(out, reports, parse_output_format(cfg.output));
  return kExitOk;
}

int cmd_oracle(const JobConfig& cfg, std::ostream& out) {
  const Potential potential = build_potential(cfg);
  const Rational width = half_width(cfg);
  const PrecisionContext ctx = make_context(cfg.digits);
  const OutputFormat format = parse_output_format(cfg.output);

  std::string method = cfg.against;
  const bool has_closed_form = potential.is_zero() || cfg.family == "morse";
  if (method == "auto") method = has_closed_form ? "exact" : "fd";
  if (method != "fd" && method != "exact") throw std::invalid_argument("--against must be auto, fd or exact");
  if (method == "exact" && !has_closed_form) {
    throw std::invalid_argument("no closed form for this potential; use --against fd");
  }

  const auto records = solve_records(cfg, potential, width, ctx);
  const long bits = ctx.working_bits();
  std::vector<std::optional<BigReal>> reference(records.size());
  std::string label = method;
  if (method == "fd") {
    label = "fd(N=" + std::to_string(cfg.grid) + ")";
    const auto fd = fd_eigenvalues(potential, width.get_d(), cfg.grid, static_cast<int>(records.size()));
    for (std::size_t i = 0; i < fd.size(); ++i) reference[i] = BigReal(Rational(fd[i]), bits);
  } else if (potential.is_zero()) {
    label = "square_well";
    for (std::size_t i = 0; i < records.size(); ++i) {
      reference[i] = square_well_energy(width, static_cast<int>(i) + 1, ctx);
    }
  } else {
    label = "morse_exact";
    const MorseParams params = make_morse_params(parse_rational(cfg.v0), parse_rational(cfg.lambda));
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (static_cast<int>(i) <= params.n_max) reference[i] = morse_exact_energy(params, static_cast<int>(i), ctx);
    }
  }

  if (format == OutputFormat::csv) out << "n,kind,I,series,reference,method,agree_digits\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const std::string ref = reference[i] ? reference[i]->to_decimal(cfg.digits) : std::string();
    const int agree = reference[i] ? agree_digits(rec.energy, ref) : -1;
    if (format == OutputFormat::csv) {
      out << i << ',' << to_string(rec.kind) << ',' << rec.terms_used << ',' << rec.energy << ',' << ref << ','
          << label << ',' << (agree >= 0 ? std::to_string(agree) : std::string()) << '\n';
    } else {
      json j{{"n", i}, {"kind", std::string(to_string(rec.kind))}, {"I", rec.terms_used}, {"series", rec.energy}};
      j["reference"] = reference[i] ? json(ref) : json(nullptr);
      j["method"] = label;
      j["agree_digits"] = agree >= 0 ? json(agree) : json(nullptr);
      out << j.dump() << '\n';
    }
  }
  return exit_for(records);
}

// Wavefunction files for plotting, scaled so the largest |psi| is +1.

std::pair<BigReal, BigReal> parse_seed(const std::string& text, long bits) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--seed must look like a0,a1");
  return {BigReal(parse_rational(text.substr(0, comma)), bits), BigReal(parse_rational(text.substr(comma + 1)), bits)};
}

void write_wave_file(const fs::path& path, const std::string& provenance, std::vector<WavefunctionSample> samples,
                     int digits, const std::function<double(double)>& exact) {
  const auto peak = std::max_element(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
    return abs(a.psi) < abs(b.psi);
  });
  double exact_scale = 1.0;
  if (peak != samples.end() && !peak->psi.is_zero()) {
    const BigReal scale = peak->psi;
    for (auto& s : samples) s.psi /= scale;
    if (exact) exact_scale = exact(peak->x.to_double());
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << "# " << provenance << '\n';
  file << (exact ? "x,psi,psi_exact\n" : "x,psi\n");
  for (const auto& s : samples) {
    file << s.x.to_decimal(digits) << ',' << s.psi.to_decimal(digits);
    if (exact) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.15e", exact(s.x.to_double()) / exact_scale);
      file << ',' << buf;
    }
    file << '\n';
  }
  if (!file) throw std::runtime_error("write failed for " + path.string());
}

std::string provenance(const Potential& potential, const Rational& width, const std::string& terms, int digits) {
  return "potential=" + potential.render() + ", L=" + to_string(width) + ", I=" + terms +
         ", digits=" + std::to_string(digits);
}

// Near the walls psi is dominated by the growing solution times the error in
// E, so the energy is refined until the wall values drop below print resolution.
void dump_state(const fs::path& path, const Potential& potential, EigenvalueRecord rec, int n, int points,
                const SolverOptions& options, const std::function<double(double)>& exact = {}) {
  const int digits = rec.target_digits;
  std::vector<WavefunctionSample> samples;
  for (int attempt = 0;; ++attempt) {
    PrecisionContext c = make_context(rec.target_digits);
    c.working_digits = std::max(c.working_digits, rec.working_digits);
    samples = wavefunction_samples(potential, rec.value, rec.half_width, rec.terms_used,
                                   eigen_seed(potential, rec, c), points, c);
    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) peak = std::max(peak, s.psi.log10_abs());
    const double wall = std::max(samples.front().psi.log10_abs(), samples.back().psi.log10_abs()) - peak;
    if (wall <= -digits || attempt == 4) break;
    rec = refine(potential, rec, rec.target_digits + static_cast<int>(std::ceil(wall + digits)) + 2, options);
  }
  write_wave_file(path,
                  provenance(potential, rec.half_width, std::to_string(rec.terms_used), digits) + ", n=" +
                      std::to_string(n) + ", kind=" + std::string(to_string(rec.kind)) +
                      ", E=" + rec.value.to_decimal(digits),
                  std::move(samples), digits, exact);
}

std::vector<EigenvalueRecord> lowest_two(const JobConfig& cfg, const Potential& potential, const Rational& width) {
  JobConfig c = cfg;
  c.count = 2;
  c.kind = "auto";
  return solve_records(c, potential, width, make_context(cfg.digits));
}

int cmd_plotdata(const JobConfig& cfg, std::ostream& out) {
  static const std::vector<std::string> recipes{"fig2", "fig3", "fig4", "fig5", "custom"};
  if (std::find(recipes.begin(), recipes.end(), cfg.recipe) == recipes.end()) {
    throw std::invalid_argument("unknown recipe '" + cfg.recipe + "' (expected fig2, fig3, fig4, fig5 or custom)");
  }
  if (cfg.points < 2) throw std::invalid_argument("--points must be >= 2");
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  std::vector<fs::path> written;
  bool converged = true;
  auto note = [&](const std::vector<EigenvalueRecord>& recs) {
    for (const auto& r : recs) converged = converged && r.converged;
  };

  if (cfg.recipe == "fig2") {
    const Rational width(5);
    const PrecisionContext ctx = make_context(cfg.digits);
    const auto terms = parse_terms(cfg.terms);
    const auto options = solver_options(cfg);
    std::vector<std::future<EigenvalueRecord>> futures;
    for (int g = 0; g <= 10; ++g) {
      futures.push_back(std::async(options.parallel ? std::launch::async : std::launch::deferred, [=] {
        const Potential p = g == 0 ? parse_potential("x^2") : anharmonic(Rational(1), Rational(g), 2);
        return solve_kind(p, FunctionalKind::even, width, 1, ctx, terms, options).front();
      }));
    }
    const fs::path path = dir / "fig2.csv";
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << "# potential=x^2 + g*x^4, L=5, I=" << cfg.terms << ", digits=" << cfg.digits << '\n';
    file << "g,E0,I\n";
    for (int g = 0; g <= 10; ++g) {
      const auto rec = futures[static_cast<std::size_t>(g)].get();
      note({rec});
      file << g << ',' << rec.energy << ',' << rec.terms_used << '\n';
    }
    written.push_back(path);
  } else if (cfg.recipe == "fig3") {
    for (int g = 0; g <= 2; ++g) {
      const Potential p = g == 0 ? parse_potential("x^2") : anharmonic(Rational(1), Rational(g), 2);
      const auto recs = lowest_two(cfg, p, Rational(5));
      note(recs);
      for (int n = 0; n < 2; ++n) {
        written.push_back(dir / ("fig3_g" + std::to_string(g) + "_n" + std::to_string(n) + ".csv"));
        dump_state(written.back(), p, recs[static_cast<std::size_t>(n)], n, cfg.points, solver_options(cfg));
      }
    }
  } else if (cfg.recipe == "fig4") {
    const std::vector<std::pair<int, int>> cases{{3, 4}, {4, 3}, {5, 3}, {6, 2}};
    for (const auto& [k, width] : cases) {
      const Potential p = anharmonic(Rational(1), Rational(1), k);
      const auto recs = lowest_two(cfg, p, Rational(width));
      note(recs);
      for (int n = 0; n < 2; ++n) {
        written.push_back(dir / ("fig4_k" + std::to_string(k) + "_n" + std::to_string(n) + ".csv"));
        dump_state(written.back(), p, recs[static_cast<std::size_t>(n)], n, cfg.points, solver_options(cfg));
      }
    }
  } else if (cfg.recipe == "fig5") {
    const MorseParams params = make_morse_params(Rational(400), Rational(1));
    const Potential p = morse_series(params.v0, params.lambda, kDefaultMorseTruncation);
    JobConfig c = cfg;
    c.count = 2;
    c.kind = "determinant";
    const auto recs = solve_records(c, p, Rational(2), make_context(cfg.digits));
    note(recs);
    written.push_back(dir / "fig5_morse_n0.csv");
    dump_state(written.back(), p, recs[0], 0, cfg.points, solver_options(cfg),
               [&params](double x) { return morse_ground_state(params, x); });
    written.push_back(dir / "fig5_morse_n1.csv");
    dump_state(written.back(), p, recs[1], 1, cfg.points, solver_options(cfg));
  } else {
    const Potential p = build_potential(cfg);
    const Rational width = half_width(cfg);
    if (!cfg.energy.empty()) {
      const PrecisionContext ctx = make_context(cfg.digits);
      const long bits = ctx.working_bits();
      const auto terms = parse_terms(cfg.terms);
      if (!terms) throw std::invalid_argument("a dump at a fixed --energy needs an explicit --terms");
      std::pair<BigReal, BigReal> seed{BigReal(1L, bits), BigReal(0L, bits)};
      if (!cfg.seed.empty()) {
        seed = parse_seed(cfg.seed, bits);
      } else if (cfg.kind == "odd") {
        seed = {BigReal(0L, bits), BigReal(1L, bits)};
      } else if (cfg.kind != "even") {
        throw std::invalid_argument("a dump at a fixed --energy needs --seed a0,a1 or --kind even|odd");
      }
      const BigReal energy(parse_rational(cfg.energy), bits);
      auto samples = wavefunction_samples(p, energy, width, *terms, seed, cfg.points, ctx);
      written.push_back(dir / "custom.csv");
      write_wave_file(written.back(),
                      provenance(p, width, cfg.terms, cfg.digits) + ", E=" + cfg.energy + ", seed=" +
                          seed.first.to_decimal(cfg.digits) + ";" + seed.second.to_decimal(cfg.digits),
                      std::move(samples), cfg.digits, {});
    } else {
      const auto recs = solve_records(cfg, p, width, make_context(cfg.digits));
      note(recs);
      for (std::size_t n = 0; n < recs.size(); ++n) {
        written.push_back(dir / ("custom_n" + std::to_string(n) + ".csv"));
        dump_state(written.back(), p, recs[n], static_cast<int>(n), cfg.points, solver_options(cfg));
      }
    }
  }
  for (const auto& path : written) out << path.string() << '\n';
  return converged ? kExitOk : kExitConvergence;
}

void add_common(CLI::App* sub, JobConfig& cfg) {
  sub->add_option("--potential", cfg.potential, "polynomial such as \"x^2+x^4\" or \"-25x^2 + x^4\"");
  sub->add_option("--family", cfg.family, "anharmonic | doublewell | morse")
      ->check(CLI::IsMember({"anharmonic", "doublewell", "morse"}));
  sub->add_option("--mu2", cfg.mu2, "mass parameter: x^2 coefficient (anharmonic) or well depth (doublewell)")
      ->delimiter(',');
  sub->add_option("--g", cfg.g, "coupling of the x^(2k) term")->capture_default_str();
  sub->add_option("--k", cfg.k, "anharmonic exponent, V = mu2 x^2 + g x^(2k)")->capture_default_str();
  sub->add_option("--V0", cfg.v0, "Morse depth")->capture_default_str();
  sub->add_option("--lambda", cfg.lambda, "Morse range parameter")->capture_default_str();
  sub->add_option("--J", cfg.morse_terms, "Morse Taylor truncation degree")->capture_default_str();
  sub->add_option("--L", cfg.half_width, "half width of the box [-L, L]");
  sub->add_option("--kind", cfg.kind, "even | odd | determinant | auto")
      ->check(CLI::IsMember({"even", "odd", "determinant", "det", "auto"}))
      ->capture_default_str();
  sub->add_option("--digits", cfg.digits, "target significant digits")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  sub->add_option("--terms", cfg.terms, "series terms I, or auto")->capture_default_str();
  sub->add_option("--range", cfg.range, "energy grid lo:hi:step");
  sub->add_option("--count", cfg.count, "number of eigenvalues")->check(CLI::Range(1, 10000))->capture_default_str();
  sub->add_option("--output", cfg.output, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
  sub->add_option("--max-terms", cfg.max_terms, "ceiling on I while converging")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  sub->add_flag("--serial", cfg.serial, "solve roots one after another");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenvalues of polynomial potentials between infinite walls, to arbitrary precision", "boxseries"};
  app.set_config("--config", "", "INI/TOML file; a [section] names the command, flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  JobConfig cfg;
  auto* solve = app.add_subcommand("solve", "lowest eigenvalues as records");
  auto* scan = app.add_subcommand("scan", "boundary functional on an energy grid, with brackets");
  auto* split = app.add_subcommand("split", "even/odd splitting of the double-well ground state");
  auto* plot = app.add_subcommand("plotdata", "CSV data for figures: fig2 | fig3 | fig4 | fig5 | custom");
  auto* oracle = app.add_subcommand("oracle", "series eigenvalues next to an independent reference");
  for (auto* sub : {solve, scan, split, plot, oracle}) add_common(sub, cfg);
  plot->add_option("--recipe", cfg.recipe, "fig2 | fig3 | fig4 | fig5 | custom")->required();
  plot->add_option("--out-dir", cfg.out_dir, "directory for the CSV files")->capture_default_str();
  plot->add_option("--points", cfg.points, "samples per wavefunction")->capture_default_str();
  plot->add_option("--energy", cfg.energy, "custom: dump psi at this energy instead of solving");
  plot->add_option("--seed", cfg.seed, "custom: initial values a0,a1");
  oracle->add_option("--against", cfg.against, "auto | fd | exact")->capture_default_str();
  oracle->add_option("--grid", cfg.grid, "finite-difference interior points")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg, out);
    if (scan->parsed()) return cmd_scan(cfg, out);
    if (split->parsed()) return cmd_split(cfg, out);
    if (plot->parsed()) return cmd_plotdata(cfg, out);
    return cmd_oracle(cfg, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace boxseries::cli
