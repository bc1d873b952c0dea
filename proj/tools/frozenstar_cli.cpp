// Command-line front end: forward simulation, recovery, finite-difference
// oracle and the property suite. Exit codes are the numeric ErrorCode values.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "frozenstar/errors.hpp"
#include "frozenstar/io.hpp"
#include "frozenstar/recovery.hpp"
#include "frozenstar/special_solution.hpp"
#include "frozenstar/verify.hpp"

using namespace frozenstar;
using io::json;

namespace {

struct Options {
  std::string config;
  std::string grid = "uniform:0.1:10:200";
  std::string mode;
  std::string out;
  std::string observed;
  std::string format;
  std::string range = "0.1:6";
  std::size_t order = 0;
  std::size_t count = 6;
  double h = 0.0;
  double tolerance = 0.0;
  bool serial = false;
};

Execution exec_of(const Options& o) { return o.serial ? Execution::Serial : Execution::Parallel; }

io::RawConfig load(const Options& o, bool allow_default) {
  io::RawConfig raw;
  if (o.config.empty()) {
    if (!allow_default) throw Error(ErrorCode::Usage, "--config is required");
    raw = io::parse_config(io::default_config(), o.order);
  } else {
    raw = io::load_config(o.config, o.order);
  }
  if (!o.mode.empty()) {
    raw.mode = mode_from_string(o.mode);
    if (raw.mode == Mode::Normalized) {
      for (double& l : raw.lengths) {
        if (std::abs(l - kPi) <= 1e-12) l = kPi;
      }
      raw.potentials.lengths = raw.lengths;
    }
  }
  for (const auto& w : raw.warnings) std::cerr << "warning: " << w << '\n';
  return raw;
}

// Format from --format, else from the output extension, else `fallback`.
std::string output_format(const Options& o, const std::string& fallback) {
  if (!o.format.empty()) {
    if (o.format != "csv" && o.format != "json") {
      throw Error(ErrorCode::Usage, "--format must be csv or json");
    }
    return o.format;
  }
  if (o.out.size() >= 4 && o.out.compare(o.out.size() - 4, 4, ".csv") == 0) return "csv";
  if (o.out.size() >= 5 && o.out.compare(o.out.size() - 5, 5, ".json") == 0) return "json";
  return fallback;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    io::write_text_file(o.out, text);
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

int cmd_simulate(const Options& o) {
  const io::RawConfig raw = load(o, false);
  const ModelConfig cfg = raw.model();
  const PhiSampleSet set = sample_phi(cfg, io::parse_grid(o.grid), exec_of(o));
  if (output_format(o, "csv") == "csv") {
    std::ostringstream s;
    io::write_samples_csv(s, set);
    emit(o, s.str());
  } else {
    emit(o, dump(io::samples_to_json(set)));
  }
  return 0;
}

PhiSampleSet observed(const Options& o) {
  if (o.observed.empty()) throw Error(ErrorCode::Usage, "--observed is required");
  return io::load_samples(o.observed);
}

void require_match(const std::string& have, const std::string& want, const char* what) {
  if (have != want) {
    throw Error(ErrorCode::FingerprintMismatch,
                std::string("observed samples were generated with different ") + what +
                    " (fingerprint " + have + ", config " + want + ")");
  }
}

int finish_report(const Options& o, const json& report, RecoveryStatus status) {
  emit(o, dump(report));
  if (status == RecoveryStatus::Ok) return 0;
  std::cerr << "recovery status: " << to_string(status) << '\n';
  return static_cast<int>(error_code(status));
}

int cmd_recover_topology(const Options& o) {
  const io::RawConfig raw = load(o, false);
  TopologyRecoveryProblem p;
  p.lengths = raw.lengths;
  p.potentials = raw.potentials;
  p.mode = raw.mode;
  p.pole_window = raw.pole_window;
  p.observed = observed(o);
  if (o.tolerance > 0.0) p.closure_tolerance = o.tolerance;

  const ModelConfig known(raw.lengths, std::vector<double>(raw.m, 1.0), raw.potentials, raw.mode,
                          raw.pole_window);
  require_match(p.observed.lengths_fingerprint, known.lengths_fingerprint(), "edge lengths or mode");
  require_match(p.observed.potentials_fingerprint, known.potentials_fingerprint(), "potentials");

  const TopologyReport r = raw.m >= 3 ? recover_angles(p, exec_of(o)) : recover_chords(p, exec_of(o));
  return finish_report(o, io::report_to_json(r), r.status);
}

int cmd_recover_potential(const Options& o) {
  const io::RawConfig raw = load(o, false);
  const ModelConfig known = raw.model();
  PotentialRecoveryProblem p;
  p.lengths = known.lengths();
  p.chords = known.chords();
  p.mode = known.mode();
  p.pole_window = known.pole_window();
  p.order = o.order > 0 ? o.order : raw.potentials.order;
  p.observed = observed(o);
  if (o.tolerance > 0.0) p.residual_tolerance = o.tolerance;

  require_match(p.observed.lengths_fingerprint, known.lengths_fingerprint(), "edge lengths or mode");
  require_match(p.observed.chords_fingerprint, known.chords_fingerprint(), "chords");

  const PotentialReport r = recover_potentials(p, exec_of(o));
  return finish_report(o, io::report_to_json(r), r.status);
}

double oracle_step(const Options& o, const ModelConfig& cfg) {
  if (o.h > 0.0) return o.h;
  return *std::min_element(cfg.lengths().begin(), cfg.lengths().end()) / 100.0;
}

int cmd_oracle_spectrum(const Options& o) {
  const ModelConfig cfg = load(o, false).model();
  const OracleSpectrum s = spectrum(assemble(cfg, oracle_step(o, cfg)), o.count);
  if (output_format(o, "json") == "csv") {
    std::ostringstream out;
    io::write_spectrum_csv(out, s);
    emit(o, out.str());
  } else {
    emit(o, dump(io::spectrum_to_json(s)));
  }
  return 0;
}

int cmd_compare(const Options& o) {
  const ModelConfig cfg = load(o, false).model();
  double lo = 0.0, hi = 0.0;
  char sep = 0;
  std::istringstream rs(o.range);
  if (!(rs >> lo >> sep >> hi) || sep != ':' || !rs.eof()) {
    throw Error(ErrorCode::Usage, "--range must look like LO:HI");
  }
  const OracleSpectrum s = spectrum(assemble(cfg, oracle_step(o, cfg)), o.count);
  const auto table = compare_phi_zeros(cfg, s, lo, hi);
  if (output_format(o, "csv") == "csv") {
    std::ostringstream out;
    io::write_zero_table_csv(out, table);
    emit(o, out.str());
  } else {
    json rows = json::array();
    for (const auto& r : table) {
      rows.push_back({{"z", r.z},
                      {"lambda", r.lambda},
                      {"nearest", {r.nearest.real(), r.nearest.imag()}},
                      {"distance", r.distance}});
    }
    emit(o, dump({{"spectrum", io::spectrum_to_json(s)}, {"zeros", rows}}));
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const io::RawConfig raw = load(o, true);
  VerifyOptions vo;
  vo.exec = exec_of(o);
  if (o.tolerance > 0.0) vo.tolerance_scale = o.tolerance;
  if (o.h > 0.0) vo.oracle_h = o.h;
  const VerifySummary s = verify(raw, vo);
  emit(o, dump(summary_to_json(s)));
  for (const auto& r : s.results) {
    std::cerr << to_string(r.status) << "  " << r.name << "  " << r.detail << '\n';
  }
  return s.passed() ? 0 : static_cast<int>(ErrorCode::VerificationFailed);
}

int cmd_emit_plot_data(const Options& o) {
  const ModelConfig cfg = load(o, false).model();
  const std::vector<cplx> grid = build_grid(cfg, io::parse_grid(o.grid));
  std::vector<PhiBlocks> blocks(grid.size());
#pragma omp parallel for schedule(static) if (!o.serial)
  for (long i = 0; i < static_cast<long>(grid.size()); ++i) blocks[i] = phi_blocks(cfg, grid[i]);

  std::ostringstream out;
  out << "z_re,z_im,nonlocal_re,nonlocal_im,center_re,center_im,outer_edge_re,outer_edge_im,"
         "outer_chord_re,outer_chord_im,phi_re,phi_im,phi_abs\n";
  auto put = [&](cplx c) {
    out << ',' << io::format_number(c.real()) << ',' << io::format_number(c.imag());
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const PhiBlocks& b = blocks[i];
    out << io::format_number(grid[i].real()) << ',' << io::format_number(grid[i].imag());
    put(b.nonlocal);
    put(b.center);
    put(b.outer_edge);
    put(b.outer_chord);
    put(b.total());
    out << ',' << io::format_number(std::abs(b.total())) << '\n';
  }
  emit(o, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frozen-argument star graph toolkit: forward model, recovery, oracle"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");
  Options o;

  auto common = [&](CLI::App* sub, bool grid) {
    sub->set_help_flag("--help", "print this help and exit");  // "h" is the mesh step
    sub->add_option("--config", o.config, "graph + potential JSON");
    sub->add_option("--mode", o.mode, "verbatim | normalized (overrides the config)");
    sub->add_option("--out", o.out, "output file (stdout if omitted)");
    sub->add_option("--N", o.order, "Fourier truncation order (overrides the config)");
    sub->add_option("--format", o.format, "csv | json (default from --out extension)");
    sub->add_flag("--serial", o.serial, "disable OpenMP in sampling kernels");
    if (grid) sub->add_option("--grid", o.grid, "grid spec, e.g. uniform:0.1:10:200");
  };

  auto* simulate = app.add_subcommand("simulate", "sample Phi on a grid");
  common(simulate, true);
  auto* rtop = app.add_subcommand("recover-topology", "recover chords and angles");
  common(rtop, false);
  rtop->add_option("--observed", o.observed, "sample file from simulate (JSON)");
  rtop->add_option("--tolerance", o.tolerance, "closure tolerance");
  auto* rpot = app.add_subcommand("recover-potential", "recover potential coefficients");
  common(rpot, false);
  rpot->add_option("--observed", o.observed, "sample file from simulate (JSON)");
  rpot->add_option("--tolerance", o.tolerance, "residual tolerance");
  auto* oracle = app.add_subcommand("oracle-spectrum", "finite-difference eigenvalues");
  common(oracle, false);
  oracle->add_option("--h", o.h, "mesh step (default: shortest edge / 100)");
  oracle->add_option("--count", o.count, "number of eigenvalues");
  auto* compare = app.add_subcommand("compare", "zeros of Phi against oracle eigenvalues");
  common(compare, false);
  compare->add_option("--h", o.h, "mesh step");
  compare->add_option("--count", o.count, "number of eigenvalues");
  compare->add_option("--range", o.range, "real z range LO:HI");
  auto* ver = app.add_subcommand("verify", "run the property suite on a config");
  common(ver, false);
  ver->add_option("--tolerance", o.tolerance, "scale factor for every tolerance");
  ver->add_option("--h", o.h, "mesh step for the oracle check");
  auto* plot = app.add_subcommand("emit-plot-data", "Phi and its blocks on a grid, CSV");
  common(plot, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorCode::Usage);
  }

  try {
    if (*simulate) return cmd_simulate(o);
    if (*rtop) return cmd_recover_topology(o);
    if (*rpot) return cmd_recover_potential(o);
    if (*oracle) return cmd_oracle_spectrum(o);
    if (*compare) return cmd_compare(o);
    if (*ver) return cmd_verify(o);
    if (*plot) return cmd_emit_plot_data(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return static_cast<int>(ErrorCode::Usage);
}
