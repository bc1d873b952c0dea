#include "frozenstar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "frozenstar/errors.hpp"

namespace frozenstar::io {
namespace {

cplx parse_complex(const json& v, const char* what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw Error(ErrorCode::ConfigParse, std::string(what) + ": expected number or [re, im]");
}

json complex_to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

template <class T>
T require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::ConfigParse, std::string("missing '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, std::string("bad '") + key + "': " + e.what());
  }
}

}  // namespace

StarGraphSpec RawConfig::graph() const {
  if (!angles) throw Error(ErrorCode::InvalidGeometry, "config has no angles");
  return StarGraphSpec(lengths, *angles);
}

ModelConfig RawConfig::model() const {
  return ModelConfig::from_graph(graph(), potentials, mode, pole_window);
}

RawConfig parse_config(const json& doc, std::size_t order_override) {
  if (!doc.is_object()) throw Error(ErrorCode::ConfigParse, "config must be a JSON object");
  RawConfig cfg;
  const json& edges = doc.contains("edges") ? doc.at("edges") : json();
  if (!edges.is_array() || edges.empty()) {
    throw Error(ErrorCode::ConfigParse, "'edges' must be a non-empty array");
  }
  cfg.m = doc.contains("m") ? require<std::size_t>(doc, "m") : edges.size();
  if (cfg.m != edges.size()) throw Error(ErrorCode::ConfigParse, "'m' disagrees with 'edges'");
  if (doc.contains("mode")) cfg.mode = mode_from_string(require<std::string>(doc, "mode"));
  for (const json& e : edges) {
    // Normalized configs may leave the length out; it is pi regardless.
    const bool implied = cfg.mode == Mode::Normalized && e.is_object() && !e.contains("length");
    cfg.lengths.push_back(implied ? kPi : require<double>(e, "length"));
  }
  if (doc.contains("angles") && !doc.at("angles").is_null()) {
    cfg.angles = require<std::vector<double>>(doc, "angles");
  }
  if (doc.contains("pole_window")) cfg.pole_window = require<double>(doc, "pole_window");
  if (cfg.mode == Mode::Normalized) {
    for (double& l : cfg.lengths) {
      if (std::abs(l - kPi) <= 1e-12) l = kPi;
    }
  }

  std::size_t order = order_override;
  if (order == 0 && doc.contains("N")) order = require<std::size_t>(doc, "N");
  if (order == 0) {
    for (const json& e : edges) {
      if (e.contains("potential") && e.at("potential").value("type", "") == "coeffs") {
        order = std::max(order, e.at("potential").at("values").size());
      }
    }
  }
  if (order == 0) order = 16;

  cfg.potentials = PotentialCoeffs::zeros(cfg.lengths, order);
  for (std::size_t j = 0; j < cfg.m; ++j) {
    const json& e = edges[j];
    if (!e.contains("potential") || e.at("potential").is_null()) continue;
    const json& pot = e.at("potential");
    const std::string type = require<std::string>(pot, "type");
    const json values = pot.contains("values") ? pot.at("values") : json::array();
    if (!values.is_array()) throw Error(ErrorCode::ConfigParse, "'values' must be an array");
    if (type == "coeffs") {
      for (std::size_t n = 0; n < std::min(order, values.size()); ++n) {
        cfg.potentials.coeffs[j][n] = parse_complex(values[n], "potential coefficient");
      }
    } else if (type == "samples") {
      const auto grid = require<std::size_t>(pot, "grid");
      if (values.size() != grid + 1) {
        throw Error(ErrorCode::ConfigParse, "sampled potential needs grid + 1 values");
      }
      SampledFunction f;
      f.length = cfg.lengths[j];
      for (const json& v : values) f.values.push_back(parse_complex(v, "potential sample"));
      const SineCoefficients sc = sine_coefficients(f, order);
      if (sc.grid_too_coarse) {
        cfg.warnings.push_back("GridTooCoarse: edge " + std::to_string(j + 1) + " has M = " +
                               std::to_string(grid) + " < 8N = " + std::to_string(8 * order));
      }
      cfg.potentials.coeffs[j] = sc.values;
    } else {
      throw Error(ErrorCode::ConfigParse, "unknown potential type '" + type + "'");
    }
  }
  return cfg;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IO, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, "'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IO, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IO, "write to '" + path + "' failed");
}

RawConfig load_config(const std::string& path, std::size_t order_override) {
  return parse_config(read_json_file(path), order_override);
}

json config_to_json(const RawConfig& cfg) {
  json doc;
  doc["m"] = cfg.m;
  doc["mode"] = std::string(to_string(cfg.mode));
  doc["N"] = cfg.potentials.order;
  doc["pole_window"] = cfg.pole_window;
  json edges = json::array();
  for (std::size_t j = 0; j < cfg.m; ++j) {
    json values = json::array();
    for (const cplx& q : cfg.potentials.coeffs[j]) values.push_back(complex_to_json(q));
    edges.push_back({{"length", cfg.lengths[j]},
                     {"potential", {{"type", "coeffs"}, {"values", values}}}});
  }
  doc["edges"] = edges;
  if (cfg.angles) doc["angles"] = *cfg.angles;
  return doc;
}

json default_config() {
  // Four distinct edges, no reflex angle, a small complex potential.
  return json::parse(R"({
    "m": 4,
    "mode": "verbatim",
    "N": 4,
    "edges": [
      {"length": 1.0, "potential": {"type": "coeffs", "values": [[0.3, 0.0], [0.0, 0.1], [-0.2, 0.0], [0.05, 0.02]]}},
      {"length": 1.3, "potential": {"type": "coeffs", "values": [[0.0, 0.0], [0.25, -0.05]]}},
      {"length": 0.9, "potential": {"type": "coeffs", "values": [[-0.15, 0.0], [0.0, 0.0], [0.1, 0.1]]}},
      {"length": 1.1}
    ],
    "angles": [1.9, 1.4, 1.5, 1.4831853071795865]
  })");
}

SampleGridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw Error(ErrorCode::Usage, "empty grid spec");
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw Error(ErrorCode::Usage, "grid spec '" + text + "' is incomplete");
    try {
      std::size_t used = 0;
      const double v = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::Usage, "bad number '" + parts[i] + "' in grid spec");
    }
  };
  auto edge = [&](std::size_t i) {
    const double v = num(i);
    if (v < 1 || v != std::floor(v)) throw Error(ErrorCode::Usage, "edge index must be >= 1");
    return static_cast<std::size_t>(v) - 1;
  };
  const std::string& kind = parts[0];
  auto expect = [&](std::size_t n) {
    if (parts.size() != n) throw Error(ErrorCode::Usage, "grid spec '" + text + "' has wrong arity");
  };
  if (kind == "integers") {
    expect(3);
    return SampleGridSpec::integers(static_cast<int>(num(1)), static_cast<int>(num(2)));
  }
  if (kind == "resonant") {
    expect(4);
    return SampleGridSpec::edge_resonant(edge(1), static_cast<int>(num(2)),
                                         static_cast<int>(num(3)));
  }
  if (kind == "zeroset") {
    expect(4);
    return SampleGridSpec::zero_set(edge(1), num(2), num(3));
  }
  if (kind == "uniform") {
    expect(4);
    const double count = num(3);
    if (count < 1 || count != std::floor(count)) throw Error(ErrorCode::Usage, "bad point count");
    return SampleGridSpec::uniform(num(1), num(2), static_cast<std::size_t>(count));
  }
  if (kind == "custom") {
    expect(2);
    std::vector<cplx> pts;
    std::stringstream ps(parts[1]);
    while (std::getline(ps, item, ';')) {
      try {
        pts.emplace_back(std::stod(item), 0.0);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Usage, "bad custom grid point '" + item + "'");
      }
    }
    if (pts.empty()) throw Error(ErrorCode::Usage, "custom grid needs at least one point");
    return SampleGridSpec::custom(std::move(pts));
  }
  throw Error(ErrorCode::Usage, "unknown grid kind '" + kind + "'");
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_samples_csv(std::ostream& out, const PhiSampleSet& set) {
  out << "z_re,z_im,phi_re,phi_im\n";
  for (std::size_t i = 0; i < set.grid.size(); ++i) {
    out << format_number(set.grid[i].real()) << ',' << format_number(set.grid[i].imag()) << ','
        << format_number(set.values[i].real()) << ',' << format_number(set.values[i].imag())
        << '\n';
  }
}

json samples_to_json(const PhiSampleSet& set) {
  json grid = json::array(), values = json::array();
  for (const cplx& z : set.grid) grid.push_back(complex_to_json(z));
  for (const cplx& v : set.values) values.push_back(complex_to_json(v));
  return {{"mode", std::string(to_string(set.mode))},
          {"fingerprint", set.fingerprint},
          {"fingerprints",
           {{"lengths", set.lengths_fingerprint},
            {"chords", set.chords_fingerprint},
            {"potentials", set.potentials_fingerprint}}},
          {"grid_spec", set.grid_description},
          {"count", set.grid.size()},
          {"grid", grid},
          {"values", values}};
}

PhiSampleSet samples_from_json(const json& doc) {
  PhiSampleSet set;
  try {
    set.mode = mode_from_string(doc.at("mode").get<std::string>());
    set.fingerprint = doc.value("fingerprint", "");
    if (doc.contains("fingerprints")) {
      const json& fp = doc.at("fingerprints");
      set.lengths_fingerprint = fp.value("lengths", "");
      set.chords_fingerprint = fp.value("chords", "");
      set.potentials_fingerprint = fp.value("potentials", "");
    }
    set.grid_description = doc.value("grid_spec", "");
    for (const json& z : doc.at("grid")) set.grid.push_back(parse_complex(z, "grid point"));
    for (const json& v : doc.at("values")) set.values.push_back(parse_complex(v, "sample value"));
    const auto count = doc.value("count", set.grid.size());
    if (count != set.grid.size() || count != set.values.size()) {
      std::ostringstream msg;
      msg << "sample file declares " << count << " points, has " << set.grid.size()
          << " grid points and " << set.values.size() << " values";
      throw Error(ErrorCode::GridMismatch, msg.str());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, std::string("sample file: ") + e.what());
  }
  return set;
}

PhiSampleSet load_samples(const std::string& path) {
  json doc;
  try {
    doc = read_json_file(path);
  } catch (const Error& e) {
    // A sample file cut short no longer parses; report it as a grid problem.
    if (e.code() != ErrorCode::ConfigParse) throw;
    throw Error(ErrorCode::GridMismatch, std::string("truncated or malformed sample file: ") + e.what());
  }
  return samples_from_json(doc);
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json report_to_json(const TopologyReport& r) {
  return {{"kind", "topology"},
          {"status", std::string(to_string(r.status))},
          {"message", r.message},
          {"method", r.method},
          {"reciprocals", r.reciprocals},
          {"chords", r.chords},
          {"angles", r.angles},
          {"closure_defect", r.closure_defect},
          {"residual_norm", finite_or_null(r.residual_norm)},
          {"data_norm", finite_or_null(r.data_norm)},
          {"condition", finite_or_null(r.condition)}};
}

json report_to_json(const PotentialReport& r) {
  json coeffs = json::array();
  for (const auto& edge : r.coefficients.coeffs) {
    json e = json::array();
    for (const cplx& q : edge) e.push_back(complex_to_json(q));
    coeffs.push_back(e);
  }
  return {{"kind", "potential"},
          {"status", std::string(to_string(r.status))},
          {"message", r.message},
          {"N", r.coefficients.order},
          {"coefficients", coeffs},
          {"residual_norm", finite_or_null(r.residual_norm)},
          {"condition", finite_or_null(r.condition)},
          {"iterations", r.iterations},
          {"residual_history", r.residual_history}};
}

json spectrum_to_json(const OracleSpectrum& s) {
  json ev = json::array();
  for (const cplx& v : s.eigenvalues) ev.push_back(complex_to_json(v));
  return {{"h", s.h}, {"count", s.count}, {"eigenvalues", ev}};
}

void write_spectrum_csv(std::ostream& out, const OracleSpectrum& s) {
  out << "index,lambda_re,lambda_im,h\n";
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    out << i + 1 << ',' << format_number(s.eigenvalues[i].real()) << ','
        << format_number(s.eigenvalues[i].imag()) << ',' << format_number(s.h) << '\n';
  }
}

void write_zero_table_csv(std::ostream& out, const std::vector<ZeroComparison>& rows) {
  out << "z,lambda,nearest_re,nearest_im,distance\n";
  for (const auto& r : rows) {
    out << format_number(r.z) << ',' << format_number(r.lambda) << ','
        << format_number(r.nearest.real()) << ',' << format_number(r.nearest.imag()) << ','
        << format_number(r.distance) << '\n';
  }
}

}  // namespace frozenstar::io
