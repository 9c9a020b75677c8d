// Field exchange: flat float64 binary with a key=value sidecar header
// (row-major space, time-major, component-major within a time slice), and
// the declarative text factory for built-in drift fields.
#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "driftlab/drift/examples.hpp"

namespace driftlab {

struct FieldSetHeader {
  int dim = 3;
  int n = 0;
  double half_width = 0;
  int components = 1;
  std::vector<double> times;
};

inline void write_field_set(const std::string& base_path, const Grid& g,
                            const std::vector<double>& times,
                            const std::vector<const std::vector<double>*>& slabs,
                            int components) {
  std::ofstream meta(base_path + ".meta");
  if (!meta) throw std::runtime_error("cannot write " + base_path + ".meta");
  meta << "format=driftlab-field-v1\n";
  meta << "dtype=float64\n";
  meta << "order=time-major,component-major,space-row-major\n";
  meta << "dim=" << g.dim << "\n";
  meta << "n=" << g.n << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", g.half_width);
  meta << "half_width=" << buf << "\n";
  meta << "components=" << components << "\n";
  meta << "times=";
  for (std::size_t j = 0; j < times.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", times[j]);
    meta << (j ? "," : "") << buf;
  }
  meta << "\n";

  std::ofstream bin(base_path + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot write " + base_path + ".bin");
  for (const auto* slab : slabs)
    bin.write(reinterpret_cast<const char*>(slab->data()),
              std::streamsize(slab->size() * sizeof(double)));
}

inline void write_scalar_series(const std::string& base_path, const Grid& g,
                                const std::vector<double>& times,
                                const std::vector<ScalarField>& fields) {
  std::vector<const std::vector<double>*> slabs;
  for (const auto& f : fields) slabs.push_back(&f.v);
  write_field_set(base_path, g, times, slabs, 1);
}

inline void write_vector_series(const std::string& base_path, const Grid& g,
                                const std::vector<double>& times,
                                const std::vector<VectorField>& fields) {
  std::vector<const std::vector<double>*> slabs;
  for (const auto& f : fields)
    for (int a = 0; a < g.dim; ++a) slabs.push_back(&f.comp[a]);
  write_field_set(base_path, g, times, slabs, g.dim);
}

inline std::map<std::string, std::string> read_sidecar(const std::string& meta_path) {
  std::ifstream in(meta_path);
  if (!in) throw std::runtime_error("cannot read " + meta_path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

struct FieldSet {
  FieldSetHeader header;
  Grid grid;
  // slabs[time][component] -> values
  std::vector<std::vector<std::vector<double>>> slabs;
};

inline FieldSet read_field_set(const std::string& base_path) {
  auto kv = read_sidecar(base_path + ".meta");
  if (kv["format"] != "driftlab-field-v1") throw std::runtime_error("unknown field format");
  if (kv["dtype"] != "float64") throw std::runtime_error("unsupported dtype " + kv["dtype"]);
  FieldSet fs;
  fs.header.dim = std::stoi(kv.at("dim"));
  fs.header.n = std::stoi(kv.at("n"));
  fs.header.half_width = std::stod(kv.at("half_width"));
  fs.header.components = std::stoi(kv.at("components"));
  std::stringstream ts(kv.at("times"));
  std::string tok;
  while (std::getline(ts, tok, ',')) fs.header.times.push_back(std::stod(tok));
  fs.grid = Grid(fs.header.dim, fs.header.n, fs.header.half_width);

  std::ifstream bin(base_path + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot read " + base_path + ".bin");
  std::size_t pts = fs.grid.size();
  fs.slabs.resize(fs.header.times.size());
  for (auto& per_time : fs.slabs) {
    per_time.resize(fs.header.components);
    for (auto& slab : per_time) {
      slab.resize(pts);
      bin.read(reinterpret_cast<char*>(slab.data()), std::streamsize(pts * sizeof(double)));
      if (!bin) throw std::runtime_error("truncated field data in " + base_path + ".bin");
    }
  }
  return fs;
}

inline DriftSpec drift_from_field_set(const FieldSet& fs, std::string name = "sampled") {
  if (fs.header.components != fs.grid.dim)
    throw std::runtime_error("field set is not a vector field of grid dimension");
  auto data = std::make_shared<SampledDrift>();
  data->grid = fs.grid;
  data->times = fs.header.times;
  for (std::size_t j = 0; j < fs.header.times.size(); ++j) {
    VectorField vf(fs.grid, fs.header.times[j]);
    for (int a = 0; a < fs.grid.dim; ++a) vf.comp[a] = fs.slabs[j][a];
    data->slices.push_back(std::move(vf));
  }
  return make_sampled_drift(std::move(name), data);
}

// Declarative built-in drift factory. Parameters not supplied fall back to
// the preset defaults.
inline DriftSpec make_builtin_drift(const std::string& name,
                                    const std::map<std::string, double>& p, const Grid& g) {
  auto get = [&](const char* key, double dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
  };
  if (name == "constant") {
    return constant_field({get("vx", 0.5), get("vy", 0.0), get("vz", 0.0)});
  }
  if (name == "hardy") {
    if (g.dim != 3) throw std::invalid_argument("hardy drift needs d = 3");
    return hardy_field(get("kappa", 0.3));
  }
  if (name == "rotational_bmo") {
    return rotational_bmo_field(get("scale", 0.5));
  }
  if (name == "mprime") {
    ScalarField W =
        ball_indicator(g, get("radius", 1.0), get("amplitude", 1.0));
    return mprime_field(W).drift;
  }
  if (name == "kato_plane") {
    return kato_plane_field(get("eps", 0.5), get("bump_radius", 0.5 * g.half_width));
  }
  if (name == "lps_demo") {
    return lps_demo_field(get("amplitude", 0.5), get("bump_radius", 0.5 * g.half_width));
  }
  if (name == "free" || name == "zero") {
    return constant_field({0, 0, 0});
  }
  throw std::invalid_argument("unknown drift field: " + name);
}

}  // namespace driftlab
