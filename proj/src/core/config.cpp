#include "rfem/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "rfem/error.hpp"

namespace rfem {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  int line = 0;
  std::map<std::string, Entry> entries;
};

struct KeySpec {
  const char* name;
  bool required;
};

const std::map<std::string, std::vector<KeySpec>>& schema() {
  static const std::map<std::string, std::vector<KeySpec>> s = {
      {"geometry",
       {{"r_min", true}, {"r_inner", true}, {"r_outer", true},
        {"bottom_thickness", true}, {"wall_height", true}}},
      {"mesh", {{"nr", true}, {"nz", true}}},
      {"material",
       {{"conductivity", false}, {"plate_conductivity", false}, {"wall_conductivity", false}}},
      {"surface.A",
       {{"convection_coefficient", true}, {"air_temperature", true}, {"solar_flux", true}}},
      {"surface.C",
       {{"convection_coefficient", true}, {"air_temperature", true}, {"solar_flux", true}}},
      {"surface.D", {{"loss_coefficient", true}, {"ambient_temperature", true}}},
      {"surface.E", {{"exchanger_coefficient", true}, {"gas_temperature", true}}},
      {"surface.B", {{"h", true}, {"temperature", true}, {"flux", true}}},
      {"solver", {{"method", false}, {"residual_tolerance", false}}},
      {"output", {{"formats", false}, {"prefix", false}}},
  };
  return s;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Reader {
 public:
  Reader(std::string_view source, std::map<std::string, Section> sections)
      : source_(source), sections_(std::move(sections)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    if (line > 0) os << ':' << line;
    os << ": " << msg;
    throw Error(ErrorKind::Parse, os.str());
  }

  const Entry* find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto e = s->second.entries.find(key);
    return e == s->second.entries.end() ? nullptr : &e->second;
  }

  const Entry& require(const std::string& section, const std::string& key) const {
    if (const Entry* e = find(section, key)) return *e;
    auto s = sections_.find(section);
    fail(s == sections_.end() ? 0 : s->second.line,
         "missing required key '" + key + "' in [" + section + "]");
  }

  double number(const Entry& e, const std::string& key) const {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(e.line, "'" + key + "' is not a number: " + e.value);
    return v;
  }

  double number(const std::string& section, const std::string& key) const {
    return number(require(section, key), key);
  }

  std::optional<double> optional_number(const std::string& section, const std::string& key) const {
    if (const Entry* e = find(section, key)) return number(*e, key);
    return std::nullopt;
  }

  int integer(const std::string& section, const std::string& key) const {
    const Entry& e = require(section, key);
    int v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(e.line, "'" + key + "' is not an integer: " + e.value);
    return v;
  }

  bool has_section(const std::string& name) const { return sections_.count(name) != 0; }

 private:
  std::string source_;
  std::map<std::string, Section> sections_;
};

std::map<std::string, Section> tokenize(std::string_view text, std::string_view source) {
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  std::string current_name;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    std::ostringstream os;
    os << source << ':' << line_no << ": " << msg;
    throw Error(ErrorKind::Parse, os.str());
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      current_name = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().count(current_name)) fail("unknown section [" + current_name + "]");
      if (sections.count(current_name)) fail("duplicate section [" + current_name + "]");
      current = &sections[current_name];
      current->line = line_no;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    if (current == nullptr) fail("key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    bool known = false;
    for (const auto& spec : schema().at(current_name)) known |= key == spec.name;
    if (!known) fail("unknown key '" + key + "' in [" + current_name + "]");
    if (value.empty()) fail("empty value for '" + key + "'");
    if (!current->entries.emplace(key, Entry{value, line_no}).second) {
      fail("duplicate key '" + key + "' in [" + current_name + "]");
    }
  }
  return sections;
}

}  // namespace

const char* extension(OutputFormat format) noexcept {
  switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Vtk: return "vtk";
    case OutputFormat::Pgm: return "pgm";
  }
  return "";
}

std::vector<OutputFormat> parse_formats(std::string_view list) {
  std::vector<OutputFormat> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = list.find(',', pos);
    const auto item = trim(list.substr(pos, comma == std::string_view::npos ? list.size() - pos
                                                                            : comma - pos));
    pos = comma == std::string_view::npos ? list.size() + 1 : comma + 1;
    OutputFormat f;
    if (item == "csv") f = OutputFormat::Csv;
    else if (item == "vtk") f = OutputFormat::Vtk;
    else if (item == "pgm") f = OutputFormat::Pgm;
    else throw Error(ErrorKind::Configuration, "unknown output format '" + std::string(item) + "'");
    bool seen = false;
    for (auto g : out) seen |= g == f;
    if (!seen) out.push_back(f);
  }
  return out;
}

std::string RunConfig::output_path(OutputFormat format) const {
  return output_prefix + "_temperature." + extension(format);
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  const Reader in(source, tokenize(text, source));
  for (const auto& [name, keys] : schema()) {
    const bool optional_section = name == "solver" || name == "output" || name == "material";
    if (!optional_section && !in.has_section(name)) in.fail(0, "missing section [" + name + "]");
    for (const auto& spec : keys)
      if (spec.required) in.require(name, spec.name);
  }

  RunConfig cfg;
  cfg.geometry.r_min = in.number("geometry", "r_min");
  cfg.geometry.r_inner = in.number("geometry", "r_inner");
  cfg.geometry.r_outer = in.number("geometry", "r_outer");
  cfg.geometry.bottom_thickness = in.number("geometry", "bottom_thickness");
  cfg.geometry.wall_height = in.number("geometry", "wall_height");

  cfg.nr = in.integer("mesh", "nr");
  cfg.nz = in.integer("mesh", "nz");

  const auto base = in.optional_number("material", "conductivity");
  const auto plate = in.optional_number("material", "plate_conductivity");
  const auto wall = in.optional_number("material", "wall_conductivity");
  if (!plate && !base) in.require("material", "conductivity");
  if (!wall && !base) in.require("material", "conductivity");
  cfg.conductivity = {plate ? *plate : *base, wall ? *wall : *base};

  auto cavity = [&](const std::string& section) {
    return CavitySurface{in.number(section, "convection_coefficient"),
                         in.number(section, "air_temperature"), in.number(section, "solar_flux")};
  };
  cfg.physics.wall = cavity("surface.A");
  cfg.physics.floor = cavity("surface.C");
  cfg.physics.exterior.loss_coefficient = in.number("surface.D", "loss_coefficient");
  cfg.physics.exterior.ambient_temperature = in.number("surface.D", "ambient_temperature");
  cfg.physics.exchanger.coefficient = in.number("surface.E", "exchanger_coefficient");
  cfg.physics.exchanger.gas_temperature = in.number("surface.E", "gas_temperature");
  cfg.physics.aperture.h = in.number("surface.B", "h");
  cfg.physics.aperture.temperature = in.number("surface.B", "temperature");
  cfg.physics.aperture.flux = in.number("surface.B", "flux");

  if (const Entry* m = in.find("solver", "method")) {
    const auto method = method_from_string(m->value.c_str());
    if (!method) in.fail(m->line, "unknown method '" + m->value + "' (exact|masscenter|modified)");
    cfg.method = *method;
  }
  if (auto tol = in.optional_number("solver", "residual_tolerance")) cfg.solver.residual_tolerance = *tol;
  if (const Entry* f = in.find("output", "formats")) {
    try {
      cfg.formats = parse_formats(f->value);
    } catch (const Error& e) {
      in.fail(f->line, e.what());
    }
  }
  if (const Entry* p = in.find("output", "prefix")) cfg.output_prefix = p->value;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot open config file " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_config(buf.str(), path);
}

Mesh build_mesh(const RunConfig& config) {
  return generate_mesh(config.geometry, config.nr, config.nz);
}

ReceiverRun run_config(const RunConfig& config) {
  return solve_receiver(config.geometry, config.nr, config.nz, config.conductivity,
                        config.physics, config.method, config.solver);
}

}  // namespace rfem
