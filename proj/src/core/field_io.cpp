#include "rfem/field_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rfem/error.hpp"

namespace rfem {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return in;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write to " + path + " failed");
}

double parse_double(std::string_view s, const std::string& path) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Io, path + ": malformed number '" + std::string(s) + "'");
  }
  return v;
}

template <typename T>
T expect_value(std::istream& in, const std::string& path) {
  std::string token;
  if (!(in >> token)) throw Error(ErrorKind::Io, path + ": unexpected end of file");
  if constexpr (std::is_same_v<T, double>) {
    return parse_double(token, path);
  } else {
    T v{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorKind::Io, path + ": malformed integer '" + token + "'");
    }
    return v;
  }
}

void expect_word(std::istream& in, const std::string& word, const std::string& path) {
  std::string token;
  if (!(in >> token) || token != word) {
    throw Error(ErrorKind::Io, path + ": expected '" + word + "', found '" + token + "'");
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_csv(const TemperatureField& field, const std::string& path) {
  auto out = open_out(path);
  out << "node_id,r,z,T\n";
  const auto& nodes = field.mesh->nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out << i << ',' << format_double(nodes[i].r) << ',' << format_double(nodes[i].z) << ','
        << format_double(field.temperature[i]) << '\n';
  }
  finish(out, path);
}

void write_vtk(const TemperatureField& field, const std::string& path) {
  auto out = open_out(path);
  const Mesh& mesh = *field.mesh;
  out << "# vtk DataFile Version 3.0\n"
      << "cavity receiver temperature field\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.nodes.size() << " double\n";
  for (const auto& n : mesh.nodes) out << format_double(n.r) << ' ' << format_double(n.z) << " 0\n";
  out << "CELLS " << mesh.elements.size() << ' ' << 4 * mesh.elements.size() << '\n';
  for (const auto& e : mesh.elements) {
    out << "3 " << e.nodes[0] << ' ' << e.nodes[1] << ' ' << e.nodes[2] << '\n';
  }
  out << "CELL_TYPES " << mesh.elements.size() << '\n';
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) out << "5\n";
  out << "POINT_DATA " << mesh.nodes.size() << '\n'
      << "SCALARS temperature double 1\n"
      << "LOOKUP_TABLE default\n";
  for (double t : field.temperature) out << format_double(t) << '\n';
  finish(out, path);
}

void write_pgm(const TemperatureField& field, const std::string& path) {
  const Mesh& mesh = *field.mesh;
  if (mesh.r_lines.size() < 2 || mesh.z_lines.size() < 2) {
    throw Error(ErrorKind::Configuration, "PGM export needs a structured mesh with grid lines");
  }
  const int width = static_cast<int>(mesh.r_lines.size()) - 1;
  const int height = static_cast<int>(mesh.z_lines.size()) - 1;
  std::vector<double> sum(static_cast<std::size_t>(width * height), 0.0);
  std::vector<int> count(sum.size(), 0);

  auto cell_index = [](const std::vector<double>& lines, double x) {
    const auto it = std::upper_bound(lines.begin(), lines.end(), x);
    return static_cast<int>(it - lines.begin()) - 1;
  };
  for (const auto& e : mesh.elements) {
    const auto p = mesh.corners(e);
    const int i = cell_index(mesh.r_lines, (p[0].r + p[1].r + p[2].r) / 3.0);
    const int j = cell_index(mesh.z_lines, (p[0].z + p[1].z + p[2].z) / 3.0);
    const std::size_t c = static_cast<std::size_t>(j * width + i);
    sum[c] += (field.temperature[e.nodes[0]] + field.temperature[e.nodes[1]] +
               field.temperature[e.nodes[2]]) / 3.0;
    ++count[c];
  }

  const double lo = field.min_temperature();
  double range = field.max_temperature() - lo;
  // Roundoff-level spread counts as a uniform field.
  if (range <= 1e-12 * std::max(std::abs(lo), std::abs(field.max_temperature()))) range = 0.0;
  auto out = open_out(path);
  out << "P2\n" << width << ' ' << height << "\n255\n";
  for (int j = height - 1; j >= 0; --j) {
    for (int i = 0; i < width; ++i) {
      const std::size_t c = static_cast<std::size_t>(j * width + i);
      int gray = 0;
      if (count[c] > 0) {
        const double t = sum[c] / count[c];
        gray = range > 0.0 ? static_cast<int>(std::lround(255.0 * (t - lo) / range)) : 255;
        gray = std::clamp(gray, 0, 255);
      }
      out << gray << ((i + 1) % 16 == 0 || i + 1 == width ? '\n' : ' ');
    }
  }
  finish(out, path);
}

void export_field(const TemperatureField& field, OutputFormat format, const std::string& path) {
  switch (format) {
    case OutputFormat::Csv: return write_csv(field, path);
    case OutputFormat::Vtk: return write_vtk(field, path);
    case OutputFormat::Pgm: return write_pgm(field, path);
  }
}

FieldFile read_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "node_id,r,z,T") {
    throw Error(ErrorKind::Io, path + ": missing CSV header");
  }
  FieldFile f;
  while (std::getline(in, line)) {
    std::vector<std::string_view> cols;
    std::string_view rest = line;
    for (auto comma = rest.find(','); comma != std::string_view::npos; comma = rest.find(',')) {
      cols.push_back(rest.substr(0, comma));
      rest = rest.substr(comma + 1);
    }
    cols.push_back(rest);
    if (cols.size() != 4) throw Error(ErrorKind::Io, path + ": expected 4 columns");
    f.nodes.push_back({parse_double(cols[1], path), parse_double(cols[2], path)});
    f.temperature.push_back(parse_double(cols[3], path));
  }
  return f;
}

FieldFile read_vtk(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("# vtk DataFile Version", 0) != 0) {
    throw Error(ErrorKind::Io, path + ": not a legacy VTK file");
  }
  std::getline(in, line);  // title
  expect_word(in, "ASCII", path);
  expect_word(in, "DATASET", path);
  expect_word(in, "UNSTRUCTURED_GRID", path);

  FieldFile f;
  expect_word(in, "POINTS", path);
  const auto n = expect_value<std::size_t>(in, path);
  expect_word(in, "double", path);
  f.nodes.resize(n);
  for (auto& p : f.nodes) {
    p.r = expect_value<double>(in, path);
    p.z = expect_value<double>(in, path);
    expect_value<double>(in, path);
  }
  expect_word(in, "CELLS", path);
  const auto m = expect_value<std::size_t>(in, path);
  expect_value<std::size_t>(in, path);
  f.cells.resize(m);
  for (auto& c : f.cells) {
    if (expect_value<int>(in, path) != 3) throw Error(ErrorKind::Io, path + ": non-triangle cell");
    for (auto& id : c) id = expect_value<std::size_t>(in, path);
  }
  expect_word(in, "CELL_TYPES", path);
  if (expect_value<std::size_t>(in, path) != m) throw Error(ErrorKind::Io, path + ": cell count mismatch");
  for (std::size_t i = 0; i < m; ++i) {
    if (expect_value<int>(in, path) != 5) throw Error(ErrorKind::Io, path + ": unexpected cell type");
  }
  expect_word(in, "POINT_DATA", path);
  if (expect_value<std::size_t>(in, path) != n) throw Error(ErrorKind::Io, path + ": point count mismatch");
  expect_word(in, "SCALARS", path);
  expect_word(in, "temperature", path);
  expect_word(in, "double", path);
  expect_word(in, "1", path);
  expect_word(in, "LOOKUP_TABLE", path);
  expect_word(in, "default", path);
  f.temperature.resize(n);
  for (auto& t : f.temperature) t = expect_value<double>(in, path);
  return f;
}

PgmImage read_pgm(const std::string& path) {
  auto in = open_in(path);
  expect_word(in, "P2", path);
  PgmImage img;
  img.width = expect_value<int>(in, path);
  img.height = expect_value<int>(in, path);
  img.max_value = expect_value<int>(in, path);
  img.pixels.resize(static_cast<std::size_t>(img.width * img.height));
  for (auto& p : img.pixels) p = expect_value<int>(in, path);
  return img;
}

}  // namespace rfem
