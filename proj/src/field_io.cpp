#include "dnls/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dnls {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary snapshots assume a little-endian host");

void put_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 8)) throw std::runtime_error("snapshot: truncated header");
  return v;
}

double get_f64(std::istream& is) {
  double v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 8)) throw std::runtime_error("snapshot: truncated data");
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string expect_header(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("snapshot: missing '" + key + "' header");
  const std::string prefix = "# " + key + " ";
  if (line.rfind(prefix, 0) != 0) throw std::runtime_error("snapshot: expected '" + key + "' header");
  return line.substr(prefix.size());
}

}  // namespace

void write_field(std::ostream& os, const ComplexField& u, SnapshotFormat format) {
  const BoxDomain& d = u.domain();
  if (format == SnapshotFormat::binary) {
    put_u64(os, static_cast<std::uint64_t>(d.dims()));
    for (double L : d.lengths()) put_f64(os, L);
    for (int n : d.points()) put_u64(os, static_cast<std::uint64_t>(n));
    for (const auto& z : u.values()) {
      put_f64(os, z.real());
      put_f64(os, z.imag());
    }
    return;
  }
  os << "# dims " << d.dims() << '\n' << "# lengths";
  for (double L : d.lengths()) os << ' ' << fmt(L);
  os << '\n' << "# points";
  for (int n : d.points()) os << ' ' << n;
  os << '\n' << "re,im\n";
  for (const auto& z : u.values()) os << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
}

ComplexField read_field(std::istream& is, SnapshotFormat format) {
  if (format == SnapshotFormat::binary) {
    const auto dims = get_u64(is);
    if (dims < 1 || dims > 3) throw std::runtime_error("snapshot: bad dims");
    std::vector<double> lengths(dims);
    std::vector<int> points(dims);
    for (auto& L : lengths) L = get_f64(is);
    for (auto& n : points) n = static_cast<int>(get_u64(is));
    BoxDomain domain(lengths, points);
    std::vector<Complex> values(domain.size());
    for (auto& z : values) {
      const double re = get_f64(is);
      z = {re, get_f64(is)};
    }
    return ComplexField(domain, std::move(values));
  }

  const int dims = std::stoi(expect_header(is, "dims"));
  if (dims < 1 || dims > 3) throw std::runtime_error("snapshot: bad dims");
  std::vector<double> lengths(dims);
  std::vector<int> points(dims);
  {
    std::istringstream ls(expect_header(is, "lengths"));
    for (auto& L : lengths) ls >> L;
    std::istringstream ps(expect_header(is, "points"));
    for (auto& n : points) ps >> n;
    if (!ls || !ps) throw std::runtime_error("snapshot: malformed header");
  }
  BoxDomain domain(lengths, points);
  std::string line;
  std::getline(is, line);  // column header
  std::vector<Complex> values;
  values.reserve(domain.size());
  while (values.size() < domain.size() && std::getline(is, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("snapshot: malformed row");
    values.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  if (values.size() != domain.size()) throw std::runtime_error("snapshot: truncated data");
  return ComplexField(domain, std::move(values));
}

void save_field(const std::string& path, const ComplexField& u, SnapshotFormat format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_field(os, u, format);
}

ComplexField load_field(const std::string& path, SnapshotFormat format) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_field(is, format);
}

}  // namespace dnls
