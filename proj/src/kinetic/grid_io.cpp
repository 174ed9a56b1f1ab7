#include "velavg/kinetic/grid_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace velavg {

namespace {

constexpr char kMagic[8] = {'V', 'A', 'V', 'G', 'R', 'I', 'D', '4'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
void get(std::ifstream& is, T& v, const std::filesystem::path& path) {
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw std::runtime_error("read_grid: truncated header in " + path.string());
  }
}

std::filesystem::path meta_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".meta");
}

}  // namespace

void write_grid(const std::filesystem::path& path, const AverageGrid4& grid) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_grid: cannot open " + path.string());
  os.write(kMagic, sizeof kMagic);
  put(os, kVersion);
  for (int k : grid.grid.n) put(os, static_cast<std::uint32_t>(k));
  put(os, grid.grid.t_axis.lo);
  put(os, grid.grid.t_axis.hi);
  for (int a = 0; a < 3; ++a) put(os, grid.grid.x_box.lo[a]);
  for (int a = 0; a < 3; ++a) put(os, grid.grid.x_box.hi[a]);
  os.write(reinterpret_cast<const char*>(grid.values.data()),
           static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
  if (!os) throw std::runtime_error("write_grid: write failed for " + path.string());

  std::ofstream meta(meta_path(path));
  if (!meta) throw std::runtime_error("write_grid: cannot open " + meta_path(path).string());
  meta << "format=VAVGRID4 v" << kVersion << "\n"
       << "dims=" << grid.grid.n[0] << "x" << grid.grid.n[1] << "x" << grid.grid.n[2] << "x"
       << grid.grid.n[3] << "\n"
       << "metadata=" << grid.metadata << "\n";
}

AverageGrid4 read_grid(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_grid: cannot open " + path.string());
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw std::runtime_error("read_grid: bad magic in " + path.string());
  }
  std::uint32_t version = 0;
  get(is, version, path);
  if (version != kVersion) throw std::runtime_error("read_grid: unsupported version");

  AverageGrid4 g;
  for (int& k : g.grid.n) {
    std::uint32_t v = 0;
    get(is, v, path);
    if (v < 1) throw std::runtime_error("read_grid: zero axis size in " + path.string());
    k = static_cast<int>(v);
  }
  get(is, g.grid.t_axis.lo, path);
  get(is, g.grid.t_axis.hi, path);
  for (int a = 0; a < 3; ++a) get(is, g.grid.x_box.lo[a], path);
  for (int a = 0; a < 3; ++a) get(is, g.grid.x_box.hi[a], path);
  g.values.resize(g.grid.size());
  if (!is.read(reinterpret_cast<char*>(g.values.data()),
               static_cast<std::streamsize>(g.values.size() * sizeof(double)))) {
    throw std::runtime_error("read_grid: truncated values in " + path.string());
  }

  std::ifstream meta(meta_path(path));
  std::string line;
  while (meta && std::getline(meta, line)) {
    if (line.rfind("metadata=", 0) == 0) g.metadata = line.substr(9);
  }
  return g;
}

}  // namespace velavg
