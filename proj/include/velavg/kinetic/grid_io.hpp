#pragma once

#include <filesystem>

#include "velavg/kinetic/average.hpp"

namespace velavg {

/// Binary layout (little-endian host order):
///   8-byte magic "VAVGRID4", uint32 version, uint32 n[4],
///   double t_lo, t_hi, x_lo[3], x_hi[3], then n0*n1*n2*n3 doubles row-major.
/// The metadata string goes to a sidecar `<path>.meta` text file.
void write_grid(const std::filesystem::path& path, const AverageGrid4& grid);

/// Throws std::runtime_error with the path on I/O or format errors.
AverageGrid4 read_grid(const std::filesystem::path& path);

}  // namespace velavg
