#pragma once

#include <iosfwd>
#include <string>

#include "dnls/spectral_grid.hpp"

namespace dnls {

enum class SnapshotFormat { csv, binary };

/// Snapshot layout, both formats: header (dims, lengths, points) followed by
/// the (re, im) pairs of every interior node in row-major order.
///
/// CSV:    "# dims <N>", "# lengths <L1> ...", "# points <n1> ...", "re,im",
///         then one "re,im" line per node (%.17g).
/// Binary: little-endian; uint64 dims, dims x float64 lengths,
///         dims x uint64 points, then 2 x size() float64 values.
void write_field(std::ostream& os, const ComplexField& u, SnapshotFormat format);
ComplexField read_field(std::istream& is, SnapshotFormat format);

void save_field(const std::string& path, const ComplexField& u, SnapshotFormat format);
ComplexField load_field(const std::string& path, SnapshotFormat format);

}  // namespace dnls
