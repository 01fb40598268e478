#pragma once

//============================================================================
// field.hpp
//
// A real scalar field sampled on a Grid, plus binary serialization.
//
// File format "FNLSFLD1" (little-endian):
//   bytes 0..7   ASCII magic "FNLSFLD1"
//   u32          version (1)
//   u32          d
//   u32          n
//   f64          L
//   f64          s   (fractional order the field was produced with)
//   f64          p   (0 if not applicable)
//   f64 * n^d    samples, row-major
//============================================================================

#include <string>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

struct Field {
  Grid grid;
  std::vector<double> v;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), v(g.size(), 0.0) {}

  double* data() { return v.data(); }
  const double* data() const { return v.data(); }
  std::size_t size() const { return v.size(); }
};

// Throws std::invalid_argument if the two fields live on different grids.
void require_same_grid(const Field& a, const Field& b, const char* where);

// Throws std::runtime_error if any sample is NaN/Inf.
void require_finite(const Field& f, const char* where);

struct FieldMeta {
  double s = 0.0;
  double p = 0.0;
};

void save_field(const std::string& path, const Field& f, const FieldMeta& meta);

// Errors: unreadable file, bad magic, unsupported version, header/payload
// size mismatch, invalid grid parameters.
Field load_field(const std::string& path, FieldMeta* meta = nullptr);

}  // namespace fnls
