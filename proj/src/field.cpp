#include "fnls/field.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fnls {

namespace {
constexpr char kMagic[8] = {'F', 'N', 'L', 'S', 'F', 'L', 'D', '1'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void require_same_grid(const Field& a, const Field& b, const char* where) {
  if (!a.grid.same_as(b.grid))
    throw std::invalid_argument(std::string(where) +
                                ": fields live on different grids");
}

void require_finite(const Field& f, const char* where) {
  for (double x : f.v)
    if (!std::isfinite(x))
      throw std::runtime_error(std::string(where) +
                               ": field contains a non-finite sample");
}

void save_field(const std::string& path, const Field& f,
                const FieldMeta& meta) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_field: cannot open " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t ver = kVersion;
  const std::uint32_t d = static_cast<std::uint32_t>(f.grid.d);
  const std::uint32_t n = static_cast<std::uint32_t>(f.grid.n);
  out.write(reinterpret_cast<const char*>(&ver), 4);
  out.write(reinterpret_cast<const char*>(&d), 4);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&f.grid.L), 8);
  out.write(reinterpret_cast<const char*>(&meta.s), 8);
  out.write(reinterpret_cast<const char*>(&meta.p), 8);
  out.write(reinterpret_cast<const char*>(f.v.data()),
            static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  if (!out) throw std::runtime_error("save_field: write failed for " + path);
}

Field load_field(const std::string& path, FieldMeta* meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_field: cannot open " + path);

  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("load_field: bad magic in " + path);

  std::uint32_t ver = 0, d = 0, n = 0;
  double L = 0, s = 0, p = 0;
  if (!in.read(reinterpret_cast<char*>(&ver), 4) ||
      !in.read(reinterpret_cast<char*>(&d), 4) ||
      !in.read(reinterpret_cast<char*>(&n), 4) ||
      !in.read(reinterpret_cast<char*>(&L), 8) ||
      !in.read(reinterpret_cast<char*>(&s), 8) ||
      !in.read(reinterpret_cast<char*>(&p), 8))
    throw std::runtime_error("load_field: truncated header in " + path);
  if (ver != kVersion)
    throw std::runtime_error("load_field: unsupported version in " + path);

  Field f(make_grid(static_cast<int>(d), static_cast<int>(n), L));
  if (!in.read(reinterpret_cast<char*>(f.v.data()),
               static_cast<std::streamsize>(f.v.size() * sizeof(double))))
    throw std::runtime_error("load_field: truncated payload in " + path);
  // Reject trailing garbage: payload must match the header dimensions.
  char extra;
  if (in.read(&extra, 1))
    throw std::runtime_error("load_field: payload size mismatch in " + path);

  if (meta) {
    meta->s = s;
    meta->p = p;
  }
  return f;
}

}  // namespace fnls
