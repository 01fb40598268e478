#include "fnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fnls {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double Grid::wavenumber(int i) const {
  return std::numbers::pi * signed_index(i) / L;
}

double Grid::cell() const { return d == 1 ? h : h * h; }

void Grid::point(std::size_t idx, double* x) const {
  if (d == 1) {
    x[0] = coord(static_cast<int>(idx));
  } else {
    x[0] = coord(static_cast<int>(idx / static_cast<std::size_t>(n)));
    x[1] = coord(static_cast<int>(idx % static_cast<std::size_t>(n)));
  }
}

Grid make_grid(int d, int n, double L) {
  if (d != 1 && d != 2)
    throw std::invalid_argument("grid: dimension must be 1 or 2, got " +
                                std::to_string(d));
  if (!is_power_of_two(n) || n < 8)
    throw std::invalid_argument(
        "grid: points per axis must be a power of two >= 8, got " +
        std::to_string(n));
  if (!(L > 0.0) || !std::isfinite(L))
    throw std::invalid_argument("grid: box half-length must be positive");
  Grid g;
  g.d = d;
  g.n = n;
  g.L = L;
  g.h = 2.0 * L / n;
  return g;
}

}  // namespace fnls
