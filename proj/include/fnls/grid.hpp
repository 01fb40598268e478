#pragma once

//============================================================================
// grid.hpp
//
// Uniform periodic grid on the centered box [-L, L)^d, d in {1,2}, with n
// points per axis (n a power of two).  Sample points x_i = -L + i*h with
// h = 2L/n; fields are stored row-major (last axis fastest).  The discrete
// wavenumbers are k_j = pi*j/L for signed index j in {-n/2, ..., n/2-1}.
//============================================================================

#include <cstddef>

namespace fnls {

struct Grid {
  int d = 1;       // spatial dimension, 1 or 2
  int n = 0;       // points per axis (power of two)
  double L = 0.0;  // half box length
  double h = 0.0;  // spacing 2L/n

  std::size_t size() const {
    return d == 1 ? static_cast<std::size_t>(n)
                  : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }

  double coord(int i) const { return -L + i * h; }

  int signed_index(int i) const { return i < n / 2 ? i : i - n; }

  double wavenumber(int i) const;  // pi * signed_index(i) / L

  double cell() const;  // quadrature weight h^d

  bool same_as(const Grid& o) const {
    return d == o.d && n == o.n && L == o.L;
  }

  // Fill x (length d) with the coordinates of flat index `idx`.
  void point(std::size_t idx, double* x) const;
};

// Validates d in {1,2}, n a power of two >= 8, L > 0.
Grid make_grid(int d, int n, double L);

bool is_power_of_two(int n);

}  // namespace fnls
