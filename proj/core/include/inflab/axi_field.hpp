#pragma once

#include <string>
#include <vector>

namespace inflab {

/// Rectangular lattice on the (r, z) half-plane: r_i = r0 + i dr, z_j = z0 + j dz.
struct AxiGrid {
  int nr = 0, nz = 0;
  double r0 = 0, z0 = 0, dr = 0, dz = 0;

  double r(int i) const { return r0 + i * dr; }
  double z(int j) const { return z0 + j * dz; }
  std::size_t size() const { return static_cast<std::size_t>(nr) * nz; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * nz + j; }
};

/// Named cylindrical components sampled on an AxiGrid at one time.
struct AxiField {
  AxiGrid grid;
  double time = 0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> components;

  int component_index(const std::string& name) const;
  const std::vector<double>& component(const std::string& name) const;
  /// Pointwise Euclidean norm over all components.
  std::vector<double> magnitude() const;
};

}  // namespace inflab
