#include "inflab/axi_field.hpp"

#include <cmath>

#include "inflab/errors.hpp"

namespace inflab {

int AxiField::component_index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

const std::vector<double>& AxiField::component(const std::string& name) const {
  const int i = component_index(name);
  if (i < 0) throw IOError("AxiField has no component '" + name + "'");
  return components[i];
}

std::vector<double> AxiField::magnitude() const {
  std::vector<double> m(grid.size(), 0.0);
  for (const auto& c : components)
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += c[k] * c[k];
  for (auto& v : m) v = std::sqrt(v);
  return m;
}

}  // namespace inflab
