// Prints the critical gold and silver thickness at a few center gaps.

#include <cstdio>

#include "arcplate/arcplate.hpp"

int main() {
  using namespace arcplate;
  const auto materials = elasticity::builtin_materials();
  for (double gap : {0.1e-6, 0.25e-6, 0.5e-6, 1.0e-6}) {
    const geometry::ArcGeometry geom(100e-6, 3e-6, gap);
    const auto energy = casimir::arc_energy(geom, casimir::EnergyModel::ntlo());
    std::printf("gap %.2f um  U = %.4e J/m", gap * 1e6, energy.value);
    for (const auto& m : materials) {
      const double t = analysis::critical_thickness(energy.value, m, geom);
      std::printf("  t_%s = %.4f nm", m.tag().c_str(), t * 1e9);
    }
    std::printf("\n");
  }
}
