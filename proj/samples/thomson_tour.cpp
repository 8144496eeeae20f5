// Small tour: Thomson minima for a few n, with their point groups, hulls and
// the fullerene dual at n = 32.

#include <cstdio>

#include "polyform/polyform.hpp"

using namespace polyform;

int main() {
  OptimizerSettings settings;
  settings.seed = 1;
  settings.start_count = 30;

  std::printf("%3s  %-14s %-6s %s\n", "n", "energy", "group", "hull V/F/E");
  for (int n : {4, 5, 6, 8, 12, 13}) {
    const auto run = multi_start(RieszSphere{1.0}, n, settings);
    const auto hull = convex_hull(run.best);
    std::printf("%3d  %-14.9f %-6s %zu/%zu/%zu\n", n, run.best_energy, detect_point_group(run.best).label.str().c_str(),
                hull.vertices.size(), hull.faces.size(), hull.edge_count());
  }

  const auto c32 = multi_start(RieszSphere{1.0}, 32, settings);
  const auto fullerene = validate_fullerene(dual(convex_hull(c32.best)));
  std::printf("\nn=32 dual: %zu pentagons, %zu hexagons, fullerene identities %s\n", fullerene.pentagons,
              fullerene.hexagons, fullerene.identities_hold ? "hold" : "fail");
}
