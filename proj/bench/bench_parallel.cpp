// Compares the serial and parallel embedding certification and collision scan
// on the standard rank-2 example over the projective plane fan.
//
// Usage: troplag_bench [grid_nr grid_ntheta] [cloud_rows cloud_cols]

#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "troplag/glued.hpp"
#include "troplag/kaneyama.hpp"
#include "troplag/realize.hpp"

using namespace troplag;

int main(int argc, char** argv) {
  int nr = 200, ntheta = 200;
  int rows = 800, cols = 800;
  if (argc >= 3) {
    nr = std::atoi(argv[1]);
    ntheta = std::atoi(argv[2]);
  }
  if (argc >= 5) {
    rows = std::atoi(argv[3]);
    cols = std::atoi(argv[4]);
  }
  if (nr < 2 || ntheta < 4 || rows < 2 || cols < 8) {
    std::fprintf(stderr, "usage: %s [grid_nr grid_ntheta] [cloud_rows cloud_cols]\n",
                 argv[0]);
    return 1;
  }

#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: not compiled in, both runs are serial\n");
#endif

  TropicalMultiSection ts = kaneyama_tropicalize(KaneyamaBundle{});
  RealizeOptions opt;
  opt.grid_nr = 8;
  opt.grid_ntheta = 16;
  RealizeResult res = realize(ts, opt);
  if (!res.built || !res.glued) {
    std::fprintf(stderr, "failed to build the glued potential\n");
    return 1;
  }
  const GluedPotential& gp = *res.glued;
  const double r_lo = gp.R + gp.eps;
  const double r_hi = gp.R + 5.0;

  std::printf("certification grid %dx%d over [%g, %g]\n", nr, ntheta, r_lo, r_hi);
  EmbeddednessCertificate serial = verify_embedding(gp, nr, ntheta, r_lo, r_hi, false);
  EmbeddednessCertificate parallel = verify_embedding(gp, nr, ntheta, r_lo, r_hi, true);
  std::printf("  serial:   %-12s margin %.6e  %.3fs\n", verdict_name(serial.verdict),
              serial.margin, serial.seconds);
  std::printf("  parallel: %-12s margin %.6e  %.3fs\n", verdict_name(parallel.verdict),
              parallel.margin, parallel.seconds);
  bool margins_match =
      serial.margin == parallel.margin && serial.verdict == parallel.verdict;
  std::printf("  margins match: %s  speedup %.2fx\n", margins_match ? "yes" : "NO",
              parallel.seconds > 0 ? serial.seconds / parallel.seconds : 0.0);

  std::printf("collision scan on a %dx%d cloud\n", rows, cols);
  Cloud cloud = sample_lagrangian(gp, rows, cols, r_hi);
  CollisionReport rs = collision_scan(cloud, gp, false);
  CollisionReport rp = collision_scan(cloud, gp, true);
  std::printf("  serial:   %lld collision(s) of %lld pair(s), min gap %.6e  %.3fs\n",
              rs.collisions, rs.compared, rs.min_x_gap, rs.seconds);
  std::printf("  parallel: %lld collision(s) of %lld pair(s), min gap %.6e  %.3fs\n",
              rp.collisions, rp.compared, rp.min_x_gap, rp.seconds);
  bool gaps_match = rs.collisions == rp.collisions && rs.min_x_gap == rp.min_x_gap &&
                    rs.compared == rp.compared;
  std::printf("  gaps match: %s  speedup %.2fx\n", gaps_match ? "yes" : "NO",
              rp.seconds > 0 ? rs.seconds / rp.seconds : 0.0);

  return margins_match && gaps_match ? 0 : 1;
}
