#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#ifdef _OPENMP
#include <omp.h>
#endif

#include "troplag/json_io.hpp"
#include "troplag/svg.hpp"

using namespace troplag;

namespace {

void apply_thread_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("TROPLAG_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

void emit(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

std::pair<int, int> parse_grid(const std::string& s) {
  auto at = s.find('x');
  if (at == std::string::npos || at == 0 || at + 1 >= s.size())
    throw TropError(ErrorCode::ParseError, "grid must look like 400x400");
  int a = 0, b = 0;
  try {
    a = std::stoi(s.substr(0, at));
    b = std::stoi(s.substr(at + 1));
  } catch (const std::exception&) {
    throw TropError(ErrorCode::ParseError, "grid must look like 400x400");
  }
  if (a < 1 || b < 1) throw TropError(ErrorCode::ParseError, "grid sides must be positive");
  return {a, b};
}

// Comma list of real roots; repeated values raise the multiplicity.
std::vector<PolyRoot> parse_roots(const std::string& s) {
  std::vector<double> vals;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    try {
      vals.push_back(std::stod(s.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw TropError(ErrorCode::ParseError, "roots must be a comma list of reals");
    }
    pos = next + 1;
  }
  if (vals.empty()) throw TropError(ErrorCode::ParseError, "empty root list");
  std::vector<PolyRoot> roots;
  for (double v : vals) {
    bool merged = false;
    for (auto& r : roots)
      if (std::abs(r.z.real() - v) < 1e-12) {
        ++r.mult;
        merged = true;
        break;
      }
    if (!merged) roots.push_back({std::complex<double>(v, 0.0), 1});
  }
  return roots;
}

int realize_exit_code(const RealizeResult& res) {
  if (res.verdict.verdict == Realizable::No) return 2;
  if (res.verdict.verdict == Realizable::Unknown) return 3;
  if (!res.built) return 0;  // trivial split pair or degree above 2
  if (res.certificate.verdict == Verdict::Violated) return 2;
  if (res.scanned && res.scan.collisions > 0) return 2;
  if (res.certificate.verdict == Verdict::Inconclusive || !res.drift.pass) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"tropical Lagrangian multi-sections over complete plane fans:\n"
               "realizability, smoothed potentials, embeddedness certificates, and\n"
               "the mirror rank-2 bundle family"};
  app.require_subcommand(1);
  int rc = 0;

  // validate
  std::string va_in, va_out;
  auto* va = app.add_subcommand("validate", "structural checks of a multi-section");
  va->add_option("input", va_in, "multi-section json")->required();
  va->add_option("-o,--output", va_out, "output path (default stdout)");
  va->callback([&]() {
    auto ts = multisection_from_json(read_file(va_in));
    auto rep = validate(ts);
    emit(validation_to_json(rep), va_out);
    rc = rep.ok ? 0 : 2;
  });

  // genericity
  std::string ge_in, ge_out;
  auto* ge = app.add_subcommand("genericity", "exact crossing count of the deck translates");
  ge->add_option("input", ge_in, "multi-section json")->required();
  ge->add_option("-o,--output", ge_out, "output path (default stdout)");
  ge->callback([&]() {
    auto ts = multisection_from_json(read_file(ge_in));
    auto rep = genericity_count(ts);
    emit(genericity_to_json(rep), ge_out);
    rc = rep.ok ? 0 : 2;
  });

  // realize
  std::string rz_in, rz_out, rz_csv, rz_svg, rz_grid = "400x400", rz_cloud, rz_roots;
  double rz_R = 0, rz_eps = 0.1;
  int rz_order = 40;
  bool rz_serial = false;
  auto* rz = app.add_subcommand(
      "realize", "full pipeline: verdict, potential, certificate, drift, optional cloud");
  rz->add_option("input", rz_in, "multi-section json")->required();
  rz->add_option("-o,--output", rz_out, "report path (default stdout)");
  rz->add_option("--resolution", rz_grid, "certification grid, e.g. 400x400");
  rz->add_option("--cloud", rz_cloud, "also sample the surface, e.g. 1600x1600");
  rz->add_option("--cloud-csv", rz_csv, "write sampled points as csv");
  rz->add_option("--svg", rz_svg, "write the sampled surface as svg");
  rz->add_option("--roots", rz_roots, "model roots, e.g. 0,0,1,1 (repeats = multiplicity)");
  rz->add_option("--series-order", rz_order, "series length of the model potential");
  rz->add_option("--R", rz_R, "gluing radius override");
  rz->add_option("--eps", rz_eps, "handover width in (0, 1)");
  rz->add_flag("--serial", rz_serial, "force the serial kernels");
  rz->callback([&]() {
    auto ts = multisection_from_json(read_file(rz_in));
    RealizeOptions opt;
    std::tie(opt.grid_nr, opt.grid_ntheta) = parse_grid(rz_grid);
    if (!rz_cloud.empty()) std::tie(opt.cloud_rows, opt.cloud_cols) = parse_grid(rz_cloud);
    if (!rz_roots.empty()) opt.roots = parse_roots(rz_roots);
    opt.series_order = rz_order;
    opt.R_override = rz_R;
    opt.eps = rz_eps;
    opt.parallel = !rz_serial;
    RealizeResult res = realize(ts, opt);
    emit(realize_to_json(res), rz_out);
    if (!rz_csv.empty() && res.cloud) write_file(rz_csv, cloud_to_csv(*res.cloud));
    if (!rz_svg.empty() && res.cloud) write_file(rz_svg, cloud_to_svg(*res.cloud));
    rc = realize_exit_code(res);
  });

  // verify
  std::string vf_in, vf_out, vf_grid = "400x400";
  double vf_rlo = 0, vf_rhi = 0, vf_R = 0, vf_eps = 0.1;
  std::string vf_roots;
  bool vf_serial = false;
  auto* vf = app.add_subcommand("verify", "embeddedness certificate on a chosen grid");
  vf->add_option("input", vf_in, "multi-section json")->required();
  vf->add_option("-o,--output", vf_out, "certificate path (default stdout)");
  vf->add_option("--resolution", vf_grid, "grid, e.g. 400x400");
  vf->add_option("--r-lo", vf_rlo, "inner radius (default R + eps)");
  vf->add_option("--r-hi", vf_rhi, "outer radius (default R + 5)");
  vf->add_option("--roots", vf_roots, "model roots");
  vf->add_option("--R", vf_R, "gluing radius override");
  vf->add_option("--eps", vf_eps, "handover width in (0, 1)");
  vf->add_flag("--serial", vf_serial, "force the serial kernel");
  vf->callback([&]() {
    auto ts = multisection_from_json(read_file(vf_in));
    RealizeOptions opt;
    opt.R_override = vf_R;
    opt.eps = vf_eps;
    if (!vf_roots.empty()) opt.roots = parse_roots(vf_roots);
    opt.grid_nr = 2;  // placeholder grid; the real one runs below
    opt.grid_ntheta = 8;
    opt.parallel = !vf_serial;
    RealizeResult res = realize(ts, opt);
    if (!res.built) {
      emit(realize_to_json(res), vf_out);
      rc = res.verdict.verdict == Realizable::Yes
               ? 0
               : (res.verdict.verdict == Realizable::No ? 2 : 3);
      return;
    }
    auto [nr, nt] = parse_grid(vf_grid);
    const GluedPotential& gp = *res.glued;
    double lo = vf_rlo > 0 ? vf_rlo : gp.R + gp.eps;
    double hi = vf_rhi > 0 ? vf_rhi : gp.R + 5.0;
    auto cert = verify_embedding(gp, nr, nt, lo, hi, !vf_serial);
    emit(certificate_to_json(cert), vf_out);
    rc = cert.verdict == Verdict::Certified ? 0
                                            : (cert.verdict == Verdict::Violated ? 2 : 3);
  });

  // bundle
  auto* bd = app.add_subcommand("bundle", "rank-2 equivariant family on the plane");
  bd->require_subcommand(1);
  std::string bi_in, bi_out;
  auto* bi = bd->add_subcommand("info", "mirror predictions for a bundle");
  bi->add_option("input", bi_in, "bundle json")->required();
  bi->add_option("-o,--output", bi_out, "output path (default stdout)");
  bi->callback([&]() {
    auto kb = bundle_from_json(read_file(bi_in));
    emit(mirror_to_json(mirror_summary(kb)), bi_out);
  });
  std::string bt_in, bt_out;
  auto* bt = bd->add_subcommand("trop", "tropicalize a bundle to a multi-section");
  bt->add_option("input", bt_in, "bundle json")->required();
  bt->add_option("-o,--output", bt_out, "output path (default stdout)");
  bt->callback([&]() {
    auto kb = bundle_from_json(read_file(bt_in));
    emit(multisection_to_json(kaneyama_tropicalize(kb)), bt_out);
  });
  std::string bv_in, bv_out;
  auto* bv = bd->add_subcommand("invert", "recover the bundle behind a multi-section");
  bv->add_option("input", bv_in, "multi-section json")->required();
  bv->add_option("-o,--output", bv_out, "output path (default stdout)");
  bv->callback([&]() {
    auto ts = multisection_from_json(read_file(bv_in));
    emit(bundle_to_json(rigidity_invert(ts)), bv_out);
  });

  // plot
  std::string pl_in, pl_out;
  auto* pl = app.add_subcommand("plot", "svg rendering of a fan or multi-section");
  pl->add_option("input", pl_in, "fan or multi-section json")->required();
  pl->add_option("-o,--output", pl_out, "svg path (default stdout)")->required();
  pl->callback([&]() {
    std::string text = read_file(pl_in);
    std::string type = document_type(text);
    if (type == "fan")
      emit(fan_to_svg(fan_from_json(text)), pl_out);
    else if (type == "multisection")
      emit(multisection_to_svg(multisection_from_json(text)), pl_out);
    else
      throw TropError(ErrorCode::ParseError, "cannot plot a \"" + type + "\" document");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const TropError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code) {
      case ErrorCode::NotInFamily:
      case ErrorCode::NotRealizable:
      case ErrorCode::GenericityViolated:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
