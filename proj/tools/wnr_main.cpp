#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wnr/cvalues.hpp"
#include "wnr/io.hpp"
#include "wnr/region.hpp"
#include "wnr/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
  int grid_n = 4096;
  std::uint64_t seed = wnr::kDefaultSeed;
  double tol_eig = -1.0;    // eigenvalue-coincidence tolerance (multiplicities)
  double tol_match = -1.0;  // common-value matching tolerance
  int trials = 20;
  std::string out_dir = ".";
  std::vector<std::string> formats;
};

bool wants(const RunConfig& cfg, const std::string& fmt, bool def) {
  if (cfg.formats.empty()) return def;
  for (const auto& f : cfg.formats)
    if (f == fmt) return true;
  return false;
}

void check_grid(int n) {
  if (n < 256 || (n & (n - 1)) != 0)
    throw wnr::ParseError("--grid must be a power of two >= 256, got " + std::to_string(n));
}

ordered_json cvalue_json(const wnr::CValueSet& set) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < set.values.size(); ++i) {
    ordered_json e;
    e["value"] = {set.values[i].real(), set.values[i].imag()};
    e["witness"] = set.witnesses[i];
    arr.push_back(e);
  }
  return arr;
}

ordered_json poly_json(const wnr::CPolynomial& p) {
  ordered_json arr = ordered_json::array();  // ascending degree
  for (const wnr::cplx& c : p.coefficients) arr.push_back({c.real(), c.imag()});
  return arr;
}

std::vector<wnr::cplx> safe_eigenvalues(const wnr::ComplexMatrix& a) {
  if (a.dim() > 12) return {};
  return wnr::eig_general(a).eigenvalues;
}

int cmd_boundary(const std::string& mfile, const std::string& wfile, const RunConfig& cfg) {
  const wnr::ComplexMatrix a = wnr::parse_matrix_file(mfile);
  const wnr::WeightVector c = wnr::parse_weights_file(wfile);
  const wnr::ConvexRegion region = wnr::build_region(a, c, cfg.grid_n);
  if (region.empty()) {
    std::cout << "EMPTY\n";
    return 2;
  }
  const fs::path out(cfg.out_dir);
  if (wants(cfg, "csv", true)) {
    wnr::write_atomic(out / "boundary.csv", wnr::boundary_csv(region));
    std::cout << (out / "boundary.csv").string() << "\n";
  }
  if (wants(cfg, "svg", true)) {
    wnr::write_atomic(out / "boundary.svg",
                      wnr::region_svg({&region}, safe_eigenvalues(a), {}));
    std::cout << (out / "boundary.svg").string() << "\n";
  }
  std::cout << "vertices: " << region.vertices().size() << "\n";
  return 0;
}

int cmd_cvalues(const std::string& mfile, const std::string& wfile, const RunConfig& cfg,
                bool poly_only) {
  const wnr::ComplexMatrix a = wnr::parse_matrix_file(mfile);
  const wnr::WeightVector c = wnr::parse_weights_file(wfile);
  const wnr::DegreeInfo info = wnr::degree(c, a.dim());
  std::cout << "degree: " << info.degree << "\n";

  const wnr::CPolynomial poly = wnr::cpolynomial(a, c);
  ordered_json j;
  if (!poly_only) {
    const wnr::CValueSet set = wnr::enumerate_cvalues(wnr::eig_general(a), c);
    j["degree"] = info.degree;
    j["r"] = info.r;
    j["group_multiplicities"] = info.group_multiplicities;
    j["cvalues"] = cvalue_json(set);
    // distinct values at the coincidence tolerance (enumeration keeps repeats)
    double vmax = 0.0;
    for (const wnr::cplx& v : set.values) vmax = std::max(vmax, std::abs(v));
    const double tol = cfg.tol_eig > 0.0 ? cfg.tol_eig : 1e-7 * (1.0 + vmax);
    std::vector<wnr::cplx> reps;
    for (const wnr::cplx& v : set.values) {
      bool close = false;
      for (const wnr::cplx& r : reps)
        if (std::abs(v - r) <= tol) {
          close = true;
          break;
        }
      if (!close) reps.push_back(v);
    }
    j["distinct_at_tolerance"] = reps.size();
    j["coincidence_tolerance"] = tol;
  }
  j["cpolynomial"] = poly_json(poly);
  const fs::path out = fs::path(cfg.out_dir) / (poly_only ? "cpoly.json" : "cvalues.json");
  wnr::write_atomic(out, j.dump(2) + "\n");
  std::cout << out.string() << "\n";
  return 0;
}

int cmd_support(const std::string& mfile, const std::string& wfile, const RunConfig& cfg) {
  const wnr::ComplexMatrix a = wnr::parse_matrix_file(mfile);
  const wnr::WeightVector c = wnr::parse_weights_file(wfile);
  const wnr::SupportProfile profile = wnr::support_profile(a, c, cfg.grid_n);
  const fs::path out = fs::path(cfg.out_dir) / "support.csv";
  wnr::write_atomic(out, wnr::profile_csv(profile));
  std::cout << out.string() << "\n";
  return 0;
}

int cmd_intersect(const std::string& ma, const std::string& wa, const std::string& mb,
                  const std::string& wb, const RunConfig& cfg) {
  const wnr::ComplexMatrix a = wnr::parse_matrix_file(ma);
  const wnr::WeightVector c = wnr::parse_weights_file(wa);
  const wnr::ComplexMatrix b = wnr::parse_matrix_file(mb);
  const wnr::WeightVector d = wnr::parse_weights_file(wb);
  const wnr::ConvexRegion ra = wnr::build_region(a, c, cfg.grid_n);
  const wnr::ConvexRegion rb = wnr::build_region(b, d, cfg.grid_n);
  if (ra.empty() || rb.empty()) {
    std::cout << "EMPTY\n";
    return 2;
  }
  const wnr::BoundaryIntersections bi = wnr::boundary_intersections(ra, rb);

  std::string csv = "kind,x,y,x2,y2\n";
  for (const wnr::cplx& p : bi.points)
    csv += "point," + wnr::format_double(p.real()) + "," + wnr::format_double(p.imag()) + ",,\n";
  for (const auto& [p, q] : bi.overlaps)
    csv += "overlap," + wnr::format_double(p.real()) + "," + wnr::format_double(p.imag()) + "," +
           wnr::format_double(q.real()) + "," + wnr::format_double(q.imag()) + "\n";
  const fs::path out(cfg.out_dir);
  wnr::write_atomic(out / "intersect.csv", csv);
  std::cout << (out / "intersect.csv").string() << "\n";
  if (wants(cfg, "svg", true)) {
    std::vector<wnr::cplx> eigs = safe_eigenvalues(a);
    for (const wnr::cplx& z : safe_eigenvalues(b)) eigs.push_back(z);
    wnr::write_atomic(out / "intersect.svg", wnr::region_svg({&ra, &rb}, eigs, {}, bi.points));
    std::cout << (out / "intersect.svg").string() << "\n";
  }
  std::cout << "transversal: " << bi.points.size() << ", overlaps: " << bi.overlaps.size()
            << (bi.full_overlap ? ", full overlap" : "") << "\n";
  return 0;
}

int cmd_verify(const std::string& theorem, const std::vector<std::string>& files,
               const RunConfig& cfg) {
  const auto need = [&](std::size_t k) {
    if (files.size() != k)
      throw wnr::ParseError("theorem '" + theorem + "' needs " + std::to_string(k) +
                            " input files, got " + std::to_string(files.size()));
  };
  wnr::TheoremReport report;
  if (theorem == "main" || theorem == "boundary" || theorem == "curve" || theorem == "equal") {
    need(4);
    const wnr::ComplexMatrix a = wnr::parse_matrix_file(files[0]);
    wnr::WeightVector c = wnr::parse_weights_file(files[1]);
    const wnr::ComplexMatrix b = wnr::parse_matrix_file(files[2]);
    wnr::WeightVector d = wnr::parse_weights_file(files[3]);
    if (theorem == "main")
      report = wnr::verify_theorem_main(a, c, b, d, cfg.grid_n, cfg.tol_match);
    else if (theorem == "boundary")
      report = wnr::verify_boundary_points(a, c, b, d, cfg.grid_n, cfg.tol_match);
    else if (theorem == "curve")
      report = wnr::check_curve_overlap(a, c, b, d, cfg.grid_n, cfg.tol_match);
    else {
      c = wnr::sort_weights_desc(c).first;
      d = wnr::sort_weights_desc(d).first;
      report = wnr::check_equal_ranges(a, c, b, d, cfg.grid_n, cfg.tol_match);
    }
  } else if (theorem == "circle" || theorem == "ellipse" || theorem == "sharp") {
    need(2);
    const wnr::ComplexMatrix a = wnr::parse_matrix_file(files[0]);
    wnr::WeightVector c = wnr::parse_weights_file(files[1]);
    if (theorem == "circle")
      report = wnr::check_circle_corollary(a, c, cfg.grid_n);
    else if (theorem == "ellipse")
      report = wnr::check_ellipse_corollary(a, c, cfg.grid_n);
    else {
      c = wnr::sort_weights_desc(c).first;
      report = wnr::check_sharp_point_corollary(a, c, cfg.grid_n);
    }
  } else if (theorem == "nilpotent") {
    need(1);
    const wnr::ComplexMatrix a = wnr::parse_matrix_file(files[0]);
    report = wnr::check_nilpotent_corollary(a, cfg.trials, cfg.seed);
  } else {
    throw wnr::ParseError("unknown theorem '" + theorem +
                          "' (main|boundary|circle|ellipse|sharp|nilpotent|curve|equal)");
  }
  report.seed = cfg.seed;

  const ordered_json j = wnr::report_to_json(report);
  const fs::path out = fs::path(cfg.out_dir) / "report.json";
  wnr::write_atomic(out, j.dump(2) + "\n");
  std::cout << out.string() << "\n";
  std::cout << "theorem: " << report.theorem << "\n";
  std::cout << "bound: " << report.bound << ", angles: " << report.angles.crossing << " crossing, "
            << report.angles.tangential << " tangential"
            << (report.angles.identically_zero ? ", identically zero" : "") << "\n";
  std::cout << "hypothesis " << (report.hypothesis_met ? "met" : "not met") << " ("
            << report.hypothesis_mode << "), common values: " << report.common_values.size()
            << "\n";
  std::cout << "verdict: " << wnr::verdict_name(report.verdict) << "\n";
  if (!report.notes.empty()) std::cout << "notes: " << report.notes << "\n";
  return report.verdict == wnr::Verdict::Inconsistent ? 4 : 0;
}

int cmd_demo(const RunConfig& cfg) {
  const fs::path out(cfg.out_dir);

  // hexagon of 6th roots of unity against a disc of radius 0.95
  std::vector<wnr::cplx> roots;
  for (int k = 0; k < 6; ++k) roots.push_back(std::polar(1.0, 3.1415926535897932 * k / 3.0));
  const wnr::ComplexMatrix hexagon = wnr::ComplexMatrix::diagonal(roots);
  const wnr::ComplexMatrix disc(2, {0.0, 1.9, 0.0, 0.0});
  const wnr::WeightVector e1_6({1, 0, 0, 0, 0, 0});
  const wnr::WeightVector e1_2({1, 0});

  const wnr::TheoremReport sharpness =
      wnr::verify_boundary_points(hexagon, e1_6, disc, e1_2, cfg.grid_n);
  wnr::write_atomic(out / "demo_sharpness.json", wnr::report_to_json(sharpness).dump(2) + "\n");

  const wnr::ConvexRegion rh = wnr::build_region(hexagon, e1_6, cfg.grid_n);
  const wnr::ConvexRegion rd = wnr::build_region(disc, e1_2, cfg.grid_n);
  const wnr::BoundaryIntersections bi = wnr::boundary_intersections(rh, rd);
  wnr::write_atomic(out / "demo_sharpness.svg",
                    wnr::region_svg({&rh, &rd}, roots, {}, bi.points));

  // 3x3 nilpotent Jordan block: circular boundary, repeated c-value at 0
  wnr::ComplexMatrix j3(3);
  j3(0, 1) = 1.0;
  j3(1, 2) = 1.0;
  const wnr::TheoremReport circle =
      wnr::check_circle_corollary(j3, wnr::WeightVector({1, 0, 0}), cfg.grid_n);
  wnr::write_atomic(out / "demo_circle.json", wnr::report_to_json(circle).dump(2) + "\n");

  // elliptical range with foci at the eigenvalues
  const wnr::ComplexMatrix el(2, {0.0, 1.0, 0.0, 2.0});
  const wnr::TheoremReport ellipse = wnr::check_ellipse_corollary(el, e1_2, cfg.grid_n);
  wnr::write_atomic(out / "demo_ellipse.json", wnr::report_to_json(ellipse).dump(2) + "\n");

  std::cout << "sharpness: " << wnr::verdict_name(sharpness.verdict) << " ("
            << bi.points.size() << " boundary crossings)\n";
  std::cout << "circle: " << wnr::verdict_name(circle.verdict) << "\n";
  std::cout << "ellipse: " << wnr::verdict_name(ellipse.verdict) << "\n";
  std::cout << "artifacts in " << out.string() << "\n";
  const bool bad = sharpness.verdict == wnr::Verdict::Inconsistent ||
                   circle.verdict == wnr::Verdict::Inconsistent ||
                   ellipse.verdict == wnr::Verdict::Inconsistent;
  return bad ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted numerical ranges: boundaries, c-values, theorem checks"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string ma, wa, mb, wb, theorem;
  std::vector<std::string> verify_files;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--grid", cfg.grid_n, "angular grid size (power of two >= 256)");
    sub->add_option("--seed", cfg.seed, "RNG seed recorded in reports");
    sub->add_option("--tol-eig", cfg.tol_eig, "eigenvalue-coincidence tolerance override");
    sub->add_option("--tol-match", cfg.tol_match, "common-value matching tolerance override");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--format", cfg.formats, "output formats (csv, json, svg)");
  };

  CLI::App* boundary = app.add_subcommand("boundary", "region boundary CSV + SVG");
  boundary->add_option("matrix", ma)->required();
  boundary->add_option("weights", wa)->required();
  add_common(boundary);

  CLI::App* cvalues = app.add_subcommand("cvalues", "enumerate c-values and the c-polynomial");
  cvalues->add_option("matrix", ma)->required();
  cvalues->add_option("weights", wa)->required();
  add_common(cvalues);

  CLI::App* cpoly = app.add_subcommand("cpoly", "c-polynomial coefficients only");
  cpoly->add_option("matrix", ma)->required();
  cpoly->add_option("weights", wa)->required();
  add_common(cpoly);

  CLI::App* support = app.add_subcommand("support", "support profile CSV");
  support->add_option("matrix", ma)->required();
  support->add_option("weights", wa)->required();
  add_common(support);

  CLI::App* intersect = app.add_subcommand("intersect", "boundary intersections of two regions");
  intersect->add_option("matrixA", ma)->required();
  intersect->add_option("weightsC", wa)->required();
  intersect->add_option("matrixB", mb)->required();
  intersect->add_option("weightsD", wb)->required();
  add_common(intersect);

  CLI::App* verify = app.add_subcommand("verify", "run a theorem check and emit a report");
  verify
      ->add_option("theorem", theorem,
                   "main | boundary | circle | ellipse | sharp | nilpotent | curve | equal")
      ->required();
  verify->add_option("inputs", verify_files, "matrix/weight files (pairs; nilpotent: matrix only)");
  verify->add_option("--trials", cfg.trials, "weight samples for the nilpotent check");
  add_common(verify);

  CLI::App* demo = app.add_subcommand("demo", "run the built-in fixtures");
  add_common(demo);

  CLI11_PARSE(app, argc, argv);

  try {
    check_grid(cfg.grid_n);
    if (cfg.tol_eig == 0.0 || cfg.tol_match == 0.0)
      throw wnr::ParseError("tolerance overrides must be positive");
    if (boundary->parsed()) return cmd_boundary(ma, wa, cfg);
    if (cvalues->parsed()) return cmd_cvalues(ma, wa, cfg, false);
    if (cpoly->parsed()) return cmd_cvalues(ma, wa, cfg, true);
    if (support->parsed()) return cmd_support(ma, wa, cfg);
    if (intersect->parsed()) return cmd_intersect(ma, wa, mb, wb, cfg);
    if (verify->parsed()) return cmd_verify(theorem, verify_files, cfg);
    if (demo->parsed()) return cmd_demo(cfg);
  } catch (const wnr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const wnr::DegreeTooLarge& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const wnr::DimensionTooLarge& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const wnr::WeightCountExceedsDimension& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
