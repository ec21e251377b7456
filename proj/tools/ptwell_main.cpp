// ptwell: bound-state spectra, coupling sweeps, level classification and the
// two-component metric layer for PT-symmetric deep square wells with imaginary
// point interactions.  Emits CSV/JSON with a provenance comment line.

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "ptwell/csv.hpp"
#include "ptwell/fv.hpp"
#include "ptwell/rootfind.hpp"
#include "ptwell/spectral.hpp"
#include "ptwell/verify.hpp"

using namespace ptwell;

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr int kExitBadInput = 2;
constexpr int kExitUnsupportedBackend = 3;
constexpr int kExitDegenerate = 4;

struct OutputSink {
  std::string path;  // empty = stdout

  void write(const std::string& content) const {
    if (path.empty()) {
      std::cout << content;
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + path);
    os << content;
  }
};

WellSpec load_spec(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw Error(Errc::MalformedLine, "cannot open spec file " + path);
  }
  std::stringstream ss;
  ss << is.rdbuf();
  WellSpec spec = parse_well_spec(ss.str());
  auto bad = validate(spec);
  if (!bad.empty()) {
    throw Error(Errc::BadPosition, "invalid spec: " + bad.front());
  }
  return spec;
}

std::string tag_str(RootTag t) {
  switch (t) {
    case RootTag::Robust: return "R";
    case RootTag::Fragile: return "F";
    case RootTag::Unclassified: return "U";
  }
  return "?";
}

std::string status_str(SampleStatus s) {
  switch (s) {
    case SampleStatus::Real: return "real";
    case SampleStatus::Merged: return "merged";
    case SampleStatus::Complex: return "complex";
    case SampleStatus::Lost: return "lost";
  }
  return "?";
}

int cmd_spectrum(const std::string& specfile, double kmax, const std::string& backend,
                 const OutputSink& out) {
  WellSpec spec = load_spec(specfile);
  ScanConfig cfg;
  cfg.kappa_max = kmax;
  std::vector<RootRecord> roots;
  if (backend == "matrix") {
    roots = find_real_roots(spec, cfg);
  } else if (backend == "closed") {
    if (spec.count() > 2) {
      std::cerr << "closed backend supports L <= 2\n";
      return kExitUnsupportedBackend;
    }
    auto f = [&](double k) -> double {
      if (spec.count() == 0) return -0.5 * std::sin(2.0 * k);
      if (spec.count() == 1) return det_l1(k, spec.positions[0], spec.couplings[0]);
      return det_l2(k, spec.positions[0], spec.positions[1], spec.couplings[0],
                    spec.couplings[1]);
    };
    roots = find_real_roots_of(f, cfg);
  } else {
    std::cerr << "unknown backend '" << backend << "'\n";
    return kExitUnsupportedBackend;
  }
  std::ostringstream os;
  os << provenance_line("spectrum", "--kmax=" + format_sci(kmax) + " --backend=" + backend)
     << "\nn,kappa,epsilon,residual\n";
  for (const auto& r : roots) {
    os << r.index << ',' << format_sci(r.kappa) << ',' << format_sci(r.epsilon()) << ','
       << format_sci(r.residual) << '\n';
  }
  out.write(os.str());
  return 0;
}

int cmd_sweep(const std::string& specfile, double xi_from, double xi_to, int steps,
              int levels, const OutputSink& out) {
  WellSpec spec = load_spec(specfile);
  SweepConfig sweep;
  sweep.xi_from = xi_from;
  sweep.xi_to = xi_to;
  sweep.steps = steps;
  ScanConfig scan;
  scan.kappa_max = (levels + 6) * kPi / 2.0 + std::abs(xi_to) + 1.0;
  auto traces = continue_levels(spec, levels, sweep, scan);
  std::ostringstream os;
  os << provenance_line("sweep", "--xi-from=" + format_sci(xi_from) +
                                     " --xi-to=" + format_sci(xi_to) +
                                     " --steps=" + std::to_string(steps) +
                                     " --levels=" + std::to_string(levels))
     << "\nlevel,xi,kappa_re,kappa_im,status\n";
  for (const auto& tr : traces) {
    for (const auto& s : tr.samples) {
      os << tr.level << ',' << format_sci(s.xi) << ',' << format_sci(s.kappa.real()) << ','
         << format_sci(s.kappa.imag()) << ',' << status_str(s.status) << '\n';
    }
  }
  out.write(os.str());
  return 0;
}

int cmd_classify(const std::string& specfile, int levels, double xi_max,
                 const OutputSink& out) {
  WellSpec spec = load_spec(specfile);
  auto tags = classify_levels(spec, levels, xi_max);
  std::ostringstream os;
  os << provenance_line("classify", "--levels=" + std::to_string(levels) +
                                        " --xi-max=" + format_sci(xi_max))
     << "\nn,tag,xi_c\n";
  for (const auto& t : tags) {
    os << t.level << ',' << tag_str(t.tag) << ','
       << (t.xi_c ? format_sci(*t.xi_c) : std::string()) << '\n';
  }
  out.write(os.str());
  return 0;
}

int cmd_metric(const std::string& specfile, int trunc, int grid_nodes,
               const std::string& omega, const OutputSink& out) {
  if (omega != "unit" && omega != "inv-mu2") {
    std::cerr << "unknown weight scheme '" << omega << "'\n";
    return kExitUnsupportedBackend;
  }
  WellSpec spec = load_spec(specfile);
  ScanConfig cfg;
  cfg.kappa_max = (trunc + 2) * kPi / 2.0 + 2.0;
  auto roots = find_real_roots(spec, cfg);
  if (static_cast<int>(roots.size()) > trunc) roots.resize(trunc);
  auto grid = make_grid(spec, grid_nodes);
  auto set = build_eigenpairs(spec, roots, grid);
  int usable = static_cast<int>(set.pairs.size()) / 2;
  if (usable < 2) {
    std::cerr << "fewer than 2 usable levels after degenerate-root exclusion\n";
    return kExitDegenerate;
  }
  MetricSpec mspec;
  mspec.truncation = trunc;
  mspec.scheme = (omega == "unit") ? WeightScheme::Unit : WeightScheme::InverseMuSquared;

  auto metric = build_metric(grid, set, mspec);
  Eigen::MatrixXcd gram = product_gram(grid, set, mspec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  double min_eig = es.eigenvalues().minCoeff();

  std::mt19937_64 rng(kDefaultSeed);
  std::normal_distribution<double> nd(0.0, 1.0);
  double qh_max = 0.0;
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * grid.size());
    for (const auto& p : set.pairs) {
      if (p.level <= trunc) v += cplx(nd(rng), nd(rng)) * p.right;
    }
    qh_max = std::max(qh_max, quasi_hermiticity_residual(grid, set, mspec, v));
  }
  auto trial = square_well_trial(grid, 1);
  double d_half = identity_defect(grid, set, std::max(1, trunc / 2), trial);
  double d_full = identity_defect(grid, set, trunc, trial);

  nlohmann::json j;
  j["provenance"] = provenance_line("metric", "--trunc=" + std::to_string(trunc) +
                                                  " --grid=" + std::to_string(grid_nodes) +
                                                  " --omega=" + omega)
                        .substr(2);
  j["truncation"] = trunc;
  j["grid"] = grid.size();
  j["min_eigenvalue_of_product_gram"] = min_eig;
  j["quasi_hermiticity_residual_max"] = qh_max;
  j["identity_defects"] = {d_half, d_full};
  j["mu"] = nlohmann::json::array();
  j["rho"] = nlohmann::json::array();
  bool pos = false, neg = false;
  for (const auto& p : set.pairs) {
    if (p.level > trunc) continue;
    j["mu"].push_back(p.mu);
    if (p.tau > 0) {
      j["rho"].push_back(p.rho);
      (p.rho > 0 ? pos : neg) = true;
    }
  }
  j["rho_signs_mixed"] = pos && neg;  // observation only, never asserted
  j["excluded_levels"] = set.excluded_levels;
  std::ostringstream os;
  os << provenance_line("metric", "--trunc=" + std::to_string(trunc) +
                                      " --grid=" + std::to_string(grid_nodes) +
                                      " --omega=" + omega)
     << '\n'
     << j.dump(2) << '\n';
  out.write(os.str());
  return 0;
}

int cmd_verify(const std::string& specfile, std::uint64_t seed, const OutputSink& out) {
  WellSpec spec = load_spec(specfile);
  auto rep = verify_determinants(spec, seed);
  auto rat = verify_rational_a({0.0, 1.0, 5.0}, 8.0 * kPi);
  for (auto& c : rat.checks) rep.checks.push_back(c);
  std::ostringstream os;
  os << provenance_line("verify", "--seed=" + std::to_string(seed)) << '\n'
     << rep.to_json() << '\n';
  out.write(os.str());
  return rep.all_pass() ? 0 : 1;
}

int cmd_wavefunction(const std::string& specfile, int level, int samples,
                     const OutputSink& out) {
  samples = std::max(2, samples);
  WellSpec spec = load_spec(specfile);
  ScanConfig cfg;
  cfg.kappa_max = (level + 2) * kPi / 2.0 + 2.0;
  auto roots = find_real_roots(spec, cfg);
  if (level < 1 || level > static_cast<int>(roots.size())) {
    std::cerr << "level " << level << " not found in the scanned range\n";
    return kExitBadInput;
  }
  auto psi = make_eigenfunction(spec, roots[level - 1].kappa, level);
  std::ostringstream os;
  os << provenance_line("wavefunction", "--level=" + std::to_string(level) +
                                            " --samples=" + std::to_string(samples))
     << "\nx,psi_re,psi_im\n";
  for (int i = 0; i < samples; ++i) {
    double x = -1.0 + 2.0 * i / (samples - 1);
    if (i == samples - 1) x = 1.0;
    cplx v = evaluate(psi, x);
    os << format_sci(x) << ',' << format_sci(v.real()) << ',' << format_sci(v.imag())
       << '\n';
  }
  out.write(os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric square-well bound-state toolkit"};
  app.require_subcommand(1);

  std::string specfile, outpath, backend = "matrix", omega = "inv-mu2";
  double kmax = 10.0 * kPi, xi_from = 0.0, xi_to = 1.0, xi_max = 40.0;
  int steps = 201, levels = 6, trunc = 12, grid_nodes = 1024, level = 1, samples = 201;
  std::uint64_t seed = kDefaultSeed;

  auto* sp = app.add_subcommand("spectrum", "bound-state roots of the secular determinant");
  sp->add_option("specfile", specfile)->required();
  sp->add_option("--kmax", kmax, "scan upper bound in kappa");
  sp->add_option("--backend", backend, "matrix|closed");
  sp->add_option("--out", outpath);

  auto* sw = app.add_subcommand("sweep", "continue levels in the coupling strength");
  sw->add_option("specfile", specfile)->required();
  sw->add_option("--xi-from", xi_from);
  sw->add_option("--xi-to", xi_to)->required();
  sw->add_option("--steps", steps, "number of sweep samples");
  sw->add_option("--levels", levels);
  sw->add_option("--out", outpath);

  auto* cl = app.add_subcommand("classify", "tag levels robust/fragile");
  cl->add_option("specfile", specfile)->required();
  cl->add_option("--levels", levels);
  cl->add_option("--xi-max", xi_max);
  cl->add_option("--out", outpath);

  auto* me = app.add_subcommand("metric", "two-component metric diagnostics");
  me->add_option("specfile", specfile)->required();
  me->add_option("--trunc", trunc);
  me->add_option("--grid", grid_nodes);
  me->add_option("--omega", omega, "unit|inv-mu2");
  me->add_option("--out", outpath);

  auto* ve = app.add_subcommand("verify", "cross-backend oracle suite");
  ve->add_option("specfile", specfile)->required();
  ve->add_option("--seed", seed);
  ve->add_option("--out", outpath);

  auto* wf = app.add_subcommand("wavefunction", "sample one bound-state wave function");
  wf->add_option("specfile", specfile)->required();
  wf->add_option("--level", level);
  wf->add_option("--samples", samples);
  wf->add_option("--out", outpath);

  CLI11_PARSE(app, argc, argv);
  OutputSink out{outpath};
  try {
    if (sp->parsed()) return cmd_spectrum(specfile, kmax, backend, out);
    if (sw->parsed()) return cmd_sweep(specfile, xi_from, xi_to, steps, levels, out);
    if (cl->parsed()) return cmd_classify(specfile, levels, xi_max, out);
    if (me->parsed()) return cmd_metric(specfile, trunc, grid_nodes, omega, out);
    if (ve->parsed()) return cmd_verify(specfile, seed, out);
    if (wf->parsed()) return cmd_wavefunction(specfile, level, samples, out);
  } catch (const Error& e) {
    std::cerr << errc_name(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case Errc::MalformedLine:
      case Errc::BadDomain:
      case Errc::BadPosition:
      case Errc::BadNumber: return kExitBadInput;
      case Errc::DegenerateRoot: return kExitDegenerate;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
