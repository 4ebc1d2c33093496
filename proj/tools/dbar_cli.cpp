#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dbar/acceptance.hpp"
#include "dbar/bootstrap.hpp"
#include "dbar/canonical.hpp"
#include "dbar/counterexample.hpp"
#include "dbar/delta.hpp"
#include "dbar/io.hpp"
#include "dbar/monomial.hpp"
#include "dbar/torus_fourier.hpp"

using namespace dbar;

namespace {

struct Output {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw std::invalid_argument("cannot write " + path);
    }
    return file;
  }
};

json report_json(const SolveReport& r) {
  json checks = json::array();
  for (const auto& c : r.bound_checks) checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  return {{"residual_sup", r.residual_sup},
          {"samples", r.samples},
          {"constants", r.constants_measured},
          {"checks", checks},
          {"pass", r.all_pass()}};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int verdict_exit(bool ok) { return ok ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for the dbar equation on l1 balls"};
  app.require_subcommand(1);
  Output out;
  app.add_option("-o,--out", out.path, "Write results to this file instead of stdout");

  int status = 0;

  // delta-eval
  auto* delta = app.add_subcommand("delta-eval", "Enclosure of Delta(q, z)");
  double q_re = 1.0;
  double q_im = 0.0;
  std::string z_text;
  int cap = 0;
  double width = 1e-9;
  delta->add_option("--q", q_re, "Real part of q")->capture_default_str();
  delta->add_option("--q-im", q_im, "Imaginary part of q")->capture_default_str();
  delta->add_option("--z", z_text, "Point as nu:value,... (real values)")->required();
  delta->add_option("--cap", cap, "Degree cap; 0 chooses it from --width")->check(CLI::NonNegativeNumber);
  delta->add_option("--width", width, "Target width when --cap is 0")->check(CLI::PositiveNumber);
  delta->callback([&] {
    const Point z = Point::parse(z_text);
    const cplx q(q_re, q_im);
    const DeltaEnclosure e = cap > 0 ? delta_enclose(q, z, cap) : delta_enclose_to_width(q, z, width);
    auto& os = out.stream();
    write_csv_row(os, {"lower", "upper", "cap", "eta", "n", "s_eta"});
    write_csv_row(os, {csv_number(e.lower), csv_number(e.best_upper()), std::to_string(e.degree_cap), csv_number(e.eta),
                       std::to_string(e.n_split), std::to_string(e.s_eta)});
    status = verdict_exit(e.lower <= e.best_upper());
  });

  // monomial-approx
  auto* mono = app.add_subcommand("monomial-approx", "Entire split of a monomial series");
  std::string series_path;
  double split_r = 0.5;
  double epsilon = 1e-3;
  mono->add_option("--series", series_path, "Series JSON ({radius, terms} or a term list)")->required();
  mono->add_option("--r", split_r, "Radius r < series radius")->check(CLI::PositiveNumber);
  mono->add_option("--epsilon", epsilon, "Threshold")->check(CLI::PositiveNumber);
  mono->callback([&] {
    const MonomialSeries h = load_series(series_path);
    const EntireSplit sp = entire_split(h, split_r, epsilon);
    json kept = json::array();
    for (const auto& k : sp.kept) kept.push_back(k.to_string());
    const double rest = bracket_norm(h - sp.psi, split_r);
    const bool ok = rest <= epsilon;
    out.stream() << json{{"psi", series_to_json(sp.psi)},
                         {"kept", kept},
                         {"remainder_norm", rest},
                         {"epsilon", epsilon},
                         {"pass", ok}}
                        .dump(2)
                 << '\n';
    status = verdict_exit(ok);
  });

  // fejer-demo
  auto* fejer = app.add_subcommand("fejer-demo", "Fejer means of |sin pi t1| + |sin pi t2| on T^2");
  int grid = 256;
  std::vector<int> js{1, 2, 4, 8, 16, 32, 64};
  fejer->add_option("--grid", grid, "Nodes per circle")->check(CLI::PositiveNumber)->capture_default_str();
  fejer->add_option("--j", js, "Orders of the means")->delimiter(',')->check(CLI::PositiveNumber);
  fejer->callback([&] {
    const FejerDemo d = fejer_demo(js, grid);
    auto& os = out.stream();
    write_csv_row(os, {"j", "sup_error", "sup_mean", "lip_mean", "min_kernel_weight"});
    bool ok = true;
    for (const auto& row : d.rows) {
      write_csv_row(os, {std::to_string(row.j), csv_number(row.sup_error), csv_number(row.sup_mean),
                         csv_number(row.lip_mean), csv_number(row.min_kernel_weight)});
      ok = ok && row.min_kernel_weight >= 0.0 && verdict(row.sup_mean, d.sup_v);
    }
    status = verdict_exit(ok);
  });

  // canonical-solve
  auto* canon = app.add_subcommand("canonical-solve", "Canonical solution of a closed polynomial form");
  std::string form_path;
  double node_r = 0.5;
  int order = 8;
  canon->add_option("--form", form_path, "Form JSON")->required();
  canon->add_option("--r", node_r, "Node radius")->check(CLI::PositiveNumber)->capture_default_str();
  canon->add_option("--j", order, "Order of the Cesaro mean")->check(CLI::PositiveNumber)->capture_default_str();
  canon->callback([&] {
    const PolyForm f = load_form(form_path);
    const CanonicalSolution s = canonical_solve(f, node_r, order);
    json comps = json::object();
    for (const auto& [k, uk] : s.corrected_components) comps[k.to_string()] = function_to_json(uk);
    out.stream() << json{{"dim", f.dim()},
                         {"r", node_r},
                         {"j", order},
                         {"u", function_to_json(s.u)},
                         {"u_mean", function_to_json(s.u_mean)},
                         {"components", comps},
                         {"report", report_json(s.report)}}
                        .dump(2)
                 << '\n';
    status = verdict_exit(s.report.all_pass());
  });

  // tower
  auto* tower = app.add_subcommand("tower", "Truncation tower of canonical solutions");
  std::string levels_text = "1,2,3";
  double tower_R = 1.0;
  double tower_r = 0.5;
  tower->add_option("--form", form_path, "Form JSON")->required();
  tower->add_option("--levels", levels_text, "Ascending dimensions, comma separated")->capture_default_str();
  tower->add_option("--R", tower_R, "Outer radius")->check(CLI::PositiveNumber)->capture_default_str();
  tower->add_option("--r", tower_r, "Node radius, < R")->check(CLI::PositiveNumber)->capture_default_str();
  tower->callback([&] {
    const PolyForm f = load_form(form_path);
    std::vector<int> levels;
    for (double v : parse_list(levels_text)) levels.push_back(static_cast<int>(v));
    const TowerReport rep = truncation_tower(f, tower_R, tower_r, levels);
    json lv = json::array();
    for (const auto& l : rep.levels) {
      lv.push_back({{"N", l.N},
                    {"u", function_to_json(l.u)},
                    {"agrees_above", l.agrees_above},
                    {"Q", l.Q},
                    {"bound", {{"lhs", l.bound.lhs}, {"rhs", l.bound.rhs}, {"pass", l.bound.pass}}}});
    }
    out.stream() << json{{"levels", lv}, {"stable", rep.stable}, {"pass", rep.all_pass()}}.dump(2) << '\n';
    status = verdict_exit(rep.all_pass());
  });

  // bootstrap-solve
  auto* boot = app.add_subcommand("bootstrap-solve", "Projection bootstrap solver for N <= 2");
  std::string Z_text;
  double boot_R = 1.0;
  double boot_r = 0.5;
  BootstrapOptions opt;
  boot->add_option("--form", form_path, "Form JSON")->required();
  boot->add_option("--Z", Z_text, "Base point, comma separated real coordinates")->required();
  boot->add_option("--R", boot_R, "Outer radius")->check(CLI::PositiveNumber)->capture_default_str();
  boot->add_option("--r", boot_r, "Solution radius")->check(CLI::PositiveNumber)->capture_default_str();
  boot->add_option("--grid", opt.grid, "Least-squares nodes per real axis")->check(CLI::Range(4, 256))->capture_default_str();
  boot->add_option("--seed", opt.seed, "Sampling seed")->capture_default_str();
  boot->callback([&] {
    const PolyForm f = load_form(form_path);
    const std::vector<double> Z = parse_list(Z_text);
    const BootstrapResult res = bootstrap_solve(f, Z, boot_R, boot_r, opt);
    json lv = json::array();
    for (const auto& l : res.levels) lv.push_back({{"N", l.N}, {"R", l.R}, {"r", l.r}, {"report", report_json(l.report)}});
    out.stream() << json{{"levels", lv},
                         {"U_at_Z", {res.U_at_Z.real(), res.U_at_Z.imag()}},
                         {"pass", res.all_pass()}}
                        .dump(2)
                 << '\n';
    status = verdict_exit(res.all_pass());
  });

  // counterexample-scan
  auto* cx = app.add_subcommand("counterexample-scan", "Deviation of the best constant fit on the divergence sequence");
  CxConfig cfg;
  int n_max = 4096;
  cx->add_option("--p", cfg.p, "Homogeneity degree")->check(CLI::PositiveNumber)->capture_default_str();
  cx->add_option("--R", cfg.R, "Radius, 0 < 2R < 0.6")->check(CLI::PositiveNumber)->capture_default_str();
  cx->add_option("--Nmax", n_max, "Largest N (powers of two up to it)")->check(CLI::PositiveNumber)->capture_default_str();
  cx->callback([&] {
    cfg.N_list = doubling_list(n_max);
    const auto rows = divergence_scan(cfg);
    auto& os = out.stream();
    write_csv_row(os, {"N", "a_N", "deviation"});
    bool ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      write_csv_row(os, {std::to_string(rows[i].N), csv_number(rows[i].a_N), csv_number(rows[i].deviation)});
      if (i && !(rows[i].deviation > rows[i - 1].deviation)) ok = false;
    }
    status = verdict_exit(ok);
  });

  // accept
  auto* acc = app.add_subcommand("accept", "Run the acceptance suite");
  std::string data_dir = DBAR_DATA_DIR;
  std::vector<int> ids;
  bool verbose = false;
  acc->add_option("--data", data_dir, "Directory holding the corpus files")->capture_default_str();
  acc->add_option("--criteria", ids, "Subset of criteria (1..12)")->delimiter(',')->check(CLI::Range(1, kCriterionCount));
  acc->add_flag("-v,--verbose", verbose, "Print the trend tables of passing criteria too");
  acc->callback([&] {
    auto& os = out.stream();
    int failed = 0;
    for (const auto& r : run_acceptance(data_dir, ids)) {
      os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.title << ": " << r.detail << " (" << r.seconds
         << " s)\n";
      if (verbose || !r.pass) {
        for (const auto& line : r.table) os << "       " << line << '\n';
      }
      os.flush();
      failed += r.pass ? 0 : 1;
    }
    os << failed << " criteria failed\n";
    status = verdict_exit(failed == 0);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
