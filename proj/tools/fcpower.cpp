// fcpower: command-line front end for the freeconv engine.
//
// Talks to the engine exclusively through the C API in freeconv.h. Results
// are written as CSV (17 significant digits) or JSON, atomically when an
// output path is given.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "freeconv.h"

namespace {

using nlohmann::json;

[[noreturn]] void fail_status(fc_status s) {
  std::fprintf(stderr, "fcpower: %s: %s\n", fc_status_name(s), fc_last_error());
  std::exit(s == FC_ERR_IO ? 2 : 1);
}

void check(fc_status s) {
  if (s != FC_OK) fail_status(s);
}

[[noreturn]] void fail_io(const std::string& what) {
  std::fprintf(stderr, "fcpower: IoError: %s\n", what.c_str());
  std::exit(2);
}

[[noreturn]] void fail_domain(const std::string& what) {
  std::fprintf(stderr, "fcpower: %s\n", what.c_str());
  std::exit(1);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail_io("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) fail_io("cannot read " + path);
  return ss.str();
}

// full-precision CSV cell
std::string csv(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// shortest round-trip form, with a trailing ".0" for integral values
std::string pretty(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  const std::string tmp = out_path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail_io("cannot open " + tmp);
    f << content;
    f.flush();
    if (!f) fail_io("cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, out_path, ec);
  if (ec) fail_io("cannot rename " + tmp + " to " + out_path + ": " + ec.message());
}

struct Options {
  std::string measure_path;
  std::string out_path;
  std::string format = "csv";
  double t = 2.0;
  double t_min = 1.05;
  double t_max = 4.0;
  int t_steps = 64;
  int points = 512;
  int n_atoms = 200;
  int dim = 400;
  int trials = 20;
  std::uint64_t seed = 1;
};

fc_measure* load_measure(const Options& opt) {
  const std::string text = read_file(opt.measure_path);
  fc_measure* m = nullptr;
  check(fc_measure_parse_json(text.c_str(), opt.n_atoms, &m));
  return m;
}

struct AtomList {
  std::vector<double> pos;
  std::vector<double> mass;
};

AtomList power_atoms(const fc_power* p) {
  AtomList a;
  const size_t n = fc_power_atom_count(p);
  a.pos.resize(n);
  a.mass.resize(n);
  if (n > 0) check(fc_power_atoms(p, a.pos.data(), a.mass.data(), n));
  return a;
}

int cmd_rho(const Options& opt) {
  fc_measure* m = load_measure(opt);
  double a = 0.0;
  check(fc_measure_rep_a(m, &a));
  const size_t n = fc_measure_rho_count(m);
  std::vector<double> pos(n), mass(n);
  if (n > 0) check(fc_measure_rho(m, pos.data(), mass.data(), n));

  std::string out;
  if (opt.format == "json") {
    json atoms = json::array();
    for (size_t i = 0; i < n; ++i)
      atoms.push_back({{"position", pos[i]}, {"mass", mass[i]}});
    out = json{{"a", a}, {"rho", std::move(atoms)}}.dump() + "\n";
  } else {
    out = "# a=" + csv(a) + "\nposition,mass\n";
    for (size_t i = 0; i < n; ++i)
      out += csv(pos[i]) + "," + csv(mass[i]) + "\n";
  }
  fc_measure_free(m);
  write_output(opt.out_path, out);
  return 0;
}

int cmd_density(const Options& opt) {
  fc_measure* m = load_measure(opt);
  fc_power* p = nullptr;
  check(fc_power_compute(m, opt.t, opt.points, &p));
  const size_t n = fc_power_sample_count(p);
  std::vector<double> u(n), pdf(n);
  if (n > 0) check(fc_power_samples(p, u.data(), pdf.data(), n));
  const AtomList atoms = power_atoms(p);
  double mass = 0.0;
  check(fc_power_total_mass(p, &mass));

  std::string out;
  if (opt.format == "json") {
    json samples = json::array();
    for (size_t i = 0; i < n; ++i)
      samples.push_back({{"u", u[i]}, {"pdf", pdf[i]}});
    json ja = json::array();
    for (size_t i = 0; i < atoms.pos.size(); ++i)
      ja.push_back({{"position", atoms.pos[i]}, {"mass", atoms.mass[i]}});
    out = json{{"t", opt.t},
               {"total_mass", mass},
               {"samples", std::move(samples)},
               {"atoms", std::move(ja)}}
              .dump() +
          "\n";
  } else {
    out = "u,pdf\n";
    for (size_t i = 0; i < n; ++i) out += csv(u[i]) + "," + csv(pdf[i]) + "\n";
    out += "# atoms\n# position,mass\n";
    for (size_t i = 0; i < atoms.pos.size(); ++i)
      out += "# " + csv(atoms.pos[i]) + "," + csv(atoms.mass[i]) + "\n";
  }
  fc_power_free(p);
  fc_measure_free(m);
  write_output(opt.out_path, out);
  return 0;
}

int cmd_atoms(const Options& opt) {
  fc_measure* m = load_measure(opt);
  fc_power* p = nullptr;
  check(fc_power_compute(m, opt.t, 8, &p));
  const AtomList atoms = power_atoms(p);

  std::string out;
  if (opt.format == "json") {
    json ja = json::array();
    for (size_t i = 0; i < atoms.pos.size(); ++i)
      ja.push_back({{"position", atoms.pos[i]}, {"mass", atoms.mass[i]}});
    out = json{{"t", opt.t}, {"atoms", std::move(ja)}}.dump() + "\n";
  } else {
    out = "position,mass\n";
    for (size_t i = 0; i < atoms.pos.size(); ++i)
      out += csv(atoms.pos[i]) + "," + csv(atoms.mass[i]) + "\n";
  }
  fc_power_free(p);
  fc_measure_free(m);
  write_output(opt.out_path, out);
  return 0;
}

int cmd_support(const Options& opt) {
  fc_measure* m = load_measure(opt);
  fc_support* s = nullptr;
  check(fc_support_compute(m, opt.t, &s));
  const int n = fc_support_ncomponents(s);

  std::string out;
  if (opt.format == "json") {
    json comps = json::array();
    for (int i = 0; i < n; ++i) {
      double lo, hi;
      int kind;
      check(fc_support_component(s, i, &lo, &hi, &kind));
      comps.push_back({{"lo", lo},
                       {"hi", hi},
                       {"kind", kind ? "atom_point" : "ac_component"}});
    }
    json vplus = json::array();
    for (int i = 0; i < fc_support_vplus_count(s); ++i) {
      double lo, hi;
      check(fc_support_vplus(s, i, &lo, &hi));
      vplus.push_back({{"lo", lo}, {"hi", hi}});
    }
    out = json{{"t", opt.t},
               {"n", n},
               {"components", std::move(comps)},
               {"vplus", std::move(vplus)}}
              .dump() +
          "\n";
  } else {
    out = "lo,hi,kind\n";
    for (int i = 0; i < n; ++i) {
      double lo, hi;
      int kind;
      check(fc_support_component(s, i, &lo, &hi, &kind));
      out += csv(lo) + "," + csv(hi) + "," +
             (kind ? "atom_point" : "ac_component") + "\n";
    }
  }
  fc_support_free(s);
  fc_measure_free(m);
  write_output(opt.out_path, out);
  return 0;
}

int cmd_ncurve(const Options& opt) {
  if (opt.t_steps < 1) fail_domain("BadT: --t-steps must be positive");
  if (!(opt.t_min > 1.0) || opt.t_max < opt.t_min)
    fail_domain("BadT: need 1 < t-min <= t-max");
  fc_measure* m = load_measure(opt);
  std::vector<double> ts(opt.t_steps);
  for (int i = 0; i < opt.t_steps; ++i)
    ts[i] = (opt.t_steps == 1)
                ? opt.t_min
                : opt.t_min + (opt.t_max - opt.t_min) * i / (opt.t_steps - 1);
  std::vector<int> ns(ts.size());
  check(fc_ncurve(m, ts.data(), ts.size(), ns.data()));

  std::string out;
  if (opt.format == "json") {
    json points = json::array();
    for (size_t i = 0; i < ts.size(); ++i)
      points.push_back({{"t", ts[i]}, {"n", ns[i]}});
    out = json{{"points", std::move(points)}}.dump() + "\n";
  } else {
    out = "t,n\n";
    for (size_t i = 0; i < ts.size(); ++i)
      out += csv(ts[i]) + "," + std::to_string(ns[i]) + "\n";
  }
  fc_measure_free(m);
  write_output(opt.out_path, out);
  return 0;
}

int cmd_merge(const Options& opt) {
  fc_measure* m = load_measure(opt);
  double m_inf = 0.0, t0 = 0.0;
  check(fc_merge_threshold(m, &m_inf, &t0));
  std::string out;
  if (opt.format == "json")
    out = json{{"m_inf", m_inf}, {"t0", t0}}.dump() + "\n";
  else
    out = "m=" + pretty(m_inf) + " t0=" + pretty(t0) + "\n";
  fc_measure_free(m);
  write_output(opt.out_path, out);
  return 0;
}

int cmd_oracle_compare(const Options& opt) {
  const int n = static_cast<int>(std::lround(opt.t));
  if (std::abs(opt.t - n) > 1e-9 || n < 2)
    fail_domain("BadDimension: oracle-compare needs an integer power t >= 2");
  fc_measure* m = load_measure(opt);
  fc_power* p = nullptr;
  check(fc_power_compute(m, static_cast<double>(n), opt.points, &p));
  fc_ecdf* e = nullptr;
  check(fc_rmt_sample(m, n, opt.dim, opt.trials, opt.seed, &e));
  double ks = 0.0;
  check(fc_ks_power_vs_ecdf(p, e, &ks));

  std::string out;
  if (opt.format == "json")
    out = json{{"ks", ks},
               {"n", n},
               {"dim", opt.dim},
               {"trials", opt.trials},
               {"seed", opt.seed}}
              .dump() +
          "\n";
  else
    out = "ks=" + pretty(ks) + "\n";
  fc_ecdf_free(e);
  fc_power_free(p);
  fc_measure_free(m);
  write_output(opt.out_path, out);
  return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool needs_t) {
  cmd->add_option("--measure", opt.measure_path, "measure file (JSON)")
      ->required();
  if (needs_t) cmd->add_option("--t", opt.t, "convolution power t");
  cmd->add_option("--out", opt.out_path, "output path (stdout if omitted)");
  cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--n-atoms", opt.n_atoms,
                  "atoms used to discretize continuous inputs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free additive convolution powers of measures on the real line"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* rho = app.add_subcommand("rho", "Nevanlinna measure of the input");
  add_common(rho, opt, false);

  CLI::App* density = app.add_subcommand("density", "density of mu^{boxplus t}");
  add_common(density, opt, true);
  density->add_option("--points", opt.points, "samples per support component");

  CLI::App* atoms = app.add_subcommand("atoms", "atoms of mu^{boxplus t}");
  add_common(atoms, opt, true);

  CLI::App* support = app.add_subcommand("support", "support decomposition");
  add_common(support, opt, true);

  CLI::App* ncurve = app.add_subcommand("ncurve", "component counts n(t)");
  add_common(ncurve, opt, false);
  ncurve->add_option("--t-min", opt.t_min, "first t (must exceed 1)");
  ncurve->add_option("--t-max", opt.t_max, "last t");
  ncurve->add_option("--t-steps", opt.t_steps, "grid size");

  CLI::App* merge = app.add_subcommand("merge", "merge threshold t0");
  add_common(merge, opt, false);

  CLI::App* oracle = app.add_subcommand("oracle-compare",
                                        "KS distance against the random-matrix oracle");
  add_common(oracle, opt, true);
  oracle->add_option("--points", opt.points, "samples per support component");
  oracle->add_option("--dim", opt.dim, "matrix dimension");
  oracle->add_option("--trials", opt.trials, "number of trials");
  oracle->add_option("--seed", opt.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "fcpower: %s\n", e.what());
    return 1;
  }

  if (rho->parsed()) return cmd_rho(opt);
  if (density->parsed()) return cmd_density(opt);
  if (atoms->parsed()) return cmd_atoms(opt);
  if (support->parsed()) return cmd_support(opt);
  if (ncurve->parsed()) return cmd_ncurve(opt);
  if (merge->parsed()) return cmd_merge(opt);
  if (oracle->parsed()) return cmd_oracle_compare(opt);
  return 1;
}
