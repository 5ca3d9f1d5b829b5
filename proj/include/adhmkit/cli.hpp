#pragma once

// The adhmkit command line: one subcommand per operation, JSON in and out.
//
// Exit codes: 0 pass / true, 1 fail / false, 2 error / indeterminate.
// Errors are written as {"error", "path", "detail"}.

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "adhmkit/adhmkit.hpp"
#include "adhmkit/json_io.hpp"
#include "adhmkit/property_suite.hpp"

namespace adhmkit::cli {

enum Exit : int { kPass = 0, kFail = 1, kError = 2 };

inline int exit_for(Verdict v) {
  switch (v) {
    case Verdict::pass: return kPass;
    case Verdict::fail: return kFail;
    default: return kError;
  }
}

/// "1e-7" sets all three tolerances; "rank=1e-9,eq=1e-8,root=1e-6" sets some.
inline Tolerance parse_tolerance_spec(const std::string& spec, Tolerance base = {}) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ParseError("ADHMKIT_TOL", "bad tolerance value \"" + s + "\"");
    return v;
  };
  if (spec.find('=') == std::string::npos) {
    const double v = number(spec);
    base.rank_rel = base.eq_rel = base.root_cluster = v;
    return base;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("ADHMKIT_TOL", "expected key=value, got \"" + item + "\"");
    const std::string key = item.substr(0, eq);
    const double v = number(item.substr(eq + 1));
    if (key == "rank") {
      base.rank_rel = v;
    } else if (key == "eq") {
      base.eq_rel = v;
    } else if (key == "root") {
      base.root_cluster = v;
    } else {
      throw ParseError("ADHMKIT_TOL", "unknown tolerance key \"" + key + "\"");
    }
  }
  return base;
}

inline json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ParseError("", std::string("invalid JSON: ") + ex.what());
  }
}

struct Runner {
  std::ostream& out;
  std::ostream& err;

  std::string out_path;
  std::optional<double> tol_all, tol_rank, tol_eq, tol_root;

  Tolerance tolerance() const {
    Tolerance t;
    if (const char* env = std::getenv("ADHMKIT_TOL"); env != nullptr && *env != '\0') t = parse_tolerance_spec(env);
    if (tol_all) t.rank_rel = t.eq_rel = t.root_cluster = *tol_all;
    if (tol_rank) t.rank_rel = *tol_rank;
    if (tol_eq) t.eq_rel = *tol_eq;
    if (tol_root) t.root_cluster = *tol_root;
    t.check();
    return t;
  }

  void emit(const json& j) const {
    if (out_path.empty()) {
      out << j.dump(2) << "\n";
      return;
    }
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write " + out_path);
    f << j.dump(2) << "\n";
  }

  void emit_error(const std::string& kind, const std::string& path, const std::string& detail) const {
    out << json{{"error", kind}, {"path", path}, {"detail", detail}}.dump(2) << "\n";
  }
};

inline json point_report(const ValidationReport& r, const ChartSetReport& p2) {
  json j = to_json(r);
  j["charts"] = p2.charts;
  return j;
}

/// Parses argv and runs one subcommand; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Runner io{out, err, {}, {}, {}, {}, {}};
  CLI::App app{"adhmkit: ADHM data for Hilbert schemes of points on Tot O_P1(-n)"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", io.tol_all, "set all three tolerances");
    sub->add_option("--tol.rank", io.tol_rank, "relative singular-value threshold (default 1e-9)");
    sub->add_option("--tol.eq", io.tol_eq, "relative equality threshold (default 1e-8)");
    sub->add_option("--tol.root", io.tol_root, "root clustering radius (default 1e-6)");
    sub->add_option("--out", io.out_path, "write JSON here instead of standard output");
  };

  std::string file, file2;
  int m = 0, l = 0, n = 1, cbase = 1, h = 0;
  std::optional<int> opt_m, opt_n, opt_cbase;
  std::function<int()> action;
  const auto tol = [&] { return io.tolerance(); };

  auto with_file = [&](CLI::App* sub) { sub->add_option("file", file, "input JSON (- for stdin)")->required(); };

  // ---- hirz_adhm -----------------------------------------------------------
  auto* validate_cmd = app.add_subcommand("validate", "check (P1), (P2), (P3) of hirz_adhm data");
  common(validate_cmd);
  with_file(validate_cmd);
  validate_cmd->callback([&] {
    action = [&] {
      const HirzADHM d = hirz_from_json(read_json_file(file));
      const Tolerance t = tol();
      const ValidationReport r = validate(d, t);
      io.emit(point_report(r, validate_p2(d, t)));
      return exit_for(r.overall());
    };
  });

  auto* plane_cmd = app.add_subcommand("validate-plane", "check (T1), (T2) of plane_adhm data");
  common(plane_cmd);
  with_file(plane_cmd);
  plane_cmd->callback([&] {
    action = [&] {
      const ValidationReport r = validate_plane(plane_from_json(read_json_file(file)), tol());
      io.emit(to_json(r));
      return exit_for(r.overall());
    };
  });

  auto* charts_cmd = app.add_subcommand("chart-set", "charts m with det A_2m != 0");
  common(charts_cmd);
  with_file(charts_cmd);
  charts_cmd->callback([&] {
    action = [&] {
      const ChartSetReport r = validate_p2(hirz_from_json(read_json_file(file)), tol());
      io.emit(to_json(r));
      return exit_for(r.verdict);
    };
  });

  auto* to_chart_cmd = app.add_subcommand("to-chart", "chart coordinates (B, E, e; A2m) on chart m");
  common(to_chart_cmd);
  with_file(to_chart_cmd);
  to_chart_cmd->add_option("--m", m, "chart index")->required();
  to_chart_cmd->callback([&] {
    action = [&] {
      io.emit(to_json(to_chart(hirz_from_json(read_json_file(file)), m, tol())));
      return kPass;
    };
  });

  auto* from_chart_cmd =
      app.add_subcommand("from-chart", "hirz_adhm data from chart_coords, or from plane_adhm with A = 1");
  common(from_chart_cmd);
  with_file(from_chart_cmd);
  from_chart_cmd->add_option("--m", opt_m, "chart index (plane input)");
  from_chart_cmd->add_option("--n", opt_n, "n (plane input)");
  from_chart_cmd->callback([&] {
    action = [&] {
      const json j = read_json_file(file);
      const std::string kind = jsonio::kind_of(j);
      if (kind == "chart_coords") {
        const ChartCoords cc = chart_from_json(j);
        if ((opt_m && *opt_m != cc.m) || (opt_n && *opt_n != cc.n)) {
          throw ParseError("", "--m/--n disagree with the chart_coords input");
        }
        io.emit(to_json(from_chart(cc, tol())));
      } else if (kind == "plane_adhm") {
        if (!opt_m || !opt_n) throw ParseError("", "plane input needs --m and --n");
        const PlaneADHM p = plane_from_json(j);
        io.emit(to_json(from_chart(*opt_m, p, identity(p.c()), *opt_n, tol())));
      } else {
        throw ParseError("/kind", "expected chart_coords or plane_adhm");
      }
      return kPass;
    };
  });

  auto* transition_cmd =
      app.add_subcommand("transition", "move chart_coords (or plane_adhm) from chart m to chart l");
  common(transition_cmd);
  with_file(transition_cmd);
  transition_cmd->add_option("--m", opt_m, "source chart (plane input; checked for chart_coords)");
  transition_cmd->add_option("--l", l, "target chart")->required();
  transition_cmd->add_option("--n", opt_n, "n (plane input)");
  transition_cmd->add_option("--cbase", opt_cbase, "c of the atlas (plane input)");
  transition_cmd->callback([&] {
    action = [&] {
      const json j = read_json_file(file);
      const std::string kind = jsonio::kind_of(j);
      if (kind == "chart_coords") {
        const ChartCoords cc = chart_from_json(j);
        if (opt_m && *opt_m != cc.m) throw ParseError("/m", "--m disagrees with the input chart");
        if (opt_n && *opt_n != cc.n) throw ParseError("/n", "--n disagrees with the input");
        if (opt_cbase && *opt_cbase != cc.c) throw ParseError("/c", "--cbase disagrees with the input");
        io.emit(to_json(transition_omega(cc, l, tol())));
      } else if (kind == "plane_adhm") {
        if (!opt_m || !opt_n || !opt_cbase) throw ParseError("", "plane input needs --m, --n and --cbase");
        io.emit(to_json(transition_plane(plane_from_json(j), *opt_m, l, *opt_n, *opt_cbase, tol())));
      } else {
        throw ParseError("/kind", "expected chart_coords or plane_adhm");
      }
      return kPass;
    };
  });

  auto* tplane_cmd = app.add_subcommand("transition-plane", "transition map of plane_adhm data");
  common(tplane_cmd);
  with_file(tplane_cmd);
  tplane_cmd->add_option("--m", m, "source chart")->required();
  tplane_cmd->add_option("--l", l, "target chart")->required();
  tplane_cmd->add_option("--n", n, "exponent n")->required();
  tplane_cmd->add_option("--cbase", cbase, "c of the atlas")->required();
  tplane_cmd->callback([&] {
    action = [&] {
      io.emit(to_json(transition_plane(plane_from_json(read_json_file(file)), m, l, n, cbase, tol())));
      return kPass;
    };
  });

  auto* canonical_cmd = app.add_subcommand("canonical", "canonical orbit representative with its gauge");
  common(canonical_cmd);
  with_file(canonical_cmd);
  canonical_cmd->callback([&] {
    action = [&] {
      const json j = read_json_file(file);
      if (jsonio::kind_of(j) == "plane_adhm") {
        const CanonicalPlane k = canonical_form(plane_from_json(j), tol());
        io.emit({{"kind", "canonical_plane"}, {"form", to_json(k.form)}, {"gauge", jsonio::matrix_to(k.gauge)}});
      } else {
        const CanonicalHirz k = canonicalize(hirz_from_json(j), tol());
        io.emit({{"kind", "canonical_hirz"},
                 {"chart", k.chart},
                 {"rep", to_json(k.rep)},
                 {"phi1", jsonio::matrix_to(k.phi1)},
                 {"phi2", jsonio::matrix_to(k.phi2)}});
      }
      return kPass;
    };
  });

  auto* orbit_cmd = app.add_subcommand("orbit-equal", "do two points lie in one gauge orbit");
  common(orbit_cmd);
  orbit_cmd->add_option("first", file, "first point")->required();
  orbit_cmd->add_option("second", file2, "second point")->required();
  orbit_cmd->callback([&] {
    action = [&] {
      const json a = read_json_file(file), b = read_json_file(file2);
      const std::string ka = jsonio::kind_of(a), kb = jsonio::kind_of(b);
      if (ka != kb) throw ParseError("/kind", "inputs have different kinds");
      bool equal = false;
      if (ka == "plane_adhm") {
        equal = orbit_equal_plane(plane_from_json(a), plane_from_json(b), tol());
      } else if (ka == "hirz_adhm") {
        equal = orbit_equal(hirz_from_json(a), hirz_from_json(b), tol());
      } else {
        throw ParseError("/kind", "expected plane_adhm or hirz_adhm");
      }
      io.emit({{"kind", "orbit_equal"}, {"equal", equal}});
      return equal ? kPass : kFail;
    };
  });

  auto* support_cmd = app.add_subcommand("support", "base support, chart support (--m) or joint spectrum");
  common(support_cmd);
  with_file(support_cmd);
  support_cmd->add_option("--m", opt_m, "chart for the full support");
  support_cmd->callback([&] {
    action = [&] {
      const json j = read_json_file(file);
      if (jsonio::kind_of(j) == "plane_adhm") {
        const PlaneADHM p = plane_from_json(j);
        const Tolerance t = tol();
        if (!validate_plane(p, t).passed()) throw DomainError("support: input is not valid");
        io.emit({{"kind", "joint_spectrum"}, {"pairs", to_json(joint_spectrum(p, t))}});
      } else {
        const HirzADHM d = hirz_from_json(j);
        io.emit(to_json(opt_m ? chart_support(d, *opt_m, tol()) : base_support(d, tol())));
      }
      return kPass;
    };
  });

  auto* hc_cmd = app.add_subcommand("hilbert-chow", "normalized g_c coefficients and base roots");
  common(hc_cmd);
  with_file(hc_cmd);
  hc_cmd->callback([&] {
    action = [&] {
      const HirzADHM d = hirz_from_json(read_json_file(file));
      const Tolerance t = tol();
      require_valid(d, t, "hilbert-chow");
      io.emit({{"kind", "hilbert_chow"},
               {"form", to_json(hilbert_chow_form(d.A1, d.A2))},
               {"base", to_json(base_support(d, t).base)}});
      return kPass;
    };
  });

  auto* sigma_cmd = app.add_subcommand("sigma", "the matrix sigma^h_m");
  sigma_cmd->set_help_flag("--help", "print this help message and exit");
  common(sigma_cmd);
  sigma_cmd->add_option("--h", h, "degree h")->required();
  sigma_cmd->add_option("--m", m, "rotation index m")->required();
  sigma_cmd->add_option("--c", cbase, "c of the atlas")->required();
  sigma_cmd->callback([&] {
    action = [&] {
      io.emit(to_json(sigma_matrix(h, m, cbase)));
      return kPass;
    };
  });

  auto* syst_cmd = app.add_subcommand("syst-rank", "rank of the linear system for C_1..C_n");
  common(syst_cmd);
  with_file(syst_cmd);
  syst_cmd->callback([&] {
    action = [&] {
      const HirzADHM d = hirz_from_json(read_json_file(file));
      const int rank = syst_rank(d.A1, d.A2, d.n, tol());
      const int want = (d.n - 1) * d.c() * d.c();
      io.emit({{"kind", "syst_rank"}, {"rank", rank}, {"maximal", want}});
      return rank == want ? kPass : kFail;
    };
  });

  auto* jac_cmd = app.add_subcommand("jacobian-dim", "nullity of the (P1) Jacobian");
  common(jac_cmd);
  with_file(jac_cmd);
  jac_cmd->callback([&] {
    action = [&] {
      const HirzADHM d = hirz_from_json(read_json_file(file));
      const Tolerance t = tol();
      require_valid(d, t, "jacobian-dim");
      const NullityResult r = jacobian_nullity(d, t);
      const int c = d.c(), want = 2 * c * c + 2 * c;
      io.emit({{"kind", "jacobian_dim"},
               {"nullity", r.nullity},
               {"rank", r.rank},
               {"ambient", r.ambient},
               {"gap", jsonio::real_or_null(r.gap)},
               {"expected", want},
               {"quotient_dim", r.nullity - 2 * c * c}});
      return r.nullity == want ? kPass : kFail;
    };
  });

  auto* tot_cmd = app.add_subcommand("c1-to-tot", "c = 1 data to a point of Tot O(-n)");
  common(tot_cmd);
  with_file(tot_cmd);
  tot_cmd->callback([&] {
    action = [&] {
      io.emit(to_json(p1_to_tot(hirz_from_json(read_json_file(file)), tol())));
      return kPass;
    };
  });

  auto* yt_cmd = app.add_subcommand("c1-from-ytilde", "c = 1 data from a point of Y~_n");
  common(yt_cmd);
  with_file(yt_cmd);
  yt_cmd->callback([&] {
    action = [&] {
      io.emit(to_json(ytilde_to_p1(ytilde_from_json(read_json_file(file)))));
      return kPass;
    };
  });

  SuiteConfig suite;
  std::string mutant = "reference", replay_path;
  auto* prop_cmd = app.add_subcommand("property-run", "run the property suite");
  common(prop_cmd);
  prop_cmd->add_option("--seed", suite.seed, "base seed");
  prop_cmd->add_option("--max-n", suite.max_n, "largest n");
  prop_cmd->add_option("--max-c", suite.max_c, "largest c");
  prop_cmd->add_option("--samples", suite.samples, "cases per property");
  prop_cmd->add_option("--filter", suite.filter, "run properties whose name contains this");
  prop_cmd->add_option("--cond-cap", suite.cond_cap, "condition-number cap for random gauges");
  prop_cmd->add_option("--mutant", mutant, "replace operations by a broken variant")
      ->check(CLI::IsMember(std::vector<std::string>{"reference", "flip_b2_exponent", "drop_p1_right_family"}));
  prop_cmd->add_option("--replay", replay_path, "re-run one dumped failure");
  prop_cmd->callback([&] {
    action = [&] {
      suite.tol = tol();
      suite.ops = mutant_ops(mutant);
      if (!replay_path.empty()) {
        const CaseOutcome o = replay(read_json_file(replay_path), suite);
        const char* status = o.status == CaseOutcome::Status::pass   ? "pass"
                             : o.status == CaseOutcome::Status::fail ? "fail"
                                                                     : "skip";
        io.emit({{"kind", "replay"}, {"status", status}, {"detail", o.detail}});
        return o.status == CaseOutcome::Status::fail ? kFail : kPass;
      }
      const SuiteReport r = run_suite(suite);
      for (const auto& w : r.warnings) io.err << "warning: " << w << "\n";
      io.emit(to_json(r, suite));
      return r.passed() ? kPass : kFail;
    };
  });

  std::string gen_kind = "hirz";
  GenConfig gen;
  auto* gen_cmd = app.add_subcommand("generate", "a random valid point");
  common(gen_cmd);
  gen_cmd->add_option("--kind", gen_kind, "hirz or plane")->check(CLI::IsMember(std::vector<std::string>{"hirz", "plane"}));
  gen_cmd->add_option("--seed", gen.seed, "seed");
  gen_cmd->add_option("--n", gen.n, "n");
  gen_cmd->add_option("--c", gen.c, "c");
  gen_cmd->callback([&] {
    action = [&] {
      if (gen.n < 1 || gen.n > 64 || gen.c < 1 || gen.c > 64) throw DomainError("generate: n and c must lie in 1..64");
      const Tolerance t = tol();
      io.emit(gen_kind == "plane" ? to_json(gen_plane_valid(gen, t)) : to_json(gen_hirz_valid(gen, t)));
      return kPass;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& ex) {
    io.emit_error("usage", "", ex.what());
    return kError;
  }
  try {
    return action ? action() : kError;
  } catch (const ParseError& ex) {
    io.emit_error("parse", ex.path(), ex.what());
  } catch (const ShapeError& ex) {
    io.emit_error("shape", "", ex.what());
  } catch (const DomainError& ex) {
    io.emit_error("domain", "", ex.what());
  } catch (const IndeterminateError& ex) {
    io.emit_error("indeterminate", "", ex.what());
  } catch (const std::exception& ex) {
    io.emit_error("internal", "", ex.what());
  }
  return kError;
}

}  // namespace adhmkit::cli
