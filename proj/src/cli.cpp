#include "pigbc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "pigbc/bounds.hpp"
#include "pigbc/channel.hpp"
#include "pigbc/improve.hpp"
#include "pigbc/regions.hpp"

namespace pigbc {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "pigbc-1";

// 17 significant digits: lossless double round-trip, '.' decimal point.
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV cell: unbounded/inapplicable values are emitted empty.
std::string cell(double v, bool present = true) {
  if (!present || !std::isfinite(v)) return "";
  return fmt17(v);
}

json num_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json channel_json(const Channel& c) { return json{{"x", c.x}, {"m", c.m}}; }

json canonical_json(const CanonicalForm& f) {
  if (const auto* att = std::get_if<Attenuator>(&f)) {
    return json{{"kind", "attenuator"}, {"eta", att->eta}, {"n", att->n}};
  }
  if (const auto* amp = std::get_if<Amplifier>(&f)) {
    return json{{"kind", "amplifier"}, {"gain", amp->gain}, {"n", amp->n}};
  }
  return json{{"kind", "additive_noise"}, {"n", std::get<AdditiveNoise>(f).n}};
}

const char* regime_name(EbRegime r) {
  return r == EbRegime::DeepEb ? "deep-eb" : "non-eb-or-border";
}

const char* branch_name(ImproveBranch b) {
  switch (b) {
    case ImproveBranch::Q1_1: return "q1_1";
    case ImproveBranch::Q1_2: return "q1_2";
    case ImproveBranch::Q2: return "q2";
    case ImproveBranch::Combined: return "combined";
  }
  return "combined";
}

json improved_json(const ImprovedBound& b) {
  return json{{"value", num_or_null(b.value)},
              {"unbounded", !std::isfinite(b.value)},
              {"argmin", channel_json(b.argmin)},
              {"branch", branch_name(b.branch)},
              {"iterations", b.iterations},
              {"tolerance_met", b.tolerance_met}};
}

struct Pair {
  int a = 0;
  int b = 0;
};

struct Window {
  double x_max = 2.0;
  double m_max = 1.0;
};

// Accepts "AxB" or "A,B".
Pair parse_pair(const std::string& s) {
  Pair p;
  char sep = '\0';
  std::istringstream in(s);
  if (!(in >> p.a >> sep >> p.b) || (sep != 'x' && sep != ',')) {
    throw CLI::ValidationError("expected two integers as NxM or N,M: " + s);
  }
  return p;
}

Window parse_window(const std::string& s) {
  Window w;
  char sep = '\0';
  std::istringstream in(s);
  if (!(in >> w.x_max >> sep >> w.m_max) || (sep != 'x' && sep != ',') ||
      w.x_max <= 0.0 || w.m_max <= 0.0) {
    throw CLI::ValidationError("expected two positive reals as X,M: " + s);
  }
  return w;
}

struct Options {
  double x = 0.0, m = 0.0;
  double ref_x = 0.0, ref_m = 0.0;
  double x1 = 0.0, m1 = 0.0, x2 = 0.0, m2 = 0.0;
  std::optional<double> fixed_m, fixed_x;
  double x_from = 0.0, x_to = 2.0;
  int steps = 201;
  std::string grid = "129";
  std::string window = "2,1";
  std::string mode = "best-upper";
  double tol = 1e-9;
  std::string format = "json";
  std::string out_path;
};

int grid_scalar(const std::string& s) {
  try {
    size_t pos = 0;
    const int g = std::stoi(s, &pos);
    if (pos == s.size() && g >= 2) return g;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("expected an integer >= 2 for --grid: " + s);
}

void emit(const Options& opt, std::ostream& out, const json& j,
          const std::function<void(std::ostream&)>& csv) {
  std::ofstream file;
  std::ostream* dst = &out;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path);
    if (!file) throw std::domain_error("cannot open output file: " + opt.out_path);
    dst = &file;
  }
  if (opt.format == "json") {
    *dst << j.dump(2) << "\n";
  } else {
    csv(*dst);
  }
}

void cmd_classify(const Options& opt, std::ostream& out) {
  const Channel c = make_channel(opt.x, opt.m);
  const RegionVerdict v = classify(c);
  const CanonicalForm f = to_canonical(c);
  json j{{"schema", kSchema},
         {"command", "classify"},
         {"channel", channel_json(c)},
         {"canonical", canonical_json(f)},
         {"m_eb", v.m_eb},
         {"m_ad", v.m_ad},
         {"is_eb", v.is_eb},
         {"is_ad", v.is_ad},
         {"regime", regime_name(v.regime)}};
  emit(opt, out, j, [&](std::ostream& o) {
    o << "x,m,m_eb,m_ad,is_eb,is_ad,regime\n";
    o << fmt17(c.x) << ',' << fmt17(c.m) << ',' << fmt17(v.m_eb) << ','
      << fmt17(v.m_ad) << ',' << (v.is_eb ? 1 : 0) << ',' << (v.is_ad ? 1 : 0)
      << ',' << regime_name(v.regime) << "\n";
  });
}

void cmd_compose(const Options& opt, std::ostream& out) {
  const Channel inner = make_channel(opt.x1, opt.m1);
  const Channel outer = make_channel(opt.x2, opt.m2);
  const Channel c3 = compose(inner, outer);
  json j{{"schema", kSchema},
         {"command", "compose"},
         {"order", "outer after inner"},
         {"inner", channel_json(inner)},
         {"outer", channel_json(outer)},
         {"composed", channel_json(c3)},
         {"canonical", canonical_json(to_canonical(c3))}};
  emit(opt, out, j, [&](std::ostream& o) {
    o << "x1,m1,x2,m2,x3,m3\n";
    o << fmt17(inner.x) << ',' << fmt17(inner.m) << ',' << fmt17(outer.x) << ','
      << fmt17(outer.m) << ',' << fmt17(c3.x) << ',' << fmt17(c3.m) << "\n";
  });
}

json entry_json(const BoundEntry& e) {
  return json{{"name", e.name},
              {"side", e.side == BoundSide::Upper   ? "upper"
                       : e.side == BoundSide::Lower ? "lower"
                                                    : "exact"},
              {"value", num_or_null(e.value)},
              {"applicable", e.applicable},
              {"unbounded", e.unbounded},
              {"extrapolated", e.extrapolated}};
}

void cmd_bounds(const Options& opt, std::ostream& out) {
  const Channel c = make_channel(opt.x, opt.m);
  const BoundReport r = report(c);
  json qp = json::array();
  for (const auto& e : r.q_p) qp.push_back(entry_json(e));
  json q2k = json::array();
  for (const auto& e : r.q2_k) q2k.push_back(entry_json(e));
  json j{{"schema", kSchema},
         {"command", "bounds"},
         {"channel", channel_json(c)},
         {"q_p", qp},
         {"q2_k", q2k},
         {"best_upper_q", num_or_null(r.best_upper_q)},
         {"best_upper_q_unbounded", r.best_upper_q_unbounded},
         {"best_lower_q", r.best_lower_q},
         {"zero_q", r.zero_q},
         {"zero_all", r.zero_all},
         {"additive_noise", r.additive_noise}};
  emit(opt, out, j, [&](std::ostream& o) {
    o << "group,name,side,value,applicable,unbounded,extrapolated\n";
    auto row = [&](const char* group, const BoundEntry& e) {
      o << group << ',' << e.name << ','
        << (e.side == BoundSide::Upper   ? "upper"
            : e.side == BoundSide::Lower ? "lower"
                                         : "exact")
        << ',' << cell(e.value, !e.unbounded) << ',' << (e.applicable ? 1 : 0)
        << ',' << (e.unbounded ? 1 : 0) << ',' << (e.extrapolated ? 1 : 0)
        << "\n";
    };
    for (const auto& e : r.q_p) row("q_p", e);
    for (const auto& e : r.q2_k) row("q2_k", e);
    o << "summary,best_upper_q,upper," << cell(r.best_upper_q, !r.best_upper_q_unbounded)
      << ",1," << (r.best_upper_q_unbounded ? 1 : 0) << ",0\n";
    o << "summary,best_lower_q,lower," << fmt17(r.best_lower_q) << ",1,0,0\n";
  });
}

void cmd_region(const Options& opt, std::ostream& out) {
  const Channel ref = make_channel(opt.ref_x, opt.ref_m);
  const Pair g = [&] {
    if (opt.grid.find(',') != std::string::npos ||
        opt.grid.find('x') != std::string::npos) {
      return parse_pair(opt.grid);
    }
    const int n = grid_scalar(opt.grid);
    return Pair{n, n};
  }();
  if (g.a < 2 || g.b < 2) throw CLI::ValidationError("--grid dimensions must be >= 2");
  const Window w = parse_window(opt.window);

  auto label = [&](const Channel& p) -> const char* {
    const bool lo = in_low_ground(ref, p);
    const bool hi = in_high_ground(ref, p);
    if (lo && hi) return "contact";
    if (lo) return "L";
    if (hi) return "H";
    return "neither";
  };

  json rows = json::array();
  std::ostringstream csv;
  csv << "xp,mp,label\n";
  for (int i = 0; i < g.a; ++i) {
    const double xp = w.x_max * i / (g.a - 1);
    for (int k = 0; k < g.b; ++k) {
      const double mp = w.m_max * k / (g.b - 1);
      const Channel p = make_channel(xp, mp);
      const char* lab = label(p);
      rows.push_back(json{{"xp", xp}, {"mp", mp}, {"label", lab}});
      csv << fmt17(xp) << ',' << fmt17(mp) << ',' << lab << "\n";
    }
  }
  json j{{"schema", kSchema},
         {"command", "region"},
         {"ref", channel_json(ref)},
         {"cells", rows}};
  emit(opt, out, j, [&](std::ostream& o) { o << csv.str(); });
}

void cmd_border(const Options& opt, std::ostream& out) {
  const Channel ref = make_channel(opt.ref_x, opt.ref_m);
  if (ref.x == 0.0) throw std::domain_error("border: reference x must be positive");
  if (opt.steps < 2) throw CLI::ValidationError("--steps must be >= 2");
  if (!(opt.x_to > opt.x_from)) throw CLI::ValidationError("--x-to must exceed --x-from");

  json rows = json::array();
  std::ostringstream csv;
  csv << "xp,f1,f2,low_border,high_border\n";
  for (int i = 0; i < opt.steps; ++i) {
    const double xp = opt.x_from + (opt.x_to - opt.x_from) * i / (opt.steps - 1);
    const double f1 = border_f1(ref, xp);
    const double f2 = border_f2(ref, xp);
    const double lo = std::max(f1, f2);
    const double hi = std::min(f1, f2);
    rows.push_back(
        json{{"xp", xp}, {"f1", f1}, {"f2", f2}, {"low_border", lo}, {"high_border", hi}});
    csv << fmt17(xp) << ',' << fmt17(f1) << ',' << fmt17(f2) << ',' << fmt17(lo)
        << ',' << fmt17(hi) << "\n";
  }
  json j{{"schema", kSchema},
         {"command", "border"},
         {"ref", channel_json(ref)},
         {"rows", rows}};
  emit(opt, out, j, [&](std::ostream& o) { o << csv.str(); });
}

void cmd_witness(const Options& opt, std::ostream& out) {
  const Channel ref = make_channel(opt.ref_x, opt.ref_m);
  const Channel p = make_channel(opt.x, opt.m);
  const Witness w = witness_low_ground(ref, p);
  json j{{"schema", kSchema},
         {"command", "witness"},
         {"ref", channel_json(ref)},
         {"target", channel_json(p)},
         {"pre", channel_json(w.pre)},
         {"post", channel_json(w.post)},
         {"mid", w.mid ? channel_json(*w.mid) : json(nullptr)},
         {"residual", w.residual}};
  emit(opt, out, j, [&](std::ostream& o) {
    o << "ref_x,ref_m,x,m,pre_x,pre_m,post_x,post_m,mid_x,mid_m,residual\n";
    o << fmt17(ref.x) << ',' << fmt17(ref.m) << ',' << fmt17(p.x) << ','
      << fmt17(p.m) << ',' << fmt17(w.pre.x) << ',' << fmt17(w.pre.m) << ','
      << fmt17(w.post.x) << ',' << fmt17(w.post.m) << ','
      << (w.mid ? fmt17(w.mid->x) : "") << ',' << (w.mid ? fmt17(w.mid->m) : "")
      << ',' << fmt17(w.residual) << "\n";
  });
}

void cmd_improve(const Options& opt, std::ostream& out) {
  const Channel c = make_channel(opt.x, opt.m);
  const ImprovedBound q1 = improved_q1(c, opt.tol);
  const ImprovedBound q2 = improved_q2(c);
  const ImprovedBound best = q2.value < q1.value ? q2 : q1;
  json j{{"schema", kSchema},
         {"command", "improve"},
         {"channel", channel_json(c)},
         {"m_max_gt", m_max_gt(c)},
         {"q1", improved_json(q1)},
         {"q2", improved_json(q2)},
         {"improved_upper", improved_json(best)}};
  emit(opt, out, j, [&](std::ostream& o) {
    o << "x,m,m_max_gt,q1,q2,improved_upper,branch,unbounded\n";
    o << fmt17(c.x) << ',' << fmt17(c.m) << ',' << fmt17(m_max_gt(c)) << ','
      << cell(q1.value) << ',' << cell(q2.value) << ',' << cell(best.value) << ','
      << branch_name(best.branch) << ',' << (std::isfinite(best.value) ? 0 : 1)
      << "\n";
  });
}

// Per-point selector over the four upper bounds compared in the figures.
struct SweepPoint {
  double q1 = 0.0, q2 = 0.0, plob = 0.0, twist = 0.0;
  bool q1_ok = false, q2_ok = false, plob_ok = false, twist_ok = false;
  double best = 0.0;
  std::string branch;
  double lower = 0.0;
};

SweepPoint sweep_point(const Channel& c, double tol) {
  SweepPoint p;
  const bool improvable = c.x >= 0.5 && c.m / m_eb(c.x) <= 0.5 + 1e-12;
  if (improvable) {
    const ImprovedBound q1 = improved_q1(c, tol);
    const ImprovedBound q2 = improved_q2(c);
    p.q1 = q1.value;
    p.q1_ok = std::isfinite(q1.value);
    p.q2 = q2.value;
    p.q2_ok = std::isfinite(q2.value);
  }
  const BoundValue pl = plob_upper(c);
  p.plob = pl.value;
  p.plob_ok = pl.applicable && std::isfinite(pl.value);
  const BoundValue tw = twist_upper(c);
  p.twist = tw.value;
  p.twist_ok = tw.applicable && std::isfinite(tw.value);
  p.lower = lower_q(c);

  p.best = std::numeric_limits<double>::infinity();
  auto consider = [&](bool ok, double v, const char* name) {
    if (ok && v < p.best) {
      p.best = v;
      p.branch = name;
    }
  };
  consider(p.q1_ok, p.q1, "q1");
  consider(p.q2_ok, p.q2, "q2");
  consider(p.plob_ok, p.plob, "plob");
  consider(p.twist_ok, p.twist, "twist");
  return p;
}

void cmd_sweep(const Options& opt, std::ostream& out) {
  if (opt.mode != "best-upper") {
    throw CLI::ValidationError("unknown --mode: " + opt.mode);
  }
  if (opt.steps < 2) throw CLI::ValidationError("--steps must be >= 2");
  if (opt.fixed_m.has_value() == opt.fixed_x.has_value()) {
    throw CLI::ValidationError("sweep requires exactly one of --fixed-m / --fixed-x");
  }
  if (!(opt.x_to > opt.x_from)) throw CLI::ValidationError("--x-to must exceed --x-from");

  json rows = json::array();
  std::ostringstream csv;
  csv << "x,m,q1,q2,plob,twist,best_upper,best_branch,best_unbounded,lower_q\n";
  for (int i = 0; i < opt.steps; ++i) {
    const double t = opt.x_from + (opt.x_to - opt.x_from) * i / (opt.steps - 1);
    const Channel c = opt.fixed_m ? make_channel(t, *opt.fixed_m)
                                  : make_channel(*opt.fixed_x, t);
    const SweepPoint p = sweep_point(c, opt.tol);
    const bool unbounded = !std::isfinite(p.best);
    rows.push_back(json{{"x", c.x},
                        {"m", c.m},
                        {"q1", p.q1_ok ? json(p.q1) : json(nullptr)},
                        {"q2", p.q2_ok ? json(p.q2) : json(nullptr)},
                        {"plob", p.plob_ok ? json(p.plob) : json(nullptr)},
                        {"twist", p.twist_ok ? json(p.twist) : json(nullptr)},
                        {"best_upper", unbounded ? json(nullptr) : json(p.best)},
                        {"best_branch", p.branch},
                        {"best_unbounded", unbounded},
                        {"lower_q", num_or_null(p.lower)}});
    csv << fmt17(c.x) << ',' << fmt17(c.m) << ',' << cell(p.q1, p.q1_ok) << ','
        << cell(p.q2, p.q2_ok) << ',' << cell(p.plob, p.plob_ok) << ','
        << cell(p.twist, p.twist_ok) << ',' << cell(p.best, !unbounded) << ','
        << p.branch << ',' << (unbounded ? 1 : 0) << ',' << cell(p.lower)
        << "\n";
  }
  json j{{"schema", kSchema}, {"command", "sweep"}, {"rows", rows}};
  emit(opt, out, j, [&](std::ostream& o) { o << csv.str(); });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"phase-insensitive Gaussian bosonic channel toolkit"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", opt.out_path);
  };
  auto add_channel = [&](CLI::App* sub) {
    sub->add_option("--x", opt.x)->required();
    sub->add_option("--m", opt.m)->required();
  };
  auto add_ref = [&](CLI::App* sub) {
    sub->add_option("--ref-x", opt.ref_x)->required();
    sub->add_option("--ref-m", opt.ref_m)->required();
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a channel");
  add_channel(classify_cmd);
  add_common(classify_cmd);

  CLI::App* compose_cmd =
      app.add_subcommand("compose", "compose two channels (second applied after first)");
  compose_cmd->add_option("--x1", opt.x1)->required();
  compose_cmd->add_option("--m1", opt.m1)->required();
  compose_cmd->add_option("--x2", opt.x2)->required();
  compose_cmd->add_option("--m2", opt.m2)->required();
  add_common(compose_cmd);

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "capacity bound report");
  add_channel(bounds_cmd);
  add_common(bounds_cmd);

  CLI::App* region_cmd =
      app.add_subcommand("region", "low/high-ground membership raster");
  add_ref(region_cmd);
  region_cmd->add_option("--grid", opt.grid);
  region_cmd->add_option("--window", opt.window);
  add_common(region_cmd);

  CLI::App* border_cmd = app.add_subcommand("border", "region border curves");
  add_ref(border_cmd);
  border_cmd->add_option("--x-from", opt.x_from);
  border_cmd->add_option("--x-to", opt.x_to);
  border_cmd->add_option("--steps", opt.steps);
  add_common(border_cmd);

  CLI::App* witness_cmd =
      app.add_subcommand("witness", "constructive low-ground witness");
  add_ref(witness_cmd);
  add_channel(witness_cmd);
  add_common(witness_cmd);

  CLI::App* improve_cmd = app.add_subcommand("improve", "improved upper bounds");
  add_channel(improve_cmd);
  improve_cmd->add_option("--tol", opt.tol);
  add_common(improve_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "1-D bound comparison sweep");
  sweep_cmd->add_option("--fixed-m", [&](const CLI::results_t& r) {
    opt.fixed_m = std::stod(r.at(0));
    return true;
  }, "hold M fixed, sweep x");
  sweep_cmd->add_option("--fixed-x", [&](const CLI::results_t& r) {
    opt.fixed_x = std::stod(r.at(0));
    return true;
  }, "hold x fixed, sweep M");
  sweep_cmd->add_option("--x-from", opt.x_from);
  sweep_cmd->add_option("--x-to", opt.x_to);
  sweep_cmd->add_option("--steps", opt.steps);
  sweep_cmd->add_option("--mode", opt.mode);
  sweep_cmd->add_option("--tol", opt.tol);
  add_common(sweep_cmd);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 1;
  }

  try {
    if (classify_cmd->parsed()) cmd_classify(opt, out);
    else if (compose_cmd->parsed()) cmd_compose(opt, out);
    else if (bounds_cmd->parsed()) cmd_bounds(opt, out);
    else if (region_cmd->parsed()) cmd_region(opt, out);
    else if (border_cmd->parsed()) cmd_border(opt, out);
    else if (witness_cmd->parsed()) cmd_witness(opt, out);
    else if (improve_cmd->parsed()) cmd_improve(opt, out);
    else if (sweep_cmd->parsed()) cmd_sweep(opt, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: domain: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: domain: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace pigbc
