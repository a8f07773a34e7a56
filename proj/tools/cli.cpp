#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "carpet/analysis.hpp"
#include "carpet/error.hpp"
#include "carpet/format.hpp"
#include "carpet/heat_kernel.hpp"
#include "carpet/oracle.hpp"
#include "carpet/reflection.hpp"

namespace carpet::cli {

namespace {

using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::uint64_t seed = 1;
  std::optional<int> level;
  unsigned threads = 1;
  std::string out;
  double rho = kRhoDefault;

  int level_or(int fallback) const { return level.value_or(fallback); }
};

struct ParamFlags {
  std::optional<double> a;
  std::optional<double> b;
  bool snap_i1 = false;
  bool snap_i2 = false;
};

void add_param_flags(CLI::App* sub, ParamFlags& f) {
  sub->add_option("--a", f.a, "weight of corner digits 1,3,5,7");
  sub->add_option("--b", f.b, "weight of edge digits 2,4,6,8");
  auto* i1 = sub->add_flag("--snap-i1", f.snap_i1, "use b = 1 - 2a exactly (ignores --b)");
  sub->add_flag("--snap-i2", f.snap_i2, "use a = 1 - 2b exactly (ignores --a)")->excludes(i1);
}

WeightParams resolve_params(const ParamFlags& f, std::optional<WeightParams> fallback) {
  if (f.snap_i1) {
    if (!f.a) throw Error(ErrorKind::Parse, "--snap-i1 needs --a");
    return WeightParams::snapped_i1(*f.a);
  }
  if (f.snap_i2) {
    if (!f.b) throw Error(ErrorKind::Parse, "--snap-i2 needs --b");
    return WeightParams::snapped_i2(*f.b);
  }
  if (f.a && f.b) return WeightParams(*f.a, *f.b);
  if (!f.a && !f.b && fallback) return *fallback;
  throw Error(ErrorKind::Parse, "give both --a and --b");
}

// --out file when given, the command's stdout otherwise.
// Output is buffered and written on close(), so a failing command leaves
// no partial rows behind.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw IoError(path + ": " + std::strerror(errno));
    stream_ = &file_;
  }

  std::ostream& get() { return buffer_; }

  void close() {
    *stream_ << buffer_.str();
    if (!file_.is_open()) return;
    file_.close();
    if (!file_) throw IoError("write failed");
  }

 private:
  std::ostringstream buffer_;
  std::ofstream file_;
  std::ostream* stream_;
};

Segment parse_segment(const std::string& text) {
  const std::string prefix = "seg:";
  if (text.rfind(prefix, 0) != 0) throw Error(ErrorKind::Parse, "filter must be seg:x1,y1,x2,y2");
  std::vector<std::string> parts;
  std::size_t start = prefix.size();
  for (;;) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) throw Error(ErrorKind::Parse, "filter must be seg:x1,y1,x2,y2");
  return Segment{TriadicPoint::parse(parts[0] + "," + parts[1]),
                 TriadicPoint::parse(parts[2] + "," + parts[3])};
}

// Numbers rounded to 12 significant digits; non-finite values become strings.
json json_real(double v) {
  const std::string text = format_real(v);
  if (!std::isfinite(v)) return text;
  return std::strtod(text.c_str(), nullptr);
}

json point_json(const TriadicPoint& p) { return p.str(); }

// ---------------------------------------------------------------- dist

struct DistFlags {
  ParamFlags params;
  std::string from, to, filter;
  bool pure = false;
};

int cmd_dist(const Global& g, const DistFlags& f, std::ostream& out, std::ostream& err) {
  const WeightParams params = resolve_params(f.params, std::nullopt);
  DistanceQuery query{params,
                      TriadicPoint::parse(f.from),
                      TriadicPoint::parse(f.to),
                      g.level_or(4),
                      f.pure ? LevelMode::Pure : LevelMode::Mixed,
                      {},
                      {}};
  if (!f.filter.empty()) query.filter = segment_filter(parse_segment(f.filter));
  const ParamRegion region = params.region();
  const DistanceResult result = shortest_chain(query);

  Sink sink(g.out, out);
  sink.get() << "region=" << to_string(region) << '\n'
             << "value=" << format_real(result.value) << '\n'
             << "witness=" << format_chain(result.witness) << '\n'
             << "settled=" << result.settled << '\n';
  sink.close();
  if (region == ParamRegion::NonMetric) {
    err << "warning: pseudometric regime (2a+b < 1 or a+2b < 1); the value is not a metric distance\n";
    return kNonMetric;
  }
  return kOk;
}

// ---------------------------------------------------------------- ball

struct BallFlags {
  ParamFlags params;
  std::string at = "p1";
  double radius = 0.0;
  bool pure = false;
};

int cmd_ball(const Global& g, const BallFlags& f, std::ostream& out) {
  const WeightParams params = resolve_params(f.params, std::nullopt);
  const auto ball = metric_ball(params, TriadicPoint::parse(f.at), f.radius, g.level_or(4),
                                f.pure ? LevelMode::Pure : LevelMode::Mixed);
  Sink sink(g.out, out);
  sink.get() << "level,ix,iy,dist\n";
  for (const BallCell& c : ball) {
    sink.get() << c.cell.level << ',' << c.cell.ix << ',' << c.cell.iy << ',' << format_real(c.dist) << '\n';
  }
  sink.close();
  return kOk;
}

// ---------------------------------------------------------------- scan

int cmd_scan(const Global& g, double grid, std::ostream& out) {
  const auto rows = degeneracy_scan(grid, g.level_or(4), g.threads);
  Sink sink(g.out, out);
  write_scan_csv(sink.get(), rows);
  sink.close();
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyFlags {
  ParamFlags params;
  std::string suite;
  std::optional<std::size_t> samples;
  int n = 1;
  std::vector<int> ns{2, 4, 8, 16, 32};
  std::string from = "p1", to = "p3";
  std::optional<double> cap;  ///< overrides the probe caps below
};

constexpr double kProbeCap = 50.0;
constexpr double kChainConditionCap = 10.0;

json params_json(const WeightParams& p) { return json{{"a", json_real(p.a())}, {"b", json_real(p.b())}}; }

struct SuiteOutcome {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<json> records;
};

void add_record(SuiteOutcome& o, json record, bool ok) {
  ++o.checked;
  if (!ok) ++o.violations;
  record["ok"] = ok;
  o.records.push_back(std::move(record));
}

SuiteOutcome suite_mirror(const Global& g, const VerifyFlags& f) {
  const WeightParams params = resolve_params(f.params, WeightParams(0.5, 0.25));
  const MirrorReport report = verify_mirror_ratio(params, f.samples.value_or(100), g.seed, g.level_or(4));
  SuiteOutcome o;
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const MirrorSample& s = report.samples[i];
    add_record(o,
               json{{"suite", "prop21"},
                    {"index", i},
                    {"params", params_json(params)},
                    {"from", s.from.str()},
                    {"to", s.to.str()},
                    {"chain", format_chain(s.chain)},
                    {"image", format_chain(s.image)},
                    {"shift", {s.shift.corner, s.shift.edge}},
                    {"ratio", json_real(s.ratio)}},
               s.ok);
  }
  return o;
}

void add_rule_records(SuiteOutcome& o, const ReflectionReport& report, const char* suite, const char* rule,
                      const WeightParams& params, int n, int level) {
  for (const ReflectionSample& s : report.samples) {
    add_record(o,
               json{{"suite", suite},
                    {"rule", rule},
                    {"params", params_json(params)},
                    {"n", n},
                    {"level", level},
                    {"cell", s.cell.str()},
                    {"word", cell_to_word(s.cell).str()},
                    {"image", s.image.str()},
                    {"line", s.line.str()},
                    {"shift", {s.shift.corner, s.shift.edge}}},
               s.ok);
  }
}

SuiteOutcome suite_ell(const Global& g, const VerifyFlags& f) {
  const WeightParams params = resolve_params(f.params, WeightParams(0.5, 0.25));
  const int level = g.level_or(f.n + 1);
  SuiteOutcome o;
  add_rule_records(o, verify_reflection_rule(params, ReflectionRule::EllBand, f.n, level,
                                               f.samples.value_or(100000), g.seed),
                    "lemma27", "ell", params, f.n, level);
  return o;
}

SuiteOutcome suite_strips(const Global& g, const VerifyFlags& f) {
  const WeightParams params = resolve_params(f.params, WeightParams(0.25, 0.5));
  const int level = g.level_or(f.n + 1);
  SuiteOutcome o;
  add_rule_records(o, verify_reflection_rule(params, ReflectionRule::UpperStrip, f.n, level,
                                               f.samples.value_or(100000), g.seed),
                    "lemma28", "upper", params, f.n, level);
  add_rule_records(o, verify_reflection_rule(params, ReflectionRule::LowerStrip, f.n, level,
                                               f.samples.value_or(100000), g.seed),
                    "lemma28", "lower", params, f.n, level);
  return o;
}

SuiteOutcome suite_adapted(const Global& g, const VerifyFlags& f) {
  const WeightParams params = resolve_params(f.params, WeightParams(1.0 / 3.0, 1.0 / 3.0));
  const int level = g.level_or(5);
  const auto report = adaptedness_probe(params, f.samples.value_or(200), level, g.seed, g.threads);
  const double cap = f.cap.value_or(kProbeCap);
  SuiteOutcome o;
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const AdaptedSample& s = report.samples[i];
    const bool ok = s.d1 >= s.d * (1.0 - 1e-12) && s.ratio <= cap;
    add_record(o,
               json{{"suite", "adapted"},
                    {"index", i},
                    {"params", params_json(params)},
                    {"level", level},
                    {"p", point_json(s.p)},
                    {"q", point_json(s.q)},
                    {"d1", json_real(s.d1)},
                    {"d", json_real(s.d)},
                    {"ratio", json_real(s.ratio)},
                    {"cap", json_real(cap)}},
               ok);
  }
  o.records.push_back(json{{"suite", "adapted"}, {"sup_ratio", json_real(report.sup_ratio)}});
  return o;
}

SuiteOutcome suite_qs(const Global& g, const VerifyFlags& f) {
  const WeightParams params = resolve_params(f.params, WeightParams(1.0 / 3.0, 1.0 / 3.0));
  const int level = g.level_or(5);
  const auto report = quasisymmetry_probe(params, f.samples.value_or(200), level, g.seed, g.threads);
  const double cap = f.cap.value_or(kProbeCap);
  SuiteOutcome o;
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const QsSample& s = report.samples[i];
    add_record(o,
               json{{"suite", "qs"},
                    {"index", i},
                    {"params", params_json(params)},
                    {"level", level},
                    {"p", point_json(s.p)},
                    {"q", point_json(s.q)},
                    {"s", point_json(s.s)},
                    {"t", json_real(s.t)},
                    {"ratio", json_real(s.ratio)},
                    {"scaled", json_real(s.scaled)},
                    {"cap", json_real(cap)}},
               s.scaled <= cap);
  }
  o.records.push_back(json{{"suite", "qs"},
                           {"kappa1", json_real(report.exponents.kappa1)},
                           {"kappa2", json_real(report.exponents.kappa2)},
                           {"sup_scaled", json_real(report.sup_scaled)}});
  return o;
}

SuiteOutcome suite_chaincond(const Global& g, const VerifyFlags& f) {
  const WeightParams params = resolve_params(f.params, WeightParams(1.0 / 3.0, 1.0 / 3.0));
  const int level = g.level_or(6);
  const bool critical = is_critical(params.region());
  const double cap = f.cap.value_or(kChainConditionCap);
  const TriadicPoint p = TriadicPoint::parse(f.from), q = TriadicPoint::parse(f.to);
  SuiteOutcome o;
  for (int n : f.ns) {
    const auto report = chain_condition_probe(params, p, q, n, level);
    json gaps = json::array();
    for (double gap : report.gaps) gaps.push_back(json_real(gap));
    json points = json::array();
    for (const TriadicPoint& x : report.points) points.push_back(point_json(x));
    add_record(o,
               json{{"suite", "chaincond"},
                    {"params", params_json(params)},
                    {"level", level},
                    {"n", n},
                    {"p", point_json(p)},
                    {"q", point_json(q)},
                    {"distance", json_real(report.distance)},
                    {"c_est", json_real(report.c_est)},
                    {"cap", critical ? json(json_real(cap)) : json(nullptr)},
                    {"points", points},
                    {"gaps", gaps}},
               !critical || report.c_est <= cap);
  }
  return o;
}

SuiteOutcome suite_oracle(const Global& g, const VerifyFlags& f) {
  const auto report = oracle_equivalence(f.samples.value_or(50), g.seed, g.level_or(2));
  SuiteOutcome o;
  for (std::size_t i = 0; i < report.cases.size(); ++i) {
    const OracleCase& c = report.cases[i];
    add_record(o,
               json{{"suite", "oracle"},
                    {"index", i},
                    {"params", params_json(c.query.params)},
                    {"source", point_json(c.query.source)},
                    {"target", point_json(c.query.target)},
                    {"level", c.query.max_level},
                    {"mode", to_string(c.query.mode)},
                    {"segment_filter", c.segment_filtered},
                    {"search", json_real(c.search)},
                    {"oracle", json_real(c.oracle)}},
               c.ok);
  }
  return o;
}

int cmd_verify(const Global& g, const VerifyFlags& f, std::ostream& out) {
  SuiteOutcome outcome;
  if (f.suite == "prop21") outcome = suite_mirror(g, f);
  else if (f.suite == "lemma27") outcome = suite_ell(g, f);
  else if (f.suite == "lemma28") outcome = suite_strips(g, f);
  else if (f.suite == "adapted") outcome = suite_adapted(g, f);
  else if (f.suite == "qs") outcome = suite_qs(g, f);
  else if (f.suite == "chaincond") outcome = suite_chaincond(g, f);
  else outcome = suite_oracle(g, f);

  if (!g.out.empty()) {
    Sink sink(g.out, out);
    for (const json& r : outcome.records) sink.get() << r.dump() << '\n';
    sink.close();
  }
  out << "suite=" << f.suite << " checked=" << outcome.checked << " violations=" << outcome.violations
      << '\n';
  for (const json& r : outcome.records) {
    if (r.contains("ok") && !r["ok"].get<bool>()) out << r.dump() << '\n';
  }
  return outcome.violations == 0 ? kOk : kViolation;
}

// ---------------------------------------------------------------- heat kernel

int cmd_beta(const Global& g, double mu1, std::ostream& out) {
  const HeatKernelParams hk = heat_kernel_params(MeasureParams::from_mu1(mu1), g.rho);
  char line[160];
  std::snprintf(line, sizeof line, "beta=%g a=%g b=%g gamma=%g\n", hk.beta, hk.a, hk.b, hk.gamma);
  Sink sink(g.out, out);
  sink.get() << line;
  sink.close();
  return kOk;
}

struct VolumeFlags {
  ParamFlags params;
  double mu1 = 0.125;
  std::string at = "p1";
  std::vector<double> radii{0.125, 0.25, 0.5, 1.0};
  bool pure = false;
};

int cmd_volume(const Global& g, const VolumeFlags& f, std::ostream& out) {
  const MeasureParams m = MeasureParams::from_mu1(f.mu1);
  std::optional<WeightParams> derived;
  if (!f.params.a && !f.params.b) derived = derive_ab(m, g.rho, solve_beta(m, g.rho));
  const WeightParams params = resolve_params(f.params, derived);
  const TriadicPoint x = TriadicPoint::parse(f.at);
  const LevelMode mode = f.pure ? LevelMode::Pure : LevelMode::Mixed;
  Sink sink(g.out, out);
  sink.get() << "r,V\n";
  for (double r : f.radii) {
    sink.get() << format_real(r) << ',' << format_real(volume(params, m, x, r, g.level_or(4), mode)) << '\n';
  }
  sink.close();
  return kOk;
}

struct ProfileFlags {
  double mu1 = 0.125;
  std::string at = "p1";
  double d = 0.5;
  std::vector<double> times{0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
  double c_lower = 2.0;
  double c_upper = 0.5;
};

int cmd_profile(const Global& g, const ProfileFlags& f, std::ostream& out) {
  const MeasureParams m = MeasureParams::from_mu1(f.mu1);
  const HeatKernelParams hk = heat_kernel_params(m, g.rho);
  const WeightParams params(hk.a, hk.b);
  const TriadicPoint x = TriadicPoint::parse(f.at);
  const int level = g.level_or(4);

  // Outer estimate of a ball too small to hold a whole admitted cell: the
  // level-cap cells around x.
  double floor_volume = 0.0;
  for (const CellId& c : locate_point(x, level)) floor_volume += cell_measure(m, c);

  Sink sink(g.out, out);
  sink.get() << "t,d,V,lower,upper\n";
  for (double t : f.times) {
    const double r = std::pow(t, 1.0 / hk.beta);
    double v = volume(params, m, x, r, level, LevelMode::Mixed);
    if (v == 0.0) v = floor_volume;
    const auto [lower, upper] = hk_profile(hk, f.d, v, t, f.c_lower, f.c_upper);
    sink.get() << format_real(t) << ',' << format_real(f.d) << ',' << format_real(v) << ','
               << format_real(lower) << ',' << format_real(upper) << '\n';
  }
  sink.close();
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Unreachable: return kUnreachable;
    case ErrorKind::LevelTooDeep: return kFailure;
    default: return kBadInput;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chain-infimum metrics on the Sierpinski carpet", "carpet-metric"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--seed", g.seed, "64-bit seed for sampled suites");
  app.add_option("--level", g.level, "level cap n");
  app.add_option("--threads", g.threads, "worker threads for independent queries")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", g.out, "write the main output to this file");
  app.add_option("--rho", g.rho, "renormalization factor rho");

  DistFlags dist;
  auto* dist_cmd = app.add_subcommand("dist", "chain distance between two points");
  add_param_flags(dist_cmd, dist.params);
  dist_cmd->add_option("--from", dist.from, "source point, e.g. 0/1,0/1 or p1")->required();
  dist_cmd->add_option("--to", dist.to, "target point")->required();
  dist_cmd->add_flag("--pure", dist.pure, "admit level-n cells only");
  dist_cmd->add_option("--filter", dist.filter, "seg:x1,y1,x2,y2 restricts chains to cells meeting the segment");

  BallFlags ball;
  auto* ball_cmd = app.add_subcommand("ball", "cells of a metric ball as CSV");
  add_param_flags(ball_cmd, ball.params);
  ball_cmd->add_option("--at", ball.at, "center point");
  ball_cmd->add_option("--radius", ball.radius, "ball radius")->required();
  ball_cmd->add_flag("--pure", ball.pure, "admit level-n cells only");

  double grid = 0.0;
  auto* scan_cmd = app.add_subcommand("scan", "degeneracy scan over a parameter grid as CSV");
  scan_cmd->add_option("--grid", grid, "grid step in (0, 1)")->required();

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  add_param_flags(verify_cmd, verify.params);
  verify_cmd->add_option("--suite", verify.suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"prop21", "lemma27", "lemma28", "adapted", "qs", "chaincond", "oracle"}));
  verify_cmd->add_option("--samples", verify.samples, "number of samples");
  verify_cmd->add_option("--n", verify.n, "line index for lemma27 / lemma28")->check(CLI::Range(1, 16));
  verify_cmd->add_option("--chain-n", verify.ns, "split counts for chaincond")->delimiter(',');
  verify_cmd->add_option("--from", verify.from, "chaincond source point");
  verify_cmd->add_option("--to", verify.to, "chaincond target point");
  verify_cmd->add_option("--cap", verify.cap, "finiteness cap for adapted, qs and chaincond");

  double mu1 = 0.125;
  auto* beta_cmd = app.add_subcommand("beta", "walk exponent, derived (a, b) and gamma");
  beta_cmd->add_option("--mu1", mu1, "corner-cell mass; mu2 = 1/4 - mu1");

  VolumeFlags vol;
  auto* volume_cmd = app.add_subcommand("volume", "ball volumes as CSV");
  add_param_flags(volume_cmd, vol.params);
  volume_cmd->add_option("--mu1", vol.mu1, "corner-cell mass; mu2 = 1/4 - mu1");
  volume_cmd->add_option("--at", vol.at, "center point");
  volume_cmd->add_option("--radii", vol.radii, "comma-separated radii")->delimiter(',');
  volume_cmd->add_flag("--pure", vol.pure, "admit level-n cells only");

  ProfileFlags prof;
  auto* profile_cmd = app.add_subcommand("profile", "sub-Gaussian profile sweep as CSV");
  profile_cmd->add_option("--mu1", prof.mu1, "corner-cell mass; mu2 = 1/4 - mu1");
  profile_cmd->add_option("--at", prof.at, "center point");
  profile_cmd->add_option("--d", prof.d, "metric distance d(x, y)");
  profile_cmd->add_option("--times", prof.times, "comma-separated times")->delimiter(',');
  profile_cmd->add_option("--c-lower", prof.c_lower, "constant c in the lower bound");
  profile_cmd->add_option("--c-upper", prof.c_upper, "constant c in the upper bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (dist_cmd->parsed()) return cmd_dist(g, dist, out, err);
    if (ball_cmd->parsed()) return cmd_ball(g, ball, out);
    if (scan_cmd->parsed()) return cmd_scan(g, grid, out);
    if (verify_cmd->parsed()) return cmd_verify(g, verify, out);
    if (beta_cmd->parsed()) return cmd_beta(g, mu1, out);
    if (volume_cmd->parsed()) return cmd_volume(g, vol, out);
    return cmd_profile(g, prof, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace carpet::cli
