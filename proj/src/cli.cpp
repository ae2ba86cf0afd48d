#include "moframe/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "moframe/bertrand.hpp"
#include "moframe/catalog.hpp"
#include "moframe/errors.hpp"
#include "moframe/frame.hpp"
#include "moframe/helix.hpp"
#include "moframe/parallel.hpp"
#include "moframe/report.hpp"

namespace moframe::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct CurveSource {
  std::string catalog_name;
  std::vector<double> params;
  std::string x, y, z;
  std::string domain;  // "lo:hi"
  bool unit_speed = false;

  bool from_catalog() const { return !catalog_name.empty(); }
};

struct Config {
  CurveSource curve;
  CurveSource other;
  int samples = 101;
  std::string range;  // optional "lo:hi" overriding the curve domain
  double constancy_threshold = 1e-8;
  double residual_threshold = 1e-8;
  std::string output = "-";
  std::string csv_path;
  std::string expect;
  std::string correspondence = "shared";
  double c = 0.0;
  double h = 0.5;
};

Interval parse_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("interval must be LO:HI, got '" + text + "'");
  try {
    const double lo = std::stod(text.substr(0, colon));
    const double hi = std::stod(text.substr(colon + 1));
    if (!(lo < hi)) throw Error("interval must satisfy LO < HI, got '" + text + "'");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw Error("interval must be LO:HI with numeric bounds, got '" + text + "'");
  }
}

struct LoadedCurve {
  Curve curve;
  std::optional<CatalogEntry> entry;
};

LoadedCurve load_curve(const CurveSource& source) {
  if (source.from_catalog()) {
    CatalogEntry entry = catalog::get(source.catalog_name, source.params);
    return {entry.curve(), std::move(entry)};
  }
  if (source.x.empty() || source.y.empty() || source.z.empty())
    throw Error("provide either --curve NAME or all of --x/--y/--z with --domain");
  if (source.domain.empty()) throw Error("expression curves need --domain LO:HI");
  CurveSpec spec{Expression::parse(source.x), Expression::parse(source.y),
                 Expression::parse(source.z), parse_interval(source.domain),
                 source.unit_speed ? Parametrization::declared_unit_speed
                                   : Parametrization::general};
  if (source.unit_speed) {
    Curve candidate(spec, "command-line curve");
    const auto check =
        check_unit_speed(candidate, SampleGrid::uniform(candidate.domain(), 101), 1e-8);
    if (!check.ok)
      throw Error("curve declared unit speed but max |speed-1| = " +
                  format_double(check.max_deviation));
  }
  return {Curve(spec, "command-line curve"), std::nullopt};
}

SampleGrid make_grid(const Curve& curve, const Config& config) {
  if (config.samples < 3) throw Error("--samples must be at least 3");
  if (config.range.empty()) return SampleGrid::uniform(curve.domain(), config.samples);
  const Interval range = parse_interval(config.range);
  if (!(range.lo >= curve.domain().lo && range.hi <= curve.domain().hi))
    throw Error("--range must lie inside the curve domain");
  return SampleGrid::uniform(range, config.samples);
}

Correspondence parse_correspondence(const std::string& text) {
  if (text == "shared") return Correspondence::shared_parameter;
  if (text == "closest") return Correspondence::closest_point;
  throw Error("--correspondence must be 'shared' or 'closest'");
}

void write_output(const std::string& path, const std::string& payload, std::ostream& out) {
  if (path == "-") {
    out << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open output file '" + path + "'");
  file << payload;
}

void write_curve_source(JsonWriter& w, const char* key, const CurveSource& source,
                        const Curve& curve) {
  w.key(key).begin_object();
  if (source.from_catalog()) {
    w.field("source", "catalog").field("name", source.catalog_name);
    w.key("params").begin_array();
    for (double p : source.params) w.value(p);
    w.end_array();
  } else {
    w.field("source", "expressions")
        .field("x", source.x)
        .field("y", source.y)
        .field("z", source.z)
        .field("declared_unit_speed", source.unit_speed);
  }
  w.key("domain").begin_array().value(curve.domain().lo).value(curve.domain().hi).end_array();
  w.field("provenance", curve.provenance());
  w.end_object();
}

void write_config(JsonWriter& w, const Config& config, const Curve& curve,
                  const Curve* other = nullptr) {
  w.key("config").begin_object();
  write_curve_source(w, "curve", config.curve, curve);
  if (other) write_curve_source(w, "other", config.other, *other);
  w.field("samples", config.samples);
  w.field("range", config.range.empty() ? "curve domain" : config.range);
  w.field("constancy_threshold", config.constancy_threshold);
  w.field("residual_threshold", config.residual_threshold);
  if (other) w.field("correspondence", config.correspondence);
  if (!config.expect.empty()) w.field("expect", config.expect);
  w.field("threads", thread_cap());
  w.end_object();
}

void write_constancy(JsonWriter& w, const char* key, const ConstancyReport& report) {
  w.key(key).begin_object();
  w.field("label", report.label);
  w.field("n", static_cast<long long>(report.values.size()));
  w.field("n_skipped", static_cast<long long>(report.skipped.size()));
  w.field("mean", report.mean);
  w.field("max_abs_dev", report.max_abs_dev);
  w.field("rel_variation", report.rel_variation);
  w.field("threshold", report.threshold);
  w.field("verdict", report.verdict);
  w.end_object();
}

int finish_expect(const Config& config, const std::string& key, bool verdict,
                  std::ostream& err) {
  if (config.expect.empty()) return kExitOk;
  if (config.expect != key) {
    err << "unknown --expect value '" << config.expect << "' for this subcommand (want '" << key
        << "')\n";
    return kExitInput;
  }
  return verdict ? kExitOk : kExitVerdictFalse;
}

int run_frames(const Config& config, std::ostream& out) {
  const LoadedCurve loaded = load_curve(config.curve);
  const SampleGrid grid = make_grid(loaded.curve, config);

  const std::vector<std::string> header = {"s",  "x",  "y",  "z",  "Tx",    "Ty",
                                           "Tz", "Nx", "Ny", "Nz", "Bx",    "By",
                                           "Bz", "kappa", "tau", "ode_T", "ode_N", "ode_B"};
  const std::size_t n = grid.size();
  std::vector<std::vector<double>> rows(n);
  parallel_for(n, [&](std::size_t i) {
    const double s = grid[i];
    const ModifiedFrameData f = modified_frame(loaded.curve, s);
    const Vec3 pos = value(loaded.curve.eval_jets(s, 0), 0);
    std::array<double, 3> ode{std::nan(""), std::nan(""), std::nan("")};
    try {
      ode = frame_ode_residual(loaded.curve, s);
    } catch (const CurvatureVanishes&) {
      // leave NaN: the kappa'/kappa entries of the frame equations are
      // undefined at curvature zeros
    }
    rows[i] = {s,     pos.x, pos.y, pos.z, f.T.x,   f.T.y, f.T.z,  f.N.x,  f.N.y,
               f.N.z, f.B.x, f.B.y, f.B.z, f.kappa, f.tau, ode[0], ode[1], ode[2]};
  });

  CsvWriter csv(header);
  for (const auto& row : rows) csv.row(row);
  write_output(config.output, csv.take(), out);
  return kExitOk;
}

int run_classify(const Config& config, std::ostream& out, std::ostream& err) {
  const LoadedCurve loaded = load_curve(config.curve);
  const Curve& curve = loaded.curve;
  const SampleGrid grid = make_grid(curve, config);

  const ConstancyReport lancret = lancret_ratio(curve, grid, config.constancy_threshold);
  const DetTestResult det = helix_det_test(curve, grid);
  const double mid = grid[grid.size() / 2];
  const OperatorResidual op = helix_operator_residual(curve, mid);
  const ConstancyReport slant_general =
      slant_function_general(curve, grid, config.constancy_threshold);

  std::optional<ConstancyReport> slant_ck;
  std::string slant_ck_skip_reason;
  try {
    slant_ck = slant_function_constant_kappa(curve, grid, config.constancy_threshold);
  } catch (const NonConstantCurvature& e) {
    slant_ck_skip_reason = e.what();
  }

  const bool degenerate_slant = std::abs(slant_general.mean) <= 1e-12;

  JsonWriter w;
  w.begin_object();
  w.field("schema", "moframe/1");
  w.field("command", "classify");
  write_config(w, config, curve);
  write_constancy(w, "lancret", lancret);
  w.key("det_test").begin_object();
  w.field("max_abs_det", det.max_abs_det);
  w.field("max_identity_residual", det.max_identity_residual);
  w.field("tolerance", det.tolerance);
  w.field("verdict", det.verdict);
  w.end_object();
  w.key("operator").begin_object();
  w.field("s", mid);
  w.field("residual", op.residual);
  w.field("mu", op.mu);
  w.end_object();
  write_constancy(w, "slant_general", slant_general);
  if (slant_ck) {
    write_constancy(w, "slant_constant_kappa", *slant_ck);
  } else {
    w.key("slant_constant_kappa").begin_object();
    w.field("skipped", slant_ck_skip_reason);
    w.end_object();
  }
  w.key("general_helix").begin_object();
  w.field("verdict", lancret.verdict);
  w.field("lancret_mean", lancret.mean);
  w.field("det_verdict", det.verdict);
  w.field("operator_residual", op.residual);
  w.end_object();
  w.key("slant_helix").begin_object();
  w.field("verdict", slant_general.verdict);
  w.field("constant", slant_general.mean);
  w.field("degenerate", degenerate_slant);
  if (degenerate_slant && slant_general.verdict)
    w.field("note", "slant (degenerate: the slant function vanishes identically)");
  w.end_object();
  w.end_object();
  write_output(config.output, w.take(), out);

  if (config.expect.empty()) return kExitOk;
  if (config.expect == "general-helix")
    return lancret.verdict ? kExitOk : kExitVerdictFalse;
  if (config.expect == "slant-helix")
    return slant_general.verdict ? kExitOk : kExitVerdictFalse;
  err << "--expect for classify takes 'general-helix' or 'slant-helix'\n";
  return kExitInput;
}

void write_pair_report(JsonWriter& w, const BertrandPairReport& report) {
  w.field("correspondence", report.correspondence);
  w.field("theta", report.theta);
  w.field("theta_signed", report.theta_signed);
  w.field("c", report.c_offset);
  w.field("c_deviation", report.c_deviation);
  w.key("residuals").begin_object();
  w.field("normal_parallelism", report.residual_normal_parallelism);
  w.field("offset_parallel", report.residual_offset_parallel);
  w.field("distance", report.residual_distance);
  w.field("angle", report.residual_angle);
  w.field("linear_relation", report.residual_linear_relation);
  w.end_object();
  w.field("linear_relation_applicable", report.linear_relation_applicable);
  w.key("identity_residuals").begin_object();
  w.field("kappa_relation", report.identity_residuals[0]);
  w.field("tau_product", report.identity_residuals[1]);
  w.end_object();
  w.field("tau_product_positive", report.tau_product_positive);
  w.field("trivial", report.trivial);
  w.field("threshold", report.threshold);
  w.field("verdict", report.verdict);
}

void write_curve_csv(const Curve& curve, const SampleGrid& grid, const std::string& path,
                     std::ostream& out) {
  CsvWriter csv({"s", "x", "y", "z"});
  for (double s : grid.points()) {
    const Vec3 p = value(curve.eval_jets(s, 0), 0);
    csv.row({s, p.x, p.y, p.z});
  }
  write_output(path, csv.take(), out);
}

int run_bertrand_mate(const Config& config, std::ostream& out, std::ostream& err) {
  LoadedCurve loaded = load_curve(config.curve);
  Curve base = loaded.curve;
  const bool reparametrized = !base.declared_unit_speed();
  if (reparametrized) base = unit_speed_view(base);

  const Curve mate = bertrand_mate(base, config.c);
  const SampleGrid grid = make_grid(base, config);
  const BertrandPairReport report = verify_bertrand_pair(
      base, mate, grid, Correspondence::shared_parameter, config.residual_threshold);

  if (!config.csv_path.empty()) write_curve_csv(mate, grid, config.csv_path, out);

  JsonWriter w;
  w.begin_object();
  w.field("schema", "moframe/1");
  w.field("command", "bertrand-mate");
  write_config(w, config, loaded.curve);
  w.field("c_requested", config.c);
  w.field("reparametrized_to_unit_speed", reparametrized);
  w.field("mate_provenance", mate.provenance());
  write_pair_report(w, report);
  w.end_object();
  write_output(config.output, w.take(), out);
  return finish_expect(config, "pair", report.verdict, err);
}

int run_bertrand_verify(const Config& config, std::ostream& out, std::ostream& err) {
  const LoadedCurve loaded = load_curve(config.curve);
  const LoadedCurve other = load_curve(config.other);
  const SampleGrid grid = make_grid(loaded.curve, config);
  const BertrandPairReport report =
      verify_bertrand_pair(loaded.curve, other.curve, grid,
                           parse_correspondence(config.correspondence),
                           config.residual_threshold);

  JsonWriter w;
  w.begin_object();
  w.field("schema", "moframe/1");
  w.field("command", "bertrand-verify");
  write_config(w, config, loaded.curve, &other.curve);
  write_pair_report(w, report);
  w.end_object();
  write_output(config.output, w.take(), out);
  return finish_expect(config, "pair", report.verdict, err);
}

int run_combine(const Config& config, std::ostream& out, std::ostream& err) {
  const LoadedCurve loaded = load_curve(config.curve);
  const LoadedCurve other = load_curve(config.other);
  const Correspondence correspondence = parse_correspondence(config.correspondence);
  const Curve combined = combine_curves(loaded.curve, other.curve, config.h, correspondence);
  const SampleGrid grid = SampleGrid::uniform(combined.domain(), config.samples);

  // Hypothesis checks: kappa of the first curve constant, tau of the second
  // constant, tangents parallel at corresponding points.
  const ConstancyReport kappa_a = [&] {
    std::vector<double> pts, vals;
    for (double s : grid.points()) {
      FramePoint fp(loaded.curve, s);
      pts.push_back(s);
      vals.push_back(fp.kappa_jet().value());
    }
    return make_constancy_report("kappa of first curve", pts, vals, {},
                                 config.constancy_threshold);
  }();
  const ConstancyReport tau_b = [&] {
    std::vector<double> pts, vals;
    double prev = grid[0];
    for (double s : grid.points()) {
      prev = correspondence == Correspondence::shared_parameter
                 ? s
                 : closest_param(other.curve, value(loaded.curve.eval_jets(s, 0), 0), prev);
      FramePoint fp(other.curve, prev);
      pts.push_back(s);
      vals.push_back(fp.tau_jet().value());
    }
    return make_constancy_report("tau of second curve", pts, vals, {},
                                 config.constancy_threshold);
  }();
  const double tangent_sine =
      correspondence_parallelism(loaded.curve, other.curve, grid,
                                 ParallelismMode::tangent_tangent, correspondence);

  // (h / kappa_phi) kappa_C + ((1-h) / tau_psi) tau_C = 1 over the grid.
  double relation_residual = 0.0;
  for (double s : grid.points()) {
    FramePoint fp(combined, s);
    const double lhs = (config.h / kappa_a.mean) * fp.kappa_jet().value() +
                       ((1.0 - config.h) / tau_b.mean) * fp.tau_jet().value();
    relation_residual = std::max(relation_residual, std::abs(lhs - 1.0));
  }
  const LinearRelationFit fit = linear_relation_fit(combined, grid);
  const bool verdict = relation_residual <= config.residual_threshold ||
                       fit.residual <= config.residual_threshold || fit.degenerate;

  if (!config.csv_path.empty()) write_curve_csv(combined, grid, config.csv_path, out);

  JsonWriter w;
  w.begin_object();
  w.field("schema", "moframe/1");
  w.field("command", "combine");
  write_config(w, config, loaded.curve, &other.curve);
  w.field("h", config.h);
  write_constancy(w, "kappa_first", kappa_a);
  write_constancy(w, "tau_second", tau_b);
  w.field("tangent_parallelism_sine", tangent_sine);
  w.field("relation_residual", relation_residual);
  w.key("fit").begin_object();
  w.field("c", fit.c);
  w.field("ac", fit.ac);
  w.field("residual", fit.residual);
  w.field("degenerate", fit.degenerate);
  w.end_object();
  w.field("verdict", verdict);
  w.end_object();
  write_output(config.output, w.take(), out);
  return finish_expect(config, "bertrand", verdict, err);
}

void add_curve_options(CLI::App* cmd, CurveSource& source, const char* prefix = "") {
  const std::string p(prefix);
  cmd->add_option("--" + p + "curve", source.catalog_name, "catalog curve name");
  cmd->add_option("--" + p + "param", source.params, "catalog curve parameter(s)");
  cmd->add_option("--" + p + "x", source.x, "x(s) formula");
  cmd->add_option("--" + p + "y", source.y, "y(s) formula");
  cmd->add_option("--" + p + "z", source.z, "z(s) formula");
  cmd->add_option("--" + p + "domain", source.domain, "parameter interval LO:HI");
  cmd->add_flag("--" + p + "unit-speed", source.unit_speed,
                "declare the curve unit speed (validated)");
}

void add_common_options(CLI::App* cmd, Config& config) {
  cmd->add_option("--samples", config.samples, "grid point count (>= 3)");
  cmd->add_option("--range", config.range, "sampling interval LO:HI inside the domain");
  cmd->add_option("--constancy-threshold", config.constancy_threshold,
                  "relative variation threshold for constancy verdicts");
  cmd->add_option("--residual-threshold", config.residual_threshold,
                  "residual threshold for pair verdicts");
  cmd->add_option("--output", config.output, "output path, '-' for stdout");
  cmd->add_option("--expect", config.expect, "demand a verdict; exit 1 when false");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"frames, helix classification, and Bertrand pairs of analytic space curves"};
  app.require_subcommand(1);

  Config config;

  CLI::App* frames = app.add_subcommand("frames", "sample Frenet and modified frames (CSV)");
  add_curve_options(frames, config.curve);
  add_common_options(frames, config);

  CLI::App* classify = app.add_subcommand("classify", "helix and slant-helix reports (JSON)");
  add_curve_options(classify, config.curve);
  add_common_options(classify, config);

  CLI::App* bertrand = app.add_subcommand("bertrand", "Bertrand pair construction/verification");
  bertrand->require_subcommand(1);
  CLI::App* mate = bertrand->add_subcommand("mate", "construct the normal-offset mate");
  add_curve_options(mate, config.curve);
  add_common_options(mate, config);
  mate->add_option("--c", config.c, "signed offset distance")->required();
  mate->add_option("--csv", config.csv_path, "also write sampled mate coordinates (CSV)");
  CLI::App* verify = bertrand->add_subcommand("verify", "verify a candidate pair");
  add_curve_options(verify, config.curve);
  add_curve_options(verify, config.other, "other-");
  add_common_options(verify, config);
  verify->add_option("--correspondence", config.correspondence, "shared | closest");

  CLI::App* combine = app.add_subcommand("combine", "convex combination of corresponding points");
  combine->set_help_flag("--help", "print help");  // frees -h for the ratio option
  add_curve_options(combine, config.curve);
  add_curve_options(combine, config.other, "other-");
  add_common_options(combine, config);
  combine->add_option("--h", config.h, "combination ratio in [0, 1]")->required();
  combine->add_option("--correspondence", config.correspondence, "shared | closest");
  combine->add_option("--csv", config.csv_path, "also write sampled combination (CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (frames->parsed()) return run_frames(config, out);
    if (classify->parsed()) return run_classify(config, out, err);
    if (mate->parsed()) return run_bertrand_mate(config, out, err);
    if (verify->parsed()) return run_bertrand_verify(config, out, err);
    if (combine->parsed()) return run_combine(config, out, err);
    err << "no subcommand selected\n";
    return kExitInput;
  } catch (const SyntaxError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UnknownIdentifier& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UnknownCurve& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CurvatureVanishes& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const QuadratureFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const RootFindFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const SingularJet& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NonConstantCurvature& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const CorrespondenceFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace moframe::cli
