#include "moframe/catalog.hpp"

#include <cmath>
#include <numbers>

#include "moframe/errors.hpp"
#include "moframe/frame.hpp"
#include "moframe/report.hpp"

namespace moframe::catalog {

namespace {

CurveSpec make_spec(const std::string& x, const std::string& y, const std::string& z,
                    Interval domain, Parametrization parametrization) {
  return CurveSpec{Expression::parse(x), Expression::parse(y), Expression::parse(z), domain,
                   parametrization};
}

// Family of curves with constant curvature 1 and torsion -tan(n s), where
// n = m / sqrt(1 + m^2). The parameter is not arc length: the speed is
// (n/m) cos(n s), positive on (-pi/(2n), pi/(2n)); the domain keeps a margin
// from the speed zeros at the ends.
CurveSpec salkowski_spec(double m) {
  const double n = m / std::sqrt(1.0 + m * m);
  const double p = n / (4.0 * m);
  const double c1 = (1.0 - n) / (1.0 + 2.0 * n);
  const double c2 = (1.0 + n) / (1.0 - 2.0 * n);
  auto num = [](double v) { return format_double(v); };

  const std::string x = "-" + num(p * c1) + "*sin(" + num(1.0 + 2.0 * n) + "*s)" +  //
                        "-" + num(p * c2) + "*sin(" + num(1.0 - 2.0 * n) + "*s)" +
                        "-" + num(2.0 * p) + "*sin(s)";
  const std::string y = num(p * c1) + "*cos(" + num(1.0 + 2.0 * n) + "*s)" +  //
                        "+" + num(p * c2) + "*cos(" + num(1.0 - 2.0 * n) + "*s)" +
                        "+" + num(2.0 * p) + "*cos(s)";
  const std::string z = num(p / m) + "*cos(" + num(2.0 * n) + "*s)";

  const double bound = 0.8 * std::numbers::pi_v<double> / (2.0 * n);
  return make_spec(x, y, z, Interval{-bound, bound}, Parametrization::general);
}

void validate(const CatalogEntry& entry) {
  const Curve curve = entry.curve();
  const SampleGrid grid = SampleGrid::uniform(curve.domain(), 50);
  const bool salkowski = entry.name.rfind("salkowski", 0) == 0;
  const double tol = salkowski ? 1e-6 : 1e-9;

  if (curve.declared_unit_speed()) {
    const auto check = check_unit_speed(curve, grid, 1e-8);
    if (!check.ok)
      throw Error("catalog entry " + entry.name + " is not unit speed (max |speed-1| = " +
                  format_double(check.max_deviation) + ")");
  }
  if (!entry.declared_kappa && !entry.declared_tau) return;

  for (double s : grid.points()) {
    FramePoint fp(curve, s);
    if (!fp.kappa_positive()) continue;
    if (entry.declared_kappa) {
      const double expected = entry.declared_kappa->evaluate(s);
      if (std::abs(fp.kappa_jet().value() - expected) > tol * std::max(1.0, std::abs(expected)))
        throw Error("catalog entry " + entry.name + " fails its curvature declaration at s=" +
                    format_double(s));
    }
    if (entry.declared_tau) {
      const double expected = entry.declared_tau->evaluate(s);
      if (std::abs(fp.tau_jet().value() - expected) > tol * std::max(1.0, std::abs(expected)))
        throw Error("catalog entry " + entry.name + " fails its torsion declaration at s=" +
                    format_double(s));
    }
  }
}

}  // namespace

CatalogEntry get(const std::string& name, std::span<const double> params) {
  CatalogEntry entry;
  entry.name = name;

  if (name == "circular_helix") {
    entry.spec = make_spec("sin(s/sqrt(2))", "s/sqrt(2)", "cos(s/sqrt(2))", {-5.0, 5.0},
                           Parametrization::declared_unit_speed);
    entry.declared_kappa = Expression::parse("1/2");
    entry.declared_tau = Expression::parse("1/2");
    entry.known_classes = {"general-helix", "bertrand-member"};
    entry.provenance = "circular helix, radius sin/cos pitch 1/sqrt(2)";
  } else if (name == "general_helix_ex32") {
    entry.spec = make_spec("(1+s)^(3/2)/3", "(1-s)^(3/2)/3", "s/sqrt(2)", {-0.95, 0.95},
                           Parametrization::declared_unit_speed);
    entry.declared_kappa = Expression::parse("1/sqrt(8*(1-s^2))");
    entry.declared_tau = Expression::parse("1/sqrt(8*(1-s^2))");
    entry.known_classes = {"general-helix"};
    entry.provenance = "unit-speed general helix with kappa = tau, singular at s = +-1";
  } else if (name == "bertrand_phi") {
    entry.spec = make_spec("sin(2*s)/(2*sqrt(2))", "cos(2*s)/(2*sqrt(2))", "s/sqrt(2)",
                           {-3.0, 3.0}, Parametrization::declared_unit_speed);
    entry.declared_kappa = Expression::parse("sqrt(2)");
    entry.declared_tau = Expression::parse("-sqrt(2)");
    entry.known_classes = {"general-helix", "bertrand-member"};
    entry.provenance = "Bertrand pair member phi";
  } else if (name == "bertrand_psi") {
    entry.spec = make_spec("-sin(2*s)/(2*sqrt(2))", "-cos(2*s)/(2*sqrt(2))", "s/sqrt(2)",
                           {-3.0, 3.0}, Parametrization::declared_unit_speed);
    entry.declared_kappa = Expression::parse("sqrt(2)");
    entry.declared_tau = Expression::parse("-sqrt(2)");
    entry.known_classes = {"general-helix", "bertrand-member"};
    entry.provenance = "Bertrand pair member psi, stored independently of phi";
  } else if (name == "planar_circle") {
    entry.spec = make_spec("cos(s)", "sin(s)", "0", {-3.2, 3.2},
                           Parametrization::declared_unit_speed);
    entry.declared_kappa = Expression::parse("1");
    entry.declared_tau = Expression::parse("0");
    entry.known_classes = {"planar", "bertrand-member"};
    entry.provenance = "unit circle in the xy-plane";
  } else if (name == "line") {
    entry.spec = make_spec("s", "0", "0", {-5.0, 5.0}, Parametrization::declared_unit_speed);
    entry.known_classes = {"degenerate"};
    entry.provenance = "straight line; curvature identically zero";
  } else if (name == "twisted_cubic") {
    entry.spec = make_spec("s", "s^2", "s^3", {0.0, 1.0}, Parametrization::general);
    entry.known_classes = {};
    entry.provenance = "moment curve; neither helix nor Bertrand member";
  } else if (name == "salkowski") {
    const double m = params.empty() ? 0.5 : params[0];
    if (!(m > 0.0) || std::abs(m - 1.0 / std::sqrt(3.0)) < 1e-6)
      throw UnknownCurve("salkowski with m=" + format_double(m) +
                         " (need m > 0, m != 1/sqrt(3))");
    entry.name = "salkowski(m=" + format_double(m) + ")";
    entry.spec = salkowski_spec(m);
    entry.declared_kappa = Expression::parse("1");
    entry.known_classes = {"slant-helix"};
    entry.provenance = "constant-curvature curve with torsion -tan(n s), n = m/sqrt(1+m^2)";
  } else {
    throw UnknownCurve(name);
  }

  validate(entry);
  return entry;
}

std::vector<std::string> names() {
  return {"circular_helix", "general_helix_ex32", "bertrand_phi", "bertrand_psi",
          "planar_circle",  "line",               "twisted_cubic", "salkowski"};
}

}  // namespace moframe::catalog
