#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "moframe/curve.hpp"

namespace moframe {

/// Builtin curve with known ground truth. Declared curvature/torsion
/// expressions (when present) are validated against computed values at load;
/// a failed validation throws rather than returning a bad entry.
struct CatalogEntry {
  std::string name;
  CurveSpec spec;
  std::optional<Expression> declared_kappa;
  std::optional<Expression> declared_tau;
  std::set<std::string> known_classes;  // general-helix, slant-helix,
                                        // bertrand-member, planar, degenerate
  std::string provenance;

  Curve curve() const { return Curve(spec, name); }
};

namespace catalog {

/// Available entries:
///   circular_helix      (sin(s/sqrt 2), s/sqrt 2, cos(s/sqrt 2)), kappa=tau=1/2
///   general_helix_ex32  ((1+s)^{3/2}/3, (1-s)^{3/2}/3, s/sqrt 2) on (-1, 1)
///   bertrand_phi        (sin 2s, cos 2s, 2s)/(2 sqrt 2), kappa=sqrt 2, tau=-sqrt 2
///   bertrand_psi        the independent analytic mate of bertrand_phi
///   planar_circle       (cos s, sin s, 0)
///   line                (s, 0, 0), curvature identically zero
///   twisted_cubic       (t, t^2, t^3), general parameter, non-helix control
///   salkowski           constant-curvature slant helix; one parameter m > 0
/// Throws UnknownCurve for anything else or for unusable parameters.
CatalogEntry get(const std::string& name, std::span<const double> params = {});

std::vector<std::string> names();

}  // namespace catalog

}  // namespace moframe
