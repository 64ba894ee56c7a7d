#pragma once

#include <stdexcept>

namespace porolab {

enum class MeasureKind { Regular, DoublingOnly };

/// Declared structure constants of a metric measure space:
/// a_mu r^s <= mu(B(x,r)) <= b_mu r^s below the validity radius r_mu,
/// and mu(B(x,2r)) <= c_mu mu(B(x,r)).
struct StructureConstants {
  double s = 1.0;       // dimension exponent
  double a_mu = 1.0;    // lower regularity constant
  double b_mu = 1.0;    // upper regularity constant
  double r_mu = 1.0;    // validity radius
  double c_mu = 2.0;    // doubling constant
  MeasureKind kind = MeasureKind::Regular;

  void validate() const {
    if (s <= 0.0) throw std::invalid_argument("StructureConstants: s must be > 0");
    if (!(0.0 < a_mu && a_mu <= b_mu))
      throw std::invalid_argument("StructureConstants: need 0 < a_mu <= b_mu");
    if (r_mu <= 0.0) throw std::invalid_argument("StructureConstants: r_mu must be > 0");
    if (c_mu < 1.0) throw std::invalid_argument("StructureConstants: c_mu must be >= 1");
  }
};

}  // namespace porolab
