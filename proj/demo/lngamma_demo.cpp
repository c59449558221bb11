// Walks ln Gamma(3 e^{i theta}) across the Stokes line at theta = pi/2 and
// prints the pieces of the expansion next to the reference value.
#include "slg/slg.hpp"

#include <iostream>

int main() {
  using namespace slg;
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  const Real p = pi();
  const char* phases[] = {"0.4", "0.49", "0.5", "0.51", "0.6"};
  for (const char* t : phases) {
    StirlingRequest req;
    req.z = PolarPoint(Real(3), p * Real(t));
    req.N = optimal_truncation(Real(3));
    req.ctx = ctx;
    LnGammaResult r = lngamma_asymptotic(req);
    HPComplex ref = lngamma_reference(req.z.to_cartesian(), ctx);
    std::cout << "theta/pi = " << t << "\n"
              << "  lnGamma   " << format_real(r.value.re, 30) << "  " << format_real(r.value.im, 30) << "i\n"
              << "  SD        " << format_real(r.components.SD.re, 12) << "  " << format_real(r.components.SD.im, 12)
              << "i\n"
              << "  remainder " << format_real(r.components.remainder.re, 12) << "  "
              << format_real(r.components.remainder.im, 12) << "i\n"
              << "  |error|   " << format_real(abs(r.value - ref), 3) << "\n";
    for (const auto& w : r.report.warnings) std::cout << "  warning: " << w << "\n";
  }
}
