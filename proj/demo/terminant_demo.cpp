// The simplest terminant S_1(z) = sum (-1)^k k! z^{-k-1}, resummed on both
// sides of its Stokes line at arg z = pi and compared with e^{1/z} E1(1/z).
#include "slg/slg.hpp"

#include <iostream>

int main() {
  using namespace slg;
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  QuadratureSpec quad = QuadratureSpec::defaults(ctx);
  TerminantSpec spec;  // p = 1, q = 0, beta = 1, N = 1
  const Real p = pi();
  const char* phases[] = {"0", "0.5", "0.9", "0.99", "1.01", "1.1"};
  for (const char* t : phases) {
    PolarPoint z(Real(2), p * Real(t));
    EvalReport s = terminant_sector(spec, z, quad, ctx);
    EvalReport m = terminant_mb(spec, z, quad, ctx);
    std::cout << "theta/pi = " << t << "\n"
              << "  sector " << format_real(s.value.re, 25) << "  " << format_real(s.value.im, 25) << "i\n"
              << "  mb     " << format_real(m.value.re, 25) << "  " << format_real(m.value.im, 25) << "i\n";
    for (const auto& w : s.warnings) std::cout << "  warning: " << w << "\n";
  }
  HPComplex jump = terminant_jump(spec, PolarPoint(Real(2), p), 1, ctx);
  std::cout << "jump across arg z = pi at |z| = 2: " << format_real(jump.re, 20) << "  " << format_real(jump.im, 20)
            << "i\n";
}
