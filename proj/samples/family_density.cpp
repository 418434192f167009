// Small tour: list the fields of F_3(X), show the splitting of a few primes
// in each, and print the one-level density breakdown.

#include <cstdlib>
#include <iostream>

#include "cyclic3/density.hpp"
#include "cyclic3/verify.hpp"

int main(int argc, char** argv) {
  using namespace cyclic3;
  const i64 X = argc > 1 ? std::atoll(argv[1]) : 2000;
  const TestFunctionPair tf = fejer_pair(0.2);

  for (const FieldRecord& r : enumerate_family(X)) {
    std::cout << "D=" << r.D << " label=" << r.label << " conductor=" << r.conductor << " poly: x^3 - "
              << 3 * r.polyA << "x - " << r.polyB << "\n  splitting:";
    for (i64 p : {2, 5, 7, 11, 13, 19}) std::cout << " " << p << splitting_type(p, r.label, LambdaMode::Kummer);
    const DensityBreakdown b = one_level_density(r.label, tf, LambdaMode::Kummer);
    std::cout << "\n  density: " << b.archimedean << " - " << b.prime_sum << " + (" << b.gamma_term
              << ") = " << b.total << "\n";
  }
  const FamilyAverage avg = family_average(X, tf, LambdaMode::Kummer);
  const ReferenceMap refs = reference_statistics(X, tf);
  const SymmetryVerdict v = classify_symmetry(avg.T, refs);
  std::cout << "fields=" << avg.count << " T=" << avg.T << " Sp-reference=" << refs.at(KernelType::Sp)
            << " nearest=" << v.best << "\n";
}
