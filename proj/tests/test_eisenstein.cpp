#include <gtest/gtest.h>

#include <complex>
#include <numbers>

#include "cyclic3/eisenstein.hpp"
#include "property.hpp"

using namespace cyclic3;
using cyclic3::testing::Gen;

namespace {

const EisensteinInteger w = EisensteinInteger::omega();

// Oracle: embed a + b w into C with w = exp(2 pi i / 3).
std::complex<double> embed(const EisensteinInteger& z) {
  const std::complex<double> om(-0.5, std::sqrt(3.0) / 2.0);
  return static_cast<double>(z.a()) + static_cast<double>(z.b()) * om;
}

// Oracle for degree-1 primes: the symbol from a^((p-1)/3) mod p, with the
// image of w recovered independently as the root r of x^2+x+1 with gen(r) = 0.
CubicSymbol symbol_by_brute_force(const EisensteinInteger& a, const PrimeAbove& P) {
  const i64 p = P.p;
  i64 r = -1;
  for (i64 x = 0; x < p; ++x) {
    if ((x * x + x + 1) % p == 0 && detail::mod(P.generator.a() + P.generator.b() * x, p) == 0) r = x;
  }
  const i64 v = detail::mod(a.a() + detail::mod(a.b(), p) * r, p);
  if (v == 0) return CubicSymbol::zero();
  const u64 t = powmod(static_cast<u64>(v), static_cast<u64>((p - 1) / 3), static_cast<u64>(p));
  if (t == 1) return CubicSymbol::one();
  if (t == static_cast<u64>(r)) return CubicSymbol::omega_pow(1);
  return CubicSymbol::omega_pow(2);
}

}  // namespace

TEST(Arith, SpecExamples) {
  EXPECT_EQ(arith(EisensteinInteger::lambda(), EisensteinInteger(1) - EisensteinInteger::omega_squared(), ArithOp::Mul),
            EisensteinInteger(3));
  EXPECT_EQ(arith(EisensteinInteger(3, 1), {}, ArithOp::Conjugate), EisensteinInteger(2, -1));
  EXPECT_EQ(EisensteinInteger(3, 1) * EisensteinInteger(2, -1), EisensteinInteger(7));
  EXPECT_EQ(EisensteinInteger(3, 1).norm(), 7);
}

TEST(Arith, OmegaRelation) {
  EXPECT_EQ(w * w + w + EisensteinInteger(1), EisensteinInteger(0));
  EXPECT_EQ(w * w, EisensteinInteger::omega_squared());
  EXPECT_EQ(w.conjugate(), EisensteinInteger::omega_squared());
}

TEST(Arith, MultiplicationMatchesComplexEmbedding) {
  Gen g;
  for (int i = 0; i < 10000; ++i) {
    const EisensteinInteger x = g.eisenstein(100000), y = g.eisenstein(100000);
    const std::complex<double> e = embed(x) * embed(y);
    const std::complex<double> got = embed(x * y);
    EXPECT_LT(std::abs(got - e), 1e-6 * (1.0 + std::abs(e))) << g.where() << " " << x << " " << y;
  }
}

TEST(Arith, NormMultiplicative) {
  Gen g;
  for (int i = 0; i < 10000; ++i) {
    const EisensteinInteger x = g.eisenstein(30000), y = g.eisenstein(30000);
    EXPECT_EQ((x * y).norm(), x.norm() * y.norm()) << g.where();
    EXPECT_GE(x.norm(), 0);
    EXPECT_EQ(x.norm() == 0, x.is_zero());
  }
}

TEST(Arith, ConjugationIsRingAutomorphism) {
  Gen g;
  for (int i = 0; i < 2000; ++i) {
    const EisensteinInteger x = g.eisenstein(1000), y = g.eisenstein(1000);
    EXPECT_EQ((x * y).conjugate(), x.conjugate() * y.conjugate());
    EXPECT_EQ((x + y).conjugate(), x.conjugate() + y.conjugate());
    EXPECT_EQ(x.conjugate().conjugate(), x);
    EXPECT_EQ(x * x.conjugate(), EisensteinInteger(x.norm()));
  }
}

TEST(Arith, OverflowDetected) {
  const EisensteinInteger big(INT64_MAX / 2, 3);
  EXPECT_THROW(big * big, ArithmeticOverflow);
  EXPECT_THROW(EisensteinInteger(INT64_MAX) + EisensteinInteger(1), ArithmeticOverflow);
  EXPECT_THROW(EisensteinInteger(INT64_MAX, INT64_MAX).norm(), ArithmeticOverflow);
}

TEST(Units, ExactlySix) {
  int count = 0;
  for (i64 a = -3; a <= 3; ++a) {
    for (i64 b = -3; b <= 3; ++b) {
      if (EisensteinInteger(a, b).norm() == 1) ++count;
    }
  }
  EXPECT_EQ(count, 6);
  for (const auto& u : kUnits) EXPECT_TRUE(u.is_unit());
}

TEST(Division, RemainderSmallerNorm) {
  Gen g;
  for (int i = 0; i < 10000; ++i) {
    const EisensteinInteger x = g.eisenstein(1'000'000), y = g.nonzero_eisenstein(5000);
    const DivMod d = divmod(x, y);
    EXPECT_EQ(d.quotient * y + d.remainder, x);
    EXPECT_LT(d.remainder.norm(), y.norm()) << g.where() << " " << x << " / " << y;
  }
  EXPECT_THROW(divmod(EisensteinInteger(1), EisensteinInteger(0)), DomainError);
}

TEST(Gcd, SpecExamples) {
  EXPECT_TRUE(associated(euclidean_gcd(EisensteinInteger(3, 1), EisensteinInteger(7)), EisensteinInteger(3, 1)));
  EXPECT_EQ(euclidean_gcd(EisensteinInteger(2), EisensteinInteger(5)), EisensteinInteger(1));
  const EisensteinInteger z(5, 7);
  EXPECT_EQ(euclidean_gcd(z, EisensteinInteger(0)), canonical_associate(z));
  EXPECT_THROW(euclidean_gcd(EisensteinInteger(0), EisensteinInteger(0)), DomainError);
}

TEST(Gcd, DividesBothAndIsGreatest) {
  Gen g;
  for (int i = 0; i < 500; ++i) {
    const EisensteinInteger c = g.nonzero_eisenstein(30);
    const EisensteinInteger x = c * g.nonzero_eisenstein(300), y = c * g.nonzero_eisenstein(300);
    const EisensteinInteger d = euclidean_gcd(x, y);
    EXPECT_TRUE(divides(d, x));
    EXPECT_TRUE(divides(d, y));
    EXPECT_TRUE(divides(c, d)) << g.where();
  }
}

TEST(Primary, SpecExamples) {
  const PrimaryDecomposition d = primary_associate(EisensteinInteger(3, 1));
  EXPECT_EQ(detail::mod(d.primary.a(), 3), 2);
  EXPECT_EQ(detail::mod(d.primary.b(), 3), 0);
  EXPECT_EQ(d.unit * d.primary, EisensteinInteger(3, 1));
  EXPECT_EQ(d.primary, EisensteinInteger(2, 3));
  EXPECT_TRUE(d.unit == -w || d.unit == -EisensteinInteger::omega_squared() || d.unit == EisensteinInteger(-1));

  const PrimaryDecomposition two = primary_associate(EisensteinInteger(2));
  EXPECT_EQ(two.unit, EisensteinInteger(1));
  EXPECT_EQ(two.primary, EisensteinInteger(2));

  EXPECT_THROW(primary_associate(EisensteinInteger::lambda()), DomainError);
}

TEST(Primary, ExactlyOnePrimaryAssociate) {
  Gen g;
  for (int i = 0; i < 2000; ++i) {
    const EisensteinInteger z = g.nonzero_eisenstein(1000);
    if (divisible_by_lambda(z)) continue;
    int primaries = 0;
    for (const auto& u : kUnits) {
      const EisensteinInteger c = u * z;
      if (detail::mod(c.a(), 3) == 2 && detail::mod(c.b(), 3) == 0) ++primaries;
    }
    EXPECT_EQ(primaries, 1) << z;
  }
}

TEST(PrimeAbove, SpecExamples) {
  const PrimeAbove p7 = prime_above(7);
  EXPECT_EQ(p7.kind, PrimeKind::Split);
  EXPECT_EQ(p7.residue_degree, 1);
  EXPECT_EQ(p7.generator, primary_associate(EisensteinInteger(3, 1)).primary);

  const PrimeAbove p5 = prime_above(5);
  EXPECT_EQ(p5.kind, PrimeKind::Inert);
  EXPECT_EQ(p5.generator, EisensteinInteger(5));
  EXPECT_EQ(p5.residue_degree, 2);

  const PrimeAbove p3 = prime_above(3);
  EXPECT_EQ(p3.kind, PrimeKind::Ramified);
  EXPECT_EQ(p3.generator, EisensteinInteger::lambda());

  EXPECT_THROW(prime_above(15), DomainError);
}

TEST(PrimeAbove, RegistryConventionFrozen) {
  EXPECT_EQ(prime_above(7).generator, EisensteinInteger(2, 3));
  EXPECT_EQ(prime_above(13).generator, EisensteinInteger(-1, 3));
  EXPECT_EQ(prime_above(13), prime_above(13));
}

TEST(PrimeAbove, NormsAndNormalization) {
  for (i64 p : primes_up_to(3000)) {
    const PrimeAbove P = prime_above(p);
    if (p == 3) {
      EXPECT_EQ(P.generator.norm(), 3);
    } else if (p % 3 == 1) {
      EXPECT_EQ(P.generator.norm(), p);
      EXPECT_EQ(detail::mod(P.generator.a(), 3), 2);
      EXPECT_EQ(detail::mod(P.generator.b(), 3), 0);
      EXPECT_GT(P.generator.b(), 0);
    } else {
      EXPECT_EQ(P.generator.norm(), p * p);
    }
  }
}

TEST(ResidueMap, SpecExamples) {
  EXPECT_EQ(residue_map(make_prime_above(13, EisensteinInteger(4, 3))).omega_image(), 3U);
  EXPECT_EQ(residue_map(make_prime_above(7, EisensteinInteger(3, 1))).omega_image(), 4U);
}

TEST(ResidueMap, Homomorphism) {
  Gen g;
  for (i64 p : {5, 7, 11, 13, 31, 101, 1009}) {
    const ResidueMap rm(prime_above(p));
    const ResidueElement three = rm.reduce(EisensteinInteger::lambda() * (EisensteinInteger(1) - w * w));
    EXPECT_EQ(three, rm.reduce(EisensteinInteger(3)));
    for (int i = 0; i < 300; ++i) {
      const EisensteinInteger x = g.eisenstein(100000), y = g.eisenstein(100000);
      EXPECT_EQ(rm.reduce(x * y), rm.mul(rm.reduce(x), rm.reduce(y))) << p << " " << g.where();
    }
  }
}

TEST(CubicSymbol, SpecExamples) {
  const PrimeAbove P7 = make_prime_above(7, EisensteinInteger(3, 1));
  EXPECT_EQ(cubic_residue_symbol(EisensteinInteger(2), P7), CubicSymbol::omega_pow(1));
  EXPECT_TRUE(cubic_residue_symbol(EisensteinInteger(3, 1), P7).is_zero());
  for (i64 p : {5, 7, 11, 13, 19, 101}) EXPECT_TRUE(cubic_residue_symbol(EisensteinInteger(8), prime_above(p)).is_one());
  EXPECT_THROW(cubic_residue_symbol(EisensteinInteger(2), prime_above(3)), DomainError);
}

TEST(CubicSymbol, ValueAlgebra) {
  const CubicSymbol a = CubicSymbol::omega_pow(1), b = CubicSymbol::omega_pow(2);
  EXPECT_TRUE((a * b).is_one());
  EXPECT_TRUE((a * CubicSymbol::zero()).is_zero());
  EXPECT_EQ(CubicSymbol::one().trace(), 2);
  EXPECT_EQ(a.trace(), -1);
  EXPECT_EQ(b.trace(), -1);
  EXPECT_EQ(CubicSymbol::zero().trace(), 0);
  EXPECT_EQ(a.conjugate(), b);
}

TEST(CubicSymbol, MatchesBruteForceOracle) {
  Gen g;
  for (i64 p : primes_up_to(400)) {
    if (p % 3 != 1) continue;
    const PrimeAbove P = prime_above(p);
    for (int i = 0; i < 40; ++i) {
      const EisensteinInteger a = g.eisenstein(10000);
      EXPECT_EQ(cubic_residue_symbol(a, P), symbol_by_brute_force(a, P)) << p << " " << a;
    }
  }
}

TEST(CubicSymbol, Multiplicative) {
  Gen g;
  const std::vector<i64> ps = {5, 7, 11, 13, 17, 19, 31, 43, 97, 1009};
  for (int i = 0; i < 1000; ++i) {
    const PrimeAbove P = prime_above(ps[static_cast<std::size_t>(g.uniform(0, 9))]);
    const EisensteinInteger a = g.eisenstein(3000), b = g.eisenstein(3000);
    EXPECT_EQ(cubic_residue_symbol(a * b, P), cubic_residue_symbol(a, P) * cubic_residue_symbol(b, P)) << g.where();
  }
}

TEST(CubicSymbol, CubesAreOne) {
  Gen g;
  for (int i = 0; i < 500; ++i) {
    const EisensteinInteger a = g.nonzero_eisenstein(300);
    for (i64 p : {7, 11, 13, 37}) {
      const PrimeAbove P = prime_above(p);
      if (!cubic_residue_symbol(a, P).is_zero()) {
        EXPECT_TRUE(cubic_residue_symbol(a * a * a, P).is_one());
      }
    }
  }
}

TEST(CubicSymbol, ConjugationLaw) {
  Gen g;
  for (int i = 0; i < 1000; ++i) {
    const EisensteinInteger a = g.eisenstein(5000);
    for (i64 p : {7, 13, 19, 31}) {
      const PrimeAbove P = prime_above(p);
      EXPECT_EQ(cubic_residue_symbol(a.conjugate(), conjugate_prime(P)), cubic_residue_symbol(a, P).squared());
    }
    for (i64 p : {2, 5, 11, 17}) {
      const PrimeAbove P = prime_above(p);
      EXPECT_EQ(cubic_residue_symbol(a.conjugate(), P), cubic_residue_symbol(a, P).squared());
    }
  }
}

TEST(CubicSymbol, CorruptResidueMapDetected) {
  // Norm 1 element posing as a prime above 7: w -> 6 is not a root of x^2+x+1.
  const PrimeAbove bogus{7, EisensteinInteger(1, 1), 1, PrimeKind::Split};
  EXPECT_THROW(cubic_residue_symbol(EisensteinInteger(3), bogus), std::logic_error);
}

TEST(Registry, OverridesAreLocal) {
  const PrimeRegistry base;
  const PrimeRegistry alt = base.with_conjugate_at(7);
  EXPECT_FALSE(base.has_overrides());
  EXPECT_TRUE(alt.has_overrides());
  EXPECT_EQ(alt.prime(7).generator, prime_above(7).generator.conjugate());
  EXPECT_EQ(alt.prime(13), prime_above(13));
  EXPECT_THROW(base.with_generator(7, EisensteinInteger(2, 1)), DomainError);
}
