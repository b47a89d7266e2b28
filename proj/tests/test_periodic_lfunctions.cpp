#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>
#include <sstream>

#include "partbias/bias_order.hpp"
#include "partbias/periodic_lfunctions.hpp"
#include "partbias/rational_digamma.hpp"

using namespace partbias;

namespace {

PReal tol2(long e) { return PReal::exp2i(e, 64); }

PeriodicFunction quarters_relation() {
  return PeriodicFunction(4, {mpq_class(1), mpq_class(-3), mpq_class(1),
                              mpq_class(1)});
}

// Duplication-identity kernel on period 8:
//   (psi(1/8)+psi(5/8)-2psi(1/4)) - (psi(3/8)+psi(7/8)-2psi(3/4)) = 0
PeriodicFunction octave_relation() {
  return PeriodicFunction(8, {mpq_class(1), mpq_class(-2), mpq_class(-1),
                              mpq_class(0), mpq_class(1), mpq_class(2),
                              mpq_class(-1), mpq_class(0)});
}

// Random residue-zero rational functions built from dipoles e_i - e_j so
// coefficients stay in [-5, 5] and the residue vanishes exactly.
PeriodicFunction random_kernel_candidate(std::mt19937_64& rng, long t) {
  PeriodicFunction f(t);
  std::uniform_int_distribution<long> slot(1, t);
  std::uniform_int_distribution<long> numer(-5, 5);
  std::uniform_int_distribution<long> denom(1, 8);
  for (int dipole = 0; dipole < 4; ++dipole) {
    const long i = slot(rng), j = slot(rng);
    mpq_class c(numer(rng), 4 * denom(rng));
    c.canonicalize();
    f.slot(i) += c;
    f.slot(j) -= c;
  }
  return f;
}

}  // namespace

TEST_CASE("periodic function indexing and equality") {
  const PeriodicFunction f(3, {mpq_class(1), mpq_class(-1, 2), mpq_class(0)});
  CHECK(f.at(1) == 1);
  CHECK(f.at(2) == mpq_class(-1, 2));
  CHECK(f.at(3) == 0);
  CHECK(f.at(4) == 1);  // periodic extension
  CHECK(f.at(3 * 100 + 2) == mpq_class(-1, 2));
  CHECK_THROWS_AS(f.at(0), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicFunction(3, {mpq_class(1)}), std::invalid_argument);
  CHECK(PeriodicFunction(5).is_zero());
}

TEST_CASE("residue sums") {
  CHECK(residue_sum(PeriodicFunction(6)) == 0);
  CHECK(residue_sum(quarters_relation()) == 0);
  CHECK(residue_sum(octave_relation()) == 0);
  for (const auto& [k, t] : {std::pair<long, long>{2, 3}, {3, 4}, {2, 5}}) {
    for (long r = 1; r <= t; ++r) {
      for (long s = 1; s <= t; ++s) {
        CAPTURE(k);
        CAPTURE(t);
        REQUIRE(residue_sum(make_tie_function(CoprimePair(k, t), r, s)) == 0);
      }
    }
  }
}

TEST_CASE("tie function coefficients for (k,t,r,s) = (3,4,1,3)") {
  // inverse of 3 mod 4 is 3, so the 1/k indicators land on classes 3 and 1
  const PeriodicFunction f = make_tie_function(CoprimePair(3, 4), 1, 3);
  CHECK(f.at(1) == mpq_class(-4, 3));
  CHECK(f.at(2) == 0);
  CHECK(f.at(3) == mpq_class(4, 3));
  CHECK(f.at(4) == 0);

  CHECK(make_tie_function(CoprimePair(3, 4), 2, 2).is_zero());
  CHECK_THROWS_AS(make_tie_function(CoprimePair(3, 4), 0, 2),
                  std::invalid_argument);
}

TEST_CASE("L(1, f) by the digamma identity") {
  CHECK(l_value_digamma(PeriodicFunction(5), 192).sign() == 0);
  CHECK(l_value_digamma(quarters_relation(), 256).abs() < tol2(-180));
  CHECK(l_value_digamma(octave_relation(), 256).abs() < tol2(-180));

  // L(1, f_rs) = -(1/t)(bias(r) - bias(s))
  for (const auto& [k, t] : {std::pair<long, long>{2, 3}, {3, 4}, {2, 5}}) {
    const CoprimePair pair(k, t);
    for (long r = 1; r <= t; ++r) {
      for (long s = 1; s <= t; ++s) {
        const PReal lhs =
            l_value_digamma(make_tie_function(pair, r, s), 192);
        const PReal rhs =
            -(bias_value(pair, r, 192) - bias_value(pair, s, 192)) / t;
        CAPTURE(k);
        CAPTURE(t);
        CAPTURE(r);
        CAPTURE(s);
        REQUIRE((lhs - rhs).abs() < tol2(-170));
      }
    }
  }

  // nonzero residue is rejected, and the message reports the residue
  const PeriodicFunction bad(2, {mpq_class(1, 3), mpq_class(1)});
  CHECK_THROWS_WITH_AS(l_value_digamma(bad, 192), doctest::Contains("4/3"),
                       std::invalid_argument);
}

TEST_CASE("L(1, f) is linear in f") {
  const CoprimePair pair(2, 5);
  const PeriodicFunction f = make_tie_function(pair, 1, 3);
  const PeriodicFunction g = make_tie_function(pair, 2, 4);
  const mpq_class alpha(3, 7), beta(-5, 2);
  const PReal combined =
      l_value_digamma(linear_combination(alpha, f, beta, g), 192);
  const PReal split = PReal::from_rational(alpha, 192) * l_value_digamma(f, 192) +
                      PReal::from_rational(beta, 192) * l_value_digamma(g, 192);
  CHECK((combined - split).abs() < tol2(-170));
}

TEST_CASE("partial-sum oracle agrees with the digamma identity") {
  // the quarters relation: true value is 0
  const auto est = l_value_partial_sums(quarters_relation(), 100000, 256);
  CHECK(est.value.abs() < PReal::from_string("1e-8", 64));
  CHECK(est.error_estimate < 1e-8);

  // f_{1,2} for (k,t) = (2,3): nonzero L-value, dual evaluation
  const PeriodicFunction f = make_tie_function(CoprimePair(2, 3), 1, 2);
  const PReal direct = l_value_digamma(f, 256);
  const auto oracle = l_value_partial_sums(f, 100000, 256);
  CHECK((direct - oracle.value).abs() < PReal::from_string("1e-8", 64));

  // exact zero for the zero function
  CHECK(l_value_partial_sums(PeriodicFunction(4), 10, 128).value.sign() == 0);

  CHECK_THROWS_AS(l_value_partial_sums(quarters_relation(), 9, 128),
                  std::invalid_argument);
  const PeriodicFunction bad(2, {mpq_class(1), mpq_class(1)});
  CHECK_THROWS_AS(l_value_partial_sums(bad, 100, 128), std::invalid_argument);
}

TEST_CASE("partial-sum oracle over a corpus of random kernel candidates") {
  // Reduced corpus here (the 50-function run is an acceptance criterion).
  std::mt19937_64 rng(20220711);
  int nontrivial = 0;
  while (nontrivial < 12) {
    const long t = 2 + static_cast<long>(rng() % 11);
    const PeriodicFunction f = random_kernel_candidate(rng, t);
    if (f.is_zero()) continue;
    ++nontrivial;
    const PReal direct = l_value_digamma(f, 256);
    const auto oracle = l_value_partial_sums(f, 100000, 256);
    CAPTURE(to_fixture_line(f));
    REQUIRE((direct - oracle.value).abs() < PReal::from_string("1e-8", 64));
  }
}

TEST_CASE("twist is the unit-group action on functions") {
  std::mt19937_64 rng(7);
  const PeriodicFunction f = [&] {
    PeriodicFunction g(12);
    for (long r = 1; r <= 12; ++r) g.slot(r) = mpq_class(rng() % 19) - 9;
    return g;
  }();

  CHECK(twist(f, 1) == f);
  CHECK_THROWS_AS(twist(f, 4), std::invalid_argument);
  CHECK_THROWS_AS(twist(f, 0), std::invalid_argument);

  // composition axiom, exhaustively over the units mod 12
  for (long h1 = 1; h1 <= 12; ++h1) {
    if (std::gcd(h1, 12L) != 1) continue;
    for (long h2 = 1; h2 <= 12; ++h2) {
      if (std::gcd(h2, 12L) != 1) continue;
      const long composed = ((h1 * h2 - 1) % 12) + 1;
      CAPTURE(h1);
      CAPTURE(h2);
      REQUIRE(twist(twist(f, h1), h2) == twist(f, composed));
    }
  }
}

TEST_CASE("twisting preserves kernel membership and support gcds") {
  // Relabeling by a unit keeps L(1, f) = 0 for kernel functions.
  for (long h : {1L, 3L}) {
    CHECK(l_value_digamma(twist(quarters_relation(), h), 256).abs() <
          tol2(-180));
  }
  for (long h : {1L, 3L, 5L, 7L}) {
    CHECK(l_value_digamma(twist(octave_relation(), h), 256).abs() <
          tol2(-180));
  }

  // gcd(h n, t) = gcd(n, t), so the support-gcd set is invariant
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const long t = 2 + static_cast<long>(rng() % 14);
    const PeriodicFunction f = random_kernel_candidate(rng, t);
    for (long h = 1; h <= t; ++h) {
      if (std::gcd(h, t) != 1) continue;
      REQUIRE(support_gcds(twist(f, h)) == support_gcds(f));
    }
  }
}

TEST_CASE("support gcds and the linear-relation structure") {
  CHECK(support_gcds(PeriodicFunction(9)).empty());

  const SupportGcds quarters = support_gcds(quarters_relation());
  CHECK(quarters == SupportGcds{1, 2, 4});

  // no kernel function concentrates on {a, t}: check this instance
  for (long a : {1L, 2L, 4L}) {
    const SupportGcds pair_only{a, 4};
    bool contained = true;
    for (long g : quarters) contained &= pair_only.contains(g);
    CHECK_FALSE(contained);
  }

  // every known kernel function has at least two support gcds, and twists
  // and rational multiples stay in the kernel
  std::vector<PeriodicFunction> kernel_corpus{
      quarters_relation(), octave_relation(),
      twist(quarters_relation(), 3), twist(octave_relation(), 5),
      linear_combination(mpq_class(2, 3), quarters_relation(), mpq_class(0),
                         quarters_relation())};
  for (const auto& f : kernel_corpus) {
    CAPTURE(to_fixture_line(f));
    REQUIRE(l_value_digamma(f, 256).abs() < tol2(-170));
    REQUIRE(support_gcds(f).size() >= 2);
  }
}

TEST_CASE("stabilizer of the quarters relation") {
  // With A_f = {1, 2, 4} minimal, every unit h == 1 (mod 4/a) for some
  // a in A_f must fix f pointwise: f(n) = f(h n).
  const PeriodicFunction f = quarters_relation();
  const SupportGcds gcds = support_gcds(f);
  for (long a : gcds) {
    const long modulus = 4 / a;
    for (long h : {1L, 3L}) {
      if (h % modulus != 1 % modulus) continue;
      CAPTURE(a);
      CAPTURE(h);
      REQUIRE(twist(f, h) == f);
    }
  }
}

TEST_CASE("fixture parsing and serialization") {
  const PeriodicFunction f = parse_fixture_line("4: 1,-3,1,1");
  CHECK(f == quarters_relation());

  const PeriodicFunction g = parse_fixture_line("3: 1/2, -2/4, 0");
  CHECK(g.at(1) == mpq_class(1, 2));
  CHECK(g.at(2) == mpq_class(-1, 2));  // canonicalized
  CHECK(g.at(3) == 0);

  CHECK_THROWS_AS(parse_fixture_line("4: 1,1,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fixture_line("1,2,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fixture_line("2: 0.5,-1/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fixture_line("2: 1/0,0"), std::invalid_argument);

  std::istringstream stream(
      "# comment line\n"
      "\n"
      "4: 1,-3,1,1\n"
      "2: 1/2,-1/2\n");
  const auto funcs = parse_fixture(stream);
  REQUIRE(funcs.size() == 2);
  CHECK(funcs[0] == quarters_relation());
  CHECK(funcs[1].at(1) == mpq_class(1, 2));

  // serialize -> parse is the identity on canonical values
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const long t = 1 + static_cast<long>(rng() % 12);
    const PeriodicFunction h = random_kernel_candidate(rng, t);
    REQUIRE(parse_fixture_line(to_fixture_line(h)) == h);
  }
}
