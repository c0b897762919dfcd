#include <gtest/gtest.h>

#include "support.hpp"

using namespace testing_support;

namespace {

cqb::CoquasiBialgebra with_omega_entry(const cqb::CoquasiBialgebra& h, std::size_t idx, const Scalar& v) {
  Matrix w = h.omega;
  w(0, idx) = v;
  return cqb::CoquasiBialgebra::create(h.coalgebra, h.mult, h.unit, w);
}

const cqb::CoquasiBialgebra& z2w() { return *zoo_entry("Z2_omega").data.h; }
const cqb::CoquasiBialgebra& z2() { return *zoo_entry("Z2_hopf").data.h; }

cqb::CoquasiBialgebra ground(Field f) {
  return cqb::CoquasiBialgebra::create(coalg::ground_coalgebra(f), mat(f, {{1}}), mat(f, {{1}}), mat(f, {{1}}));
}

}  // namespace

TEST(ValidateCoquasi, SignCocycleOnZ2Passes) {
  auto r = cqb::validate_coquasi(z2w());
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.has_flag("ordinary bialgebra"));
  EXPECT_EQ(z2w().w(1, 1, 1), num(Q(), -1));
}

TEST(ValidateCoquasi, UnnormalizedEntryFails) {
  // omega(x, x, 1) = -1 breaks normalization at a unit argument
  auto bad = with_omega_entry(z2w(), (1 * 2 + 1) * 2 + 0, num(Q(), -1));
  auto r = cqb::validate_coquasi(bad);
  EXPECT_FALSE(r.pass());
  EXPECT_TRUE(r.has_failure("quasi_unitality") || r.has_failure("3-cocycle"));
}

TEST(ValidateCoquasi, TrivialOmegaIsFlaggedOrdinary) {
  auto r = cqb::validate_coquasi(z2());
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.has_flag("ordinary bialgebra"));
}

TEST(ValidateCoquasi, WholeZooPasses) {
  for (const auto& z : zoo()) EXPECT_TRUE(cqb::validate_coquasi(*z.data.h).pass()) << z.name;
}

TEST(CheckPreantipode, HopfCase) { EXPECT_TRUE(cqb::check_preantipode(z2(), mat(Q(), {{1, 0}, {0, 1}})).pass()); }

TEST(CheckPreantipode, SignedInverse) {
  EXPECT_TRUE(cqb::check_preantipode(z2w(), mat(Q(), {{1, 0}, {0, -1}})).pass());
}

TEST(CheckPreantipode, IdentityFailsThirdAxiomAtX) {
  auto r = cqb::check_preantipode(z2w(), Matrix::identity(Q(), 2));
  ASSERT_TRUE(r.has_failure("preantipode_3"));
  for (const auto& f : r.failures)
    if (f.axiom == "preantipode_3") EXPECT_EQ(f.index, std::vector<std::size_t>{1});
}

TEST(SolvePreantipode, SignCocycle) {
  auto sol = cqb::solve_preantipode(z2w());
  ASSERT_EQ(sol.status, cqb::PreantipodeSolution::Status::unique);
  EXPECT_EQ(*sol.s, mat(Q(), {{1, 0}, {0, -1}}));
  auto brute = brute_force_preantipode(z2w());
  ASSERT_TRUE(brute.s);
  EXPECT_EQ(brute.nullity, 0u);
  EXPECT_EQ(*brute.s, *sol.s);
}

TEST(SolvePreantipode, GroundField) {
  auto sol = cqb::solve_preantipode(ground(Q()));
  ASSERT_EQ(sol.status, cqb::PreantipodeSolution::Status::unique);
  EXPECT_EQ(*sol.s, mat(Q(), {{1}}));
}

TEST(SolvePreantipode, Z4ClosedForm) {
  const auto& z = zoo_entry("Z4_omega");
  const auto& h = *z.data.h;
  ASSERT_TRUE(z.group);
  const auto& g = *z.group;
  Matrix closed(h.field(), 4, 4);
  for (std::size_t a = 0; a < 4; ++a) closed(g.inverse(a), a) = h.w(a, g.inverse(a), a).inverse();
  EXPECT_TRUE(cqb::check_preantipode(h, closed).pass());
  auto sol = cqb::solve_preantipode(h);
  ASSERT_EQ(sol.status, cqb::PreantipodeSolution::Status::unique);
  EXPECT_EQ(*sol.s, closed);
  EXPECT_FALSE(cqb::is_trivial_omega(h));
}

TEST(SolvePreantipode, AgreesWithBruteForceOnSmallZoo) {
  for (const auto& z : zoo()) {
    if (z.data.h->dim() > 4) continue;
    auto sol = cqb::solve_preantipode(*z.data.h);
    auto brute = brute_force_preantipode(*z.data.h);
    ASSERT_TRUE(brute.s) << z.name;
    EXPECT_EQ(brute.nullity, 0u) << z.name;
    ASSERT_EQ(sol.status, cqb::PreantipodeSolution::Status::unique) << z.name;
    EXPECT_EQ(*sol.s, *brute.s) << z.name;
  }
}

TEST(SolvePreantipode, NaiveResidualsVanishOnSolution) {
  for (const auto& z : zoo()) {
    auto sol = cqb::solve_preantipode(*z.data.h);
    ASSERT_TRUE(sol.s) << z.name;
    EXPECT_TRUE(all_zero(naive_preantipode_residuals(*z.data.h, *sol.s))) << z.name;
    EXPECT_EQ(*sol.s, z.data.s) << z.name;
  }
}

TEST(PreantipodeFromAntipode, HopfCase) {
  auto spec = cli::ZooSpec{cli::FiniteGroup::cyclic(2), cli::trivial_cocycle(cli::FiniteGroup::cyclic(2), Q()), Q()};
  auto q = cli::group_coquasi_hopf(spec);
  EXPECT_EQ(q.alpha, z2().coalgebra.counit);
  EXPECT_EQ(q.beta, z2().coalgebra.counit);
  EXPECT_EQ(cqb::preantipode_from_antipode(z2(), q), q.s);
}

TEST(PreantipodeFromAntipode, SignCocycle) {
  auto q = *zoo_entry("Z2_omega").hopf;
  EXPECT_EQ(q.beta, mat(Q(), {{1, -1}}));
  EXPECT_EQ(cqb::preantipode_from_antipode(z2w(), q), mat(Q(), {{1, 0}, {0, -1}}));
}

TEST(PreantipodeFromAntipode, MatchesSolverOnZoo) {
  for (const auto& z : zoo()) {
    if (!z.hopf) continue;
    EXPECT_TRUE(cqb::validate_coquasi_hopf(*z.data.h, *z.hopf).pass()) << z.name;
    EXPECT_EQ(cqb::preantipode_from_antipode(*z.data.h, *z.hopf), *cqb::solve_preantipode(*z.data.h).s) << z.name;
  }
}

// On a group-like g the first identity reads g beta(g) g^-1 = beta(g) 1, which
// holds for every beta; the perturbation shows up in the omega identities.
TEST(ValidateCoquasiHopf, PerturbedBetaFailsOmegaIdentitiesAtX) {
  auto q = *zoo_entry("Z2_omega").hopf;
  q.beta(0, 1) += num(Q(), 1);
  auto r = cqb::validate_coquasi_hopf(z2w(), q);
  EXPECT_FALSE(r.has_failure("coquasi_antipode_1"));
  ASSERT_TRUE(r.has_failure("coquasi_antipode_3"));
  for (const auto& f : r.failures) EXPECT_EQ(f.index, std::vector<std::size_t>{1}) << f.axiom;
}

TEST(ValidateCoquasiHopf, TrivialCocycle) {
  auto q = *zoo_entry("Z2_hopf").hopf;
  EXPECT_TRUE(cqb::validate_coquasi_hopf(z2(), q).pass());
}

TEST(CheckMorphism, Identity) {
  auto r = cqb::check_morphism(Matrix::identity(Q(), 2), z2w(), z2w());
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.has_flag("preantipode comparison skipped"));
}

TEST(CheckMorphism, InversionAutomorphism) {
  const auto& g = *zoo_entry("Z2_omega").group;
  Matrix f(Q(), 2, 2);
  for (std::size_t a = 0; a < 2; ++a) f(g.inverse(a), a) = Q().one();
  EXPECT_TRUE(cqb::check_morphism(f, z2w(), z2w()).pass());
}

TEST(CheckMorphism, CounitBreakingMapFailsOmegaCompatibility) {
  auto r = cqb::check_morphism(mat(Q(), {{1, 0}}), z2w(), ground(Q()));
  EXPECT_TRUE(r.has_failure("omega_compatibility"));
  EXPECT_TRUE(r.has_failure("counit_preserving"));
}

TEST(HatEpsilon, GroundField) { EXPECT_TRUE(cqb::hat_epsilon_roundtrip(ground(Q()), mat(Q(), {{1}})).pass()); }

TEST(HatEpsilon, SignCocycle) {
  Matrix s = mat(Q(), {{1, 0}, {0, -1}});
  auto he = cqb::hat_epsilon(z2w(), s);
  EXPECT_EQ(he.coinvariants.dim(), 2u);
  EXPECT_EQ(he.forward * he.backward, Matrix::identity(Q(), 4));
  EXPECT_EQ(he.backward * he.forward, Matrix::identity(Q(), 4));
  EXPECT_TRUE(cqb::hat_epsilon_roundtrip(z2w(), s).pass());
}

TEST(HatEpsilon, HopfCase) { EXPECT_TRUE(cqb::hat_epsilon_roundtrip(z2(), Matrix::identity(Q(), 2)).pass()); }

TEST(EpsilonS, HopfCaseIsOrdinaryAntipode) {
  auto r = cqb::epsilon_s_identities(z2(), Matrix::identity(Q(), 2));
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.has_flag("ordinary antipode"));
}

TEST(EpsilonS, SignCocycle) {
  Matrix s = mat(Q(), {{1, 0}, {0, -1}});
  auto r = cqb::epsilon_s_identities(z2w(), s);
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.has_flag("ordinary antipode"));
  EXPECT_EQ(z2w().coalgebra.counit * s, mat(Q(), {{1, -1}}));
}

TEST(EpsilonS, GroundField) {
  auto r = cqb::epsilon_s_identities(ground(Q()), mat(Q(), {{1}}));
  EXPECT_TRUE(r.pass());
}

TEST(SolvePreantipode, PrimeFieldEntries) {
  for (const auto& z : zoo()) {
    if (z.data.h->field().is_rational()) continue;
    auto sol = cqb::solve_preantipode(*z.data.h);
    ASSERT_EQ(sol.status, cqb::PreantipodeSolution::Status::unique) << z.name;
    EXPECT_TRUE(cqb::check_preantipode(*z.data.h, *sol.s).pass()) << z.name;
  }
}
