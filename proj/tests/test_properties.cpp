#include <gtest/gtest.h>

#include "coquasi/json_io.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

constexpr int kFixtures = 120;

const std::vector<RandomFixture>& fixtures() {
  static const auto out = [] {
    std::mt19937 rng(2024);
    std::vector<RandomFixture> v;
    for (int i = 0; i < kFixtures; ++i) v.push_back(random_fixture(rng, 4));
    return v;
  }();
  return out;
}

}  // namespace

TEST(RandomFixtures, AreValidCoquasiBialgebras) {
  for (const auto& fx : fixtures()) EXPECT_TRUE(cqb::validate_coquasi(fx.h).pass()) << fx.origin;
}

// Dense six-dimensional base changes cost seconds each to validate, so they get
// their own short run instead of joining the shared pool.
TEST(RandomFixtures, DenseS3BaseChanges) {
  std::mt19937 rng(99);
  const auto& z = zoo_entry("S3_omega");
  for (int i = 0; i < 3; ++i) {
    Matrix p = cli::random_invertible(Q(), 6, rng);
    auto h = cli::base_change(*z.data.h, p);
    EXPECT_TRUE(cqb::validate_coquasi(h).pass());
    auto sol = cqb::solve_preantipode(h);
    ASSERT_EQ(sol.status, cqb::PreantipodeSolution::Status::unique);
    EXPECT_EQ(*sol.s, cli::base_change_preantipode(z.data.s, p));
    EXPECT_TRUE(all_zero(naive_preantipode_residuals(h, *sol.s)));
    EXPECT_TRUE(cqb::check_morphism(p, h, *z.data.h).pass());
  }
}

TEST(RandomFixtures, PreantipodeIsUniqueAndTransported) {
  for (const auto& fx : fixtures()) {
    auto sol = cqb::solve_preantipode(fx.h);
    ASSERT_EQ(sol.status, cqb::PreantipodeSolution::Status::unique) << fx.origin;
    EXPECT_EQ(sol.nullity, 0u);
    EXPECT_EQ(*sol.s, fx.s) << fx.origin;
    EXPECT_TRUE(all_zero(naive_preantipode_residuals(fx.h, *sol.s))) << fx.origin;
  }
}

TEST(RandomFixtures, BaseChangeIsAnIsomorphism) {
  for (const auto& fx : fixtures()) {
    const auto& orig = *zoo_entry(fx.origin).data.h;
    auto r = cqb::check_morphism(fx.p, fx.h, orig);
    EXPECT_TRUE(r.pass()) << fx.origin;
  }
}

TEST(RandomFixtures, SmallOnesAgreeWithBruteForce) {
  int checked = 0;
  for (const auto& fx : fixtures()) {
    if (fx.h.dim() > 3) continue;
    auto brute = brute_force_preantipode(fx.h);
    ASSERT_TRUE(brute.s) << fx.origin;
    EXPECT_EQ(brute.nullity, 0u);
    EXPECT_EQ(*brute.s, fx.s) << fx.origin;
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(RandomFixtures, TrivialOmegaGivesHopfAntipode) {
  for (const auto& fx : fixtures()) {
    if (!cqb::is_trivial_omega(fx.h)) continue;
    auto a = fx.h.algebra();
    Matrix ueps = fx.h.unit * fx.h.coalgebra.counit;
    Matrix id = Matrix::identity(fx.h.field(), fx.h.dim());
    EXPECT_EQ(fx.h.coalgebra.counit * fx.s, fx.h.coalgebra.counit);
    EXPECT_EQ(coalg::convolve(fx.s, id, fx.h.coalgebra, a), ueps);
    EXPECT_EQ(coalg::convolve(id, fx.s, fx.h.coalgebra, a), ueps);
  }
}

TEST(RandomFixtures, RegularComoduleDualsSatisfyZigzags) {
  for (int i = 0; i < 30; ++i) {
    const auto& fx = fixtures()[i];
    auto hp = std::make_shared<const cqb::CoquasiBialgebra>(fx.h);
    auto v = comodcat::regular_comodule(hp);
    auto d = comodcat::dual_comodule(v, fx.s);
    EXPECT_TRUE(comodcat::check_dual(v, d).pass()) << fx.origin;
  }
}

TEST(RandomFixtures, ConvolutionIsAssociativeAndUnital) {
  std::mt19937 rng(31);
  for (int i = 0; i < 20; ++i) {
    const auto& fx = fixtures()[i];
    std::size_t n = fx.h.dim();
    auto a = fx.h.algebra();
    Matrix f = random_matrix(fx.h.field(), n, n, rng), g = random_matrix(fx.h.field(), n, n, rng),
           k = random_matrix(fx.h.field(), n, n, rng);
    const auto& c = fx.h.coalgebra;
    EXPECT_EQ(coalg::convolve(coalg::convolve(f, g, c, a), k, c, a), coalg::convolve(f, coalg::convolve(g, k, c, a), c, a));
    EXPECT_EQ(coalg::convolve(fx.h.unit * c.counit, f, c, a), f);
  }
}

TEST(RandomFixtures, JsonRoundTrip) {
  for (int i = 0; i < 20; ++i) {
    const auto& fx = fixtures()[i];
    auto j = io::to_json(fx.h);
    auto back = io::coquasi_from_json(j, fx.h.field());
    EXPECT_EQ(back.mult, fx.h.mult);
    EXPECT_EQ(back.omega, fx.h.omega);
    EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j));
  }
}

TEST(RandomFixtures, QuasiBaseChangeKeepsAppendixIdentities) {
  std::mt19937 rng(41);
  for (int i = 0; i < 20; ++i) {
    const auto& q = quasi_zoo()[rng() % quasi_zoo().size()];
    if (q.data.a.dim() > 4) continue;
    Matrix p = cli::random_invertible(q.data.a.field(), q.data.a.dim(), rng);
    auto a = cli::base_change(q.data.a, p);
    ASSERT_TRUE(qb::validate_quasi(a).pass()) << q.name;
    auto sol = qb::solve_quasi_preantipode(a);
    ASSERT_EQ(sol.status, cqb::PreantipodeSolution::Status::unique) << q.name;
    auto pq = qb::compute_pq(a, *sol.s);
    EXPECT_TRUE(qb::check_pq_identities(a, *sol.s, pq).pass()) << q.name;
    EXPECT_TRUE(qb::check_s_recovery(a, *sol.s, pq).pass()) << q.name;
    EXPECT_TRUE(qb::check_antimultiplicativity(a, *sol.s).pass()) << q.name;
    auto fd = qb::finite_dual(a, *sol.s);
    EXPECT_TRUE(cqb::validate_coquasi(fd.h).pass()) << q.name;
    EXPECT_TRUE(cqb::check_preantipode(fd.h, fd.s).pass()) << q.name;
  }
}

TEST(Pentagon, RandomTriplesOfComodulesOverZoo) {
  std::mt19937 rng(51);
  for (const auto& z : zoo()) {
    if (z.data.h->dim() > 4) continue;
    auto h = z.data.h;
    Field f = h->field();
    std::vector<comodcat::Comodule> pool{comodcat::trivial_comodule(h), comodcat::regular_comodule(h)};
    pool.push_back(comodcat::change_basis(pool[1], cli::random_invertible(f, h->dim(), rng)));
    auto pick = [&]() -> const comodcat::Comodule& { return pool[rng() % pool.size()]; };
    const auto &x = pick(), &y = pick(), &u = pick(), &w = pick();
    auto xy = comodcat::tensor_comodule(x, y), uw = comodcat::tensor_comodule(u, w), yu = comodcat::tensor_comodule(y, u);
    Matrix lhs = comodcat::associator(x, y, uw) * comodcat::associator(xy, u, w);
    Matrix rhs = exactla::kron(Matrix::identity(f, x.dim), comodcat::associator(y, u, w)) * comodcat::associator(x, yu, w) *
                 exactla::kron(comodcat::associator(x, y, u), Matrix::identity(f, w.dim));
    EXPECT_EQ(lhs, rhs) << z.name;
  }
}
