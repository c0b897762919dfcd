// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace testing_support;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "first failure: " << what << "; ";
      ok = false;
    }
  }
};

using Criterion = std::function<void(Outcome&)>;

bool hopf_identities(const cqb::CoquasiBialgebra& h, const Matrix& s) {
  const auto& c = h.coalgebra;
  auto a = h.algebra();
  Matrix ueps = h.unit * c.counit;
  Matrix id = Matrix::identity(h.field(), h.dim());
  return c.counit * s == c.counit && coalg::convolve(s, id, c, a) == ueps && coalg::convolve(id, s, c, a) == ueps;
}

cli::ZooSpec spec_of(const std::string& name) { return *zoo_entry(name).spec; }

// 1. the reconstructed preantipode of graded diagrams satisfies the axioms
void main_theorem(Outcome& o) {
  for (const char* name : {"Z2_omega", "Z4_omega", "Z2xZ2_omega", "Z2xZ2_mixed"}) {
    auto d = cli::grading_diagram(spec_of(name), false);
    auto t0 = std::chrono::steady_clock::now();
    auto c = recon::coend_coalgebra(d);
    auto h = recon::coend_bialgebra(d, c);
    Matrix s = recon::coend_preantipode(d, c, h);
    Report r = cqb::check_preantipode(h, s);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(r.pass() && r.failures.empty(), std::string(name) + " preantipode axioms");
    o.require(secs < 1.0, std::string(name) + " took " + std::to_string(secs) + " s");
    o.note << name << " " << static_cast<int>(secs * 1000) << "ms ";
  }
}

// 2. can is a bijective morphism and transports every structure map onto B
void can_transport(Outcome& o) {
  int count = 0;
  for (const auto& z : zoo()) {
    if (!z.spec) continue;
    const auto& b = *z.data.h;
    auto d = cli::grading_diagram(*z.spec, true, z.rebase);
    auto rc = recon::reconstruct(d);
    auto can = recon::can_map(d, rc.coend, rc.h, b);
    o.require(can.bijective && can.report.pass() && can.report.has_flag("Galois"), z.name + " can");
    if (!can.bijective) continue;
    auto t = recon::transport(rc.h, can.can);
    Matrix inv = *exactla::inverse(can.can);
    bool same = t.coalgebra.delta == b.coalgebra.delta && t.coalgebra.counit == b.coalgebra.counit &&
                t.mult == b.mult && t.unit == b.unit && t.omega == b.omega;
    o.require(same, z.name + " transported structure");
    o.require(can.can * rc.s * inv == *cqb::solve_preantipode(b).s, z.name + " transported S");
    ++count;
  }
  o.note << count << " diagrams";
}

// 3. every consistent preantipode system has a trivial nullspace
void uniqueness(Outcome& o) {
  int count = 0;
  auto check = [&](const cqb::CoquasiBialgebra& h, const std::string& tag) {
    auto sol = cqb::solve_preantipode(h);
    if (sol.status == cqb::PreantipodeSolution::Status::none) return;
    o.require(sol.status == cqb::PreantipodeSolution::Status::unique && sol.nullity == 0, tag);
    ++count;
  };
  for (const auto& z : zoo()) check(*z.data.h, z.name);
  std::mt19937 rng(7);
  for (int i = 0; i < 110; ++i) {
    auto fx = random_fixture(rng);
    check(fx.h, "random " + fx.origin);
  }
  for (const auto& q : quasi_zoo()) {
    auto sol = qb::solve_quasi_preantipode(q.data.a);
    o.require(sol.status == cqb::PreantipodeSolution::Status::unique && sol.nullity == 0, q.name);
  }
  o.note << count << " coquasi systems";
}

// 4. beta * s * alpha equals the solved preantipode
void antipode_product(Outcome& o) {
  int count = 0;
  for (const auto& z : zoo()) {
    if (!z.hopf) continue;
    const auto& h = *z.data.h;
    o.require(cqb::validate_coquasi_hopf(h, *z.hopf).pass(), z.name + " coquasi-Hopf data");
    Matrix s = coalg::convolve_bimodule(h.unit * z.hopf->beta, z.hopf->s, h.unit * z.hopf->alpha, h.coalgebra, h.algebra());
    o.require(s == *cqb::solve_preantipode(h).s, z.name);
    ++count;
  }
  o.note << count << " members";
}

// 5. trivial reassociator: the preantipode is a Hopf antipode
void ordinary_case(Outcome& o) {
  int count = 0;
  auto check = [&](const cqb::CoquasiBialgebra& h, const std::string& tag) {
    if (!cqb::is_trivial_omega(h)) return;
    auto sol = cqb::solve_preantipode(h);
    if (!sol.s) return;
    o.require(hopf_identities(h, *sol.s), tag);
    ++count;
  };
  for (const auto& z : zoo()) check(*z.data.h, z.name);
  std::mt19937 rng(9);
  for (int i = 0; i < 60; ++i) {
    auto fx = random_fixture(rng);
    check(fx.h, "random " + fx.origin);
  }
  for (const auto& q : quasi_zoo()) {
    if (!qb::is_trivial_phi(q.data.a)) continue;
    auto fd = qb::finite_dual(q.data.a, q.data.s);
    check(fd.h, "dual of " + q.name);
  }
  o.note << count << " structures";
}

// 6. rescaling (ev, db) by (1/lambda, lambda) leaves S unchanged
void dual_independence(Outcome& o) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> pick(-9, 9);
  int count = 0;
  for (const char* name : {"Z2_omega", "Z4_omega", "S3_omega", "Z3_omega_F7"}) {
    auto d = cli::grading_diagram(spec_of(name), false);
    auto base = recon::reconstruct(d);
    for (int trial = 0; trial < 10; ++trial) {
      Scalar lambda;
      do {
        lambda = d.field.from_int(pick(rng)) / d.field.from_int(1 + (rng() % 6));
      } while (lambda.is_zero());
      auto scaled = d;
      std::size_t x = rng() % d.duals.size();
      scaled.duals[x].db = d.duals[x].db.scaled(lambda);
      scaled.duals[x].ev = d.duals[x].ev.scaled(lambda.inverse());
      auto rc = recon::reconstruct(scaled);
      o.require(rc.s == base.s, std::string(name) + " lambda " + lambda.to_string());
      ++count;
    }
  }
  o.note << count << " rescalings";
}

/// Subcomodules of the regular comodule spanned by basis vectors, up to dimension 4.
std::vector<comodcat::Comodule> basis_subcomodules(std::shared_ptr<const cqb::CoquasiBialgebra> h) {
  std::size_t n = h->dim();
  Field f = h->field();
  std::vector<comodcat::Comodule> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    if (idx.size() > 4) continue;
    std::vector<std::size_t> pos(n, n);
    for (std::size_t t = 0; t < idx.size(); ++t) pos[idx[t]] = t;
    bool stable = true;
    Matrix rho(f, n * idx.size(), idx.size());
    for (std::size_t t = 0; t < idx.size() && stable; ++t)
      for (std::size_t c = 0; c < n && stable; ++c)
        for (std::size_t j = 0; j < n; ++j) {
          const Scalar& v = h->coalgebra.delta(c * n + j, idx[t]);
          if (v.is_zero()) continue;
          if (pos[j] == n) {
            stable = false;
            break;
          }
          rho(c * idx.size() + pos[j], t) = v;
        }
    if (stable) out.push_back({h, idx.size(), rho});
  }
  return out;
}

// 7. duals of small comodules satisfy both zigzags
void rigidity(Outcome& o) {
  std::mt19937 rng(17);
  int count = 0;
  for (const auto& z : zoo()) {
    auto h = z.data.h;
    Matrix s = *cqb::solve_preantipode(*h).s;
    std::vector<comodcat::Comodule> pool = basis_subcomodules(h);
    pool.push_back(comodcat::trivial_comodule(h));
    if (z.rebase) {
      // graded lines of the rebased algebra: k e'_g with e'_g = p^{-1} e_g
      Matrix pinv = *exactla::inverse(*z.rebase);
      for (std::size_t g = 0; g < h->dim(); ++g) {
        Matrix rho = Matrix::column_vector(h->field(), pinv.column(g));
        pool.push_back({h, 1, rho});
      }
    }
    std::size_t base = pool.size();
    for (std::size_t i = 0; i < base; ++i)
      for (std::size_t j = i; j < base; ++j)
        if (pool[i].dim + pool[j].dim <= 4) pool.push_back(comodcat::direct_sum(pool[i], pool[j]));
    for (std::size_t i = 0; i < base; ++i)
      for (std::size_t j = 0; j < base; ++j)
        if (pool[i].dim * pool[j].dim <= 4 && pool[i].dim * pool[j].dim > 1)
          pool.push_back(comodcat::tensor_comodule(pool[i], pool[j]));
    std::size_t now = pool.size();
    for (std::size_t i = 0; i < now; ++i)
      if (pool[i].dim > 1) pool.push_back(comodcat::change_basis(pool[i], cli::random_invertible(h->field(), pool[i].dim, rng)));
    for (const auto& v : pool) {
      if (v.dim > 4) continue;
      bool ok = comodcat::check_comodule(v).pass();
      try {
        auto d = comodcat::dual_comodule(v, s);
        ok = ok && comodcat::check_dual(v, d).pass();
      } catch (const std::exception& e) {
        ok = false;
      }
      o.require(ok, z.name + " comodule of dim " + std::to_string(v.dim));
      ++count;
    }
  }
  o.note << count << " comodules";
}

// 8. the bicomodule counit map and its inverse compose to identities
void bicomodule_counit(Outcome& o) {
  int count = 0;
  for (const auto& z : zoo()) {
    Matrix s = *cqb::solve_preantipode(*z.data.h).s;
    o.require(cqb::hat_epsilon_roundtrip(*z.data.h, s).pass(), z.name);
    ++count;
  }
  o.note << count << " members";
}

bool trivial_phi_reduction(const qb::QuasiBialgebra& a, const Matrix& s) {
  auto m = coalg::product_terms(a.algebra);
  std::size_t n = a.dim();
  Vector s1 = s.apply(a.algebra.unit.column(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector lhs = s.apply(exactla::to_dense(a.field(), m(i, j), n));
      Vector rhs = ops::multiply(m, ops::multiply(m, s.column(j), s1), s.column(i));
      if (lhs != rhs) return false;
    }
  return true;
}

// 9. the p/q calculus, recovery of S and anti-multiplicativity
void appendix(Outcome& o) {
  int count = 0, trivial = 0;
  for (const auto& q : quasi_zoo()) {
    const auto& a = q.data.a;
    o.require(qb::validate_quasi(a).pass(), q.name + " validity");
    auto sol = qb::solve_quasi_preantipode(a);
    if (!sol.s) {
      o.require(false, q.name + " preantipode");
      continue;
    }
    const Matrix& s = *sol.s;
    auto pq = qb::compute_pq(a, s);
    o.require(pq.p == pq.p_expanded && pq.q == pq.q_expanded, q.name + " closed forms");
    o.require(qb::check_pq_identities(a, s, pq).pass(), q.name + " invariance");
    o.require(qb::check_s_recovery(a, s, pq).pass(), q.name + " recovery");
    o.require(qb::check_antimultiplicativity(a, s).pass(), q.name + " anti-multiplicativity");
    if (qb::is_trivial_phi(a)) {
      o.require(trivial_phi_reduction(a, s), q.name + " S(ab) = S(b)S(1)S(a)");
      ++trivial;
    }
    ++count;
  }
  o.note << count << " members, " << trivial << " with trivial Phi";
}

// 10. the finite dual is a coquasi-bialgebra with preantipode
void finite_dual(Outcome& o) {
  int count = 0;
  for (const auto& q : quasi_zoo()) {
    auto fd = qb::finite_dual(q.data.a, q.data.s);
    o.require(cqb::validate_coquasi(fd.h).pass(), q.name + " validate");
    o.require(cqb::check_preantipode(fd.h, fd.s).pass(), q.name + " preantipode");
    ++count;
  }
  const auto& q = quasi_entry("fun_Z2_omega");
  const auto& h = *zoo_entry("Z2_omega").data.h;
  auto fd = qb::finite_dual(q.data.a, q.data.s);
  // pairing <e_g, h> = delta_{g,h}: the dual basis of the idempotents is the group basis
  Matrix g = Matrix::identity(Q(), 2);
  auto r = cqb::check_morphism(g, fd.h, h);
  o.require(r.pass() && !r.has_flag("preantipode comparison skipped"), "pairing is a morphism");
  o.require(exactla::inverse(g).has_value(), "pairing invertible");
  o.require(g * fd.s == *cqb::solve_preantipode(h).s * g, "g S_A = S_B g");
  o.note << count << " members";
}

// 11. single-entry mutants are all rejected with a named axiom
void negative_controls(Outcome& o) {
  int mutants = 0;
  auto expect_fail = [&](const Report& r, const std::string& tag) {
    bool named = !r.pass();
    for (const auto& f : r.failures) named = named && !f.axiom.empty();
    o.require(named, tag);
    ++mutants;
  };
  auto spread = [](std::size_t size, std::size_t k) {
    std::vector<std::size_t> idx;
    for (std::size_t t = 0; t < k && t < size; ++t) idx.push_back((t * 7919 + size / 2) % size);
    return idx;
  };
  for (const auto& z : zoo()) {
    const auto& h = *z.data.h;
    Field f = h.field();
    for (std::size_t i : spread(h.omega.cols(), 4)) {
      Matrix w = h.omega;
      w(0, i) += f.one();
      auto m = cqb::CoquasiBialgebra::create(h.coalgebra, h.mult, h.unit, w);
      expect_fail(cqb::validate_coquasi(m), z.name + " omega[" + std::to_string(i) + "]");
    }
    for (std::size_t i : spread(h.dim() * h.dim(), 4)) {
      Matrix s = z.data.s;
      s(i / h.dim(), i % h.dim()) += f.one();
      expect_fail(cqb::check_preantipode(h, s), z.name + " S[" + std::to_string(i) + "]");
    }
    auto reg = comodcat::regular_comodule(z.data.h);
    for (std::size_t i : spread(reg.rho.rows() * reg.rho.cols(), 3)) {
      auto v = reg;
      v.rho(i / v.rho.cols(), i % v.rho.cols()) += f.one();
      expect_fail(comodcat::check_comodule(v), z.name + " rho[" + std::to_string(i) + "]");
    }
  }
  for (const auto& q : quasi_zoo()) {
    const auto& a = q.data.a;
    for (std::size_t i : spread(a.phi.size(), 4)) {
      Vector phi = a.phi;
      phi[i] += a.field().one();
      auto m = qb::QuasiBialgebra::create(a.algebra, a.delta, a.counit, phi);
      expect_fail(qb::validate_quasi(m), q.name + " Phi[" + std::to_string(i) + "]");
    }
  }
  o.require(mutants >= 50, "at least 50 mutants");
  o.note << mutants << " mutants, all rejected";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"reconstructed preantipode on grading diagrams", main_theorem},
      {"can transports the coend onto B", can_transport},
      {"preantipode uniqueness", uniqueness},
      {"S = beta * s * alpha", antipode_product},
      {"trivial reassociator gives a Hopf antipode", ordinary_case},
      {"S independent of the choice of duals", dual_independence},
      {"rigidity of small comodules", rigidity},
      {"bicomodule counit round trip", bicomodule_counit},
      {"p/q calculus and anti-multiplicativity", appendix},
      {"finite dual", finite_dual},
      {"negative controls", negative_controls},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu: %s (%s) [%.1fs]\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.note.str().c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
