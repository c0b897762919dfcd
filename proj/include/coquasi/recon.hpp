#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "coquasi/comodule.hpp"

namespace coquasi::recon {

using cqb::CoquasiBialgebra;
using exactla::Field;
using exactla::Matrix;

/// A finite presentation of a rigid monoidal category with a fiber functor U.
/// All maps are given at the level of underlying vector spaces.
struct MonoidalDiagram {
  struct Object {
    std::string name;
    std::size_t dim = 0;
    std::optional<Matrix> coaction;  // over a named B, (n_B * dim) x dim; used by can_map
  };
  struct Morphism {
    std::string name;
    std::size_t from = 0, to = 0;
    Matrix matrix;  // dim(to) x dim(from)
  };
  struct Tensor {
    std::size_t x = 0, y = 0, z = 0;
    Matrix phi;  // U(x) (x) U(y) -> U(z)
  };
  struct Associator {
    std::size_t x = 0, y = 0, z = 0;
    Matrix matrix;  // U((x y) z) -> U(x (y z))
  };
  struct Dual {
    std::size_t x = 0, dual = 0;
    Matrix ev;  // U(x) (x) U(x*) -> k, 1 x (d * d*)
    Matrix db;  // k -> U(x*) (x) U(x), (d* * d) x 1
  };

  Field field;
  std::vector<Object> objects;
  std::vector<Morphism> morphisms;
  std::size_t unit_object = 0;
  Matrix phi0;  // k -> U(I)
  std::vector<Tensor> tensor;
  std::vector<Associator> associators;
  std::vector<Dual> duals;

  std::optional<std::size_t> find_object(const std::string& name) const;
  const Tensor* tensor_of(std::size_t x, std::size_t y) const;
  const Associator* associator_of(std::size_t x, std::size_t y, std::size_t z) const;
  const Dual* dual_of(std::size_t x) const;
};

/// Raised when a structure map does not descend to the coend quotient.
class WellDefinednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes, invertibility of phi and phi0, strict-unit neutrality and the
/// U-level zigzag identities of the listed duals.
Report validate_diagram(const MonoidalDiagram& d);

/// Appends composites g o f of listed morphisms until nothing new appears or
/// `cap` morphisms are listed.
MonoidalDiagram close_under_composition(const MonoidalDiagram& d, std::size_t cap = 256);

/// H = (sum_X U(X) (x) U(X)^*) / dinaturality; generator (a, b) of block X is e_a (x) e^b.
struct Coend {
  coalg::Coalgebra coalgebra;
  exactla::Quotient quotient;
  std::vector<std::size_t> offset;  // block start per object
  std::vector<Matrix> proj;         // per object: N x (d * d)
  std::vector<Matrix> delta;        // per object universal coaction, (N * d) x d

  std::size_t dim() const { return quotient.dim(); }
  std::size_t ambient_dim() const { return quotient.proj.cols(); }
};

Coend coend_coalgebra(const MonoidalDiagram& d);
CoquasiBialgebra coend_bialgebra(const MonoidalDiagram& d, const Coend& c);
/// S(pi_X(e_a (x) e^b)) = sum db[j, b] ev[a, i] pi_{X*}(e_j (x) e^i); verified with check_preantipode.
Matrix coend_preantipode(const MonoidalDiagram& d, const Coend& c, const CoquasiBialgebra& h);
/// (s, alpha, beta) from per-object isomorphisms nu_X : U(X*) -> U(X)^* (d x d* each).
cqb::CoquasiHopfData coend_coquasi_antipode(const MonoidalDiagram& d, const Coend& c, const CoquasiBialgebra& h,
                                            const std::vector<Matrix>& nu);

struct CanResult {
  Matrix can;     // H -> B
  Report report;  // morphism axioms; flag "Galois" when bijective
  bool bijective = false;
};

/// can(pi_X(x (x) xi)) = sum x_-1 xi(x_0) using the object coactions over b.
CanResult can_map(const MonoidalDiagram& d, const Coend& c, const CoquasiBialgebra& h, const CoquasiBialgebra& b);

/// Structure of h transported along an invertible can : H -> B.
CoquasiBialgebra transport(const CoquasiBialgebra& h, const Matrix& can);

struct Reconstruction {
  Coend coend;
  CoquasiBialgebra h;
  Matrix s;
};

/// coend_coalgebra, coend_bialgebra and coend_preantipode in one call.
Reconstruction reconstruct(const MonoidalDiagram& d);

}  // namespace coquasi::recon
