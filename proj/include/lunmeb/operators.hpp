#pragma once

// Weyl (clock-and-shift) operators and one-sided action on bipartite kets.
//
//   U_nm = sum_k exp(2 i pi n k / d) |k (+) m><k|
//
// Row k (+) m, column k holds the phase; (+) is addition mod d. The subspace
// variant lives on the first d-1 levels and is zero on level d-1.

#include <variant>

#include "lunmeb/numkit.hpp"

namespace lunmeb::operators {

using numkit::CMatrix;
using numkit::Complex;
using numkit::CVector;

struct WeylLabel {
  int n;
  int m;
  bool operator==(const WeylLabel&) const = default;
};
struct SubspaceWeylLabel {
  int n;
  int m;
  bool operator==(const SubspaceWeylLabel&) const = default;
};
struct Combination {
  bool operator==(const Combination&) const = default;
};

using Provenance = std::variant<WeylLabel, SubspaceWeylLabel, Combination>;

struct LocalOperator {
  int d = 0;
  CMatrix matrix;
  Provenance provenance = Combination{};
};

/// Which operator family a set of combination coefficients refers to.
enum class OperatorBasis { Weyl, SubspaceWeyl };

/// V = sum_{p,q} f(p, q) U_pq. For OperatorBasis::SubspaceWeyl the
/// coefficient grid is (d-1) x (d-1) and the U'_pq are used.
struct OperatorCombination {
  int d = 0;
  OperatorBasis basis = OperatorBasis::Weyl;
  CMatrix f;

  /// sum |f_pq|^2 == 1 within 1e-12.
  bool normalized() const;
};

enum class Side { A, B };

LocalOperator weyl(int n, int m, int d);
LocalOperator subspace_weyl(int n, int m, int d);

/// Label range of one axis of the given family: d for Weyl, d-1 for subspace.
int label_range(OperatorBasis basis, int d);
LocalOperator basis_operator(OperatorBasis basis, int p, int q, int d);

/// Builds the operator; unitarity is not enforced (see is_unitary).
LocalOperator combine(const OperatorCombination& f);

/// Expansion coefficients of an arbitrary d x d matrix in the Weyl basis,
/// f_pq = Tr(U_pq^dagger X) / d.
OperatorCombination decompose(const CMatrix& x);

/// (op (x) I) v for Side::A, (I (x) op) v for Side::B.
CVector apply_local(const LocalOperator& op, const CVector& v, Side side = Side::A);

/// Hilbert-Schmidt inner product Tr(a^dagger b).
Complex hs_inner(const LocalOperator& a, const LocalOperator& b);

bool is_unitary(const LocalOperator& op, double tol = numkit::Tolerances{}.unit_tol);

}  // namespace lunmeb::operators
