#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "skewcp/linalg.hpp"

namespace skewcp {

struct Tolerances {
  /// Equality of single products.
  double entry = 1e-9;
  /// Quantities accumulated over a span closure.
  double accumulated = 1e-7;
};

/// Largest ambient matrix size any algebra may live in.
inline constexpr Index kMaxAmbientDim = 256;

/// Linear span of flattened vectors, kept in sparse row-echelon form.
///
/// Each stored row has its first nonzero (pivot) normalized to one. Reduction
/// eliminates entries in increasing index order, so rows never need to be
/// fully reduced. Entries below `tol` times the input's largest entry are
/// treated as zero.
class EchelonSpan {
 public:
  using Entry = std::pair<std::int64_t, Complex>;
  using SparseVector = std::vector<Entry>;

  EchelonSpan(std::int64_t length, double tol);

  /// Adds `v` if it is independent of the current span; returns whether it was.
  bool insert(const SparseVector& v);
  bool contains(const SparseVector& v) const;
  std::size_t dimension() const { return rows_.size(); }
  std::int64_t length() const { return length_; }

 private:
  /// Returns the reduced remainder (empty if v lies in the span).
  SparseVector reduce(const SparseVector& v, bool stop_at_first) const;

  std::int64_t length_;
  double tol_;
  std::vector<SparseVector> rows_;
  std::vector<std::int32_t> row_of_pivot_;
};

/// Column-major flattening; `offset` shifts every index.
EchelonSpan::SparseVector flatten(const Matrix& m, std::int64_t offset = 0);
/// Concatenated flattening of (a, b).
EchelonSpan::SparseVector flatten_pair(const Matrix& a, const Matrix& b);

struct ClosureOptions;

/// A finite-dimensional *-subalgebra (or, for tensor/direct-sum builders, a
/// linear subspace) of M_n, held as a linearly independent spanning set.
///
/// Basis elements are the accepted words of the closure, in discovery order;
/// the trace-orthonormal basis is available on demand.
class AlgebraSpan {
 public:
  AlgebraSpan(Index ambient_dim, double tol, std::string name = {});

  Index ambient_dim() const { return ambient_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<Matrix>& basis() const { return basis_; }
  const std::vector<Matrix>& generators() const { return generators_; }
  /// Generator-index words producing each basis element (closure output only).
  const std::vector<std::vector<int>>& words() const { return words_; }

  bool contains(const Matrix& m) const;
  /// Appends `m` if independent; returns whether it was added.
  bool add(const Matrix& m, std::vector<int> word = {});
  void set_generators(std::vector<Matrix> gens) { generators_ = std::move(gens); }

  /// Modified Gram-Schmidt under ⟨a,b⟩ = tr(a*b).
  std::vector<DenseMatrix> orthonormal_basis() const;

  /// Σ r_i b_i with complex Gaussian r_i.
  Matrix random_element(std::mt19937_64& rng) const;

 private:
  friend AlgebraSpan span_closure(std::span<const Matrix>, const ClosureOptions&);

  /// Appends a basis element already known to be independent (the closure
  /// keeps the echelon in sync itself).
  void adopt(Matrix m, std::vector<int> word);

  Index ambient_;
  std::string name_;
  EchelonSpan echelon_;
  std::vector<Matrix> basis_;
  std::vector<Matrix> generators_;
  std::vector<std::vector<int>> words_;
};

struct ClosureOptions {
  double tol = Tolerances{}.accumulated;
  /// Close under adjoints as well as products.
  bool star = true;
  /// Hard cap guarding against numerical drift; exceeding it throws
  /// Error{ClosureDiverged}.
  std::size_t max_dimension = 1u << 17;
  Index max_ambient_dim = kMaxAmbientDim;
};

/// Smallest (*-)subalgebra containing `generators`; no unit is adjoined.
/// Breadth-first over words: every accepted word is multiplied on the left by
/// every generator (and adjoint) until no new direction appears.
/// Throws Error{DimensionMismatch} or Error{ClosureDiverged}.
AlgebraSpan span_closure(std::span<const Matrix> generators, const ClosureOptions& options = {});

/// Span of {a ⊗ b}. Dimension multiplies.
AlgebraSpan tensor(const AlgebraSpan& a, const AlgebraSpan& b);
/// Span of {a ⊕ 0, 0 ⊕ b}. Dimension adds.
AlgebraSpan direct_sum(const AlgebraSpan& a, const AlgebraSpan& b);
/// Full matrix algebra M_n spanned by matrix units.
AlgebraSpan full_matrix_algebra(Index n);

/// Outcome of checking that generator images extend to a *-homomorphism.
struct StarMapReport {
  bool well_defined = false;      // linear relations among generators survive
  bool multiplicative = false;    // the algebra (non-*) closures agree
  bool star_preserving = false;   // the *-closures agree
  bool injective = false;
  bool surjective = false;        // onto `target` if given, else onto the image span
  std::size_t domain_dim = 0;
  std::size_t image_dim = 0;
  std::size_t graph_dim = 0;
  std::size_t target_dim = 0;
  std::string witness;

  bool homomorphism() const { return well_defined && multiplicative && star_preserving; }
  bool bijective() const { return injective && surjective; }
  bool passed() const { return homomorphism() && bijective(); }
};

struct StarMapOptions {
  double tol = Tolerances{}.accumulated;
  /// When false, multiplicativity and *-preservation are certified together by
  /// a single *-closure of the graph (both flags then share its verdict).
  bool split_checks = true;
  /// When given, surjectivity is judged onto this span.
  const AlgebraSpan* target = nullptr;
  /// Names for generators, used in witnesses.
  std::vector<std::string> labels;
};

/// Checks that domain_generators[i] ↦ images[i] extends to a *-homomorphism
/// of the generated algebras, via the closure of the graph {g ⊕ φ(g)}: the
/// extension exists iff that closure projects isomorphically onto the domain.
StarMapReport check_star_map(std::span<const Matrix> domain_generators, std::span<const Matrix> images,
                             const StarMapOptions& options = {});

/// Block structure of a finite-dimensional *-algebra A ≅ ⊕ M_{d_i}, where
/// block i acts with multiplicity m_i on the ambient space.
struct WedderburnDecomposition {
  std::vector<std::size_t> block_sizes;   // d_i
  std::vector<std::size_t> multiplicities;  // m_i
  std::vector<DenseMatrix> central_projections;

  /// Sorted d_i; two *-algebras are isomorphic iff these agree.
  std::vector<std::size_t> signature() const;
};

/// Finds the minimal central projections by diagonalizing a random
/// self-adjoint element and linking its eigenspaces through a second random
/// element. Retries on near-degenerate spectra; throws Error{NotSemisimple}
/// if no consistent decomposition emerges.
WedderburnDecomposition wedderburn_decomposition(const AlgebraSpan& a, double tol = 1e-7,
                                                 std::uint64_t seed = 0x5eed);
std::vector<std::size_t> wedderburn_signature(const AlgebraSpan& a, double tol = 1e-7,
                                              std::uint64_t seed = 0x5eed);

std::string format_signature(const std::vector<std::size_t>& sig);

/// Product of letters along a word; code k ≥ 0 is letter k, code -k-1 its adjoint.
Matrix evaluate_word(const std::vector<int>& word, std::span<const Matrix> letters);

/// A formal noncommutative *-polynomial in numbered letters. Lets a map given
/// on generators be applied to elements built from generators.
class WordPolynomial {
 public:
  using Term = std::pair<Complex, std::vector<int>>;

  WordPolynomial() = default;
  static WordPolynomial letter(int k, Complex coefficient = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  WordPolynomial& operator+=(const WordPolynomial& other);
  friend WordPolynomial operator+(WordPolynomial a, const WordPolynomial& b) { return a += b; }
  friend WordPolynomial operator*(const WordPolynomial& a, const WordPolynomial& b);
  friend WordPolynomial operator*(Complex z, WordPolynomial a);
  WordPolynomial adjoint() const;

  /// Substitutes matrices for letters. `dimension` sizes the zero result of
  /// an empty polynomial.
  Matrix evaluate(std::span<const Matrix> letters, Index dimension) const;

 private:
  std::vector<Term> terms_;
};

}  // namespace skewcp
