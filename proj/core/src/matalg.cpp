#include "skewcp/matalg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "skewcp/errors.hpp"

namespace skewcp {

// -- EchelonSpan ---------------------------------------------------------------

namespace {

struct Scratch {
  std::vector<Complex> values;
  std::vector<char> queued;
  std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> heap;

  void ensure(std::int64_t length) {
    if (static_cast<std::int64_t>(values.size()) < length) {
      values.assign(static_cast<std::size_t>(length), Complex(0.0, 0.0));
      queued.assign(static_cast<std::size_t>(length), 0);
    }
  }
  void push(std::int64_t i) {
    if (!queued[i]) {
      queued[i] = 1;
      heap.push(i);
    }
  }
  std::int64_t pop() {
    const std::int64_t i = heap.top();
    heap.pop();
    queued[i] = 0;
    return i;
  }
  void drain() {
    while (!heap.empty()) values[pop()] = Complex(0.0, 0.0);
  }
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

EchelonSpan::EchelonSpan(std::int64_t length, double tol)
    : length_(length), tol_(tol), row_of_pivot_(static_cast<std::size_t>(length), -1) {}

EchelonSpan::SparseVector EchelonSpan::reduce(const SparseVector& v, bool stop_at_first) const {
  double scale = 0.0;
  for (const auto& [i, x] : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return {};
  const double threshold = tol_ * scale;

  Scratch& s = scratch();
  s.ensure(length_);
  for (const auto& [i, x] : v) {
    s.values[i] += x;
    s.push(i);
  }
  while (!s.heap.empty()) {
    const std::int64_t i = s.pop();
    const Complex x = s.values[i];
    s.values[i] = Complex(0.0, 0.0);
    if (std::abs(x) <= threshold) continue;
    const std::int32_t r = row_of_pivot_[i];
    if (r >= 0) {
      for (const auto& [j, y] : rows_[r]) {
        if (j == i) continue;
        s.values[j] -= x * y;
        s.push(j);
      }
      continue;
    }
    SparseVector remainder{{i, x}};
    if (stop_at_first) {
      s.drain();
      return remainder;
    }
    while (!s.heap.empty()) {
      const std::int64_t j = s.pop();
      const Complex y = s.values[j];
      s.values[j] = Complex(0.0, 0.0);
      if (std::abs(y) > threshold) remainder.emplace_back(j, y);
    }
    return remainder;
  }
  return {};
}

bool EchelonSpan::insert(const SparseVector& v) {
  SparseVector rem = reduce(v, false);
  if (rem.empty()) return false;
  const Complex pivot = rem.front().second;
  for (auto& [i, x] : rem) x /= pivot;
  row_of_pivot_[rem.front().first] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(std::move(rem));
  return true;
}

bool EchelonSpan::contains(const SparseVector& v) const { return reduce(v, true).empty(); }

EchelonSpan::SparseVector flatten(const Matrix& m, std::int64_t offset) {
  EchelonSpan::SparseVector out;
  out.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (Index k = 0; k < m.outerSize(); ++k)
    for (Matrix::InnerIterator it(m, k); it; ++it)
      if (it.value() != Complex(0.0, 0.0)) out.emplace_back(offset + it.col() * m.rows() + it.row(), it.value());
  return out;
}

EchelonSpan::SparseVector flatten_pair(const Matrix& a, const Matrix& b) {
  auto out = flatten(a);
  auto tail = flatten(b, a.rows() * a.cols());
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

// -- AlgebraSpan ---------------------------------------------------------------

AlgebraSpan::AlgebraSpan(Index ambient_dim, double tol, std::string name)
    : ambient_(ambient_dim), name_(std::move(name)), echelon_(ambient_dim * ambient_dim, tol) {}

bool AlgebraSpan::contains(const Matrix& m) const {
  if (m.rows() != ambient_ || m.cols() != ambient_) return false;
  return echelon_.contains(flatten(m));
}

bool AlgebraSpan::add(const Matrix& m, std::vector<int> word) {
  if (m.rows() != ambient_ || m.cols() != ambient_) {
    throw Error(ErrorCode::DimensionMismatch, "element of size " + std::to_string(m.rows()) +
                                                  " added to span in M_" + std::to_string(ambient_));
  }
  if (!echelon_.insert(flatten(m))) return false;
  basis_.push_back(m);
  words_.push_back(std::move(word));
  return true;
}

void AlgebraSpan::adopt(Matrix m, std::vector<int> word) {
  basis_.push_back(std::move(m));
  words_.push_back(std::move(word));
}

std::vector<DenseMatrix> AlgebraSpan::orthonormal_basis() const {
  std::vector<DenseMatrix> out;
  out.reserve(basis_.size());
  for (const Matrix& b : basis_) {
    DenseMatrix v = DenseMatrix(b);
    // Two passes of modified Gram-Schmidt keep the Gram matrix at identity.
    for (int pass = 0; pass < 2; ++pass)
      for (const DenseMatrix& q : out) v -= (q.adjoint() * v).trace() * q;
    const double norm = v.norm();
    if (norm > 1e-12) out.push_back(v / norm);
  }
  return out;
}

Matrix AlgebraSpan::random_element(std::mt19937_64& rng) const {
  std::normal_distribution<double> normal;
  Matrix out(ambient_, ambient_);
  for (const Matrix& b : basis_) out += Complex(normal(rng), normal(rng)) * b;
  return out;
}

// -- closure -------------------------------------------------------------------

namespace {

/// A word evaluated in one or more representations at once (one component per
/// representation); closure is taken in the direct sum.
using Tuple = std::vector<Matrix>;

EchelonSpan::SparseVector flatten_tuple(const Tuple& t) {
  EchelonSpan::SparseVector out;
  std::int64_t offset = 0;
  for (const Matrix& m : t) {
    auto part = flatten(m, offset);
    out.insert(out.end(), part.begin(), part.end());
    offset += m.rows() * m.cols();
  }
  return out;
}

bool tuple_is_zero(const Tuple& t) {
  return std::all_of(t.begin(), t.end(), [](const Matrix& m) { return m.nonZeros() == 0; });
}

struct ClosureCallbacks {
  /// Called for each accepted word.
  std::function<void(const Tuple&, const std::vector<int>&)> on_accept;
};

/// Word encoding: k >= 0 is generator k, k < 0 is the adjoint of generator -k-1.
std::vector<std::pair<int, Tuple>> expand_generators(std::span<const Tuple> gens, bool star, double tol) {
  std::vector<std::pair<int, Tuple>> out;
  for (std::size_t i = 0; i < gens.size(); ++i) out.emplace_back(static_cast<int>(i), gens[i]);
  if (star) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Tuple adj;
      bool self_adjoint = true;
      for (const Matrix& m : gens[i]) {
        adj.push_back(adjoint(m));
        self_adjoint = self_adjoint && max_abs(Matrix(adj.back() - m)) <= tol;
      }
      if (!self_adjoint) out.emplace_back(-static_cast<int>(i) - 1, std::move(adj));
    }
  }
  return out;
}

std::size_t closure_impl(std::span<const Tuple> gens, const ClosureOptions& options, EchelonSpan& span,
                         const ClosureCallbacks& callbacks) {
  const auto letters = expand_generators(gens, options.star, options.tol);
  std::deque<std::pair<Tuple, std::vector<int>>> queue;

  auto offer = [&](Tuple t, std::vector<int> word) {
    if (tuple_is_zero(t)) return;
    if (!span.insert(flatten_tuple(t))) return;
    if (span.dimension() > options.max_dimension) {
      throw Error(ErrorCode::ClosureDiverged,
                  "closure exceeded " + std::to_string(options.max_dimension) + " dimensions");
    }
    if (callbacks.on_accept) callbacks.on_accept(t, word);
    queue.emplace_back(std::move(t), std::move(word));
  };

  for (const auto& [code, t] : letters) offer(t, {code});
  while (!queue.empty()) {
    auto [word_value, word] = std::move(queue.front());
    queue.pop_front();
    for (const auto& [code, letter] : letters) {
      Tuple product;
      product.reserve(letter.size());
      for (std::size_t c = 0; c < letter.size(); ++c) product.push_back(pruned(Matrix(letter[c] * word_value[c]), 1e-14));
      std::vector<int> longer{code};
      longer.insert(longer.end(), word.begin(), word.end());
      offer(std::move(product), std::move(longer));
    }
  }
  return span.dimension();
}

void check_square(std::span<const Matrix> ms, Index n, const char* what) {
  for (const Matrix& m : ms) {
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected " + std::to_string(n) + "x" +
                                                    std::to_string(n) + ", got " + std::to_string(m.rows()) +
                                                    "x" + std::to_string(m.cols()));
    }
  }
}

std::string describe_word(const std::vector<int>& word, const std::vector<std::string>& labels) {
  std::string out;
  for (int code : word) {
    const int i = code >= 0 ? code : -code - 1;
    std::string name = i < static_cast<int>(labels.size()) ? labels[i] : "g" + std::to_string(i);
    if (code < 0) name += "*";
    out += (out.empty() ? "" : " ") + name;
  }
  return out;
}

}  // namespace

AlgebraSpan span_closure(std::span<const Matrix> generators, const ClosureOptions& options) {
  if (generators.empty()) throw Error(ErrorCode::DimensionMismatch, "span_closure needs at least one generator");
  const Index n = generators.front().rows();
  check_square(generators, n, "span_closure");
  if (n > options.max_ambient_dim) {
    throw Error(ErrorCode::DimensionMismatch, "ambient dimension " + std::to_string(n) + " exceeds cap " +
                                                  std::to_string(options.max_ambient_dim));
  }
  AlgebraSpan out(n, options.tol);
  std::vector<Tuple> gens;
  for (const Matrix& g : generators) gens.push_back(Tuple{g});
  ClosureCallbacks cb;
  cb.on_accept = [&](const Tuple& t, const std::vector<int>& word) { out.adopt(t.front(), word); };
  closure_impl(gens, options, out.echelon_, cb);
  out.set_generators(std::vector<Matrix>(generators.begin(), generators.end()));
  return out;
}

AlgebraSpan tensor(const AlgebraSpan& a, const AlgebraSpan& b) {
  AlgebraSpan out(a.ambient_dim() * b.ambient_dim(), Tolerances{}.accumulated,
                  a.name().empty() || b.name().empty() ? std::string{} : a.name() + "⊗" + b.name());
  for (const Matrix& x : a.basis())
    for (const Matrix& y : b.basis()) out.add(kron(x, y));
  std::vector<Matrix> gens;
  const auto& ga = a.generators().empty() ? a.basis() : a.generators();
  const auto& gb = b.generators().empty() ? b.basis() : b.generators();
  for (const Matrix& x : ga)
    for (const Matrix& y : gb) gens.push_back(kron(x, y));
  out.set_generators(std::move(gens));
  return out;
}

AlgebraSpan direct_sum(const AlgebraSpan& a, const AlgebraSpan& b) {
  AlgebraSpan out(a.ambient_dim() + b.ambient_dim(), Tolerances{}.accumulated,
                  a.name().empty() || b.name().empty() ? std::string{} : a.name() + "⊕" + b.name());
  const Matrix za(a.ambient_dim(), a.ambient_dim()), zb(b.ambient_dim(), b.ambient_dim());
  std::vector<Matrix> gens;
  for (const Matrix& x : a.basis()) out.add(skewcp::direct_sum(x, zb));
  for (const Matrix& y : b.basis()) out.add(skewcp::direct_sum(za, y));
  for (const Matrix& x : a.generators().empty() ? a.basis() : a.generators()) gens.push_back(skewcp::direct_sum(x, zb));
  for (const Matrix& y : b.generators().empty() ? b.basis() : b.generators()) gens.push_back(skewcp::direct_sum(za, y));
  out.set_generators(std::move(gens));
  return out;
}

AlgebraSpan full_matrix_algebra(Index n) {
  AlgebraSpan out(n, Tolerances{}.accumulated, "M" + std::to_string(n));
  std::vector<Matrix> gens;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) out.add(matrix_unit(n, i, j));
  for (Index i = 0; i + 1 < n; ++i) gens.push_back(matrix_unit(n, i, i + 1));
  gens.push_back(matrix_unit(n, 0, 0));
  out.set_generators(std::move(gens));
  return out;
}

// -- check_star_map ------------------------------------------------------------

namespace {

struct GraphClosure {
  std::size_t graph_dim = 0;
  std::size_t domain_dim = 0;
  std::size_t image_dim = 0;
  std::string domain_witness;  // first word whose domain part was already spanned
};

GraphClosure close_graph(std::span<const Matrix> domain, std::span<const Matrix> images, bool star, double tol,
                         const std::vector<std::string>& labels) {
  const Index nd = domain.front().rows(), ni = images.front().rows();
  std::vector<Tuple> gens;
  for (std::size_t i = 0; i < domain.size(); ++i) gens.push_back(Tuple{domain[i], images[i]});

  EchelonSpan graph(nd * nd + ni * ni, tol), dom(nd * nd, tol), img(ni * ni, tol);
  GraphClosure out;
  ClosureCallbacks cb;
  cb.on_accept = [&](const Tuple& t, const std::vector<int>& word) {
    if (!dom.insert(flatten(t[0])) && out.domain_witness.empty()) out.domain_witness = describe_word(word, labels);
    img.insert(flatten(t[1]));
  };
  ClosureOptions opts;
  opts.tol = tol;
  opts.star = star;
  opts.max_ambient_dim = 2 * kMaxAmbientDim;
  out.graph_dim = closure_impl(gens, opts, graph, cb);
  out.domain_dim = dom.dimension();
  out.image_dim = img.dimension();
  return out;
}

}  // namespace

StarMapReport check_star_map(std::span<const Matrix> domain_generators, std::span<const Matrix> images,
                             const StarMapOptions& options) {
  if (domain_generators.size() != images.size() || domain_generators.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "generator and image lists must be nonempty and equal in length");
  }
  check_square(domain_generators, domain_generators.front().rows(), "domain generator");
  check_square(images, images.front().rows(), "image generator");

  StarMapReport report;
  const Index nd = domain_generators.front().rows(), ni = images.front().rows();

  {
    EchelonSpan pair(nd * nd + ni * ni, options.tol), dom(nd * nd, options.tol);
    report.well_defined = true;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const bool pair_new = pair.insert(flatten_pair(domain_generators[i], images[i]));
      const bool dom_new = dom.insert(flatten(domain_generators[i]));
      if (pair_new && !dom_new && report.well_defined) {
        report.well_defined = false;
        report.witness = "generator " + describe_word({static_cast<int>(i)}, options.labels) +
                         " is a combination of earlier generators but its image is not";
      }
    }
  }

  const GraphClosure star = close_graph(domain_generators, images, true, options.tol, options.labels);
  report.domain_dim = star.domain_dim;
  report.image_dim = star.image_dim;
  report.graph_dim = star.graph_dim;
  report.star_preserving = star.graph_dim == star.domain_dim;
  if (options.split_checks) {
    const GraphClosure plain = close_graph(domain_generators, images, false, options.tol, options.labels);
    report.multiplicative = plain.graph_dim == plain.domain_dim;
    if (!report.multiplicative && report.witness.empty()) {
      report.witness = "relation among domain words violated in the image at word [" + plain.domain_witness + "]";
    }
  } else {
    report.multiplicative = report.star_preserving;
  }
  if (!report.star_preserving && report.witness.empty()) {
    report.witness = "relation among domain words violated in the image at word [" + star.domain_witness + "]";
  }
  report.injective = report.homomorphism() && star.graph_dim == star.image_dim;

  if (options.target != nullptr) {
    report.target_dim = options.target->dimension();
    bool inside = true;
    for (std::size_t i = 0; i < images.size() && inside; ++i) {
      if (!options.target->contains(images[i])) {
        inside = false;
        if (report.witness.empty())
          report.witness = "image of " + describe_word({static_cast<int>(i)}, options.labels) + " leaves the target";
      }
    }
    report.surjective = inside && report.image_dim == report.target_dim;
  } else {
    report.target_dim = report.image_dim;
    report.surjective = true;
  }
  return report;
}

// -- Wedderburn ----------------------------------------------------------------

std::vector<std::size_t> WedderburnDecomposition::signature() const {
  std::vector<std::size_t> out = block_sizes;
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

WedderburnDecomposition wedderburn_decomposition(const AlgebraSpan& a, double tol, std::uint64_t seed) {
  WedderburnDecomposition out;
  if (a.dimension() == 0) return out;
  const Index n = a.ambient_dim();

  // Range of the unit of A: the complement of the common kernel.
  Matrix gram(n, n);
  for (const Matrix& b : a.basis()) gram += Matrix(b.adjoint() * b);
  const DenseMatrix gram_dense(gram);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> gram_eig(gram_dense);
  const double gram_max = gram_eig.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<Index> keep;
  for (Index i = 0; i < n; ++i)
    if (gram_eig.eigenvalues()(i) > tol * gram_max) keep.push_back(i);
  const Index k = static_cast<Index>(keep.size());
  DenseMatrix range(n, k);
  for (Index j = 0; j < k; ++j) range.col(j) = gram_eig.eigenvectors().col(keep[j]);

  const auto& checks = a.generators().empty() ? a.basis() : a.generators();
  std::mt19937_64 rng(seed);
  std::string last_failure = "no attempt made";

  for (int attempt = 0; attempt < 8; ++attempt) {
    const Matrix r1 = a.random_element(rng);
    const DenseMatrix h = range.adjoint() * DenseMatrix(r1 + Matrix(r1.adjoint())) * range;
    const DenseMatrix link = range.adjoint() * DenseMatrix(a.random_element(rng)) * range;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(h);
    const auto& values = eig.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());

    // Eigenvalue clusters (exact multiplicities) in ascending order.
    std::vector<std::vector<Index>> clusters;
    for (Index i = 0; i < k; ++i) {
      if (i == 0 || values(i) - values(i - 1) > 1e-6 * scale) clusters.emplace_back();
      clusters.back().push_back(i);
    }
    const int nc = static_cast<int>(clusters.size());
    std::vector<DenseMatrix> spaces;
    for (const auto& c : clusters) {
      DenseMatrix w(k, static_cast<Index>(c.size()));
      for (std::size_t j = 0; j < c.size(); ++j) w.col(static_cast<Index>(j)) = eig.eigenvectors().col(c[j]);
      spaces.push_back(std::move(w));
    }
    const double link_scale = std::max(1e-300, link.norm());
    // Eigenvectors are already grouped by cluster, so couplings are blocks of one matrix.
    const DenseMatrix coupled = eig.eigenvectors().adjoint() * link * eig.eigenvectors();
    UnionFind uf(nc);
    for (int x = 0; x < nc; ++x)
      for (int y = x + 1; y < nc; ++y) {
        const Index rx = clusters[x].front(), ry = clusters[y].front();
        const Index sx = static_cast<Index>(clusters[x].size()), sy = static_cast<Index>(clusters[y].size());
        const double coupling = coupled.block(rx, ry, sx, sy).norm() + coupled.block(ry, rx, sy, sx).norm();
        if (coupling > 1e-6 * link_scale) uf.unite(x, y);
      }

    std::vector<int> roots;
    for (int x = 0; x < nc; ++x)
      if (std::find(roots.begin(), roots.end(), uf.find(x)) == roots.end()) roots.push_back(uf.find(x));

    WedderburnDecomposition candidate;
    bool consistent = true;
    std::size_t dim_sum = 0;
    for (int root : roots) {
      std::size_t d = 0, m = 0;
      DenseMatrix basis(k, 0);
      for (int x = 0; x < nc; ++x) {
        if (uf.find(x) != root) continue;
        const std::size_t mult = clusters[x].size();
        if (m == 0) m = mult;
        if (mult != m) consistent = false;
        ++d;
        DenseMatrix grown(k, basis.cols() + spaces[x].cols());
        grown << basis, spaces[x];
        basis = std::move(grown);
      }
      const DenseMatrix lifted = range * basis;
      candidate.block_sizes.push_back(d);
      candidate.multiplicities.push_back(m);
      candidate.central_projections.push_back(lifted * lifted.adjoint());
      dim_sum += d * d;
    }
    if (!consistent) {
      last_failure = "unequal multiplicities inside a linked block";
      continue;
    }
    if (dim_sum != a.dimension()) {
      last_failure = "block sizes give dimension " + std::to_string(dim_sum) + ", span has " +
                     std::to_string(a.dimension());
      continue;
    }
    bool central = true;
    for (const DenseMatrix& z : candidate.central_projections) {
      for (const Matrix& g : checks) {
        const DenseMatrix zg = z * g;
        const DenseMatrix gz = g * z;
        if ((zg - gz).cwiseAbs().maxCoeff() > 1e3 * tol * std::max(1.0, max_abs(g))) {
          central = false;
          break;
        }
      }
      if (!central) break;
    }
    if (!central) {
      last_failure = "candidate projection is not central";
      continue;
    }
    return candidate;
  }
  throw Error(ErrorCode::NotSemisimple, last_failure);
}

std::vector<std::size_t> wedderburn_signature(const AlgebraSpan& a, double tol, std::uint64_t seed) {
  return wedderburn_decomposition(a, tol, seed).signature();
}

std::string format_signature(const std::vector<std::size_t>& sig) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < sig.size(); ++i) os << (i ? "," : "") << sig[i];
  os << '}';
  return os.str();
}

Matrix evaluate_word(const std::vector<int>& word, std::span<const Matrix> letters) {
  if (word.empty()) throw Error(ErrorCode::DimensionMismatch, "empty word");
  auto letter = [&](int code) {
    const int k = code >= 0 ? code : -code - 1;
    if (k >= static_cast<int>(letters.size())) {
      throw Error(ErrorCode::DimensionMismatch, "word uses letter " + std::to_string(k) + " of " +
                                                    std::to_string(letters.size()));
    }
    return code >= 0 ? letters[k] : adjoint(letters[k]);
  };
  Matrix out = letter(word.back());
  for (auto it = word.rbegin() + 1; it != word.rend(); ++it) out = Matrix(letter(*it) * out);
  return out;
}

WordPolynomial WordPolynomial::letter(int k, Complex coefficient) {
  WordPolynomial p;
  p.terms_.push_back({coefficient, {k}});
  return p;
}

WordPolynomial& WordPolynomial::operator+=(const WordPolynomial& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

WordPolynomial operator*(const WordPolynomial& a, const WordPolynomial& b) {
  WordPolynomial out;
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [za, wa] : a.terms_)
    for (const auto& [zb, wb] : b.terms_) {
      std::vector<int> w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.terms_.push_back({za * zb, std::move(w)});
    }
  return out;
}

WordPolynomial operator*(Complex z, WordPolynomial a) {
  for (auto& term : a.terms_) term.first *= z;
  return a;
}

WordPolynomial WordPolynomial::adjoint() const {
  WordPolynomial out;
  for (const auto& [z, w] : terms_) {
    std::vector<int> rev;
    for (auto it = w.rbegin(); it != w.rend(); ++it) rev.push_back(-*it - 1);
    out.terms_.push_back({std::conj(z), std::move(rev)});
  }
  return out;
}

Matrix WordPolynomial::evaluate(std::span<const Matrix> letters, Index dimension) const {
  Matrix out(dimension, dimension);
  for (const auto& [z, w] : terms_) {
    if (z == Complex(0.0)) continue;
    Matrix term = evaluate_word(w, letters);
    if (term.rows() != dimension) throw Error(ErrorCode::DimensionMismatch, "polynomial letter size mismatch");
    out += z * term;
  }
  return pruned(out, 1e-14);
}

}  // namespace skewcp
