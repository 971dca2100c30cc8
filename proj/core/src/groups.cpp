#include "skewcp/groups.hpp"

#include <string>

#include "skewcp/errors.hpp"

namespace skewcp {

namespace {

std::string idx(int i) { return std::to_string(i); }

}  // namespace

FiniteGroup FiniteGroup::make(std::vector<std::vector<int>> table, std::vector<std::string> names) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorCode::NoIdentity, "empty table");
  if (n > kMaxOrder) {
    throw Error(ErrorCode::GroupTooLarge,
                "order " + idx(n) + " exceeds cap " + idx(kMaxOrder));
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n) {
      throw Error(ErrorCode::NotLatinSquare, "row " + idx(i) + " has length " +
                                                 idx(static_cast<int>(table[i].size())));
    }
    for (int j = 0; j < n; ++j) {
      if (table[i][j] < 0 || table[i][j] >= n) {
        throw Error(ErrorCode::NotLatinSquare,
                    "entry (" + idx(i) + "," + idx(j) + ") = " + idx(table[i][j]) + " out of range");
      }
    }
  }

  // Latin square: each row and column is a permutation.
  for (int i = 0; i < n; ++i) {
    std::vector<int> row_seen(n, -1), col_seen(n, -1);
    for (int j = 0; j < n; ++j) {
      const int r = table[i][j];
      if (row_seen[r] >= 0) {
        throw Error(ErrorCode::NotLatinSquare, "row " + idx(i) + " repeats " + idx(r) +
                                                   " at columns " + idx(row_seen[r]) + "," + idx(j));
      }
      row_seen[r] = j;
      const int c = table[j][i];
      if (col_seen[c] >= 0) {
        throw Error(ErrorCode::NotLatinSquare, "column " + idx(i) + " repeats " + idx(c) +
                                                   " at rows " + idx(col_seen[c]) + "," + idx(j));
      }
      col_seen[c] = j;
    }
  }

  int identity = -1;
  for (int i = 0; i < n && identity < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) identity = i;
  }
  if (identity < 0) throw Error(ErrorCode::NoIdentity, "no index i with table[i][j]=j=table[j][i]");

  std::vector<int> inverse(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (table[i][j] == identity && table[j][i] == identity) {
        inverse[i] = j;
        break;
      }
    }
    if (inverse[i] < 0) throw Error(ErrorCode::NoInverse, "element " + idx(i) + " has no two-sided inverse");
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw Error(ErrorCode::NotAssociative,
                      "(" + idx(a) + "*" + idx(b) + ")*" + idx(c) + " != " + idx(a) + "*(" + idx(b) +
                          "*" + idx(c) + ")");
        }

  if (names.empty()) {
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back(i == identity ? "e" : "g" + idx(i));
  } else if (static_cast<int>(names.size()) != n) {
    throw Error(ErrorCode::NotLatinSquare, "expected " + idx(n) + " element names, got " +
                                               idx(static_cast<int>(names.size())));
  }

  FiniteGroup g;
  g.table_ = std::move(table);
  g.names_ = std::move(names);
  g.inverse_ = std::move(inverse);
  g.identity_ = identity;
  return g;
}

FiniteGroup FiniteGroup::trivial() { return make({{0}}, {"e"}); }

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    names.push_back(i == 0 ? "e" : (n == 2 ? "g" : "g" + idx(i)));
  }
  return make(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::klein_four() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i][j] = i ^ j;
  return make(std::move(t), {"e", "a", "b", "ab"});
}

GroupElement FiniteGroup::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<GroupElement>(i);
  throw Error(ErrorCode::UnknownElement, "no group element named '" + std::string(name) + "'");
}

RegularRepresentations regular_representations(const FiniteGroup& g) {
  const int n = g.order();
  RegularRepresentations reps;
  for (int s = 0; s < n; ++s) {
    std::vector<Eigen::Triplet<Complex>> l, r;
    for (int t = 0; t < n; ++t) {
      l.emplace_back(g.mul(s, t), t, 1.0);
      r.emplace_back(g.mul(t, g.inv(s)), t, 1.0);
    }
    Matrix lm(n, n), rm(n, n);
    lm.setFromTriplets(l.begin(), l.end());
    rm.setFromTriplets(r.begin(), r.end());
    reps.lambda.push_back(std::move(lm));
    reps.rho.push_back(std::move(rm));
    reps.chi.push_back(matrix_unit(n, s, s));
  }
  return reps;
}

Labeling make_labeling(std::span<const std::string> edge_ids,
                       const std::map<std::string, std::string>& assignment, const FiniteGroup& g) {
  Labeling out;
  out.values.reserve(edge_ids.size());
  for (const auto& id : edge_ids) {
    auto it = assignment.find(id);
    if (it == assignment.end()) throw Error(ErrorCode::MissingEdge, "edge '" + id + "' has no label");
    out.values.push_back(g.index_of(it->second));
  }
  return out;
}

Labeling trivial_labeling(std::size_t edge_count, const FiniteGroup& g) {
  return Labeling{std::vector<GroupElement>(edge_count, g.identity())};
}

}  // namespace skewcp
