#pragma once

#include <algorithm>
#include <string>

#include "skewcp/duality.hpp"

namespace skewcp::detail {

inline Check compare(std::string name, const Matrix& a, const Matrix& b, double tol) {
  Check c{std::move(name), true, max_abs_diff(a, b), {}};
  c.passed = c.max_error <= tol;
  return c;
}

inline Check flag(std::string name, bool ok, std::string witness = {}) {
  return Check{std::move(name), ok, 0.0, ok ? std::string{} : std::move(witness)};
}

/// Folds a sequence of comparisons into one check, keeping the first failure.
struct CheckAccumulator {
  Check check;
  explicit CheckAccumulator(std::string name) : check{std::move(name), true, 0.0, {}} {}
  void add(const std::string& where, double err, double tol) {
    check.max_error = std::max(check.max_error, err);
    if (err > tol && check.passed) {
      check.passed = false;
      check.witness = where + " (error " + std::to_string(err) + ")";
    }
  }
  void add(const std::string& where, const Matrix& a, const Matrix& b, double tol) { add(where, max_abs_diff(a, b), tol); }
  void fail(const std::string& where) {
    if (check.passed) {
      check.passed = false;
      check.witness = where;
    }
  }
};

inline void add_signatures(IsomorphismCertificate& cert, const AlgebraSpan& source, const AlgebraSpan& target) {
  cert.source_signature = wedderburn_signature(source);
  cert.target_signature = wedderburn_signature(target);
  cert.checks.push_back(Check{"Wedderburn signatures agree", cert.signatures_agree(), 0.0,
                              cert.signatures_agree() ? std::string{}
                                                      : format_signature(cert.source_signature) + " vs " +
                                                            format_signature(cert.target_signature)});
}

}  // namespace skewcp::detail
