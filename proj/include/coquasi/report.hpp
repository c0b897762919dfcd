#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace coquasi {

/// One violated identity, located by basis indices.
struct Failure {
  std::string axiom;
  std::vector<std::size_t> index;
};

/// Outcome of an axiom audit. Passes iff no failure was recorded.
struct Report {
  std::vector<Failure> failures;
  std::vector<std::string> flags;

  bool pass() const { return failures.empty(); }
  void fail(std::string axiom, std::vector<std::size_t> index = {}) {
    failures.push_back({std::move(axiom), std::move(index)});
  }
  void flag(std::string f) { flags.push_back(std::move(f)); }
  void merge(const Report& o) {
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    flags.insert(flags.end(), o.flags.begin(), o.flags.end());
  }
  bool has_failure(std::string_view axiom) const {
    for (const auto& f : failures)
      if (f.axiom == axiom) return true;
    return false;
  }
  bool has_flag(std::string_view f) const {
    for (const auto& x : flags)
      if (x == f) return true;
    return false;
  }
};

}  // namespace coquasi
