#pragma once

#include <stdexcept>
#include <string>

namespace thetalab {

/// Invalid mathematical input (wrong domain, broken precondition).
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// theta_chi(i) is numerically indistinguishable from zero, so a quotient
/// through it is not computable.
class vanishing_theta_error : public std::runtime_error {
 public:
  explicit vanishing_theta_error(const std::string& what) : std::runtime_error(what) {}
};

/// Working precision too low for the requested height bound.
class insufficient_precision_error : public std::runtime_error {
 public:
  explicit insufficient_precision_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace thetalab
