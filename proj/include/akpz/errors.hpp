#pragma once

#include <stdexcept>
#include <string>

namespace akpz {

/// Invalid input data or parameters (bad configuration, slope outside the
/// simplex, malformed files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The finite window does not hold what an operation needs (a particle to the
/// right of a ringing site, a blocking partner, a vertex outside a span).
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton non-convergence, empty transforms and similar.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size or combinatorial guard was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace akpz
