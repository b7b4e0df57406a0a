#pragma once

#include <stdexcept>
#include <string>

namespace dihedral {

class Error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad configuration, violated precondition).
class InvalidInput : public Error
{
 public:
  using Error::Error;
};

/// A limit or thread count did not settle within the computed range.
class NotStabilized : public Error
{
 public:
  using Error::Error;
};

/// An exact post-condition check failed. Always indicates a bug upstream.
class VerificationFailure : public Error
{
 public:
  using Error::Error;
};

} // namespace dihedral
