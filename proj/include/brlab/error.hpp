#pragma once

#include <stdexcept>
#include <string>

namespace brlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user input or violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Schedule index beyond what double precision can resolve.
class PrecisionCeilingError : public Error {
 public:
  PrecisionCeilingError(int j, int ceiling)
      : Error("schedule index j=" + std::to_string(j) + " exceeds precision ceiling " +
              std::to_string(ceiling)),
        j_(j), ceiling_(ceiling) {}
  int index() const { return j_; }
  int ceiling() const { return ceiling_; }

 private:
  int j_;
  int ceiling_;
};

}  // namespace brlab
