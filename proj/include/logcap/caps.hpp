#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace logcap {

// bad user input: exit code 1
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// outside caps or outside what is implemented: exit code 2
struct CapsExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Caps {
  int max_degree = 8;
  mpz_class max_disc = mpz_class("10000000000");
  int box = 0;                    // largest coordinate box for relation search (0: bounded by max_elements only)
  long max_elements = 3000000;    // elements examined per relation search
  int witness_samples = 64;       // sampled witnesses per place
  long max_range = 20000;         // width of a scan range
  int round2_iterations = 64;
};

}  // namespace logcap
