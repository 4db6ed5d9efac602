#pragma once

#include <stdexcept>

namespace angledim {

// Validation and data-quality failures all derive from std::runtime_error;
// argument-domain failures use std::domain_error directly. The CLI maps any
// of these to exit code 1.

// Fewer usable points than an operation needs (e.g. k neighbours requested,
// cloud too small once coincident points are dropped).
class insufficient_sample_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A neighbour set too small to form even one angle pair (k < 2).
class insufficient_neighbors_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A calibration cache is missing, or was built for a different k or a
// smaller dimension range than the request.
class calibration_mismatch_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Data admits no meaningful estimate (duplicated points in distance-based
// estimators, zero spread of neighbour distances).
class degenerate_data_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inconsistent configuration (c > n, k1 > k2, table too small, ...).
class config_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text: bad number, ragged CSV row, invalid JSON shape.
class parse_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input carrying unusable values (NaN/inf, m <= 0).
class validation_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input stream or file with no data rows at all.
class empty_input_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace angledim
