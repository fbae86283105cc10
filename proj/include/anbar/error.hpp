#pragma once

#include <stdexcept>
#include <string>

namespace anbar {

/// Base of every error raised by the library. The CLI maps `input_error`
/// to exit code 2 and everything else to a computation failure.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class contract_error : public error {
public:
  using error::error;
};

class containment_error : public error {
public:
  using error::error;
};

class degree_error : public error {
public:
  using error::error;
};

class incomplete_cocycle_error : public error {
public:
  using error::error;
};

class invalid_cocycle_error : public error {
public:
  using error::error;
};

class mismatch_error : public error {
public:
  using error::error;
};

/// Two exactly distinct values whose float embeddings are closer than the
/// collision tolerance.
class precision_error : public error {
public:
  using error::error;
};

class window_too_small_error : public error {
public:
  using error::error;
};

class unsafe_threshold_error : public error {
public:
  using error::error;
};

class domain_error : public error {
public:
  using error::error;
};

/// Malformed or inconsistent user input (files, flags).
class input_error : public error {
public:
  using error::error;
};

} // namespace anbar
