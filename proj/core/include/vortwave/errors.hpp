// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vortwave {

// Parameters outside (0 < gamma < 1, 0 <= p0sq < gamma^2 e^{4 gamma}) or an
// argument outside the domain of a closed form.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A (gamma, lambda) pair whose critical p0sq falls outside the valid region.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Under-resolution, non-real spectra, singular systems.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A state leaving the admissible set (h+1) h_p > 0, h = 0 on the bed.
class InadmissibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReconstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vortwave
