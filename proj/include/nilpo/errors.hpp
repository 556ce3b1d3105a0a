/*
   Copyright 2026 The nilpo Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NILPO_ERRORS_HPP
#define NILPO_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace nilpo {

/// Short %g rendering for diagnostics (std::to_string prints small residuals as 0.000000).
inline std::string fmt_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

/// Malformed or non-finite input, mismatched sizes.
class InputError : public std::invalid_argument {
   public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Result would exceed a configured size cap.
class CapacityError : public std::length_error {
   public:
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

/// Operation called on an input outside its domain (e.g. nilpotency order too high).
class PreconditionError : public std::domain_error {
   public:
    explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical self-check (Gram residual, convergence test, invariant) failed.
class AccuracyError : public std::runtime_error {
   public:
    explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Function evaluated at a pole.
class EvaluationError : public std::runtime_error {
   public:
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nilpo

#endif  // NILPO_ERRORS_HPP
