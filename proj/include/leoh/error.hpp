/*
 *    Copyright 2026 The leoharvest Authors
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace leoh {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a formula.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The orbit inclination does not intersect the communication cap.
class OutOfCap : public DomainError {
public:
    using DomainError::DomainError;
};

class OutOfRange : public DomainError {
public:
    using DomainError::DomainError;
};

/// A closed form was asked for outside the interval on which it holds.
class OutOfValidity : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureFailure : public Error {
public:
    QuadratureFailure(double worst_lo, double worst_hi, double error_estimate, double tolerance)
        : Error("quadrature failed to converge: error estimate " + std::to_string(error_estimate) +
                " exceeds tolerance " + std::to_string(tolerance) + ", worst interval [" +
                std::to_string(worst_lo) + ", " + std::to_string(worst_hi) + "]"),
          worst_lo_(worst_lo), worst_hi_(worst_hi), error_estimate_(error_estimate) {}

    double worst_lo() const noexcept { return worst_lo_; }
    double worst_hi() const noexcept { return worst_hi_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double worst_lo_;
    double worst_hi_;
    double error_estimate_;
};

} // namespace leoh
