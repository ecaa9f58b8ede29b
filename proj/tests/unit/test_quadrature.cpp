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


#include "leoh/error.hpp"
#include "leoh/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace leoh;

TEST(Quadrature, Polynomial) {
    const QuadratureSpec q;
    EXPECT_NEAR(integrate_1d([](double x) { return x * x; }, 0.0, 1.0, q), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(integrate_1d([](double x) { return x * x; }, 1.0, 0.0, q), -1.0 / 3.0, 1e-15);
    EXPECT_EQ(integrate_1d([](double x) { return x; }, 2.0, 2.0, q), 0.0);
}

TEST(Quadrature, SquareRootEndpoint) {
    const QuadratureSpec q;
    auto f = [](double x, double gap) { return 1.0 / std::sqrt(gap * (1.0 + x)); };
    EXPECT_NEAR(integrate_sqrt_endpoint(f, 0.0, 1.0, q), std::numbers::pi / 2.0, 1e-13);
}

TEST(Quadrature, OscillatoryNeedsSubdivision) {
    const QuadratureSpec q;
    const QuadratureResult r = integrate_adaptive([](double x) { return std::sin(40.0 * x); }, 0.0, 3.0, q);
    EXPECT_NEAR(r.value, (1.0 - std::cos(120.0)) / 40.0, 1e-10);
    EXPECT_GT(r.panels, 1);
    EXPECT_LE(r.error, std::max(q.abs_tol, q.rel_tol * std::abs(r.value)));
}

TEST(Quadrature, FailureReportsWorstInterval) {
    QuadratureSpec q;
    q.max_subdivisions = 3;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-14;
    try {
        integrate_1d([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, q);
        FAIL() << "expected QuadratureFailure";
    } catch (const QuadratureFailure& e) {
        EXPECT_LT(e.worst_lo(), e.worst_hi());
        EXPECT_GE(e.worst_lo(), 0.0);
        EXPECT_LE(e.worst_hi(), 1.0);
        EXPECT_GT(e.error_estimate(), 0.0);
    }
}

TEST(Quadrature, NonFiniteIntegrandFails) {
    const QuadratureSpec q;
    EXPECT_THROW(integrate_1d([](double) { return NAN; }, 0.0, 1.0, q), QuadratureFailure);
}

TEST(Quadrature, SemiInfinite) {
    const QuadratureSpec q;
    EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, q), 1.0, 1e-11);
    auto f = [](double x) { return std::exp(-x * x); };
    EXPECT_NEAR(integrate_semi_infinite(f, 0.0, q), std::sqrt(std::numbers::pi) / 2.0, 1e-11);
    const double cut = tail_truncation_point([](double x) { return std::exp(-x); }, 0.0, q);
    EXPECT_NEAR(cut, -std::log(q.tail_cutoff), 1e-6);
    EXPECT_GE(cut, -std::log(q.tail_cutoff));
}

TEST(Quadrature, SpecValidation) {
    QuadratureSpec q;
    EXPECT_NO_THROW(q.validate());
    q.rel_tol = 0.0;
    EXPECT_THROW(q.validate(), DomainError);
    q = {};
    q.max_subdivisions = 0;
    EXPECT_THROW(q.validate(), DomainError);
    q = {};
    q.tail_cutoff = -1.0;
    EXPECT_THROW(q.validate(), DomainError);
}
