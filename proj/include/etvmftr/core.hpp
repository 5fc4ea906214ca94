// SPDX-License-Identifier: Apache-2.0
//
// etvmftr - time-varying maritime fading channel simulation library
// Copyright (C) 2026 The etvmftr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ETVMFTR_CORE_HPP
#define ETVMFTR_CORE_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace etvmftr
{

inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Invalid or inconsistent parameter. `field()` names the offending key, e.g. "mftr.Delta".
class config_error : public std::invalid_argument
{
public:
    config_error(std::string field, const std::string &what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

// Distance beyond the radio horizon d_LOS, where the large-scale model is undefined.
class out_of_horizon : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

// Explicit Euler-Maruyama step too coarse for the shadowing mean-reversion rate.
class stability_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace etvmftr

#endif
