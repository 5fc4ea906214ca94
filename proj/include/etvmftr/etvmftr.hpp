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

// Umbrella header.
#ifndef ETVMFTR_ETVMFTR_HPP
#define ETVMFTR_ETVMFTR_HPP

#include "channel.hpp"
#include "config.hpp"
#include "core.hpp"
#include "ensemble.hpp"
#include "large_scale.hpp"
#include "link.hpp"
#include "ofdm.hpp"
#include "qam.hpp"
#include "rng.hpp"
#include "sde.hpp"
#include "stats.hpp"

#endif
