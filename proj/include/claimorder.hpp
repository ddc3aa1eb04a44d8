// Copyright 2026 The claimorder Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the claimorder library.

#ifndef CLAIMORDER_HPP_
#define CLAIMORDER_HPP_

#include "claimorder/audit.hpp"
#include "claimorder/cases.hpp"
#include "claimorder/error.hpp"
#include "claimorder/extremes.hpp"
#include "claimorder/instance.hpp"
#include "claimorder/linear_feasibility.hpp"
#include "claimorder/majorization.hpp"
#include "claimorder/ordercheck.hpp"
#include "claimorder/parallel.hpp"
#include "claimorder/rng.hpp"
#include "claimorder/severity.hpp"
#include "claimorder/simulate.hpp"
#include "claimorder/special_functions.hpp"

#endif  // CLAIMORDER_HPP_
