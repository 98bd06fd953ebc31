// Copyright 2026 The simbandit Authors.
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

#ifndef SIMBANDIT_SIMBANDIT_HPP_
#define SIMBANDIT_SIMBANDIT_HPP_

#include "simbandit/config.hpp"
#include "simbandit/core.hpp"
#include "simbandit/environment.hpp"
#include "simbandit/graph.hpp"
#include "simbandit/harness.hpp"
#include "simbandit/policy.hpp"
#include "simbandit/simulation.hpp"
#include "simbandit/structure.hpp"
#include "simbandit/theory.hpp"

#endif  // SIMBANDIT_SIMBANDIT_HPP_
