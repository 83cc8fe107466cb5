// Copyright 2026 The cgt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the coalitional game toolkit.

#ifndef CGT_CGT_HPP
#define CGT_CGT_HPP

#include "cgt/coalition_structure.hpp"
#include "cgt/formation.hpp"
#include "cgt/game.hpp"
#include "cgt/geometry.hpp"
#include "cgt/graph.hpp"
#include "cgt/lp.hpp"
#include "cgt/netform.hpp"
#include "cgt/scenarios.hpp"
#include "cgt/solutions.hpp"

#endif  // CGT_CGT_HPP
