// Copyright 2026 The spellvar Authors
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

#pragma once

// Umbrella header for the full library.

#include "spellvar/edit_distance.hpp"
#include "spellvar/errors.hpp"
#include "spellvar/evaluate.hpp"
#include "spellvar/generator.hpp"
#include "spellvar/util.hpp"
#include "spellvar/vector_model.hpp"
#include "spellvar/weight_learning.hpp"
#include "spellvar/weight_profile.hpp"
