// Copyright 2026 The aggad Authors. All Rights Reserved.
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

#include "aggad/active.hpp"
#include "aggad/config.hpp"
#include "aggad/expression.hpp"
#include "aggad/index_manager.hpp"
#include "aggad/jacobian_tape.hpp"
#include "aggad/operations.hpp"
#include "aggad/primal_tape.hpp"
#include "aggad/statistics.hpp"
