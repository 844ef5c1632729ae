// Copyright 2026 The ejsp Authors
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

#include "ejsp/core.hpp"
#include "ejsp/eval.hpp"
#include "ejsp/generator.hpp"
#include "ejsp/io.hpp"
#include "ejsp/random.hpp"
#include "ejsp/solver.hpp"
#include "ejsp/speed.hpp"
#include "ejsp/suite_io.hpp"
#include "ejsp/variants.hpp"
