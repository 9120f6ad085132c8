// Copyright 2026 The qmckit Authors
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

#include "qmckit/algebra/irreducible.hpp"
#include "qmckit/algebra/laurent_series.hpp"
#include "qmckit/algebra/linear_algebra.hpp"
#include "qmckit/algebra/polynomial.hpp"
#include "qmckit/algebra/prime_field.hpp"
#include "qmckit/diophantine.hpp"
#include "qmckit/factorizer.hpp"
#include "qmckit/fixed_point.hpp"
#include "qmckit/generators.hpp"
#include "qmckit/io.hpp"
#include "qmckit/permutations.hpp"
#include "qmckit/pointsets.hpp"
#include "qmckit/quality.hpp"
