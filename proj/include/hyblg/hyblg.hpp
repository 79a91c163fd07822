// Copyright 2026 The hyblg Authors
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

#ifndef HYBLG_HYBLG_HPP
#define HYBLG_HYBLG_HPP

#include "hyblg/blochsol.hpp"
#include "hyblg/dynamics.hpp"
#include "hyblg/errors.hpp"
#include "hyblg/fit.hpp"
#include "hyblg/lgi.hpp"
#include "hyblg/macrorealism.hpp"
#include "hyblg/model.hpp"
#include "hyblg/numerics.hpp"
#include "hyblg/spectrum.hpp"
#include "hyblg/version.hpp"

#endif  // HYBLG_HYBLG_HPP
