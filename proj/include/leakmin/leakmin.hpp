// Copyright 2026 The leakmin Authors
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
//
#ifndef LEAKMIN_LEAKMIN_HPP_
#define LEAKMIN_LEAKMIN_HPP_

#include "leakmin/errors.hpp"
#include "leakmin/probcore.hpp"
#include "leakmin/sampling.hpp"
#include "leakmin/entropy.hpp"
#include "leakmin/majorization.hpp"
#include "leakmin/designer.hpp"
#include "leakmin/gain.hpp"
#include "leakmin/oracle.hpp"

#endif  // LEAKMIN_LEAKMIN_HPP_
