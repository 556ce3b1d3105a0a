/*
   Copyright 2026 The nilpo Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NILPO_NILPO_HPP
#define NILPO_NILPO_HPP

#include "csym.hpp"
#include "errors.hpp"
#include "indestructible.hpp"
#include "json_io.hpp"
#include "linalg.hpp"
#include "model_space.hpp"
#include "nc_poly.hpp"
#include "random.hpp"
#include "suite.hpp"
#include "synthesis.hpp"

#endif  // NILPO_NILPO_HPP
