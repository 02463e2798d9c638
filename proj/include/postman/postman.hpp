// Copyright 2026 The postman-qubo Authors
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

#include "postman/error.hpp"
#include "postman/euler.hpp"
#include "postman/general/builder.hpp"
#include "postman/general/decode.hpp"
#include "postman/general/encoding.hpp"
#include "postman/general/oracle.hpp"
#include "postman/general/shortcut.hpp"
#include "postman/general/validate.hpp"
#include "postman/graph.hpp"
#include "postman/pairing.hpp"
#include "postman/penalty.hpp"
#include "postman/pipeline.hpp"
#include "postman/problem.hpp"
#include "postman/qubo.hpp"
#include "postman/route.hpp"
#include "postman/shortest_paths.hpp"
#include "postman/solvers/samplers.hpp"
#include "postman/variables.hpp"
