// Copyright 2026 The likertib Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "likertib/agreement.hpp"
#include "likertib/csv.hpp"
#include "likertib/efa.hpp"
#include "likertib/error.hpp"
#include "likertib/ib.hpp"
#include "likertib/information.hpp"
#include "likertib/matrix.hpp"
#include "likertib/numerics.hpp"
#include "likertib/partition.hpp"
#include "likertib/pipeline.hpp"
#include "likertib/reliability.hpp"
#include "likertib/report.hpp"
#include "likertib/responses.hpp"
#include "likertib/synth.hpp"
