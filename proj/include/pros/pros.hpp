// Copyright 2026 The PROS Sampling Authors.
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

#include "pros/dataset.hpp"
#include "pros/designs.hpp"
#include "pros/error.hpp"
#include "pros/estimators.hpp"
#include "pros/harness.hpp"
#include "pros/logistic.hpp"
#include "pros/models.hpp"
#include "pros/random.hpp"
#include "pros/ranking.hpp"
#include "pros/report.hpp"
#include "pros/run_config.hpp"
#include "pros/sample.hpp"
#include "pros/worked_example.hpp"
