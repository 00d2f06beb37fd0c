// Copyright 2026 The rspsteer Authors
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

#pragma once

#include "rspsteer/errors.hpp"
#include "rspsteer/fixtures.hpp"
#include "rspsteer/linalg.hpp"
#include "rspsteer/log.hpp"
#include "rspsteer/matrix_io.hpp"
#include "rspsteer/qstate.hpp"
#include "rspsteer/rsp.hpp"
#include "rspsteer/sdp.hpp"
#include "rspsteer/steering.hpp"
#include "rspsteer/sweep.hpp"
#include "rspsteer/tolerances.hpp"
#include "rspsteer/tomo.hpp"
