// Copyright 2026 The netbargain Authors
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

#ifndef NETBARGAIN_NETBARGAIN_HPP
#define NETBARGAIN_NETBARGAIN_HPP

#include "netbargain/bargaining.hpp"
#include "netbargain/crosscheck.hpp"
#include "netbargain/decomposition.hpp"
#include "netbargain/error.hpp"
#include "netbargain/io.hpp"
#include "netbargain/market.hpp"
#include "netbargain/matching.hpp"
#include "netbargain/oracle.hpp"
#include "netbargain/rational.hpp"
#include "netbargain/report.hpp"
#include "netbargain/solution.hpp"
#include "netbargain/stable_payoffs.hpp"

#endif  // NETBARGAIN_NETBARGAIN_HPP
