// Copyright 2026 The minimax-bandit Authors.
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


#ifndef MINIMAX_BANDIT_MINIMAX_BANDIT_HPP_
#define MINIMAX_BANDIT_MINIMAX_BANDIT_HPP_

#include "minimax_bandit/capped_simplex.hpp"
#include "minimax_bandit/common.hpp"
#include "minimax_bandit/game_engine.hpp"
#include "minimax_bandit/harness.hpp"
#include "minimax_bandit/p_players.hpp"
#include "minimax_bandit/sampling.hpp"
#include "minimax_bandit/w_players.hpp"

#endif  // MINIMAX_BANDIT_MINIMAX_BANDIT_HPP_
