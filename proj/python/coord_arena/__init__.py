# Copyright 2026 The Coord Arena Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Coordination benchmark engines, agents and evaluation harness."""

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from coord_arena._coord_arena import (
    ArenaError,
    BackendFailure,
    ConfigError,
    DegenerateInput,
    Env as _Env,
    IllegalAction,
    LengthMismatch,
    ParseFailure,
    _play,
    _qa_items,
    _qa_score,
    correlations,
    parse_action,
    parse_agent_spec,
)

__all__ = [
    "ArenaError", "BackendFailure", "ConfigError", "DegenerateInput", "IllegalAction", "LengthMismatch",
    "ParseFailure", "Env", "PlayConfig", "play", "play_csv", "qa_items", "qa_score", "correlations",
    "parse_action", "parse_agent_spec",
]


class Env(_Env):
    """A two-seat game environment; actions are addressed by label."""

    def view(self, player: int) -> dict:
        return json.loads(self._view(player))

    def step(self, labels: Dict[int, str]) -> List[dict]:
        return json.loads(self._step(labels))


@dataclass
class PlayConfig:
    game: str = "hanabi"
    layout: str = ""
    agent_a: str = "scripted:rule-hanabi"
    agent_b: str = "scripted:rule-hanabi"
    episodes: int = 3
    seed: int = 0
    horizon: int = 400
    swap_positions: bool = False
    tom: bool = True
    verify: bool = True
    include_partner_info: bool = True
    names: Sequence[str] = field(default_factory=list)
    workers: int = 1


def _run(config: PlayConfig, fmt: str) -> str:
    c = config
    return _play(c.game, c.layout, c.agent_a, c.agent_b, c.episodes, c.seed, c.horizon, c.swap_positions, c.tom,
                 c.verify, c.include_partner_info, list(c.names), c.workers, fmt)


def play(config: Optional[PlayConfig] = None, **kwargs) -> dict:
    """Runs a matchup; returns {"matchup": header, "episodes": [records]}."""
    config = config or PlayConfig(**kwargs)
    records = [json.loads(line) for line in _run(config, "jsonl").splitlines() if line.strip()]
    return {"matchup": records[0], "episodes": records[1:]}


def play_csv(config: Optional[PlayConfig] = None, **kwargs) -> str:
    return _run(config or PlayConfig(**kwargs), "csv")


def qa_items(scenarios: str = "") -> List[dict]:
    """Rendered multiple-choice items (bundled pack when `scenarios` is empty)."""
    return json.loads(_qa_items(scenarios))


def qa_score(responses: List[List[str]], trials: int, scenarios: str = "") -> dict:
    return json.loads(_qa_score(responses, trials, scenarios))
