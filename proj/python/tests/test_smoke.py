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

import math

import pytest

import coord_arena as ca


def test_env_round_trip_hanabi():
    env = ca.Env("hanabi", seed=3)
    assert env.game == "hanabi"
    assert env.players_to_act() == [0]
    legal = env.legal_actions(0)
    assert "Play my Card 0" in legal
    assert "Alice" in env.observation(0)
    events = env.step({0: legal[0]})
    assert events and events[0]["player"] == 0
    assert env.players_to_act() == [1]
    view = env.view(0)
    assert "hands" not in view["hanabi"]


def test_illegal_label_raises():
    env = ca.Env("capture", layout="grid_3x3")
    with pytest.raises(ca.IllegalAction):
        env.step({0: "Teleport", 1: "Stay in current Room"})
    with pytest.raises(ca.ConfigError):
        ca.Env("chess")


def test_kitchen_greedy_play_is_deterministic():
    cfg = ca.PlayConfig(game="kitchen", agent_a="scripted:greedy-kitchen", agent_b="scripted:greedy-kitchen",
                        episodes=2, horizon=100, swap_positions=True)
    report = ca.play(cfg)
    assert report["matchup"]["game"] == "kitchen"
    episodes = report["episodes"]
    assert len(episodes) == 4
    assert all(r["score"] % 20 == 0 for r in episodes)
    assert ca.play_csv(cfg) == ca.play_csv(cfg)


def test_qa_items_and_random_scoring():
    items = ca.qa_items()
    assert len(items) == 45
    assert {i["category"] for i in items} == {"EC", "ToM", "JP"}
    gold = [[chr(ord("A") + i["gold"])] for i in items]
    score = ca.qa_score(gold, 1)
    assert all(c["mean"] == 1.0 for c in score.values())
    with pytest.raises(ca.LengthMismatch):
        ca.qa_score(gold[:-1], 1)


def test_correlations_and_parsing():
    p, s = ca.correlations([1, 2, 3, 4], [2, 4, 6, 8])
    assert math.isclose(p, 1.0) and math.isclose(s, 1.0)
    with pytest.raises(ca.DegenerateInput):
        ca.correlations([1, 1, 1], [1, 2, 3])
    legal = ["place onion in c0.", "wait."]
    assert ca.parse_action("Action: place onion in c0", legal) == "place onion in c0."
    with pytest.raises(ca.ParseFailure):
        ca.parse_action("Action: fly to the moon", legal)
    with pytest.raises(ca.ConfigError):
        ca.parse_agent_spec("bogus")
