"""Smoke test for the onlineshare extension module.

Build and install first, e.g. `pip install --no-build-isolation ./crates/python`,
then run `python crates/python/python/smoke_test.py`.
"""

from fractions import Fraction
from pathlib import Path

import onlineshare


def main():
    veto = onlineshare.Game.simple(["A", "B", "C"], [["A", "B"], ["A", "C"]])
    assert onlineshare.shapley(veto) == {"A": Fraction(2, 3), "B": Fraction(1, 6), "C": Fraction(1, 6)}
    assert not veto.is_solvable()
    assert veto.unsolvable_witness()[0] == "A"
    failures = onlineshare.verify(veto, "rfc", ["i4ea"])
    assert "[B,A,C] (share 0) to [B,C,A] (share 1)" in failures["i4ea"]

    games = Path(__file__).resolve().parents[3] / "games"
    game = onlineshare.Game.from_json((games / "two-route.json").read_text())
    final = onlineshare.allocate(game, "evs", ["C", "A", "D", "B"])
    assert final == {"A": Fraction(2, 3), "B": Fraction(1, 3), "C": 0, "D": 0}
    trace = onlineshare.run(game, "wvs", ["C", "A", "B", "D"], weights=[1, Fraction(1, 2), "1/4", 0.125])
    assert [arrived for arrived, _ in trace] == ["C", "A", "B", "D"]
    assert sum(trace[-1][1].values()) == 1
    assert onlineshare.structure(game, ["C", "D", "A", "B"])["minimal_critical_prefix"] == ["C", "D", "A", "B"]
    assert all(v is None for v in onlineshare.verify(game, "evs", strict_i4ea=True).values())
    assert onlineshare.critical_support(game, "evs")
    evs, rfc = onlineshare.metrics(game, "evs"), onlineshare.metrics(game, "rfc")
    assert evs["expected_sd"] < rfc["expected_sd"]

    general = onlineshare.Game.from_json('{"players":["A","B"],"form":"table","table":{"A":2,"B":0,"A,B":5}}')
    assert [c for c, _, _ in onlineshare.decompose(general)] == [2, 3]
    assert onlineshare.allocate(general, "rfc", ["B", "A"]) == {"A": 2, "B": 3}

    try:
        onlineshare.allocate(game, "wvs", ["A", "B", "C", "D"])
    except ValueError:
        pass
    else:
        raise AssertionError("wvs without weights must be rejected")
    print("smoke test passed")


if __name__ == "__main__":
    main()
