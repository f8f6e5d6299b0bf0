"""Smoke test for the twsched Python module.

Exercises one happy path through every exposed operation; the C++ test
suites carry the detailed coverage.  Run with the built module on
PYTHONPATH: python3 smoke_test.py
"""

import math

import twsched


def main() -> None:
    # window relations
    assert twsched.classify(0, 5, 0, 5) == ("equals", False)
    assert twsched.classify(6, 9, 0, 5) == ("before", True)
    assert twsched.classify(0, 5, 5, 8) == ("meets", False)
    assert twsched.classify(2, 4, 0, 9) == ("during", False)
    # open deadlines share their (infinite) closing time
    assert twsched.classify(0, math.inf, 3, math.inf) == ("finishes-with", False)
    try:
        twsched.classify(5, 2, 0, 1)
        raise AssertionError("backwards window was accepted")
    except ValueError:
        pass

    # balancing: longest first onto the least-loaded machine
    result = twsched.balance_allocate([10, 12, 13, 15, 20, 32, 40], 4)
    assert result["loads"] == [40.0, 32.0, 32.0, 38.0]
    assert result["makespan"] == 40.0
    assert len(result["place_of"]) == 7

    # the known gap between the procedure and the exhaustive optimum
    greedy = twsched.balance_allocate([3, 3, 2, 2, 2], 2)
    assert sorted(greedy["loads"]) == [5.0, 7.0]
    assert twsched.variance(greedy["loads"]) == 1.0
    oracle = twsched.brute_force_oracle([3, 3, 2, 2, 2], 2)
    assert oracle["min_variance"] == 0.0
    assert sorted(oracle["variance_witness"]["loads"]) == [6.0, 6.0]
    assert oracle["min_makespan"] == 6.0

    # task list round trip and grid layout: meeting tasks share a row
    text = "task A window=0,5 exec=5 rel=meets:B\ntask B window=5,9 exec=4 rel=meets:A\n"
    assert twsched.normalize_tasks(text) == text
    assert twsched.grid_dump(text, 8).strip() == "[0,5:A][5,9:B]"

    # experiment harness: full record set, stable CSV, reproducible
    table = twsched.run_experiment(arrival="fixed", n_lo=1, n_hi=3, replications=5, seed=9)
    assert len(table["records"]) == 4 * 3 * 5
    assert {row["policy"] for row in table["records"]} == {"ours", "random", "fifo", "greedy"}
    header = table["results_csv"].splitlines()[0]
    assert header == "policy,n,rep,seed,makespan,tcd,load1,load2,load3,load4"
    for aggregate in table["aggregates"]:
        assert aggregate["reps"] == 5
        assert aggregate["mean_makespan"] >= aggregate["mean_tcd"] >= 0.0
    again = twsched.run_experiment(arrival="fixed", n_lo=1, n_hi=3, replications=5, seed=9)
    assert again["results_csv"] == table["results_csv"]

    print("python bindings smoke test passed")


if __name__ == "__main__":
    main()
