"""Smoke test for the compiled `rbacs` extension module."""

import rbacs


def main():
    inst = rbacs.TspInstance.bundled("eil51")
    assert inst.n == 51 and len(inst) == 51
    assert inst.nearest_neighbor().length == 511
    assert rbacs.known_optimum("eil51") == 426

    a = rbacs.solve_rbacs(inst, seed=3, budget=50)
    b = rbacs.solve_rbacs(inst, seed=3, budget=50, concurrent=False)
    assert a.best.order == b.best.order
    rbacs.validate_tour(a.best.order, inst.n)
    assert inst.tour_length(a.best.order) == a.length
    assert len(a.trace) == 50
    assert a.trace_csv().splitlines()[0] == "iteration,black_best,red_best,global_best"

    acs = rbacs.solve_acs(inst, seed=3, budget=50)
    assert all(row[2] is None for row in acs.trace)

    tri = rbacs.TspInstance.from_coords("tri", [(0, 0), (3, 0), (0, 4)])
    assert tri.brute_force().length == 12

    summary = rbacs.bench(inst, algorithm="acs", trials=3, seed=1, budget=30)
    assert summary.trials == 3 and summary.min <= summary.mean <= summary.max
    print(summary.table(426))

    try:
        rbacs.validate_tour([0, 0, 1], 3)
    except ValueError:
        pass
    else:
        raise AssertionError("duplicate city accepted")

    try:
        rbacs.TspInstance.from_text("garbage")
    except ValueError:
        pass
    else:
        raise AssertionError("garbage parsed")

    print("smoke test ok")


if __name__ == "__main__":
    main()
