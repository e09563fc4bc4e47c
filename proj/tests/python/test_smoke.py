import pytest

import ilprefine as ip


def grid(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, 1.0))
            if r + 1 < rows:
                edges.append((v, v + cols, 1.0))
    return ip.Graph(rows * cols, edges)


def test_metis_round_trip():
    g = ip.parse_metis("3 2\n2\n1 3\n2\n")
    assert (g.n, g.m) == (3, 2)
    again = ip.parse_metis(ip.to_metis(g))
    assert again.edges() == g.edges()


def test_partition_and_cut():
    g = ip.parse_metis("3 2\n2\n1 3\n2\n")
    p = ip.Partition(g, 2, 0.0, [0, 0, 1])
    assert p.cut == 1
    assert ip.l_max(g, 2, 0.0) == 2
    assert ip.is_balanced(g, p)
    assert ip.cut_value(g, [0, 1, 0]) == 2


def test_model_solve_project():
    g = grid(3, 3)
    p = ip.Partition(g, 2, 0.2, [0, 1, 0, 1, 0, 1, 0, 1, 0])
    model = ip.CoarseModel(g, p, list(range(9)))
    inst = ip.build_ilp(model, "Basic")
    assert inst.num_variables == g.m + 2 * (9 + 2)
    result = ip.solve(inst)
    assert result.status == "Optimal"
    assert result.objective == ip.solve_exhaustive(inst).objective
    projected = model.project(result.assignment)
    assert projected.cut == result.objective
    lp = inst.to_lp()
    assert lp.startswith("\\ balanced 2-way")
    assert "\nMinimize\n obj:" in lp
    assert "Subject To" in lp and "Binaries" in lp


def test_select_respects_budget():
    g = grid(6, 6)
    p = ip.bootstrap(g, 2, 0.03, seed=1)
    kept = ip.select(g, p, "gain:-1", budget=500)
    assert not kept.skipped
    model = ip.CoarseModel(g, p, kept.vertices)
    assert ip.build_ilp(model, "Basic").num_nonzeros <= 500


def test_refine_never_worse_and_deterministic():
    g = grid(8, 8)
    start = ip.bootstrap(g, 4, 0.03, seed=3)
    out1, rec1 = ip.refine(g, start, ["gain:-2"], budget=4000, node_limit=20000, seed=5)
    out2, rec2 = ip.refine(g, start, ["gain:-2"], budget=4000, node_limit=20000, seed=5)
    assert out1.assignment == out2.assignment
    assert out1.cut <= start.cut
    assert rec1["output_cut"] == out1.cut
    assert rec1["input_cut"] == start.cut
    assert ip.is_balanced(g, out1)


def test_evaluate_and_errors():
    g = grid(2, 2)
    report = ip.evaluate(g, [0, 0, 1, 1], 2)
    assert report["cut"] == 2
    assert [v["balanced"] for v in report["verdicts"]] == [True] * len(report["verdicts"])
    with pytest.raises(ip.Error, match="UnbalancedInput"):
        ip.refine(g, ip.Partition(g, 2, 0.0, [0, 0, 0, 1]))
