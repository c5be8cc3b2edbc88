"""Smoke test for the pydflow extension; run after `maturin develop`."""

import pydflow


def main():
    assert len(pydflow.corpus_names()) == 8

    g = pydflow.corpus_graph("fig4", 3)
    assert (g.vertex_count, g.edge_count, g.genus) == (6, 9, 2)
    assert pydflow.count_flows(g, "D2n:4") == 576
    assert pydflow.count_flows(g, "Dlt:4") == 512

    again = pydflow.Graph.from_text(g.to_text())
    assert again.rotations == g.rotations

    p = pydflow.corpus_graph("petersen3t")
    (f,) = pydflow.corpus_flows("petersen3t")
    assert f.ctx == "Dlt:3"
    assert pydflow.verify(p, f) == (True, True)
    name, back = pydflow.Flow.from_text(f.to_text("p"))
    assert name == "p" and back == f

    fig1 = pydflow.corpus_graph("fig1")
    holds, odd = pydflow.obstruction(fig1)
    assert holds and odd == [0, 1, 2]
    assert pydflow.exists_bounded(fig1, 3)[0] == "no"
    assert pydflow.exists_d2n(fig1, 3)[0] == "yes"

    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    colors = pydflow.three_edge_coloring(4, k4)
    emb, flow = pydflow.coloring_flow(4, k4, colors)
    assert pydflow.verify(emb, flow) == (True, True)
    assert pydflow.flow_coloring(emb, flow) == colors
    assert len(pydflow.rotation_systems(4, k4)) == 16

    # (-,1)(+,2) = (-,1-2) = (-,4) mod 5
    assert pydflow.multiply("-1", "+2", "D2n:5") == "-4"

    theta = pydflow.corpus_graph("theta")
    assert pydflow.find_flow(theta, "Dlt:2") is None
    try:
        pydflow.count_flows(pydflow.corpus_graph("petersen2t"), "D2n:5", budget=10)
    except pydflow.ComplexityGuard:
        pass
    else:
        raise AssertionError("budget was not enforced")

    print("pydflow smoke test ok")


if __name__ == "__main__":
    main()
