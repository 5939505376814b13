"""Smoke test for the ringlab extension module. Run after `pip install -e crates/python`."""

import json

import ringlab


def main():
    k3 = ringlab.Graph.named("K3")
    assert k3.n == 3 and len(k3.edges) == 3
    assert k3.complement().edges == []
    w = k3.whisker()
    assert w.n == 6
    assert ringlab.Graph.parse(w.to_edge_list()).edges == w.edges

    sigma = ringlab.Ring.named("sigma(K2)")
    inv = sigma.invariants()
    assert inv["dim"] == 2 and inv["cm"], inv
    assert ringlab.Ring.from_json(sigma.to_json()).gens == sigma.gens

    p3 = ringlab.Graph.named("P3")
    a = ringlab.Ring.named("kprime", graph=p3).truncate(4)
    assert a.is_full_artinian()
    assert a.canonical_module().is_semidualizing(4)

    ex45 = ringlab.Ring.named("ex45", field="fp:5").truncate(4)
    assert ex45.dim == 7
    assert ex45.decomposition_search() is not None

    r = ringlab.Ring.named("ex54R").truncate(3)
    k = r.residue_field()
    assert k.betti(3)[0] == 1
    m = r.cyclic_module(["z"])
    assert m.betti(4) == [1, 1, 1, 1, 1]
    assert m.is_totally_reflexive(4)
    assert m.ext(k, 2) == m.betti(3)[2]

    reports = ringlab.run_verify("ex311")
    assert reports and all(rep["passed"] for rep in reports), json.dumps(reports)
    print("smoke test passed:", len(reports), "ex311 checks")


if __name__ == "__main__":
    main()
