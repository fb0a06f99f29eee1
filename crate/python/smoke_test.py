#!/usr/bin/env python3
"""Smoke test for the stablemod_py extension module.

Build and stage the module first:

    cargo build --release -p stablemod-py
    cp target/release/libstablemod_py.so python/stablemod_py.so

then run `python3 python/smoke_test.py`.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import stablemod_py as sm


def check(label, cond):
    print(f"{'ok  ' if cond else 'FAIL'} {label}")
    if not cond:
        sys.exit(1)


def main():
    ring = sm.Ring(2, 1, 6)
    check("ring basics", (ring.p, ring.e, ring.m, ring.n) == (2, 1, 6, 6))

    c2 = sm.Group.cyclic(2)
    check("cyclic group", c2.order == 2 and c2.num_generators == 1)
    v4 = sm.Group.product(c2, c2)
    check("product group", v4.order == 4)
    s3 = sm.Group.from_perms([[1, 2, 0], [1, 0, 2]])
    check("permutation group", s3.order == 6)

    triv = sm.Module.trivial(ring, c2)
    reg = sm.Module.regular(ring, c2)
    check("trivial module", triv.rank == 1 and triv.is_lattice)
    check("regular module", reg.rank == 2 and reg.is_weakly_injective())
    check("lattice exponent", triv.exponent() == 1)
    check("indecomposable", triv.is_indecomposable())

    # the worked cokernel example: alpha = [[1,3],[3,1]] on the regular module
    coker = sm.Module.from_matrices(ring, c2, 3, [[[5]]])
    check("cokernel action", coker.rank == 1 and coker.b == 3)
    check("kernel of R", sm.in_kernel_of_r(coker))
    check("not weakly injective", not coker.is_weakly_injective())

    # Heller lattice of k over C3: splits into ranks 1 and 2 (unramified)
    ring3 = sm.Ring(3, 1, 8)
    c3 = sm.Group.cyclic(3)
    k = sm.Module.trivial(ring3, c3).reduce(1)
    heller = k.heller_lattice()
    check("heller rank", heller.rank == 3)
    check("heller splitting", heller.decompose_ranks() == [1, 2])

    # R doubles the stable endomorphisms of k
    rk = sm.functor_r(k)
    check("functor R rank", rk.rank == 3)
    check("stable end of Rk", sm.stable_hom_factors(rk, rk) == [1, 1])

    # syzygy/cosyzygy of the trivial C3-lattice are dual to each other
    t3 = sm.Module.trivial(ring3, c3)
    om = t3.syzygy()
    check("syzygy rank", om.rank == 2)
    check("cosyzygy duality", t3.cosyzygy().is_isomorphic(om.dual()))

    # pullback middle term at level 1 splits mod pi
    b1 = sm.pullback_lattice(t3, 1)
    check("pullback rank", b1.rank == t3.rank + om.rank)
    check(
        "pullback splits mod pi",
        b1.reduce(1).is_isomorphic(t3.reduce(1).direct_sum(om.reduce(1))),
    )

    # jordan module over C5 and the Knorr test on a ramified Heller lattice
    ring5 = sm.Ring(5, 1, 5)
    c5 = sm.Group.cyclic(5)
    m2 = sm.Module.jordan(ring5, c5, 2)
    check("jordan module", m2.rank == 2 and m2.b == 1)
    ring32 = sm.Ring(3, 2, 4)
    t32 = sm.Module.trivial(ring32, c3)
    h32 = t32.reduce(1).heller_lattice()
    check("ramified heller indecomposable", h32.is_indecomposable())
    check("ramified trivial lattice knorr", t32.is_knorr() == (True, 2))

    # scenario runner round-trips through JSON
    rep = json.loads(sm.run_builtin("example-gtytg"))
    check(
        "builtin report",
        rep["name"] == "example-gtytg"
        and all(r["verdict"] == "CONFIRMED" for r in rep["reports"]),
    )

    scenario = {
        "name": "smoke",
        "ring": {"p": 2, "e": 1, "m": 6},
        "group": {"cyclic": 2},
        "modules": [{"name": "t", "op": "trivial"}],
        "checks": [{"check": "exponent", "module": "t", "expect": 1}],
        "seed": 7,
    }
    rep = json.loads(sm.run_scenario(json.dumps(scenario)))
    check("scenario report", all(r["verdict"] == "CONFIRMED" for r in rep["reports"]))

    print("smoke test passed")


if __name__ == "__main__":
    main()
