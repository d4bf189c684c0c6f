"""Smoke test for the magicstar extension module."""

import magicstar


def main():
    counts = {f: len(magicstar.RootSystem(f, 1)) for f in ("e8", "e7", "e6", "f4", "g2")}
    assert counts == {"e8": 240, "e7": 126, "e6": 72, "f4": 48, "g2": 12}, counts
    assert len(magicstar.RootSystem("e8", 2)) == 2312

    e8 = magicstar.RootSystem("e8", 1)
    star = e8.star()
    assert len(star) == 13
    assert (star[(0, 0)]["orth"], star[(0, 0)]["spin"]) == (40, 32)
    assert e8.star_svg().count("<circle") == 13

    alg = magicstar.Algebra("e6", 1)
    assert (alg.dim, alg.rank) == (78, 6)
    sys = alg.root_system()
    a = next(i for i in range(len(sys)) if sys.sector(i) == "orthogonal")
    minus = sys.index_of([-c for c in sys.root(a)])
    x, y = alg.root_at(a), alg.root_at(minus)
    h = alg.bracket(x, y)
    assert not h.is_zero() and all(label.startswith("h") for label, _ in h.terms())
    assert alg.bracket(x, y) == -alg.bracket(y, x)
    assert alg.jacobiator(x, y, alg.cartan(0)).is_zero()

    big = magicstar.Algebra("e8", 2)
    spin = next(i for i in range(len(big.root_system())) if big.root_system().sector(i) == "spinorial")
    w = big.jacobi_witness(spin)
    assert w["is_expected"] and not w["value"].is_zero(), w

    reports = magicstar.verify("e8", 1, "tables,nested,grading")
    assert all(ok for _, ok, _ in reports), reports

    try:
        magicstar.Algebra("f4", 1)
    except ValueError as e:
        assert "out of scope" in str(e)
    else:
        raise AssertionError("f4 algebra accepted")

    print("smoke test ok:", counts, w["value"])


if __name__ == "__main__":
    main()
