"""Quick check that the extension module loads and agrees with known values."""

from fractions import Fraction

import sigatlas


def main():
    r = sigatlas.OrderSet("2,3,5")
    assert r.characteristic() == Fraction(59, 30)
    assert r.classify() == ("elliptic", "icosahedron/dodecahedron")
    assert r.expected_group_order() == 60
    assert sigatlas.coset_count(r) == 60
    assert sigatlas.OrderSet([2, 3, "inf"]).orders == [2, 3, "inf"]
    assert sigatlas.OrderSet("inf,inf").classify() == ("parabolic", "strip")

    try:
        sigatlas.OrderSet("2,3")
    except ValueError:
        pass
    else:
        raise AssertionError("(2,3) should be rejected")

    assert len(sigatlas.enumerate_parabolic()) == 6

    a = sigatlas.Permutation.parse(3, "(0 1 2)")
    assert a.order() == 3 and (a * a * a).images == [0, 1, 2]

    klein = sigatlas.enumerate_coverings(sigatlas.OrderSet("2,3,7"), 7)
    reports = [sigatlas.monodromy_report(t, sigatlas.OrderSet("2,3,7")) for t in klein]
    assert any(rep["group_order"] == 168 and not rep["solvable"] for rep in reports)

    t = sigatlas.enumerate_coverings(sigatlas.OrderSet("2,3,4"), 4)[0]
    n = sigatlas.normalization(t)
    assert n[0].degree == 24

    assert sigatlas.affine_quotient(8) == "(6,3,2)"
    assert len(sigatlas.ritt_report(5)["entries"]) == 4

    res = sigatlas.poly_monodromy([8, 0, -8, 0, 1])
    assert sorted(res["realized_orders"]) == [2, 2, 4]

    assert sigatlas.tiling_report(sigatlas.OrderSet("2,3,3"))["tiles"] == 24
    assert "</svg>" in sigatlas.tiling_svg(sigatlas.OrderSet("2,2,3"))
    print("smoke test passed")


if __name__ == "__main__":
    main()
