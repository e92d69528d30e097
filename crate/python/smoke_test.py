"""Smoke test for the kummerlog_py extension module."""

import kummerlog_py as k


def main():
    base = k.Base("Q(sqrt -5)", "(2,1+w)")
    c = base.divisor_class("1/2*(2,1+w)")
    assert c.order == 4, c.order
    assert c.nu == "1/2*(2, 1+w)", c.nu
    assert (4 * c).is_trivial()
    assert c + (-c) == base.divisor_class("0")

    z5 = k.Base("Z", "(5)")
    for n in range(1, 13):
        assert z5.divisor_class(f"1/{n}*(5)").order == n

    g = z5.kummer_log_group(2)
    assert g.order == g.open_order == 4
    assert g.orders_agree()

    e = k.EllipticCurve("[0,-1,1,-10,-20]")
    (r,) = e.reductions()
    assert (r.prime, r.kodaira, r.component_group) == ("(11)", "I5", [5])
    assert r.pairing_table()[1][2] == "2/5"
    assert e.order("(5,5)") == 5

    v = e.log_class_pairing("(5,5)", "(5,5)")
    assert v.nu == "1/5*(11)", v.nu
    assert e.monodromy_profile("(5,5)", "(5,5)") == {"(11)": "1/5"}
    assert (v.order * v.log_class).is_trivial()

    try:
        k.EllipticCurve("[0,0,0,0,0]")
    except k.InvalidInputError:
        pass
    else:
        raise AssertionError("singular curve accepted")
    try:
        base.divisor_class("1/2*(2,1+w")
    except k.ParseError:
        pass
    else:
        raise AssertionError("malformed divisor accepted")
    try:
        k.EllipticCurve("[0,0,1,-1,0]").log_class_pairing("(0,0)", "(0,0)")
    except k.UnsupportedError:
        pass
    else:
        raise AssertionError("non-torsion y accepted")
    print("kummerlog_py smoke test: ok")


if __name__ == "__main__":
    main()
