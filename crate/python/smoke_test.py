"""Smoke test for the qlsa_py extension.

Build and install first:
    pip install --no-build-isolation ./crates/python
"""

import qlsa_py


def main():
    g = qlsa_py.Gl2n1(3)
    nf = g.normal_form("Q[1] Qbar[1]")
    assert nf == "c - E[2,2] - 2*E[3,3] + E[2,2] E[3,3] - E[2,3] E[3,2] - Qbar[1] Q[1]", nf
    assert g.bracket("E[1,2]", "E[2,1]") == "E[1,1] - E[2,2]"

    g2 = qlsa_py.Gl2n1(2, "0")
    assert g2.bracket("Qbar[1]", "Q[2]") == "E[1,2]"

    p = g.presentation()
    assert (p.n, p.m) == (9, 6)
    assert p.check_jacobi() == (True, True)
    back = qlsa_py.Presentation.from_text(qlsa_py.Gl2n1(3, "5/2").presentation().to_text())
    assert back.check_jacobi() == (True, True)
    assert back.normal_form("y[4] y[1]").endswith("y[1] y[4]")

    table = qlsa_py.zero_step_table(10)
    assert (3, 2, 1, "2") in table
    assert len(table) == 14

    assert qlsa_py.fock_factor(4) == "-3/2"
    assert dict(qlsa_py.fock_spectrum(4, 2)) == {"1": 20, "4": 4}

    assert (2, 3, 1, 2) in qlsa_py.one_step_scan(3, -2, 7)
    assert qlsa_py.one_step_scan(3, -2, 7, quoted=True) == []

    print("smoke test ok")


if __name__ == "__main__":
    main()
