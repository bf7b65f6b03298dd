"""Smoke test for the dholt_py extension."""

import dholt_py

PROBLEM = """\
thf(p_decl, type, p: $o).
thf(q_decl, type, q: $o).
thf(c, conjecture, ((p => q) => p) => p).
"""


def main():
    r = dholt_py.prove(PROBLEM, name="peirce", timeout=10.0)
    assert r["status"] == "Theorem", r
    dholt_py.validate(PROBLEM, r["trace"], name="peirce")

    entries = dholt_py.corpus()
    assert entries
    ex1 = next(e for e in entries if e[1] == "typecheck")
    assert dholt_py.tccs(ex1[3])
    assert "_star" in dholt_py.translate(ex1[3])

    for rules in ("native-only", "erasure-only", "staged", "unstaged"):
        assert dholt_py.prove(PROBLEM, rules=rules, timeout=10.0)["status"] == "Theorem"

    r = dholt_py.prove(ex1[3], name=ex1[0], typecheck="only", timeout=30.0)
    assert r["status"] == "TypeCheck", r

    try:
        dholt_py.prove("thf(c, conjecture, (p => ).", timeout=1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("syntax error not raised")
    print("smoke test ok:", len(entries), "corpus entries")


if __name__ == "__main__":
    main()
