"""Replay the bundled constructions and write traces and diagnostics to a directory.

    python scripts/run_constructions.py --out runs/
"""

import argparse
from pathlib import Path

from eeq import constructions as cons
from eeq import core_rel as cr
from eeq.core_rel import IdAll, IdN
from eeq.formats import format_trace
from eeq.funlang import Add, Const, Id, Pair


def _write(out: Path, name: str, diag: cons.Diagnostics, trace=None):
    (out / f"{name}.diagnostics.txt").write_text("\n".join(diag.lines()) + "\n")
    if trace is not None:
        (out / f"{name}.trace.txt").write_text(format_trace(trace))
    print(f"{name:<14} {'pass' if diag.ok else 'FAIL'}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("runs"))
    ap.add_argument("--n", type=int, default=64)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    fam = cons.bundled_family()
    res = cons.counter_pi1_machine(fam, fam.horizon, args.n)
    _write(args.out, "counter-pi1", res.diagnostics, res.trace)
    # how the class of 0 grows as stages pass
    for s in sorted({0, *(ev.stage for ev in res.trace.events)}):
        zero = cr.approximant(res.Z, s, args.n).classes()[0]
        print(f"    stage {s:>3}: [0]_Z = {{{','.join(map(str, zero))}}}")

    k = cons.bundled_kbar()
    epi = cons.epi_not_onto_example(k, k.horizon, args.n)
    _write(args.out, "epi-not-onto", epi.diagnostics, epi.trace)

    for h_name, h in (("parity", Pair(Id(), Add(Id(), Const(2)))), ("reflexive", Pair(Id(), Id()))):
        ceer = cons.ceer_as_coequalizer(h, 64, 32)
        diag = cons.Diagnostics(f"ceer-{h_name}")
        diag.fact("classes", cr.classes_count(ceer.Z, 64, 32))
        diag.check("roundtrip", ceer.roundtrip)
        _write(args.out, f"ceer-{h_name}", diag)

    for x_name, X in (("id", IdAll()), ("idn3", IdN(3))):
        _write(args.out, f"remark-{x_name}", cons.remark_demo(X, 64, args.n))
    _write(args.out, "darkstar", cons.darkstar_closure_demo(IdN(3), IdAll(), Id(), 32, args.n))


if __name__ == "__main__":
    main()
