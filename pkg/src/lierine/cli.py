"""Command-line front end: ``lierine <subcommand> --manifest <path> [--json] [--regime R]``.

Exit status is 0 when every verdict passes, 1 when some verdict fails and 2
for malformed input (bad manifest, unknown module, invalid regime).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .chern import chern_character, verify_closed_form
from .cohomology import Regime, Status, betti_numbers, find_primitive, flatten
from .connections import ad_connection, curvature, curvature_by_commutator, is_flat
from .errors import LierineError
from .forms import ScalarAction, differential
from .homotopy import verify_evaluation_identities
from .k0ring import ConnectionRegistry, chern_on_k0, parse_k0_expression
from .manifest import Manifest, parse_manifest

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class Report:
    subcommand: str
    digest: str
    arguments: dict
    results: dict = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_FAIL

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "manifest_sha256": self.digest,
            "arguments": self.arguments,
            "results": self.results,
            "verdicts": self.verdicts,
            "passed": self.passed,
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"lierine {self.subcommand}: {'PASS' if self.passed else 'FAIL'}"]
        for key, value in self.results.items():
            lines.append(f"  {key}: {json.dumps(value, ensure_ascii=False)}")
        for name, ok in self.verdicts.items():
            lines.append(f"  [{'ok' if ok else 'FAILED'}] {name}")
        return "\n".join(lines) + "\n"


def _default_regime(m: Manifest) -> Regime:
    return Regime.finite() if m.ring.is_finite else Regime.degree(3)


def run_check(m: Manifest, args) -> Report:
    rep = Report("check", m.digest(), {})
    axioms = m.algebra.verify_axioms()
    rep.results["axioms"] = axioms.to_dict()
    # flatness is a property of each module, not a requirement
    rep.results["modules"] = {name: {"rank": c.rank, "flat": is_flat(c)} for name, c in m.modules.items()}
    rep.verdicts["axioms"] = axioms.passed
    return rep


def run_curvature(m: Manifest, args) -> Report:
    c = m.module(args.module)
    rep = Report("curvature", m.digest(), {"module": args.module})
    R = curvature(c)
    rep.results["curvature"] = R.to_entries()
    rep.results["flat"] = R.is_zero()
    rep.verdicts["commutator_formula_agrees"] = curvature_by_commutator(c) == R
    rep.verdicts["bianchi"] = differential(R, ad_connection(c)).is_zero()
    return rep


def run_chern(m: Manifest, args) -> Report:
    c = m.module(args.module)
    rep = Report("chern", m.digest(), {"module": args.module})
    ch = chern_character(c)
    closed = verify_closed_form(ch)
    rep.results["chern"] = ch.to_dict()
    rep.results["closedness"] = closed.to_dict()
    rep.verdicts["closed"] = closed.passed
    return rep


def run_cohomology(m: Manifest, args) -> Report:
    regime = Regime.parse(args.regime) if args.regime else _default_regime(m)
    action = m.module(args.module).module_action() if args.module else ScalarAction(m.algebra)
    rep = Report("cohomology", m.digest(), {"module": args.module, "regime": str(regime)})
    if regime.mode == "finite":
        rep.results["cohomology"] = betti_numbers(m.algebra, action, regime).to_dict()
        return rep
    # degree-bounded: truncated cochain spaces are not a complex, so no Betti numbers
    dims = [flatten(m.algebra, p, action.kind, regime, action.rank).dim for p in range(m.algebra.rank + 1)]
    rep.results["cohomology"] = {"regime": str(regime), "dims": dims, "betti": None}
    return rep


def run_compare(m: Manifest, args) -> Report:
    c0, c1 = m.module(args.module_a), m.module(args.module_b)
    regime = Regime.parse(args.regime) if args.regime else _default_regime(m)
    rep = Report("compare", m.digest(), {"modules": [args.module_a, args.module_b], "regime": str(regime)})
    homotopy = verify_evaluation_identities(c0, c1)
    rep.results["homotopy"] = homotopy.to_dict()
    rep.verdicts["evaluation_identities"] = homotopy.passed
    ch0, ch1 = chern_character(c0), chern_character(c1)
    prims = []
    for n in sorted(ch0.components):
        if n == 0:
            continue
        result = find_primitive(ch0[n] - ch1[n], ScalarAction(m.algebra), regime)
        prims.append({"n": n, "degree": 2 * n, **result.to_dict()})
        rep.verdicts[f"ch{n}_difference_exact"] = result.status is Status.FOUND
    rep.results["primitives"] = prims
    return rep


def run_k0(m: Manifest, args) -> Report:
    reg = ConnectionRegistry(m.algebra)
    for c in m.modules.values():
        reg.register(c)
    rep = Report("k0", m.digest(), {"expression": args.expression})
    element = parse_k0_expression(args.expression, reg)
    ch = chern_on_k0(element)
    closed = verify_closed_form(ch)
    rep.results["element"] = element.to_dict()
    rep.results["chern"] = ch.to_dict()
    rep.results["closedness"] = closed.to_dict()
    rep.verdicts["closed"] = closed.passed
    return rep


COMMANDS = {
    "check": run_check,
    "curvature": run_curvature,
    "chern": run_chern,
    "cohomology": run_cohomology,
    "compare": run_compare,
    "k0": run_k0,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", required=True, help="path to a JSON manifest")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--regime", help="'finite' or 'degree:D'")

    parser = argparse.ArgumentParser(prog="lierine", description="Chern character of Lie-Rinehart algebras")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="verify the Lie-Rinehart axioms")
    p = sub.add_parser("curvature", parents=[common], help="curvature of a module")
    p.add_argument("module")
    p = sub.add_parser("chern", parents=[common], help="Chern character and closedness")
    p.add_argument("module")
    p = sub.add_parser("cohomology", parents=[common], help="cochain dimensions and Betti numbers")
    p.add_argument("--module", help="flat module to take coefficients in (default: A)")
    p = sub.add_parser("compare", parents=[common], help="homotopy identities and Chern primitives")
    p.add_argument("module_a")
    p.add_argument("module_b")
    p = sub.add_parser("k0", parents=[common], help="Chern character of a K0 expression")
    p.add_argument("expression")
    return parser


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv``, run the subcommand and return ``(exit code, rendered report)``."""
    args = build_parser().parse_args(argv)
    manifest = parse_manifest(args.manifest)
    report = COMMANDS[args.command](manifest, args)
    return report.exit_code, report.to_json() if args.json else report.to_text()


def main(argv=None) -> int:
    try:
        code, out = run(argv)
    except LierineError as exc:
        print(f"lierine: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RecursionError:
        print("lierine: error: input too deeply nested", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
