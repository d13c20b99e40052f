"""Command-line front end.

Every subcommand builds a :class:`Outcome` (checks plus a payload) that is
rendered as text or as newline-delimited JSON records.  Exit codes::

    0  pass
    1  fail (a check failed, or an integrity/validation error)
    2  parse error (definition file, bindings or command line)
    3  capability refusal (operation not supported for this algebroid)
    4  resource limit exceeded (see --budget)
"""

import argparse
import json
import os
import random
import sys
from contextlib import nullcontext
from dataclasses import dataclass, field

from . import __version__
from .comodule import check_comodule, invariants
from .errors import CapabilityError, ComodError, ParseError, ResourceLimitError
from .fixtures import DESCRIPTIONS, FIXTURES, fixture_text, load_fixture
from .groebner import budget as budget_scope
from .hopf import check_hopf_algebroid
from .report import Report
from .serialize import load, load_file

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_CAPABILITY, EXIT_RESOURCE = 0, 1, 2, 3, 4

COMMANDS = ("check-algebroid", "check-comodule", "tensor", "chom", "adjunction", "dualizable", "invariants",
            "resolution-witness", "cobar-ext", "complex-homology", "fixtures", "oracle-compare")


@dataclass
class Outcome:
    report: Report = field(default_factory=Report)
    payload: dict = field(default_factory=dict)


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def build_parser():
    p = _Parser(prog="comodcat", description="Exact computations with comodules over Hopf algebroids.")
    p.add_argument("--version", action="version", version=f"comodcat {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", action="append", default=[], metavar="FILE|NAME=VALUE",
                   help="a definition file, or a binding of a role to a comodule/complex name "
                        "(repeatable; lists are comma-separated)")
    p.add_argument("--fixture", choices=FIXTURES)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--count", type=int, default=100, help="instances for oracle-compare")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--budget", type=int, default=None, help="maximum reduction steps")
    p.add_argument("--seed", type=int, default=0)
    return p


# resolving inputs

@dataclass
class Context:
    definition: object
    bindings: dict
    rng: random.Random
    args: argparse.Namespace

    @property
    def algebroid(self):
        return self.definition.algebroid

    def comodule(self, role, default=None):
        name = self.bindings.get(role, default)
        if name is None:
            raise ParseError(f"missing binding {role}=<comodule>")
        return self._lookup(name)

    def comodules(self, role, default):
        names = self.bindings.get(role)
        if names is None:
            return default
        return [self._lookup(n) for n in names.split(",") if n]

    def _lookup(self, name):
        try:
            return self.definition.comodules[name]
        except KeyError:
            known = ", ".join(self.definition.comodules)
            raise ParseError(f"unknown comodule {name!r} (defined: {known})") from None


def _context(args):
    files, bindings = [], {}
    for item in args.input:
        if "=" in item and not os.path.exists(item):
            role, value = item.split("=", 1)
            if not role or not value:
                raise ParseError(f"malformed binding {item!r}")
            bindings[role.strip()] = value.strip()
        else:
            files.append(item)
    sources = len(files) + (args.fixture is not None)
    if sources > 1:
        raise ParseError("give exactly one of --fixture or a definition file")
    definition = None
    if args.fixture:
        # parsed afresh so every run does the same work under the same budget
        definition = load(fixture_text(args.fixture))
    elif files:
        try:
            definition = load_file(files[0])
        except OSError as exc:
            raise ParseError(f"cannot read {files[0]}: {exc.strerror}") from None
    return Context(definition, bindings, random.Random(args.seed), args)


def _need_definition(ctx):
    if ctx.definition is None:
        raise ParseError("this command needs --fixture or a definition file")


def _matrix(m):
    return [[str(x) for x in row] for row in m.rows]


# subcommands

def cmd_check_algebroid(ctx):
    _need_definition(ctx)
    H = ctx.algebroid
    out = Outcome(check_hopf_algebroid(H))
    out.payload.update(algebroid=str(H), flatness=str(H.flatness))
    if H.is_free_finite:
        out.payload["left basis"] = [str(b) for b in H.left_basis]
    return out


def cmd_check_comodule(ctx):
    _need_definition(ctx)
    rep = Report("comodules")
    if "M" in ctx.bindings:
        targets = {ctx.bindings["M"]: ctx.comodule("M")}
    else:
        targets = ctx.definition.comodules
    kdims = {}
    for name, M in targets.items():
        rep.extend(check_comodule(M), f"{name}: ")
        kdims[name] = M.kdim()
    if "M" not in ctx.bindings:
        for name, C in ctx.definition.complexes.items():
            rep.extend(C.check(), f"complex {name}: ")
    return Outcome(rep, {"k-dimensions": kdims})


def cmd_tensor(ctx):
    from .monoidal import ctensor, left_unitor, right_unitor, symmetry
    _need_definition(ctx)
    M, N = ctx.comodule("M"), ctx.comodule("N")
    T = ctensor(M, N)
    rep = Report("tensor")
    rep.extend(check_comodule(T), "M⊗N ")
    rep.add("left unitor invertible", left_unitor(T).verify().passed)
    rep.add("right unitor invertible", right_unitor(T).verify().passed)
    rep.add("symmetry invertible", symmetry(M, N).verify().passed)
    return Outcome(rep, {"generators": T.ngens, "k-dimension": T.kdim(), "coaction": _matrix(T.coaction)})


def cmd_chom(ctx):
    from .monoidal import chom, invariants_of_chom_bijection, unit_chom_witness
    _need_definition(ctx)
    M = ctx.comodule("M", "unit")
    N = ctx.comodule("N")
    ih = chom(M, N)
    X = ih.comodule
    rep = Report("chom")
    rep.extend(check_comodule(X), "chom(M,N) ")
    rep.extend(invariants_of_chom_bijection(M, N), "invariants bijection: ")
    if M is ctx.definition.comodules["unit"]:
        rep.add("chom(unit,N) ≅ N", unit_chom_witness(N).verify().passed)
    inv = invariants(N)
    payload = {
        "method": ih.method,
        f"dim U(chom({ctx.bindings.get('M', 'unit')},N))": X.kdim(),
        "dim invariants(N)": inv.dim,
        "generators": X.ngens,
    }
    return Outcome(rep, payload)


def cmd_adjunction(ctx):
    from .monoidal import adjunction_report, internal_adjunction_witness
    _need_definition(ctx)
    P = ctx.comodule("P", "unit")
    M, N = ctx.comodule("M"), ctx.comodule("N")
    rep = Report("adjunction")
    rep.extend(adjunction_report(P, M, N, rng=ctx.rng))
    rep.add("internal adjunction witness", internal_adjunction_witness(P, M, N).verify().passed)
    return Outcome(rep, {})


def cmd_dualizable(ctx):
    from .fpmodule import projectivity_certificate
    from .monoidal import dualizability
    _need_definition(ctx)
    M = ctx.comodule("M")
    testers = ctx.comodules("testers", list(ctx.definition.comodules.values()))
    cert = dualizability(M, testers)
    payload = {"dual generators": cert.dual.ngens, "testers": [str(t) for t in testers],
               "projective": projectivity_certificate(M.module) is not None}
    return Outcome(cert.report, payload)


def cmd_invariants(ctx):
    _need_definition(ctx)
    N = ctx.comodule("N")
    inv = invariants(N)
    rep = Report("invariants")
    rep.add("basis vectors are invariant",
            all(inv.to_map(v).is_equivariant() for v in inv.basis))
    return Outcome(rep, {"dimension": inv.dim, "basis": [[str(x) for x in v] for v in inv.basis]})


def cmd_resolution_witness(ctx):
    from .monoidal import resolution_witness
    _need_definition(ctx)
    M = ctx.comodule("M")
    family = ctx.comodules("family", [c for n, c in ctx.definition.comodules.items() if n != "unit"])
    w = resolution_witness(family, M)
    payload = {"found": w.found}
    if w.map is not None:
        payload["map"] = _matrix(w.map.matrix)
    return Outcome(w.report, payload)


def cmd_cobar_ext(ctx):
    from .complexes import cobar, ext_dims
    _need_definition(ctx)
    M = ctx.comodule("M", "unit")
    depth = ctx.args.depth
    rep = Report("cobar")
    data = cobar(M, depth)
    rep.extend(data.report())
    for n, T in enumerate(data.terms):
        rep.add(f"cobar term {n} is a comodule", check_comodule(T).passed)
    dims = ext_dims(M, depth)
    return Outcome(rep, {"ext dims": dims})


def cmd_complex_homology(ctx):
    from .complexes import homology_dims
    _need_definition(ctx)
    names = ctx.bindings.get("C")
    complexes = ctx.definition.complexes
    chosen = names.split(",") if names else list(complexes)
    rep = Report("complex homology")
    payload = {}
    for name in chosen:
        if name not in complexes:
            raise ParseError(f"unknown complex {name!r}")
        C = complexes[name]
        rep.extend(C.check(), f"{name}: ")
        payload[name] = {str(n): d for n, d in homology_dims(C).items()}
    return Outcome(rep, payload)


def cmd_fixtures(ctx):
    payload = {}
    for name in FIXTURES:
        d = load_fixture(name)
        payload[name] = {"description": DESCRIPTIONS[name], "comodules": list(d.comodules),
                         "complexes": list(d.complexes)}
    return Outcome(Report("fixtures"), payload)


def cmd_oracle_compare(ctx):
    from .graded import oracle_suite
    summary, _ = oracle_suite(ctx.args.count, ctx.args.seed)
    return Outcome(summary, {"instances": ctx.args.count})


HANDLERS = {
    "check-algebroid": cmd_check_algebroid, "check-comodule": cmd_check_comodule, "tensor": cmd_tensor,
    "chom": cmd_chom, "adjunction": cmd_adjunction, "dualizable": cmd_dualizable,
    "invariants": cmd_invariants, "resolution-witness": cmd_resolution_witness,
    "cobar-ext": cmd_cobar_ext, "complex-homology": cmd_complex_homology, "fixtures": cmd_fixtures,
    "oracle-compare": cmd_oracle_compare,
}


# rendering

def _records(argv, args, status, outcome, message):
    yield {"record": "header", "command": list(argv), "seed": args.seed if args else 0,
           "budget": args.budget if args else None}
    if outcome is not None:
        for c in sorted(outcome.report.checks, key=lambda c: c.name):
            yield {"record": "check", "name": c.name, "passed": c.passed, "required": c.required,
                   "witness": None if c.witness is None else str(c.witness)}
        for k in sorted(outcome.payload):
            yield {"record": "payload", "key": k, "value": outcome.payload[k]}
    yield {"record": "status", "status": status, "message": message}


def _render_text(records):
    lines = []
    for r in records:
        kind = r["record"]
        if kind == "header":
            lines.append("command: comodcat " + " ".join(r["command"]))
            lines.append(f"seed: {r['seed']}  budget: {r['budget'] if r['budget'] is not None else 'default'}")
        elif kind == "check":
            mark = "pass" if r["passed"] else ("FAIL" if r["required"] else "no (optional)")
            extra = f"  ({r['witness']})" if r["witness"] is not None else ""
            lines.append(f"{mark}  {r['name']}{extra}")
        elif kind == "payload":
            lines.append(f"{r['key']} = {json.dumps(r['value'], sort_keys=True, ensure_ascii=False)}")
        else:
            lines.append(f"status: {r['status']}" + (f"  ({r['message']})" if r["message"] else ""))
    return "\n".join(lines) + "\n"


def run(argv):
    """Run the CLI on ``argv``; returns ``(output_text, exit_code)``."""
    argv = list(argv)
    args, outcome, message = None, None, None
    try:
        args = build_parser().parse_args(argv)
        with budget_scope(args.budget) if args.budget is not None else nullcontext():
            outcome = HANDLERS[args.command](_context(args))
        status, code = ("pass", EXIT_PASS) if outcome.report.passed else ("fail", EXIT_FAIL)
    except _ArgumentError as exc:
        status, code, message = "parse-error", EXIT_PARSE, str(exc)
    except ParseError as exc:
        status, code, message = "parse-error", EXIT_PARSE, str(exc)
    except CapabilityError as exc:
        status, code, message = "capability-refused", EXIT_CAPABILITY, str(exc)
    except ResourceLimitError as exc:
        status, code, message = "resource-limit", EXIT_RESOURCE, str(exc)
    except ComodError as exc:
        status, code, message = "fail", EXIT_FAIL, f"{type(exc).__name__}: {exc}"
    records = list(_records(argv, args, status, outcome, message))
    if args is not None and args.format == "json":
        text = "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in records)
    else:
        text = _render_text(records)
    return text, code


def main(argv=None):
    text, code = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
