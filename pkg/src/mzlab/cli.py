"""Command-line front end: JSON requests in, canonical JSON or text reports out.

A request names the field, the map, an optional ideal and the command::

    {"p": 3, "map": {"kind": "derivation", "f": [0, 0, 1]}, "command": "classify"}

Polynomials are ascending coefficient lists with entries in [0, p);
multivariate ones are lists of ``[exponent_vector, coefficient]`` terms.

Exit codes: 0 success, 1 invalid input, 2 cap exceeded or Unknown verdict,
3 internal invariant violation (including a failed selftest).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from typing import Any

from . import acceptance
from .classify import (Decision, MembershipMode, Verdict, Witness, classify_ideal_derivation,
                       classify_ideal_ederivation, classify_image_derivation,
                       classify_image_ederivation, classify_triangular)
from .errors import CapExceeded, InvariantViolation, MzlabError, ParseError, ShapeError
from .field import is_prime
from .maps import EDerivation, MapSpec, TriangularDerivation, UnivariateDerivation
from .nilpotency import (DEFAULT_ITERATION_CAP, LfStatus, LnStatus, coeff_table, is_ln_derivation,
                         is_ln_ederivation, is_locally_finite)
from .oracle import ProbeConfig, enumeration_budget, radical_probe, verify_witness
from .poly import MultiPoly, Poly
from .span import (IdealSpec, Membership, MonomialTable, ederivation_monomial_table,
                   exact_member_derivation, exact_member_ideal_derivation, global_degree_cap,
                   image_span, multi_image_span, translation_member)

COMMANDS = ("classify", "member", "basis", "ln", "lf", "table-thm25", "table-lemma37",
            "oracle-radical", "oracle-witness", "selftest")
NEEDS_MAP = frozenset(COMMANDS) - {"table-lemma37", "selftest"}
PARAMS = {
    "member": {"g"},
    "table-lemma37": {"i1", "i2", "c1", "c2", "k_max"},
    "oracle-witness": {"witness"},
    "selftest": {"criteria"},
}
MAX_P = 97
MAX_ITERATION_CAP = 4096

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# requests


@dataclass(frozen=True)
class Caps:
    degree_cap: int | None = None
    iteration_cap: int | None = None
    probe: ProbeConfig | None = None

    def to_dict(self) -> dict:
        out: dict = {}
        if self.degree_cap is not None:
            out["degree_cap"] = self.degree_cap
        if self.iteration_cap is not None:
            out["iteration_cap"] = self.iteration_cap
        if self.probe is not None:
            out["probe"] = {"d": self.probe.d, "N": self.probe.N, "m0": self.probe.m0}
        return out


@dataclass(frozen=True)
class Request:
    p: int
    command: str
    map: MapSpec | None = None
    ideal: IdealSpec | None = None
    caps: Caps = Caps()
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {"p": self.p, "command": self.command}
        if self.map is not None:
            out["map"] = map_to_dict(self.map)
        if self.ideal is not None:
            out["ideal"] = {"generator": self.ideal.generator.to_list()}
        caps = self.caps.to_dict()
        if caps:
            out["caps"] = caps
        if self.params:
            out["params"] = {k: _param_to_json(v) for k, v in self.params.items()}
        return out


def map_to_dict(m: MapSpec) -> dict:
    if isinstance(m, UnivariateDerivation):
        return {"kind": "derivation", "f": m.f.to_list()}
    if isinstance(m, EDerivation):
        return {"kind": "ederivation", "phi": m.phi.to_list()}
    return {"kind": "triangular", "n": m.n, "fs": [f.to_list() for f in m.fs]}


def _param_to_json(v: Any) -> Any:
    if isinstance(v, (Poly, MultiPoly)):
        return v.to_list()
    if isinstance(v, Witness):
        return v.to_dict()
    if isinstance(v, tuple):
        return list(v)
    return v


def _obj(v: Any, path: str, allowed: set[str], required: set[str] = frozenset()) -> dict:
    if not isinstance(v, dict):
        raise ParseError(path, "expected an object")
    extra = sorted(set(v) - allowed)
    if extra:
        raise ParseError(f"{path}.{extra[0]}" if path else extra[0], "unknown field")
    missing = sorted(required - set(v))
    if missing:
        raise ParseError(f"{path}.{missing[0]}" if path else missing[0], "missing field")
    return v


def _int(v: Any, path: str, lo: int | None = None, hi: int | None = None) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(path, f"expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise ParseError(path, f"{v} is below the minimum {lo}")
    if hi is not None and v > hi:
        raise ParseError(path, f"{v} exceeds the maximum {hi}")
    return v


def _poly(v: Any, p: int, path: str) -> Poly:
    if not isinstance(v, list):
        raise ParseError(path, "expected a coefficient array")
    for k, c in enumerate(v):
        c = _int(c, f"{path}[{k}]")
        if not 0 <= c < p:
            raise ParseError(f"{path}[{k}]", f"coefficient {c} outside [0, {p})")
    return Poly(p, tuple(v))


def _multi(v: Any, p: int, n: int, path: str) -> MultiPoly:
    if not isinstance(v, list):
        raise ParseError(path, "expected a list of [exponents, coefficient] terms")
    terms = []
    for k, t in enumerate(v):
        here = f"{path}[{k}]"
        if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], list)):
            raise ParseError(here, "expected [exponents, coefficient]")
        if len(t[0]) != n:
            raise ParseError(f"{here}[0]", f"expected {n} exponents")
        e = tuple(_int(x, f"{here}[0][{i}]", lo=0) for i, x in enumerate(t[0]))
        c = _int(t[1], f"{here}[1]")
        if not 0 <= c < p:
            raise ParseError(f"{here}[1]", f"coefficient {c} outside [0, {p})")
        terms.append((e, c))
    return MultiPoly(p, n, tuple(terms))


def _map(v: Any, p: int) -> MapSpec:
    kind = _obj(v, "map", {"kind", "f", "phi", "n", "fs"}, {"kind"})["kind"]
    if kind == "derivation":
        _obj(v, "map", {"kind", "f"}, {"f"})
        return UnivariateDerivation(_poly(v["f"], p, "map.f"))
    if kind == "ederivation":
        _obj(v, "map", {"kind", "phi"}, {"phi"})
        return EDerivation(_poly(v["phi"], p, "map.phi"))
    if kind == "triangular":
        _obj(v, "map", {"kind", "n", "fs"}, {"n", "fs"})
        n = _int(v["n"], "map.n", lo=1, hi=8)
        if not isinstance(v["fs"], list) or len(v["fs"]) != n:
            raise ParseError("map.fs", f"expected {n} coefficient polynomials")
        fs = [_multi(f, p, n, f"map.fs[{q}]") for q, f in enumerate(v["fs"])]
        try:
            return TriangularDerivation(tuple(fs))
        except ShapeError as exc:
            raise ParseError("map.fs", str(exc)) from None
    raise ParseError("map.kind", f"unknown map kind {kind!r}")


def _caps(v: Any, p: int) -> Caps:
    _obj(v, "caps", {"degree_cap", "iteration_cap", "probe"})
    deg = it = probe = None
    if "degree_cap" in v:
        deg = _int(v["degree_cap"], "caps.degree_cap", lo=0, hi=global_degree_cap())
    if "iteration_cap" in v:
        it = _int(v["iteration_cap"], "caps.iteration_cap", lo=1, hi=MAX_ITERATION_CAP)
    if "probe" in v:
        pv = _obj(v["probe"], "caps.probe", {"d", "N", "m0"})
        d = _int(pv.get("d", 2), "caps.probe.d", lo=1)
        N = _int(pv.get("N", 30), "caps.probe.N", lo=1, hi=global_degree_cap())
        m0 = _int(pv.get("m0", 2), "caps.probe.m0", lo=1)
        if p ** (d + 1) > enumeration_budget():
            raise ParseError("caps.probe.d", f"p^(d+1) = {p ** (d + 1)} exceeds the "
                                             f"enumeration budget {enumeration_budget()}")
        try:
            probe = ProbeConfig(d, N, m0)
        except ValueError as exc:
            raise ParseError("caps.probe", str(exc)) from None
    return Caps(deg, it, probe)


def _params(v: Any, command: str, p: int, m: MapSpec | None) -> dict:
    v = _obj(v, "params", PARAMS.get(command, set()))
    out: dict = {}
    if command == "member":
        if "g" not in v:
            raise ParseError("params.g", "missing field")
        out["g"] = _element(v["g"], p, m, "params.g")
    elif command == "table-lemma37":
        for key in ("i1", "i2"):
            if key not in v:
                raise ParseError(f"params.{key}", "missing field")
            out[key] = _int(v[key], f"params.{key}", lo=0, hi=p - 1)
        for key in ("c1", "c2"):
            out[key] = _int(v.get(key, 1), f"params.{key}", lo=1, hi=p - 1)
        out["k_max"] = _int(v.get("k_max", 8), "params.k_max", lo=0, hi=64)
    elif command == "oracle-witness" and "witness" in v:
        w = _obj(v["witness"], "params.witness", {"a", "b", "membership_mode", "m_range"},
                 {"a", "b", "membership_mode"})
        try:
            mode = MembershipMode(w["membership_mode"])
        except ValueError:
            raise ParseError("params.witness.membership_mode",
                             f"unknown mode {w['membership_mode']!r}") from None
        rng = w.get("m_range", [1, 8])
        if not (isinstance(rng, list) and len(rng) == 2):
            raise ParseError("params.witness.m_range", "expected [lo, hi]")
        lo = _int(rng[0], "params.witness.m_range[0]", lo=1)
        hi = _int(rng[1], "params.witness.m_range[1]", lo=lo, hi=64)
        out["witness"] = Witness(_element(w["a"], p, m, "params.witness.a"),
                                 _element(w["b"], p, m, "params.witness.b"), mode, (lo, hi))
    elif command == "selftest" and "criteria" in v:
        names = v["criteria"]
        if not isinstance(names, list) or not names:
            raise ParseError("params.criteria", "expected a nonempty list")
        for k, name in enumerate(names):
            if name not in acceptance.CRITERIA:
                raise ParseError(f"params.criteria[{k}]", f"unknown criterion {name!r}")
        out["criteria"] = tuple(names)
    return out


def _element(v: Any, p: int, m: MapSpec | None, path: str) -> Poly | MultiPoly:
    if isinstance(m, TriangularDerivation):
        return _multi(v, p, m.n, path)
    return _poly(v, p, path)


def parse_request(text: bytes | str) -> Request:
    """Validate a JSON request; every failure names the offending field path."""
    try:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        doc = json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError("", f"malformed JSON: {exc}") from None
    doc = _obj(doc, "", {"p", "map", "ideal", "command", "caps", "params"}, {"p", "command"})
    p = _int(doc["p"], "p")
    if not is_prime(p):
        raise ParseError("p", "p not prime")
    if p > MAX_P:
        raise ParseError("p", f"p = {p} exceeds the supported maximum {MAX_P}")
    command = doc["command"]
    if command not in COMMANDS:
        raise ParseError("command", f"unknown command {command!r}")
    m = None
    if "map" in doc:
        m = _map(doc["map"], p)
    elif command in NEEDS_MAP:
        raise ParseError("map", "missing field")
    ideal = None
    if "ideal" in doc:
        iv = _obj(doc["ideal"], "ideal", {"generator"}, {"generator"})
        if isinstance(m, TriangularDerivation):
            raise ParseError("ideal", "ideals are supported for univariate maps only")
        u = _poly(iv["generator"], p, "ideal.generator")
        if u.is_zero:
            raise ParseError("ideal.generator", "generator must be nonzero")
        ideal = IdealSpec(u)
    caps = _caps(doc["caps"], p) if "caps" in doc else Caps()
    params = _params(doc.get("params", {}), command, p, m)
    return Request(p, command, m, ideal, caps, params)


def format_request(req: Request) -> bytes:
    return _canonical(req.to_dict())


def _canonical(doc: Any) -> bytes:
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def format_report(result: Any) -> bytes:
    """Canonical JSON: sorted keys, compact separators, one trailing newline."""
    if hasattr(result, "to_dict"):
        result = result.to_dict()
    elif isinstance(result, list):
        result = [r.to_dict() if hasattr(r, "to_dict") else r for r in result]
    return _canonical(result)


# ---------------------------------------------------------------------------
# dispatch


@dataclass
class Outcome:
    report: Any
    code: int = EXIT_OK
    text: str | None = None


def _classify(req: Request) -> Verdict:
    m, ideal = req.map, req.ideal
    if isinstance(m, UnivariateDerivation):
        if ideal is None or ideal.is_whole_ring:
            return classify_image_derivation(m.f)
        return classify_ideal_derivation(m.f, ideal)
    if isinstance(m, EDerivation):
        if ideal is None:
            return classify_image_ederivation(m.phi)
        return classify_ideal_ederivation(m.phi, ideal)
    return classify_triangular(m.fs)


def _verdict_code(v: Verdict) -> int:
    return EXIT_CAP if v.decision is Decision.UNKNOWN else EXIT_OK


def _member(req: Request) -> Outcome:
    m, ideal, g = req.map, req.ideal, req.params["g"]
    out = {"p": req.p, "g": g.to_list()}
    if isinstance(m, TriangularDerivation):
        cap = max(g.total_degree(), req.caps.degree_cap or 0)
        st = multi_image_span(m, cap).member(g)
        out |= {"membership": st.value, "method": "window", "exact": False, "degree_cap": cap}
        return Outcome(out, EXIT_CAP if st is Membership.OUT_OF_RANGE else EXIT_OK)
    whole = ideal is None or ideal.is_whole_ring
    exact = None
    if isinstance(m, UnivariateDerivation) and not m.is_zero:
        exact = (exact_member_derivation(m.f, g) if whole
                 else exact_member_ideal_derivation(m.f, ideal.generator, g))
    elif isinstance(m, EDerivation) and whole and m.affine_parts() is not None \
            and m.affine_parts()[0] == 1 and m.affine_parts()[1] != 0:
        exact = translation_member(m.affine_parts()[1], g)
    if exact is not None:
        st = Membership.IN if exact else Membership.OUT
        return Outcome(out | {"membership": st.value, "method": "exact", "exact": True})
    cap = max(g.degree, req.caps.degree_cap or 0, 0)
    S = image_span(m, ideal, cap)
    st = S.member(g)
    out |= {"membership": st.value, "method": "window", "exact": S.exact, "degree_cap": cap}
    return Outcome(out)


def _basis(req: Request) -> Outcome:
    cap = req.caps.degree_cap if req.caps.degree_cap is not None else 10
    if isinstance(req.map, TriangularDerivation):
        S = multi_image_span(req.map, cap)
        return Outcome(S.to_dict(), text=S.dump())
    S = image_span(req.map, req.ideal, cap)
    return Outcome(S, text=S.dump())


def _ln(req: Request) -> Outcome:
    m = req.map
    if isinstance(m, UnivariateDerivation):
        v = is_ln_derivation(m.f, req.caps.iteration_cap or DEFAULT_ITERATION_CAP)
    elif isinstance(m, EDerivation):
        v = is_ln_ederivation(m.phi)
    else:
        raise ShapeError("local nilpotency is decided for univariate maps only")
    return Outcome(v, EXIT_CAP if v.status is LnStatus.UNKNOWN else EXIT_OK)


def _lf(req: Request) -> Outcome:
    v = is_locally_finite(req.map)
    return Outcome(v, EXIT_CAP if v.status is LfStatus.UNKNOWN else EXIT_OK)


def _table_thm25(req: Request) -> Outcome:
    m = req.map
    parts = m.affine_parts() if isinstance(m, EDerivation) else None
    if parts is None or parts[0] != 1 or parts[1] == 0:
        raise ShapeError("table-thm25 needs an E-derivation with phi = x + c, c != 0")
    N = req.caps.degree_cap if req.caps.degree_cap is not None else req.p * req.p + req.p
    T = ederivation_monomial_table(parts[1], N, req.p)
    return Outcome(T, text=render_monomial_table(T))


def _table_lemma37(req: Request) -> Outcome:
    q = req.params
    T = coeff_table(req.p, q["i1"], q["i2"], q["c1"], q["c2"], q["k_max"])
    return Outcome(T, text=T.to_csv())


def _probe_config(req: Request) -> ProbeConfig:
    if req.caps.probe is not None:
        return req.caps.probe
    if req.caps.degree_cap is not None:
        return ProbeConfig(N=req.caps.degree_cap)
    return ProbeConfig()


def _oracle_radical(req: Request) -> Outcome:
    if isinstance(req.map, TriangularDerivation):
        raise ShapeError("the radical probe runs on univariate maps only")
    cfg = _probe_config(req)
    rep = radical_probe(image_span(req.map, req.ideal, cfg.N), cfg)
    return Outcome(rep)


def _oracle_witness(req: Request) -> Outcome:
    own = "witness" not in req.params
    if own:
        v = _classify(req)
        if v.witness is None:
            raise ShapeError(f"the verdict is {v.decision.value}; there is no witness to verify")
        w = v.witness
    else:
        w = req.params["witness"]
    res = verify_witness(req.map, req.ideal, w, degree_cap=req.caps.degree_cap)
    report = {"witness": w.to_dict(), "result": res.to_dict(),
              "source": "classifier" if own else "request"}
    code = EXIT_OK
    if not res.verified:
        code = EXIT_CAP if res.stage == "range" else (EXIT_INVARIANT if own else EXIT_OK)
    return Outcome(report, code)


def _selftest(req: Request, echo) -> Outcome:
    names = list(req.params.get("criteria", ())) or None
    results = acceptance.run_acceptance(names, echo=echo)
    ok = all(r.passed for r in results)
    return Outcome(results, EXIT_OK if ok else EXIT_INVARIANT,
                   text="\n".join(r.line() for r in results))


def execute(req: Request, echo=None) -> Outcome:
    cmd = req.command
    if cmd == "classify":
        v = _classify(req)
        return Outcome(v, _verdict_code(v))
    if cmd == "member":
        return _member(req)
    if cmd == "basis":
        return _basis(req)
    if cmd == "ln":
        return _ln(req)
    if cmd == "lf":
        return _lf(req)
    if cmd == "table-thm25":
        return _table_thm25(req)
    if cmd == "table-lemma37":
        return _table_lemma37(req)
    if cmd == "oracle-radical":
        return _oracle_radical(req)
    if cmd == "oracle-witness":
        return _oracle_witness(req)
    return _selftest(req, echo)


# ---------------------------------------------------------------------------
# text rendering


def render_monomial_table(T: MonomialTable) -> str:
    """Rows k, columns i; '+' marks x^(kp+i) in the image."""
    p, rows = T.p, T.as_dict()
    lines = [f"p = {p}, c = {T.c}, degree <= {T.degree_cap}", "k\\i " + " ".join(
        f"{i:>2}" for i in range(p))]
    for k in range(T.degree_cap // p + 1):
        cells = [(" +" if rows[(k, i)] else " .") if (k, i) in rows else "  " for i in range(p)]
        lines.append(f"{k:>3} " + " ".join(cells))
    lines.append("members: " + ", ".join(f"x^{n}" for n in T.members()))
    return "\n".join(lines)


def render_text(report: Any) -> str:
    if hasattr(report, "to_dict"):
        report = report.to_dict()
    return "\n".join(_flatten("", report))


def _flatten(prefix: str, v: Any) -> list[str]:
    if isinstance(v, dict):
        out = []
        for k in sorted(v):
            out.extend(_flatten(f"{prefix}.{k}" if prefix else str(k), v[k]))
        return out
    return [f"{prefix}: {json.dumps(v)}"]


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mzlab",
                                 description="Mathieu-Zhao verdicts for maps on GF(p)[x].")
    sub = ap.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd)
        sp.add_argument("--input", metavar="FILE",
                        help="JSON request ('-' or omitted reads stdin)")
        sp.add_argument("--json", action="store_true", help="emit canonical JSON")
        sp.add_argument("--max-degree", type=int, help="degree cap for spans and tables")
        sp.add_argument("--iteration-cap", type=int, help="iteration cap for nilpotency")
        sp.add_argument("--probe-degree", type=int, help="radical probe candidate degree d")
        sp.add_argument("--probe-power-floor", type=int, help="radical probe power floor m0")
        if cmd == "selftest":
            sp.add_argument("--criteria", help="comma-separated subset, e.g. A3,A8")
    return ap


def _read_request(args: argparse.Namespace) -> Request:
    if args.command == "selftest" and args.input is None:
        doc: dict = {"p": 2, "command": "selftest"}
        if args.criteria:
            doc["params"] = {"criteria": args.criteria.split(",")}
        text = json.dumps(doc)
    elif args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, "rb") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError("--input", str(exc)) from None
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="strict")
    doc = json.loads(text) if text.strip() else None
    if isinstance(doc, dict) and "command" not in doc:
        doc["command"] = args.command
        text = json.dumps(doc)
    req = parse_request(text)
    if req.command != args.command:
        raise ParseError("command", f"request says {req.command!r} but the subcommand is "
                                    f"{args.command!r}")
    return _apply_flags(req, args)


def _apply_flags(req: Request, args: argparse.Namespace) -> Request:
    caps = req.caps
    if args.max_degree is not None:
        if not 0 <= args.max_degree <= global_degree_cap():
            raise ParseError("--max-degree", f"must lie in [0, {global_degree_cap()}]")
        caps = replace(caps, degree_cap=args.max_degree)
    if args.iteration_cap is not None:
        if not 1 <= args.iteration_cap <= MAX_ITERATION_CAP:
            raise ParseError("--iteration-cap", f"must lie in [1, {MAX_ITERATION_CAP}]")
        caps = replace(caps, iteration_cap=args.iteration_cap)
    if args.probe_degree is not None or args.probe_power_floor is not None:
        base = caps.probe or ProbeConfig(N=caps.degree_cap or ProbeConfig().N)
        d = base.d if args.probe_degree is None else args.probe_degree
        m0 = base.m0 if args.probe_power_floor is None else args.probe_power_floor
        try:
            probe = ProbeConfig(d, base.N, m0)
        except ValueError as exc:
            raise ParseError("--probe-degree", str(exc)) from None
        if req.p ** (d + 1) > enumeration_budget():
            raise ParseError("--probe-degree", "p^(d+1) exceeds the enumeration budget")
        caps = replace(caps, probe=probe)
    return replace(req, caps=caps)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        req = _read_request(args)
        echo = None
        if req.command == "selftest" and not args.json:
            echo = lambda line: print(line, flush=True)  # noqa: E731
        out = execute(req, echo)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except MzlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        sys.stdout.buffer.write(format_report(out.report))
    elif req.command == "selftest":
        passed = sum(r.passed for r in out.report)
        print(f"{passed}/{len(out.report)} criteria passed")
    else:
        print(out.text if out.text is not None else render_text(out.report))
    return out.code


if __name__ == "__main__":
    sys.exit(main())
