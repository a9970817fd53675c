"""Corpus of verification cases and a batch runner.

Corpus files are JSON Lines.  Each record has::

    {"id": "snc-B-001", "kind": "snc-property", "ring": "Q[p,x,y] grevlex",
     "inputs": {...}, "expected": "pass"}

``kind`` is one of :data:`KINDS`; ``expected`` is ``"pass"`` or
``"fail-with-witness"``.  The ``inputs`` schema per kind:

snc-property
    ``property`` (see :data:`sympow.snc.PROPERTIES`), ``f``, optional ``g``,
    ``params`` (``t``, ``t2``, ``n``, ``s`` as rational strings), optional ``p``.
monomial-multiplier
    ``op`` = ``"compare"`` (test ideal inside the multiplier ideal after
    inverting p) or ``"trace"`` (closed form against the trace route);
    ``f``, ``t``, optional ``p``.
main-theorem
    ``ideal`` (squarefree monomial generators), ``m``, optional ``h``;
    or ``prime: true`` with ``height``, ``witness`` and ``exact``.
blowup
    ``op`` in ``kcanonical`` (``d``), ``rees`` (``ideal``, ``expected``
    generators), ``chart`` (``ideal``, ``i``), ``integral`` (``J``, ``f``).
asymptotic
    ``op`` in ``pipeline`` (``ideal``, ``m``), ``subadditivity``
    (``sequence`` = ``powers``/``symbolic``, ``ideal``, ``n``, ``m``),
    ``stabilization`` (``sequence``, ``ideal``, ``n``, ``l_star``).
"""

from __future__ import annotations

import fnmatch
import json
import platform
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import NotIntegral, ResourceLimit, SympowError, limits

KINDS = ("snc-property", "monomial-multiplier", "main-theorem", "blowup", "asymptotic")
EXPECTED = ("pass", "fail-with-witness")


@dataclass(frozen=True)
class CorpusCase:
    id: str
    kind: str
    ring: str
    inputs: dict
    expected: str = "pass"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SympowError(f"case {self.id}: unknown kind {self.kind!r}")
        if self.expected not in EXPECTED:
            raise SympowError(f"case {self.id}: expected must be one of {EXPECTED}")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "CorpusCase":
        try:
            return cls(data["id"], data["kind"], data["ring"], dict(data.get("inputs", {})),
                       data.get("expected", "pass"))
        except KeyError as exc:
            raise SympowError(f"corpus record missing field {exc}") from None


def load_corpus(path: str | Path | None = None) -> list:
    if path is None:
        text = resources.files("sympow").joinpath("data/corpus.jsonl").read_text()
    else:
        text = Path(path).read_text()
    cases = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            case = CorpusCase.from_dict(json.loads(line))
        except json.JSONDecodeError as exc:
            raise SympowError(f"corpus line {lineno}: {exc.msg}") from None
        if case.id in seen:
            raise SympowError(f"corpus line {lineno}: duplicate id {case.id}")
        seen.add(case.id)
        cases.append(case)
    return cases


def write_corpus(cases: Iterable[CorpusCase], path: str | Path) -> None:
    Path(path).write_text("".join(c.to_json() + "\n" for c in cases))


# -- execution -----------------------------------------------------------------------


@dataclass
class CaseResult:
    id: str
    kind: str
    expected: str
    outcome: str  # "pass", "fail" or "error"
    verdict: str  # "pass" when the outcome matches the expectation
    witnesses: list = field(default_factory=list)
    detail: str = ""
    seconds: float = 0.0


def _monomial_ideal(ring, text):
    from .monomial import MonomialIdeal

    return MonomialIdeal.parse(ring, text)


def _fmt_exps(ring, exps) -> list:
    return [str(ring.monomial(tuple(e))) for e in exps]


def _run_snc(case, ring) -> tuple:
    from .snc import MixedModel, verify_property

    inp = case.inputs
    model = MixedModel(ring, int(inp.get("p", 2)))
    f = model.monomial(inp["f"])
    g = model.monomial(inp["g"]) if inp.get("g") else None
    params = {k: Fraction(v) for k, v in inp.get("params", {}).items()}
    rep = verify_property(model, inp["property"], f, g, **params)
    return rep.passed, _fmt_exps(ring, rep.witnesses), rep.summary()


def _run_multiplier(case, ring) -> tuple:
    from .snc import MixedModel, compare_with_multiplier, snc_test_ideal, snc_test_ideal_via_trace

    inp = case.inputs
    model = MixedModel(ring, int(inp.get("p", 2)))
    f = model.monomial(inp["f"])
    t = Fraction(inp["t"])
    if inp.get("op", "compare") == "trace":
        a, b = snc_test_ideal(model, f, t), snc_test_ideal_via_trace(model, f, t)
        wit = [] if a == b else _fmt_exps(ring, sorted(a.exponents ^ b.exponents))
        return a == b, wit, f"closed form {a} vs trace {b}"
    rep = compare_with_multiplier(model, f, t)
    return rep.passed, _fmt_exps(model.x_ring, rep.witnesses), rep.summary()


def _run_main(case, ring) -> tuple:
    from .ideal import Ideal
    from .symbolic import check_main_theorem

    inp = case.inputs
    m = int(inp["m"])
    if inp.get("prime"):
        Q = Ideal.parse(ring, inp["ideal"], declared_height=int(inp["height"]), primality="asserted-prime")
        rep = check_main_theorem(Q, m, witness=ring.parse(inp["witness"]), exact=bool(inp.get("exact")),
                                 allow_inexact=True)
    else:
        I = _monomial_ideal(ring, inp["ideal"])
        rep = check_main_theorem(I, m, h=inp.get("h"))
    return rep.holds, [str(w) for w in rep.witnesses], rep.summary()


def _run_blowup(case, ring) -> tuple:
    from . import blowup
    from .groebner import buchberger
    from .ideal import Ideal

    inp = case.inputs
    op = inp["op"]
    if op == "kcanonical":
        d = int(inp["d"])
        k = blowup.relative_canonical_maxideal(d)
        return k == d - 1, [] if k == d - 1 else [f"K = {k}E"], f"d={d}: K = {k}E"
    if op == "rees":
        rees = blowup.rees_presentation(Ideal.parse(ring, inp["ideal"]))
        expected = Ideal.parse(rees.ring, inp["expected"])
        got = Ideal(rees.ring, rees.ideal.generators, gb=rees.ideal)
        ok = got.equals(expected) and rees.is_t_homogeneous() and rees.substitution_vanishes()
        return ok, [] if ok else [str(rees.ideal)], f"Rees ideal {rees.ideal}"
    if op == "chart":
        rees = blowup.rees_presentation(Ideal.parse(ring, inp["ideal"]))
        ch = blowup.chart(rees, int(inp["i"]))
        ok = ch.relations_hold()
        gens = buchberger(list(ch.generators), ring=ch.ring) if ch.generators else "{}"
        return ok, [] if ok else [str(gens)], f"chart {ch.index}: {gens}"
    if op == "integral":
        J = _monomial_ideal(ring, inp["J"])
        f = ring.parse(inp["f"])
        try:
            rep = blowup.integral_extension_chart(J, f)
        except NotIntegral as exc:
            return False, [str(f)], str(exc)
        return rep.verified, [], f"degree {rep.degree} equation, {len(rep.charts)} charts"
    raise SympowError(f"unknown blowup op {op!r}")


def _run_asymptotic(case, ring) -> tuple:
    from .asymptotic import (GradedSequence, asymptotic_ideal, main_theorem_pipeline,
                             verify_asymptotic_subadditivity)

    inp = case.inputs
    op = inp["op"]
    I = _monomial_ideal(ring, inp["ideal"])
    if op == "pipeline":
        rep = main_theorem_pipeline(I, int(inp["m"]))
        bad = [link.name for link in rep.links if not link.passed]
        return rep.holds, bad, rep.summary().replace("\n", "; ")
    seq = GradedSequence.powers(I) if inp.get("sequence", "powers") == "powers" else \
        GradedSequence.symbolic_powers(I)
    if op == "subadditivity":
        rep = verify_asymptotic_subadditivity(seq, int(inp["n"]), int(inp["m"]))
        return rep.passed, _fmt_exps(ring, rep.witnesses), rep.summary()
    if op == "stabilization":
        a = asymptotic_ideal(seq, int(inp["n"]))
        ok = a.l_star == int(inp.get("l_star", 1))
        return ok, [] if ok else [f"l*={a.l_star}"], f"{a.ideal} at l*={a.l_star}"
    raise SympowError(f"unknown asymptotic op {op!r}")


RUNNERS = {
    "snc-property": _run_snc,
    "monomial-multiplier": _run_multiplier,
    "main-theorem": _run_main,
    "blowup": _run_blowup,
    "asymptotic": _run_asymptotic,
}


def run_case(case: CorpusCase, timeout: float | None = 30.0) -> CaseResult:
    from .poly import PolyRing

    start = time.perf_counter()
    try:
        with limits(timeout=timeout):
            ring = PolyRing.from_spec(case.ring)
            passed, witnesses, detail = RUNNERS[case.kind](case, ring)
        outcome = "pass" if passed else "fail"
    except ResourceLimit as exc:
        outcome, witnesses, detail = "error", [], f"resource limit: {exc}"
    except SympowError as exc:
        outcome, witnesses, detail = "error", [], f"{type(exc).__name__}: {exc}"
    wanted = "pass" if case.expected == "pass" else "fail"
    verdict = "pass" if outcome == wanted else "fail"
    return CaseResult(case.id, case.kind, case.expected, outcome, verdict, witnesses, detail,
                      time.perf_counter() - start)


@dataclass
class VerificationReport:
    results: list
    environment: dict

    @property
    def failures(self) -> list:
        return [r for r in self.results if r.verdict != "pass"]

    @property
    def counts(self) -> dict:
        out: dict = {}
        for r in self.results:
            c = out.setdefault(r.kind, {"pass": 0, "fail": 0})
            c["pass" if r.verdict == "pass" else "fail"] += 1
        return out

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def to_dict(self, timing: bool = True) -> dict:
        cases = []
        for r in self.results:
            d = asdict(r)
            if not timing:
                d.pop("seconds")
            cases.append(d)
        out = {"cases": cases, "counts": self.counts, "failures": [r.id for r in self.failures],
               "environment": self.environment}
        if timing:
            out["total_seconds"] = sum(r.seconds for r in self.results)
        return out

    def table(self) -> str:
        lines = [f"{'id':<28} {'kind':<20} {'verdict':<8} {'seconds':>8}  detail"]
        for r in self.results:
            detail = r.detail if len(r.detail) <= 70 else r.detail[:67] + "..."
            lines.append(f"{r.id:<28} {r.kind:<20} {r.verdict:<8} {r.seconds:8.3f}  {detail}")
            if r.verdict != "pass" and r.witnesses:
                lines.append(f"{'':<28} witnesses: {', '.join(r.witnesses[:8])}")
        total = len(self.results)
        lines.append(f"{total - len(self.failures)}/{total} cases pass")
        return "\n".join(lines)


def environment_stamp() -> dict:
    from . import __version__

    return {"python": sys.version.split()[0], "platform": platform.platform(), "sympow": __version__}


def select_cases(cases: list, kind: str | None = None, pattern: str | None = None) -> list:
    out = cases
    if kind:
        out = [c for c in out if c.kind == kind]
    if pattern:
        out = [c for c in out if fnmatch.fnmatchcase(c.id, pattern)]
    return out


def run_corpus(cases: list | None = None, kind: str | None = None, pattern: str | None = None,
               parallelism: int = 1, timeout: float | None = 30.0) -> VerificationReport:
    """Run the selected cases; results come back in corpus order."""
    if cases is None:
        cases = load_corpus()
    selected = select_cases(cases, kind, pattern)
    if parallelism > 1 and len(selected) > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(lambda c: run_case(c, timeout), selected))
    else:
        results = [run_case(c, timeout) for c in selected]
    return VerificationReport(results, environment_stamp())


# -- random cases ---------------------------------------------------------------------


def _rand_t(rng: random.Random) -> Fraction:
    den = rng.randint(1, 60)
    return Fraction(rng.randint(0, 3 * den), den)


def _mono_text(names, exps) -> str:
    parts = [n if a == 1 else f"{n}^{a}" for n, a in zip(names, exps) if a]
    return "*".join(parts) or "1"


def _random_snc(rng: random.Random, idx: int) -> CorpusCase:
    from .snc import PROPERTIES

    names = ("p",) + ("x", "y", "z")[: rng.randint(0, 3)]
    ring = f"Q[{','.join(names)}] grevlex"
    f = [rng.randint(0, 6) for _ in names]
    prop = rng.choice(PROPERTIES)
    inputs: dict = {"property": prop, "f": _mono_text(names, f)}
    t = _rand_t(rng)
    if prop == "A-containment":
        inputs["g"] = _mono_text(names, [a + rng.randint(0, 6) for a in f])
        inputs["params"] = {"t": str(t)}
    elif prop == "A-exponent-monotone":
        inputs["params"] = {"t": str(t), "t2": str(t + _rand_t(rng))}
    elif prop == "B-unambiguity":
        inputs["params"] = {"t": str(t), "n": str(rng.randint(1, 6))}
    elif prop == "C-not-too-small":
        inputs["params"] = {}
    elif rng.random() < 0.5:
        inputs["params"] = {"t": str(t), "s": str(_rand_t(rng))}
    else:
        inputs["params"] = {"t": str(t), "n": str(rng.randint(1, 6))}
    return CorpusCase(f"rand-snc-{idx:04d}", "snc-property", ring, inputs)


def _random_multiplier(rng: random.Random, idx: int) -> CorpusCase:
    names = ("p",) + ("x", "y", "z")[: rng.randint(1, 3)]
    f = [rng.randint(0, 6) for _ in names]
    return CorpusCase(f"rand-mult-{idx:04d}", "monomial-multiplier", f"Q[{','.join(names)}] grevlex",
                      {"op": rng.choice(("compare", "trace")), "f": _mono_text(names, f),
                       "t": str(_rand_t(rng))})


def _random_squarefree(rng: random.Random, names) -> str:
    d = len(names)
    gens = set()
    for _ in range(rng.randint(1, 4)):
        support = [i for i in range(d) if rng.random() < 0.5] or [rng.randrange(d)]
        gens.add(tuple(int(i in support) for i in range(d)))
    return ", ".join(_mono_text(names, g) for g in sorted(gens))


def _random_main(rng: random.Random, idx: int) -> CorpusCase:
    names = ("x", "y", "z", "w")[: rng.randint(2, 4)]
    return CorpusCase(f"rand-main-{idx:04d}", "main-theorem", f"Q[{','.join(names)}] grevlex",
                      {"ideal": _random_squarefree(rng, names), "m": rng.randint(1, 3)})


def _random_blowup(rng: random.Random, idx: int) -> CorpusCase:
    if rng.random() < 0.3:
        return CorpusCase(f"rand-blowup-{idx:04d}", "blowup", "Q[x] grevlex",
                          {"op": "kcanonical", "d": rng.randint(1, 8)})
    from .monomial import MonomialIdeal, is_integral_over
    from .poly import PolyRing

    names = ("x", "y", "z")[: rng.randint(2, 3)]
    ring = PolyRing(names)
    gens = {tuple(rng.randint(0, 6) for _ in names) for _ in range(rng.randint(1, 3))}
    gens.discard((0,) * len(names))
    if not gens:
        gens = {(1,) + (0,) * (len(names) - 1)}
    J = MonomialIdeal(ring, gens)
    f = tuple(rng.randint(0, 6) for _ in names)
    expected = "pass" if is_integral_over(f, J) else "fail-with-witness"
    return CorpusCase(f"rand-blowup-{idx:04d}", "blowup", ring.spec(),
                      {"op": "integral", "J": ", ".join(_mono_text(names, g) for g in sorted(J.exponents)),
                       "f": _mono_text(names, f)}, expected)


def _random_asymptotic(rng: random.Random, idx: int) -> CorpusCase:
    names = ("x", "y", "z")[: rng.randint(2, 3)]
    gens = {tuple(rng.randint(0, 3) for _ in names) for _ in range(rng.randint(1, 3))}
    gens.discard((0,) * len(names))
    if not gens:
        gens = {(1,) + (0,) * (len(names) - 1)}
    text = ", ".join(_mono_text(names, g) for g in sorted(gens))
    return CorpusCase(f"rand-asym-{idx:04d}", "asymptotic", f"Q[{','.join(names)}] grevlex",
                      {"op": "subadditivity", "sequence": "powers", "ideal": text,
                       "n": rng.randint(1, 2), "m": rng.randint(1, 3)})


GENERATORS = {
    "snc-property": _random_snc,
    "monomial-multiplier": _random_multiplier,
    "main-theorem": _random_main,
    "blowup": _random_blowup,
    "asymptotic": _random_asymptotic,
}


def generate_random_cases(seed: int, counts: dict) -> list:
    """Reproducible random cases; ``counts`` maps kind to number of cases."""
    rng = random.Random(seed)
    out = []
    for kind in KINDS:
        n = int(counts.get(kind, 0))
        for i in range(n):
            out.append(GENERATORS[kind](rng, i))
    unknown = set(counts) - set(KINDS)
    if unknown:
        raise SympowError(f"unknown case kinds {sorted(unknown)}")
    return out
