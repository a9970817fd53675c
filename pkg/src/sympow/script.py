"""Execution of parsed scripts: evaluate ideal expressions and run commands.

Every command yields a :class:`CommandResult` whose ``text`` is the canonical
printed form; ``data`` is the JSON-ready value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, SympowError
from .groebner import GroebnerBasis
from .ideal import Ideal, colon, contains, equals, ideal_power, intersect, radical_membership, saturate
from .monomial import (MonomialIdeal, big_height, height, integral_closure, minimal_primes_squarefree,
                       multiplier_ideal_monomial)
from .parser import IdealExpr, Script, parse_ideal_expr, parse_polynomial, parse_rational
from .poly import Polynomial, PolyRing


@dataclass
class CommandResult:
    command: str
    line: int
    text: str
    data: object = None
    failed: bool = False  # a verification command reported a failure


def format_ideal(I) -> str:
    if isinstance(I, MonomialIdeal):
        return str(I)
    gens = I.gb.generators
    if not gens:
        return "(0)"
    return "(" + ", ".join(str(g) for g in gens) + ")"


def format_gb(G: GroebnerBasis) -> str:
    return str(G)


def as_monomial(I: Ideal) -> MonomialIdeal:
    gens = I.gb.generators
    if not all(g.is_monomial() for g in gens):
        raise SympowError(f"{format_ideal(I)} is not a monomial ideal")
    return MonomialIdeal(I.ring, [g.lm for g in gens])


def symbolic_power(I: Ideal, n: int) -> Ideal:
    M = as_monomial(I)
    if not M.is_squarefree():
        raise SympowError("symbolic powers inside expressions need a squarefree monomial ideal; "
                          "use 'sympow NAME n WITNESS' for a prime")
    from .symbolic import symbolic_power_monomial

    return symbolic_power_monomial(M, n).to_ideal()


class Interpreter:
    def __init__(self, script: Script, p_value: int = 2):
        self.script = script
        self.ring: PolyRing = script.ring
        self.env = script.env
        self.p_value = p_value
        self._ideals: dict = {}

    # -- evaluation -----------------------------------------------------------------

    def ideal(self, expr: IdealExpr) -> Ideal:
        op, args = expr.op, expr.args
        if op == "name":
            name = args[0]
            if name not in self._ideals:
                value = self.env[name]
                if not isinstance(value, IdealExpr):
                    raise SympowError(f"{name} is a polynomial, not an ideal")
                self._ideals[name] = self.ideal(value)
            return self._ideals[name]
        if op == "gens":
            return Ideal(self.ring, args)
        if op == "sum":
            return self.ideal(args[0]) + self.ideal(args[1])
        if op == "meet":
            return intersect(self.ideal(args[0]), self.ideal(args[1]))
        if op == "prod":
            return self.ideal(args[0]) * self.ideal(args[1])
        if op == "pow":
            return ideal_power(self.ideal(args[0]), args[1])
        if op == "sym":
            return symbolic_power(self.ideal(args[0]), args[1])
        raise SympowError(f"unknown ideal operation {op!r}")  # pragma: no cover

    def _ideal_arg(self, arg) -> Ideal:
        try:
            return self.ideal(parse_ideal_expr(arg.text, self.ring, self.env))
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[-1], arg.line, arg.col + max(exc.column, 1) - 1) from None

    def _poly_arg(self, arg) -> Polynomial:
        try:
            return parse_polynomial(arg.text, self.ring, self.env)
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[-1], arg.line, arg.col + max(exc.column, 1) - 1) from None

    @staticmethod
    def _int_arg(arg) -> int:
        try:
            return int(arg.text)
        except ValueError:
            raise ParseError(f"expected an integer, found {arg.text!r}", arg.line, arg.col) from None

    @staticmethod
    def _rational_arg(arg) -> Fraction:
        try:
            return parse_rational(arg.text)
        except ParseError:
            raise ParseError(f"expected a rational number, found {arg.text!r}", arg.line, arg.col) from None

    # -- commands --------------------------------------------------------------------

    def run(self) -> list:
        out = []
        for st in self.script.statements:
            if st.kind != "command":
                continue
            handler = getattr(self, "cmd_" + st.name.replace("-", "_"))
            need = ARITY[st.name]
            if not need[0] <= len(st.args) <= need[1]:
                want = str(need[0]) if need[0] == need[1] else f"{need[0]}-{need[1]}"
                raise ParseError(f"{st.name} takes {want} argument(s), got {len(st.args)}", st.line, st.col)
            try:
                res = handler(*st.args)
            except ParseError:
                raise
            except SympowError as exc:
                raise type(exc)(f"line {st.line}: {st.name}: {exc}") from None
            res.command, res.line = st.name, st.line
            out.append(res)
        return out

    def _res(self, text, data=None, failed=False) -> CommandResult:
        return CommandResult("", 0, text, text if data is None else data, failed)

    def cmd_gb(self, a):
        G = self._ideal_arg(a).gb
        return self._res(format_gb(G), [str(g) for g in G.generators])

    def cmd_print(self, a):
        return self._res(format_ideal(self._ideal_arg(a)))

    def cmd_sum(self, a, b):
        return self._res(format_ideal(self._ideal_arg(a) + self._ideal_arg(b)))

    def cmd_product(self, a, b):
        return self._res(format_ideal(self._ideal_arg(a) * self._ideal_arg(b)))

    def cmd_power(self, a, n):
        return self._res(format_ideal(ideal_power(self._ideal_arg(a), self._int_arg(n))))

    def cmd_intersect(self, a, b):
        return self._res(format_ideal(intersect(self._ideal_arg(a), self._ideal_arg(b))))

    def cmd_colon(self, a, f):
        return self._res(format_ideal(colon(self._ideal_arg(a), self._poly_arg(f))))

    def cmd_saturate(self, a, f):
        return self._res(format_ideal(saturate(self._ideal_arg(a), self._poly_arg(f))))

    def cmd_sympow(self, a, n, witness=None):
        I = self._ideal_arg(a)
        k = self._int_arg(n)
        if witness is None:
            return self._res(format_ideal(symbolic_power(I, k)))
        from .symbolic import symbolic_power_prime

        Q = Ideal(self.ring, I.generators, gb=I.gb, primality="asserted-prime")
        res = symbolic_power_prime(Q, k, self._poly_arg(witness))
        text = format_ideal(res.ideal)
        return self._res(f"{text}  # {res.certainty}", {"ideal": text, "certainty": res.certainty})

    def cmd_contain(self, a, b):
        ok = contains(self._ideal_arg(a), self._ideal_arg(b))
        return self._res(str(ok).lower(), ok)

    def cmd_equal(self, a, b):
        ok = equals(self._ideal_arg(a), self._ideal_arg(b))
        return self._res(str(ok).lower(), ok)

    def cmd_member(self, f, a):
        ok = self._poly_arg(f) in self._ideal_arg(a)
        return self._res(str(ok).lower(), ok)

    def cmd_radical_member(self, f, a):
        ok = radical_membership(self._poly_arg(f), self._ideal_arg(a))
        return self._res(str(ok).lower(), ok)

    def cmd_closure(self, a):
        return self._res(str(integral_closure(as_monomial(self._ideal_arg(a)))))

    def cmd_multiplier(self, a, t):
        return self._res(str(multiplier_ideal_monomial(as_monomial(self._ideal_arg(a)), self._rational_arg(t))))

    def cmd_testideal_snc(self, f, t):
        from .snc import MixedModel, SncMonomial, snc_test_ideal

        model = MixedModel(self.ring, self.p_value)
        poly = self._poly_arg(f)
        if not poly.is_monomial() or poly.lc != 1:
            raise SympowError(f"{poly} is not a monic monomial")
        tau = snc_test_ideal(model, SncMonomial(poly.lm), self._rational_arg(t))
        (e,) = tau.exponents
        return self._res(str(self.ring.monomial(e)))

    def cmd_minprimes(self, a):
        M = as_monomial(self._ideal_arg(a))
        primes = minimal_primes_squarefree(M)
        lines = ["(" + ", ".join(P) + ")" for P in primes]
        lines.append(f"height {height(M)}, big height {big_height(M)}")
        return self._res("\n".join(lines), {"primes": [list(P) for P in primes], "height": height(M),
                                             "big_height": big_height(M)})

    def cmd_rees(self, a):
        from .blowup import rees_presentation

        rees = rees_presentation(self._ideal_arg(a))
        return self._res(f"{rees.ring.spec()}: {rees.ideal}", [str(g) for g in rees.ideal.generators])

    def cmd_chart(self, a, i):
        from .blowup import chart, rees_presentation

        ch = chart(rees_presentation(self._ideal_arg(a)), self._int_arg(i))
        gens = "{" + ", ".join(str(g) for g in ch.generators) + "}"
        return self._res(f"{ch.ring.spec()}: {gens}", [str(g) for g in ch.generators])

    def cmd_kcanonical(self, d):
        from .blowup import relative_canonical_maxideal

        k = relative_canonical_maxideal(self._int_arg(d))
        return self._res(f"{k}*E", k)

    def cmd_asymptotic(self, a, n, kind=None):
        from .asymptotic import GradedSequence, asymptotic_ideal

        M = as_monomial(self._ideal_arg(a))
        which = kind.text if kind is not None else "symbolic"
        if which == "powers":
            seq = GradedSequence.powers(M)
        elif which == "symbolic":
            seq = GradedSequence.symbolic_powers(M)
        else:
            raise ParseError(f"sequence must be 'powers' or 'symbolic', not {which!r}", kind.line, kind.col)
        res = asymptotic_ideal(seq, self._int_arg(n))
        return self._res(f"{res.ideal}  # l*={res.l_star}", {"ideal": str(res.ideal), "l_star": res.l_star})

    def cmd_pipeline(self, a, m):
        from .asymptotic import main_theorem_pipeline

        rep = main_theorem_pipeline(as_monomial(self._ideal_arg(a)), self._int_arg(m))
        data = [{"link": link.name, "level": link.level, "passed": link.passed} for link in rep.links]
        return self._res(rep.summary(), {"h": rep.h, "m": rep.m, "links": data}, not rep.holds)


ARITY = {
    "gb": (1, 1), "print": (1, 1), "sum": (2, 2), "product": (2, 2), "power": (2, 2),
    "intersect": (2, 2), "colon": (2, 2), "saturate": (2, 2), "sympow": (2, 3), "contain": (2, 2),
    "equal": (2, 2), "member": (2, 2), "radical-member": (2, 2), "closure": (1, 1), "multiplier": (2, 2),
    "testideal-snc": (2, 2), "minprimes": (1, 1), "rees": (1, 1), "chart": (2, 2), "kcanonical": (1, 1),
    "asymptotic": (2, 3), "pipeline": (2, 2),
}


def execute(script: Script, p_value: int = 2) -> list:
    return Interpreter(script, p_value).run()
