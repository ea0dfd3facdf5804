"""Identity-database runner: parse a file of claimed equalities, evaluate
both sides to Balls, and assemble a verdict report.

File format: one entry per line, ``LHS == RHS``, with optional annotations
``@tol=1e-12`` and ``@tag=name`` after the expressions.  Lines starting
with ``#`` and blank lines are ignored.  Verdicts: ``pass`` when the
residual ball contains zero within the entry's tolerance on rigorous
radii, ``empirical-pass`` when it does so but an engineering-certificate
radius (an "empirical" ball) was involved, ``fail`` otherwise, ``error``
when an entry could not be parsed or evaluated.  Exit codes: 0 when every
entry passes, 1 when any fails, 2 when any errors.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from mpmath import mp, mpf

from .balls import Ball
from .compositions import SignedComposition
from .errors import EulersumError, OutOfRange
from .expressions import default_tolerance, eval_expr, parse, render
from .mzv import eval_mzv
from .precision import DEFAULT_CONTEXT, PrecisionContext

__all__ = [
    "IdentityEntry", "CheckOutcome", "CheckReport",
    "parse_identity_lines", "run_check", "conjecture_check",
    "CONJECTURE_TARGETS",
]

_REPORT_DIGITS = 25


@dataclass(frozen=True)
class IdentityEntry:
    """One claimed equality from an identity file."""

    line_no: int
    lhs_text: str
    rhs_text: str
    tol: str = ""
    tag: str = ""

    @property
    def text(self) -> str:
        return f"{self.lhs_text} == {self.rhs_text}"


@dataclass(frozen=True)
class CheckOutcome:
    """Evaluated entry: rendered claim, both sides, residual, verdict."""

    entry: str
    lhs: str
    rhs: str
    residual: str
    radius: str
    verdict: str
    ms: float
    tag: str = ""
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "entry": self.entry,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "radius": self.radius,
            "verdict": self.verdict,
            "ms": self.ms,
        }


@dataclass(frozen=True)
class CheckReport:
    """Ordered outcomes plus the exit-code contract."""

    outcomes: tuple

    @property
    def exit_code(self) -> int:
        verdicts = [o.verdict for o in self.outcomes]
        if any(v == "error" for v in verdicts):
            return 2
        if any(v.endswith("fail") for v in verdicts):
            return 1
        return 0

    def counts(self) -> dict:
        out = {}
        for o in self.outcomes:
            out[o.verdict] = out.get(o.verdict, 0) + 1
        return out

    def to_json(self) -> str:
        doc = [o.as_dict() for o in self.outcomes]
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        if not self.outcomes:
            return "no entries\n"
        width = min(72, max(len(o.entry) for o in self.outcomes))
        lines = []
        for o in self.outcomes:
            entry = o.entry if len(o.entry) <= width else o.entry[:width - 3] + "..."
            detail = f"  [{o.detail}]" if o.verdict == "error" else ""
            lines.append(f"{o.verdict:15s} {entry:{width}s} "
                         f"residual={o.residual:>12s} ({o.ms:7.1f} ms){detail}")
        total = self.counts()
        summary = ", ".join(f"{v} {k}" for k, v in sorted(total.items()))
        lines.append(f"{len(self.outcomes)} entries: {summary}")
        return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# identity-file parsing

def parse_identity_lines(lines) -> list:
    """Entries from an iterable of text lines; comments and blanks skipped."""
    entries = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tol = tag = ""
        parts = line.split("@")
        body = parts[0].strip()
        for annotation in parts[1:]:
            annotation = annotation.strip()
            if annotation.startswith("tol="):
                tol = annotation[4:].strip()
            elif annotation.startswith("tag="):
                tag = annotation[4:].strip()
            else:
                raise OutOfRange(
                    f"line {line_no}: unknown annotation @{annotation}")
        sides = body.split("==")
        if len(sides) != 2:
            raise OutOfRange(
                f"line {line_no}: expected exactly one '==', got {body!r}")
        entries.append(IdentityEntry(line_no, sides[0].strip(),
                                     sides[1].strip(), tol, tag))
    return entries


def _load_lines(source):
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8").splitlines()
    return list(source)


# ----------------------------------------------------------------------
# evaluation

def _nstr(x) -> str:
    return mp.nstr(mpf(x), _REPORT_DIGITS, strip_zeros=True)


def _evaluate_entry(job) -> CheckOutcome:
    lhs_text, rhs_text, tol_text, tag, digits, max_terms = job
    ctx = PrecisionContext(target_digits=digits, max_terms=max_terms)
    started = time.perf_counter()
    try:
        lhs_e = parse(lhs_text)
        rhs_e = parse(rhs_text)
        rendered = f"{render(lhs_e)} == {render(rhs_e)}"
        tol = mpf(tol_text) if tol_text else max(default_tolerance(lhs_e),
                                                 default_tolerance(rhs_e))
        lhs = eval_expr(lhs_e, ctx)
        rhs = eval_expr(rhs_e, ctx)
        with mp.workprec(ctx.working_prec_bits):
            residual = lhs - rhs
        ok = residual.contains(0) and residual.rad <= tol
        if ok:
            verdict = "empirical-pass" if residual.empirical else "pass"
        else:
            verdict = "fail"
        ms = (time.perf_counter() - started) * 1000.0
        return CheckOutcome(rendered, _nstr(lhs.mid), _nstr(rhs.mid),
                            _nstr(residual.mid), _nstr(residual.rad),
                            verdict, round(ms, 3), tag)
    except EulersumError as err:
        ms = (time.perf_counter() - started) * 1000.0
        return CheckOutcome(f"{lhs_text} == {rhs_text}", "", "", "", "",
                            "error", round(ms, 3), tag,
                            f"{type(err).__name__}: {err}")


def run_check(source, ctx: PrecisionContext = DEFAULT_CONTEXT,
              jobs: int = 1) -> CheckReport:
    """Evaluate every entry of an identity file (path or lines).

    Entries are independent, so with jobs > 1 they are fanned out to a
    process pool; outcomes keep file order either way.
    """
    entries = parse_identity_lines(_load_lines(source))
    payload = [(e.lhs_text, e.rhs_text, e.tol, e.tag,
                ctx.target_digits, ctx.max_terms) for e in entries]
    if jobs > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = tuple(pool.map(_evaluate_entry, payload))
    else:
        outcomes = tuple(_evaluate_entry(job) for job in payload)
    return CheckReport(outcomes)


# ----------------------------------------------------------------------
# conjecture probe

CONJECTURE_TARGETS = {1: mpf("1e-10"), 2: mpf("1e-8"), 3: mpf("1e-6")}


def conjecture_check(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> CheckOutcome:
    """Residual probe for the open question at repetition level n.

    Compares 8^n times the nested alternating sum on the repeated block
    (-2, 1) against the nested sum on the repeated block (3).  n = 1 is a
    proven identity and comes out rigorously small; n >= 2 relies on
    extrapolated deep-sum tails, so the verdict is always labelled
    empirical, with targets 1e-10, 1e-8, 1e-6 for n = 1, 2, 3.
    """
    if n not in CONJECTURE_TARGETS:
        raise OutOfRange(f"repetition level must be 1, 2, or 3, got {n}")
    target = CONJECTURE_TARGETS[n]
    alternating = SignedComposition([-2, 1] * n)
    plain = SignedComposition([3] * n)
    entry = (f"8^{n}*zeta({','.join(['-2,1'] * n)})"
             f" == zeta({','.join(['3'] * n)})")
    started = time.perf_counter()
    lhs = Ball.exact(8 ** n) * eval_mzv(alternating, ctx)
    rhs = eval_mzv(plain, ctx)
    with mp.workprec(ctx.working_prec_bits):
        residual = lhs - rhs
    ok = abs(residual.mid) <= target and residual.contains(0)
    ms = (time.perf_counter() - started) * 1000.0
    return CheckOutcome(entry, _nstr(lhs.mid), _nstr(rhs.mid),
                        _nstr(residual.mid), _nstr(residual.rad),
                        "empirical-pass" if ok else "empirical-fail",
                        round(ms, 3), tag=f"conjecture-n{n}",
                        detail=f"target {mp.nstr(target, 3)}")
