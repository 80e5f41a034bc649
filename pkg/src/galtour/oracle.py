"""Independent brute-force reference implementations.

Every decision procedure in the main path has a literal counterpart
here: galtourability by depth-first search over normal-step chains,
intourability by checking both defining conditions over every
intermediate field, composition towers by exhaustive chain enumeration,
and the refinement predicates by direct quantifier evaluation.  The
oracles share only permgroup primitives with the main path, never the
decision logic under test.

Oracles favour clarity over speed and may be exponential; the agreement
suite aggregates their verdicts into a machine-readable matrix.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import dissociation as dis
from . import galois as gal
from . import permgroup as pg
from . import towers as tw
from .dissociation import TheoremViolation
from .galois import FieldRef, GaloisContext
from .permgroup import Subgroup
from .towers import Tower


@dataclass(frozen=True)
class OracleReport:
    instance: str
    operation: str
    agreement: bool
    counterexample: Optional[str] = None

    def __post_init__(self):
        if self.agreement == (self.counterexample is not None):
            raise ValueError("counterexample present iff agreement is false")

    def to_dict(self) -> dict:
        out = {"instance": self.instance, "operation": self.operation,
               "agreement": self.agreement}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


_literal_normal_memo: dict = {}


def literal_is_normal(A: Subgroup, B: Subgroup) -> bool:
    """Direct conjugation scan over all of A and B (no generator shortcut)."""
    key = (id(A.parent), A.key, B.key)
    hit = _literal_normal_memo.get(key)
    if hit is None:
        tab = A.parent.table
        inv = A.parent.inverses
        hit = all(tab[tab[b][a]][inv[b]] in A.indices
                  for b in B.key for a in A.key)
        _literal_normal_memo[key] = hit
    return hit


# ---------------------------------------------------------------------------
# galtourability by literal chain search


def bf_galtourable(ctx: GaloisContext, E: FieldRef, F: FieldRef) -> bool:
    """Search for a strictly descending normal-step chain Gal(N/F) -> Gal(N/E)."""
    if not F <= E:
        raise gal.GaloisError("bf_galtourable requires F <= E")
    target = E.subgroup
    dead: set = set()

    def reachable(A: Subgroup) -> bool:
        if A == target:
            return True
        if A.key in dead:
            return False
        for B in ctx.subgroups:
            if (target.mask & B.mask == target.mask
                    and B.mask & A.mask == B.mask and B.key != A.key
                    and pg.is_normal(B, A) and reachable(B)):
                return True
        dead.add(A.key)
        return False

    return reachable(F.subgroup)


def bf_smallest_subnormal(H: Subgroup, B: Subgroup) -> Subgroup:
    """Smallest subgroup of B containing H that is subnormal in B.

    Exhaustive: tests every candidate by chain search, smallest order
    first.  Exists because B itself is subnormal in B.
    """
    G = H.parent
    subs = pg.all_subgroups(G)
    candidates = sorted(
        (sg for sg in subs
         if H.mask & sg.mask == H.mask and sg.mask & B.mask == sg.mask),
        key=Subgroup.sort_key)
    memo: dict = {}

    def subnormal_in(A: Subgroup, top: Subgroup) -> bool:
        if A == top:
            return True
        key = (A.key, top.key)
        if key not in memo:
            memo[key] = False  # breaks cycles; chains strictly descend anyway
            memo[key] = any(sg.key != top.key
                            and A.mask & sg.mask == A.mask
                            and sg.mask & top.mask == sg.mask
                            and literal_is_normal(sg, top) and subnormal_in(A, sg)
                            for sg in subs)
        return memo[key]

    for cand in candidates:
        if subnormal_in(cand, B):
            return cand
    raise AssertionError("unreachable: B is subnormal in itself")


# ---------------------------------------------------------------------------
# intourability by literal double condition


def _literal_galsimple(ctx: GaloisContext, E: FieldRef, F: FieldRef) -> bool:
    if E == F:
        return False
    SE, SF = E.subgroup, F.subgroup
    for sg in ctx.subgroups:
        if (SE.mask & sg.mask == SE.mask and sg.mask & SF.mask == sg.mask
                and sg.key not in (SE.key, SF.key) and literal_is_normal(sg, SF)):
            return False
    return True


def bf_intourability(ctx: GaloisContext, L: FieldRef, K: FieldRef) -> tuple:
    """All fields satisfying both defining conditions of the M field.

    Returns ``(M, count)``; any count other than one is a theorem
    violation and raised as such.
    """
    if not K <= L:
        raise gal.GaloisError("bf_intourability requires K <= L")
    hits = []
    for M in ctx.interval_fields(K, L):
        if not bf_galtourable(ctx, M, K):
            continue
        sub_ok = (L == M) or (_literal_galsimple(ctx, L, M)
                              and not literal_is_normal(L.subgroup, M.subgroup))
        if sub_ok:
            hits.append(M)
    if len(hits) != 1:
        raise TheoremViolation(
            f"intourability count = {len(hits)} for {L.name}/{K.name}: "
            f"{[m.name for m in hits]}")
    return hits[0], 1


# ---------------------------------------------------------------------------
# composition towers by exhaustive chain enumeration


def bf_composition_towers(ctx: GaloisContext, L: FieldRef, K: FieldRef,
                          max_interval: int = 200) -> list:
    """Every strict Galois tower of L/K whose marches are all galsimple."""
    if not K <= L:
        raise gal.GaloisError("bf_composition_towers requires K <= L")
    interval = ctx.interval_fields(K, L)
    if len(interval) > max_interval:
        raise pg.BoundExceeded(
            f"interval has {len(interval)} subgroups > {max_interval}")
    SL = L.subgroup
    subs = [f.subgroup for f in interval]

    def steps(A: Subgroup) -> list:
        cands = [B for B in subs
                 if B.mask & A.mask == B.mask and B.key != A.key
                 and SL.mask & B.mask == SL.mask and literal_is_normal(B, A)]
        # galsimple marche: no strictly intermediate C normal in A
        out = []
        for B in cands:
            if not any(B.mask & C.mask == B.mask and C.mask & A.mask == C.mask
                       and C.key not in (A.key, B.key) and literal_is_normal(C, A)
                       for C in subs):
                out.append(B)
        return out

    towers: list = []

    def descend(chain: list):
        if chain[-1] == SL:
            towers.append(Tower(ctx, [ctx.field_of(sg) for sg in chain]))
            return
        for B in steps(chain[-1]):
            descend(chain + [B])

    descend([K.subgroup])
    return towers


# ---------------------------------------------------------------------------
# refinement predicates by literal quantifier evaluation


def _literal_refines(e: Tower, f: Tower) -> bool:
    m, n = f.height, e.height
    if m > n:  # (RAF1)
        return False
    return any(all(e.fields[j] == f.fields[i] for i, j in enumerate(combo))
               for combo in itertools.combinations(range(n + 1), m + 1))


def _literal_proper(e: Tower, f: Tower) -> bool:
    return any(all(e.fields[j] != fi for fi in f.fields)
               for j in range(1, len(e.fields) - 1))


def _literal_galois_refinement(e: Tower, f: Tower) -> bool:
    for j in range(1, len(e.fields) - 1):
        if all(e.fields[j] != fi for fi in f.fields):
            if not gal.is_galois(e.ctx, e.fields[j], e.fields[j - 1]):
                return False
    return True


def enumerate_towers(ctx: GaloisContext, K: FieldRef, L: FieldRef,
                     max_height: int, cap: int = 4000) -> list:
    """All towers of L/K with height <= max_height, in DFS order."""
    if not K <= L:
        raise gal.GaloisError("enumerate_towers requires K <= L")
    interval = ctx.interval_fields(K, L)
    out: list = []

    def extend(prefix: list):
        if len(out) >= cap:
            return
        if prefix[-1] == L:
            out.append(Tower(ctx, prefix))
            # may still grow by repeating L
        if len(prefix) == max_height + 1:
            return
        for nxt in interval:
            if prefix[-1] <= nxt:
                extend(prefix + [nxt])

    extend([K])
    return out[:cap]


def bf_refinement_predicates(ctx: GaloisContext, max_height: int,
                             base: Optional[FieldRef] = None,
                             top: Optional[FieldRef] = None,
                             sample: Optional[int] = 1000,
                             seed: int = 1729,
                             instance: str = "?") -> OracleReport:
    """Compare literal RAF evaluation with the towers-module predicates."""
    K = base if base is not None else ctx.base
    L = top if top is not None else ctx.distinguished
    towers = enumerate_towers(ctx, K, L, max_height)
    pairs = [(e, f) for e in towers for f in towers]
    if sample is not None and len(pairs) > sample:
        rng = random.Random(seed)
        pairs = rng.sample(pairs, sample)
    for e, f in pairs:
        lit = _literal_refines(e, f)
        main = tw.refinement_witness(e, f) is not None
        if lit != main:
            return OracleReport(instance, "refinement_predicates", False,
                                f"RAF1/RAF2 mismatch: e={e!r} f={f!r}")
        if not lit:
            continue
        checks = [
            ("RAF3", _literal_proper(e, f), tw.is_proper_refinement(e, f)),
            ("RAFT", not _literal_proper(e, f), tw.is_trivial_refinement(e, f)),
            ("RAFG", _literal_galois_refinement(e, f), tw.is_galois_refinement(e, f)),
        ]
        for tag, a, b in checks:
            if a != b:
                return OracleReport(instance, "refinement_predicates", False,
                                    f"{tag} mismatch: e={e!r} f={f!r}")
    return OracleReport(instance, "refinement_predicates", True)


# ---------------------------------------------------------------------------
# the open questions on galtourable quadrilaterals (empirical scan)


def quadrilateral_question_scan(ctx: GaloisContext,
                                instance: str = "?") -> OracleReport:
    """Scan the open questions over all galtourable quadrilaterals.

    Empirical research output, not a correctness gate: any counterexample
    found is recorded in the report.  In the Galois parallelogram
    sub-case all answers are affirmative.
    """
    fields = ctx.all_fields()
    counterexamples = []
    for Kf in fields:
        for Lf in fields:
            J = gal.intersect_fields(ctx, Kf, Lf)
            N = gal.compositum(ctx, Kf, Lf)
            if not (dis.is_galtourable(ctx, Kf, J) and dis.is_galtourable(ctx, Lf, J)
                    and dis.is_galtourable(ctx, N, Kf)
                    and dis.is_galtourable(ctx, N, Lf)):
                continue
            for F in ctx.interval_fields(J, Lf):
                if gal.intersect_fields(ctx, gal.compositum(ctx, Kf, F), Lf) != F:
                    counterexamples.append(
                        f"Q1: KF cap L != F at (K={Kf.name}, L={Lf.name}, F={F.name})")
            for E in ctx.interval_fields(Kf, N):
                EL = gal.intersect_fields(ctx, E, Lf)
                if not dis.is_galtourable(ctx, E, EL):
                    counterexamples.append(
                        f"Q2-1: E not galtourable over E cap L at "
                        f"(K={Kf.name}, L={Lf.name}, E={E.name})")
                if dis.is_galtourable(ctx, E, Kf):
                    if gal.compositum(ctx, Kf, EL) != E:
                        counterexamples.append(
                            f"Q2-2-1: K(E cap L) != E at "
                            f"(K={Kf.name}, L={Lf.name}, E={E.name})")
                    if not dis.is_galtourable(ctx, EL, J):
                        counterexamples.append(
                            f"Q2-2-2: E cap L not galtourable over J at "
                            f"(K={Kf.name}, L={Lf.name}, E={E.name})")
    if counterexamples:
        return OracleReport(instance, "quadrilateral_questions", False,
                            "; ".join(counterexamples[:5]))
    return OracleReport(instance, "quadrilateral_questions", True)


# ---------------------------------------------------------------------------
# the agreement suite


def _agree_galtourable(ctx, instance) -> OracleReport:
    for F in ctx.all_fields():
        for E in ctx.all_fields():
            if not F <= E:
                continue
            if dis.is_galtourable(ctx, E, F) != bf_galtourable(ctx, E, F):
                return OracleReport(instance, "is_galtourable", False,
                                    f"({E.name}, {F.name})")
    return OracleReport(instance, "is_galtourable", True)


def _agree_galsimple(ctx, instance) -> OracleReport:
    for F in ctx.all_fields():
        for E in ctx.all_fields():
            if not F <= E:
                continue
            if dis.is_galsimple(ctx, E, F) != _literal_galsimple(ctx, E, F):
                return OracleReport(instance, "is_galsimple", False,
                                    f"({E.name}, {F.name})")
    return OracleReport(instance, "is_galsimple", True)


def _agree_intourability(ctx, instance) -> OracleReport:
    K = ctx.base
    for L in ctx.all_fields():
        try:
            M, count = bf_intourability(ctx, L, K)
        except TheoremViolation as exc:
            return OracleReport(instance, "intourability", False, str(exc))
        main = dis.intourability_field(ctx, L, K)
        if main.M != M:
            return OracleReport(instance, "intourability", False,
                                f"L={L.name}: main {main.M.name} != oracle {M.name}")
    return OracleReport(instance, "intourability", True)


def run_agreement_suite(instances: dict, max_height: int = 3,
                        sample: int = 500) -> dict:
    """Oracle-vs-main agreement matrix over named contexts.

    Returns a JSON-ready dict; ``all_agree`` is the CI gate.
    """
    matrix = {}
    for name in sorted(instances):
        ctx = instances[name]
        reports = [
            _agree_galtourable(ctx, name),
            _agree_galsimple(ctx, name),
            bf_refinement_predicates(ctx, max_height, sample=sample,
                                     instance=name),
            _agree_intourability(ctx, name),
        ]
        matrix[name] = {r.operation: r.to_dict() for r in reports}
    all_agree = all(cell["agreement"]
                    for inst in matrix.values() for cell in inst.values())
    return {"instances": matrix, "all_agree": all_agree}
