"""Decision procedures and constructions for the tower theorems.

Galtourability of E/F (existence of a Galois tower) is decided through
the group bridge: inside the closure, a Galois tower from F to E is the
same thing as a chain Gal(N/F) |> ... |> Gal(N/E) with each step normal
in the previous one, so E/F is galtourable exactly when Gal(N/E) is
subnormal in Gal(N/F), and the subnormal closure's descent chain doubles
as an explicit witness tower.

On top of the bridge sit the executable theorems: the unique
intourability field M(L/K) (maximal galtourable quotient, with L/M(L/K)
trivial or galsimple non-Galois), tourability degrees, the Galschreier
common refinement with its explicit index formulas and marche
permutation, Galois composition towers and their Jordan-Holder style
equivalence, elevation towers, and the general composition towers of an
arbitrary finite extension obtained by inducing from M(L/K)/K.

Everything is a pure function over immutable contexts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import galois as gal
from . import permgroup as pg
from . import towers as tw
from .galois import FieldRef, GaloisContext
from .permgroup import Subgroup
from .towers import Tower


class TheoremViolation(Exception):
    """An internal consistency check guaranteed by a theorem failed.

    Seeing this is always a bug report, never a user error.
    """


# ---------------------------------------------------------------------------
# galtourability and galsimplicity


def is_galtourable(ctx: GaloisContext, E: FieldRef, F: FieldRef) -> bool:
    """E/F admits a Galois tower iff Subgroup(E) is subnormal in Subgroup(F)."""
    gal._same_ctx(E, F)
    if not F <= E:
        raise gal.GaloisError("is_galtourable requires F <= E as fields")
    closure, _ = pg.subnormal_closure(E.subgroup, F.subgroup)
    return closure == E.subgroup


def galois_tower_witness(ctx: GaloisContext, E: FieldRef, F: FieldRef) -> Tower:
    """A strict Galois tower from F to E, read off the subnormal descent."""
    gal._same_ctx(E, F)
    if not F <= E:
        raise gal.GaloisError("galois_tower_witness requires F <= E")
    closure, chain = pg.subnormal_closure(E.subgroup, F.subgroup)
    if closure != E.subgroup:
        raise gal.GaloisError(f"{E.name}/{F.name} is not galtourable")
    t = Tower(ctx, [ctx.field_of(sg) for sg in chain])
    assert tw.is_strict(t) and tw.is_galois_tower(t)
    return t


def is_simple_ext(ctx: GaloisContext, E: FieldRef, F: FieldRef) -> bool:
    """No proper intermediate field: the interval has exactly 2 members."""
    gal._same_ctx(E, F)
    if not F <= E:
        raise gal.GaloisError("is_simple_ext requires F <= E")
    if E == F:
        return False
    return len(ctx.interval_fields(F, E)) == 2


def is_galsimple(ctx: GaloisContext, E: FieldRef, F: FieldRef) -> bool:
    """No proper Galois quotient: M/F Galois and F <= M <= E force M in {F, E}."""
    gal._same_ctx(E, F)
    if not F <= E:
        raise gal.GaloisError("is_galsimple requires F <= E")
    if E == F:
        return False
    SE, SF = E.subgroup, F.subgroup
    for sg in ctx.subgroups:
        if (SE.mask & sg.mask == SE.mask and sg.mask & SF.mask == sg.mask
                and sg.key not in (SE.key, SF.key)
                and ctx.normal_in(sg, SF)):
            return False
    return True


# ---------------------------------------------------------------------------
# the intourability field M(L/K)


@dataclass(frozen=True)
class TourabilityDegree:
    """([M(L/K):K], [L:M(L/K)]); the product is [L:K]."""
    gal: int
    int: int

    def as_pair(self) -> tuple:
        return (self.gal, self.int)


@dataclass(frozen=True)
class DissociationReport:
    M: FieldRef
    degrees: TourabilityDegree
    quotient_is_galtourable: bool
    sub_kind: str  # "trivial" | "galsimple_non_galois"
    witness_tower: Tower

    def to_dict(self) -> dict:
        return {
            "M": self.M.name,
            "deg_gal": self.degrees.gal,
            "deg_int": self.degrees.int,
            "sub_kind": self.sub_kind,
            "witness_tower": [f.name for f in self.witness_tower.fields],
        }


def intourability_field(ctx: GaloisContext, L: FieldRef, K: FieldRef) -> DissociationReport:
    """The unique M with M/K galtourable and L/M trivial or galsimple non-Galois.

    Computed as the field of the subnormal closure of Subgroup(L) in
    Subgroup(K); both defining conditions are then re-verified
    independently, and any failure is raised as :class:`TheoremViolation`.
    """
    gal._same_ctx(L, K)
    if not K <= L:
        raise gal.GaloisError("intourability_field requires K <= L")
    closure, chain = pg.subnormal_closure(L.subgroup, K.subgroup)
    M = ctx.field_of(closure)
    if not is_galtourable(ctx, M, K):
        raise TheoremViolation(f"M(L/K) = {M.name} is not galtourable over {K.name}")
    if L == M:
        sub_kind = "trivial"
    elif is_galsimple(ctx, L, M) and not gal.is_galois(ctx, L, M):
        sub_kind = "galsimple_non_galois"
    else:
        raise TheoremViolation(
            f"L/M = {L.name}/{M.name} is neither trivial nor galsimple non-Galois")
    degrees = TourabilityDegree(gal.degree(ctx, M, K), gal.degree(ctx, L, M))
    witness = Tower(ctx, [ctx.field_of(sg) for sg in chain])
    return DissociationReport(M, degrees, True, sub_kind, witness)


# ---------------------------------------------------------------------------
# bridge between Galois towers and normal series


def series_from_tower(t: Tower) -> list:
    """The normal subgroup chain Gal(N/F_i) induced by a Galois tower.

    Requires t.top/t.base Galois; the quotients of the chain by
    Subgroup(t.top) realize the normal series of Gal(top/base).
    """
    if not gal.is_galois(t.ctx, t.top, t.base):
        raise gal.GaloisError("series_from_tower requires a Galois extension")
    for lo, hi in t.marches():
        if not gal.is_galois(t.ctx, hi, lo):
            raise gal.GaloisError(f"non-Galois marche {hi.name}/{lo.name}")
    return [f.subgroup for f in t.fields]


def tower_from_series(ctx: GaloisContext, chain: Sequence[Subgroup]) -> Tower:
    """The Galois tower of fixed fields of a normal subgroup series."""
    chain = list(chain)
    if not chain:
        raise gal.GaloisError("empty series")
    for a, b in zip(chain, chain[1:]):
        if not b <= a:
            raise gal.GaloisError("series is not descending")
        if not ctx.normal_in(b, a):
            raise gal.GaloisError("non-normal step in series")
    return Tower(ctx, [ctx.field_of(sg) for sg in chain])


# ---------------------------------------------------------------------------
# Galschreier refinement


def _schreier_towers(t1: Tower, t2: Tower) -> tuple:
    """The two interleaved towers of the refinement formulas."""
    ctx = t1.ctx
    T1, T2 = t1.fields, t2.fields
    m, n = t1.height, t2.height
    L = t1.top
    out1 = []
    for l in range(m * n):
        q1, r1 = divmod(l, n)
        out1.append(gal.intersect_fields(
            ctx, T1[q1 + 1], gal.compositum(ctx, T1[q1], T2[r1])))
    out1.append(L)
    out2 = []
    for l in range(m * n):
        q2, r2 = divmod(l, m)
        out2.append(gal.intersect_fields(
            ctx, T2[q2 + 1], gal.compositum(ctx, T1[r2], T2[q2])))
    out2.append(L)
    return Tower(ctx, out1), Tower(ctx, out2)


def schreier_sigma(m: int, n: int) -> tuple:
    """The marche permutation of the refined towers, 1-based images.

    sigma(l) = r*m + q + 1 where l - 1 = q*n + r with 0 <= r < n; the
    identity whenever m = 1 or n = 1.
    """
    out = []
    for l in range(1, m * n + 1):
        q, r = divmod(l - 1, n)
        out.append(r * m + q + 1)
    return tuple(out)


def schreier_refine(t1: Tower, t2: Tower) -> tuple:
    """Equivalent Galois refinements of two Galois towers of L/K.

    Returns ``(r1, r2, witness)``: r1 refines t1 (indices i*n), r2
    refines t2 (indices j*m), both of height m*n, and the witness carries
    the explicit marche permutation together with a verified isomorphism
    per marche.  The theorem guarantees each isomorphism exists; a failed
    search is raised as :class:`TheoremViolation`.
    """
    if t1.ctx is not t2.ctx:
        raise tw.TowerError("towers belong to different contexts")
    if t1.base != t2.base or t1.top != t2.top:
        raise tw.TowerError("towers must share the same extension")
    for t in (t1, t2):
        for lo, hi in t.marches():
            if not gal.is_galois(t.ctx, hi, lo):
                raise tw.TowerError(f"non-Galois marche {hi.name}/{lo.name}")
    m, n = t1.height, t2.height
    if m < 1 or n < 1:
        raise tw.TowerError("schreier_refine requires heights >= 1")
    r1, r2 = _schreier_towers(t1, t2)
    w1 = tw.refinement_witness(r1, t1)
    w2 = tw.refinement_witness(r2, t2)
    if w1 is None or w2 is None:
        raise TheoremViolation("refinement formulas did not refine the inputs")
    if not (tw.is_galois_tower(r1) and tw.is_galois_tower(r2)):
        raise TheoremViolation("refinement formulas produced a non-Galois tower")
    sigma = schreier_sigma(m, n)
    q1 = tw.marche_groups(r1)
    q2 = tw.marche_groups(r2)
    isos = []
    for l in range(1, m * n + 1):
        phi = pg.isomorphism(q1[l - 1], q2[sigma[l - 1] - 1])
        if phi is None:
            raise TheoremViolation(f"marche {l} has no isomorphic partner")
        isos.append(phi)
    witness = tw.EquivalenceWitness(r1, r2, sigma, isos)
    return r1, r2, witness


def schreier_refine_strict(t1: Tower, t2: Tower) -> tuple:
    """Strict variant: strict associated towers, equivalence recomputed."""
    if not (tw.is_strict(t1) and tw.is_strict(t2)):
        raise tw.TowerError("schreier_refine_strict requires strict towers")
    r1, r2, _ = schreier_refine(t1, t2)
    s1 = tw.strict_associated(r1)
    s2 = tw.strict_associated(r2)
    witness = tw.equivalence_witness(s1, s2)
    if witness is None:
        raise TheoremViolation("strict associated refinements are not equivalent")
    return s1, s2, witness


def butterfly_parallelogram_check(t1: Tower, t2: Tower) -> bool:
    """The quadrilaterals behind the refinement are all parallelograms.

    For 0 <= i <= m-1 and 0 <= k < j <= n-1 the quadruple
    (T1_{i+1}T2_k cap T1_i T2_j, T1_{i+1}T2_{k+1} cap T1_i T2_j,
     T1_{i+1}T2_{k+1} cap T1_i T2_{j+1}, T1_{i+1}T2_k cap T1_i T2_{j+1})
    must form a Galois parallelogram.
    """
    ctx = t1.ctx
    T1, T2 = t1.fields, t2.fields
    m, n = t1.height, t2.height

    def mix(i, j):
        return gal.compositum(ctx, T1[i], T2[j])

    for i in range(m):
        for j in range(1, n):
            for k in range(j):
                J = gal.intersect_fields(ctx, mix(i + 1, k), mix(i, j))
                K = gal.intersect_fields(ctx, mix(i + 1, k + 1), mix(i, j))
                N = gal.intersect_fields(ctx, mix(i + 1, k + 1), mix(i, j + 1))
                L = gal.intersect_fields(ctx, mix(i + 1, k), mix(i, j + 1))
                try:
                    quad = gal.Quadrilateral(J, K, N, L)
                except gal.GaloisError:
                    return False
                if not gal.is_parallelogram(ctx, quad):
                    return False
    return True


# ---------------------------------------------------------------------------
# composition towers (Galois case)


def is_composition_tower_galois(t: Tower) -> bool:
    """Strict Galois tower with every marche galsimple."""
    if not tw.is_galois_tower(t):
        raise tw.TowerError("not a Galois tower")
    if not tw.is_strict(t):
        return False
    return all(is_galsimple(t.ctx, hi, lo) for lo, hi in t.marches())


def _least_maximal_normal_between(ctx: GaloisContext, top: Subgroup,
                                  bottom: Subgroup) -> Subgroup:
    """Least (canonical order) maximal B with bottom <= B < top, B normal in top."""
    candidates = [sg for sg in ctx.subgroups
                  if bottom.mask & sg.mask == bottom.mask
                  and sg.mask & top.mask == sg.mask
                  and sg.key != top.key
                  and ctx.normal_in(sg, top)]
    maximal = [b for b in candidates
               if not any(b.mask & c.mask == b.mask and b.key != c.key
                          for c in candidates)]
    if not maximal:
        raise TheoremViolation("no proper normal subgroup in a non-simple step")
    return min(maximal, key=Subgroup.sort_key)


def galjordanholder_refine(t: Tower) -> Tower:
    """Refine a strict Galois tower into a Galois composition tower.

    Each marche is refined independently by pulling back a composition
    series of its quotient group: repeatedly descend to the least maximal
    proper normal subgroup still containing the marche's top subgroup.
    """
    if not tw.is_strict(t) or not tw.is_galois_tower(t):
        raise tw.TowerError("galjordanholder_refine requires a strict Galois tower")
    ctx = t.ctx
    fields = [t.base]
    for lo, hi in t.marches():
        chain = [lo.subgroup]
        while chain[-1] != hi.subgroup:
            chain.append(_least_maximal_normal_between(ctx, chain[-1], hi.subgroup))
        fields.extend(ctx.field_of(sg) for sg in chain[1:])
    out = Tower(ctx, fields)
    assert tw.refinement_witness(out, t) is not None
    assert is_composition_tower_galois(out)
    return out


def composition_tower_galois(ctx: GaloisContext, L: FieldRef, K: FieldRef) -> Tower:
    """A Galois composition tower of a galtourable extension L/K."""
    return galjordanholder_refine(galois_tower_witness(ctx, L, K))


# ---------------------------------------------------------------------------
# elevation towers and the general case


def elevation_tower(ctx: GaloisContext, f: Tower) -> tuple:
    """The tower of intourability fields of f, and its induced tower to L.

    First output: M_i = M(F_i/K), a galtourable tower ending at M(L/K);
    second output: the induced tower of L/K (first output itself when L/K
    is galtourable).
    """
    K = f.base
    mfields = [intourability_field(ctx, Fi, K).M for Fi in f.fields]
    for a, b in zip(mfields, mfields[1:]):
        if not a <= b:
            raise TheoremViolation("elevation fields are not non-decreasing")
    mtower = Tower(ctx, mfields)
    for lo, hi in mtower.marches():
        if not is_galtourable(ctx, hi, lo):
            raise TheoremViolation("elevation marche is not galtourable")
    return mtower, tw.induced(mtower, f.top)


def is_elevation_tower(ctx: GaloisContext, e: Tower) -> bool:
    """e is an elevation tower iff induced by a galtourable tower of M(L/K)/K."""
    L, K = e.top, e.base
    M = intourability_field(ctx, L, K).M
    if M == L:
        return tw.is_galtourable_tower(e)
    if e.height < 1 or e.fields[-1] != L or e.fields[-2] != M:
        return False
    prefix = Tower(ctx, e.fields[:-1])
    return tw.is_galtourable_tower(prefix)


def is_composition_tower(ctx: GaloisContext, c: Tower) -> bool:
    """c is induced by a Galois composition tower of M(L/K)/K.

    In the galtourable case this is exactly the Galois notion; otherwise
    strip the final marche M(L/K) < L and test the prefix.
    """
    L, K = c.top, c.base
    M = intourability_field(ctx, L, K).M
    if M == L:
        return tw.is_galois_tower(c) and is_composition_tower_galois(c)
    if c.height < 1 or c.fields[-1] != L or c.fields[-2] != M:
        return False
    prefix = Tower(ctx, c.fields[:-1])
    return tw.is_galois_tower(prefix) and is_composition_tower_galois(prefix)


def composition_tower_general(ctx: GaloisContext, L: FieldRef, K: FieldRef) -> Tower:
    """A composition tower of any finite L/K, via its galtourable quotient."""
    M = intourability_field(ctx, L, K).M
    out = tw.induced(composition_tower_galois(ctx, M, K), L)
    assert is_composition_tower(ctx, out)
    return out


def _induced_prefix(ctx: GaloisContext, c: Tower, M: FieldRef) -> Tower:
    """Strip a tower induced from M(L/K)/K back to its prefix."""
    if c.top == M:
        return c
    if c.height < 1 or c.fields[-2] != M:
        raise tw.TowerError(
            f"not a tower induced from {M.name}: {c!r}")
    return Tower(ctx, c.fields[:-1])


def equivalence_general(ctx: GaloisContext, c1: Tower, c2: Tower) -> tuple:
    """Equivalence of towers induced by Galois towers of M(L/K)/K.

    Returns ``(equivalent, witness)``; the comparison strips both inputs
    to their M(L/K) prefixes and delegates to the Galois-tower notion.
    The final non-Galois marche carries no group and is not compared.
    """
    if c1.base != c2.base or c1.top != c2.top:
        raise tw.TowerError("towers must share the same extension")
    L, K = c1.top, c1.base
    M = intourability_field(ctx, L, K).M
    p1 = _induced_prefix(ctx, c1, M)
    p2 = _induced_prefix(ctx, c2, M)
    witness = tw.equivalence_witness(p1, p2)
    return witness is not None, witness


# ---------------------------------------------------------------------------
# exhaustive law checks


@dataclass(frozen=True)
class GalsimpleLawsReport:
    quotient_checks: int
    transitivity_checks: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def galsimple_laws_check(ctx: GaloisContext) -> GalsimpleLawsReport:
    """Exhaustively verify the two galsimplicity laws over the context.

    Law 1: every proper quotient of a galsimple extension is galsimple
    non-Galois.  Law 2: galsimple non-Galois extensions stack: F1/F0 and
    F2/F1 galsimple non-Galois imply F2/F0 galsimple non-Galois.
    """
    fields = ctx.all_fields()
    gns: dict = {}  # (lo, hi) -> galsimple-and-non-Galois
    gs: dict = {}
    for lo in fields:
        for hi in fields:
            if lo <= hi:
                g = is_galsimple(ctx, hi, lo)
                gs[(lo, hi)] = g
                gns[(lo, hi)] = g and not gal.is_galois(ctx, hi, lo)
    violations = []
    quotient_checks = 0
    for lo in fields:
        for hi in fields:
            if not (lo <= hi and gs[(lo, hi)]):
                continue
            for mid in ctx.interval_fields(lo, hi):
                if mid in (lo, hi):
                    continue
                quotient_checks += 1
                if not gns[(lo, mid)]:
                    violations.append(
                        ("quotient", lo.name, mid.name, hi.name))
    transitivity_checks = 0
    for f0 in fields:
        for f1 in fields:
            if not (f0 <= f1 and gns[(f0, f1)]):
                continue
            for f2 in fields:
                if not (f1 <= f2 and gns[(f1, f2)]):
                    continue
                transitivity_checks += 1
                if not gns[(f0, f2)]:
                    violations.append(
                        ("transitivity", f0.name, f1.name, f2.name))
    return GalsimpleLawsReport(quotient_checks, transitivity_checks,
                               tuple(violations))
