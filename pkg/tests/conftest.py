"""Shared fixtures: the shipped contexts and hypothesis settings."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

import galtour.galois as gal
import galtour.permgroup as pg
from galtour import presets
from galtour.permgroup import Permutation as P

settings.register_profile(
    "suite", max_examples=40, deadline=None,
    derandomize=True, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


def _klein_ctx():
    g = pg.generate(4, [P.from_cycles("(1 2)", 4), P.from_cycles("(3 4)", 4)])
    names = {
        g.full_subgroup(): "Q",
        g.generated_subgroup([g.index_of(P.from_cycles("(3 4)", 4))]): "Q(sqrt2)",
        g.generated_subgroup([g.index_of(P.from_cycles("(1 2)", 4))]): "Q(sqrt3)",
        g.generated_subgroup([g.index_of(P.from_cycles("(1 2)(3 4)", 4))]): "Q(sqrt6)",
        g.trivial_subgroup(): "Q(sqrt2,sqrt3)",
    }
    return gal.GaloisContext(g, distinguished=g.trivial_subgroup(), names=names)


def _c4_ctx():
    # cyclic quartic field, e.g. the degree-4 subfield of Q(zeta5)
    g = pg.generate(4, [P.from_cycles("(1 2 3 4)", 4)])
    return gal.GaloisContext(g, distinguished=g.trivial_subgroup(),
                             names={g.full_subgroup(): "Q"})


def _zeta15_ctx():
    # Gal(Q(zeta15)/Q) = (Z/15)* acting on the powers of zeta (0-based exponents)
    def unit_perm(s):
        return P([(k * s) % 15 for k in range(15)])
    g = pg.generate(15, [unit_perm(2), unit_perm(14)])
    assert g.order == 8

    def unit_sub(*ss):
        return g.subgroup(i for i in range(g.order)
                          if g.elements[i].images[1] in ss)
    names = {
        g.full_subgroup(): "Q",
        g.trivial_subgroup(): "Q(zeta15)",
        unit_sub(1, 4, 7, 13): "Q(zeta3)",   # fixes zeta^5: s = 1 mod 3
        unit_sub(1, 11): "Q(zeta5)",         # fixes zeta^3: s = 1 mod 5
        unit_sub(1, 4, 11, 14): "Q(sqrt5)",  # s = +-1 mod 5
    }
    return gal.GaloisContext(g, distinguished=g.trivial_subgroup(), names=names)


_RAW = {
    "klein": _klein_ctx,
    "c4": _c4_ctx,
    "zeta15": _zeta15_ctx,
}

_PRESETS_SMALL = [
    "radical:a=2,n=4",
    "radical:a=2,n=6",
    "radical:a=2,n=9",
    "cyclo-radical:n=1,d=3,l=2",
    "cyclo-radical:n=2,d=3,l=3",
    "cyclo-radical:n=1,d=9,l=2",
    "selmer-serre:n=3",
    "selmer-serre:n=4",
]

_cache: dict = {}


def get_ctx(name: str) -> gal.GaloisContext:
    if name not in _cache:
        _cache[name] = _RAW[name]() if name in _RAW else presets.load_instance(name)
    return _cache[name]


def small_contexts() -> dict:
    """Shipped contexts of order <= 60, by selector."""
    out = {name: get_ctx(name) for name in _RAW}
    out.update({sel: get_ctx(sel) for sel in _PRESETS_SMALL})
    return out


def contexts_up_to_120() -> dict:
    out = small_contexts()
    out["selmer-serre:n=5"] = get_ctx("selmer-serre:n=5")
    return out


def random_galois_tower(ctx, F, E, rng):
    """A random Galois tower from F to E: random normal descents that keep
    the target subnormal-reachable, with occasional repeated fields."""
    import galtour.towers as tw

    chain = [F.subgroup]
    target = E.subgroup
    while chain[-1] != target:
        cands = [sg for sg in ctx.subgroups
                 if target.mask & sg.mask == target.mask
                 and sg.mask & chain[-1].mask == sg.mask
                 and sg.key != chain[-1].key
                 and ctx.normal_in(sg, chain[-1])
                 and pg.subnormal_closure(target, sg)[0] == target]
        chain.append(rng.choice(cands))
    padded = []
    for sg in chain:
        padded.append(ctx.field_of(sg))
        if rng.random() < 0.2:
            padded.append(ctx.field_of(sg))
    return tw.make_tower(ctx, padded)


@pytest.fixture(scope="session")
def klein():
    return get_ctx("klein")


@pytest.fixture(scope="session")
def c4ctx():
    return get_ctx("c4")


@pytest.fixture(scope="session")
def zeta15():
    return get_ctx("zeta15")


@pytest.fixture(scope="session")
def r24():
    return get_ctx("radical:a=2,n=4")


@pytest.fixture(scope="session")
def r26():
    return get_ctx("radical:a=2,n=6")


@pytest.fixture(scope="session")
def r29():
    return get_ctx("radical:a=2,n=9")


@pytest.fixture(scope="session")
def cy233():
    return get_ctx("cyclo-radical:n=2,d=3,l=3")


@pytest.fixture(scope="session")
def ss3():
    return get_ctx("selmer-serre:n=3")


@pytest.fixture(scope="session")
def ss4():
    return get_ctx("selmer-serre:n=4")


@pytest.fixture(scope="session")
def ss5():
    return get_ctx("selmer-serre:n=5")
