"""Every algebra, product table, form and bivector behind the reproduction suite.

Parametrised tables take exact parameters (anything :func:`to_scalar` accepts).
Basis orders: e(2) is (e1, e2, d); the oscillator algebra is (e0, e1, e2, d);
aff(R) is (e1, e2); the dual of the oscillator is (e0*, e1*, e2*, d*).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .algebra import BilinearForm, ProductTable, StructureConstants
from .linalg import to_scalar

half = Fraction(1, 2)

E2_BASIS = ("e1", "e2", "d")
OSC_BASIS = ("e0", "e1", "e2", "d")
AFF_BASIS = ("e1", "e2")
OSC_DUAL_BASIS = ("e0*", "e1*", "e2*", "d*")

# default parameter samples for for-all-parameter claims
ALPHA_SAMPLES = (Fraction(-1), Fraction(1, 2), Fraction(2))
TS_SAMPLES = (Fraction(0), Fraction(1), Fraction(3, 2))
Q_DEFAULT = half


def oscillator_algebra() -> StructureConstants:
    return StructureConstants.from_brackets(
        OSC_BASIS, {("e1", "e2"): {"e0": 1}, ("d", "e1"): {"e2": 1}, ("d", "e2"): {"e1": -1}}, "o"
    )


def e2_algebra() -> StructureConstants:
    return StructureConstants.from_brackets(E2_BASIS, {("d", "e1"): {"e2": 1}, ("d", "e2"): {"e1": -1}}, "e(2)")


def aff_algebra() -> StructureConstants:
    return StructureConstants.from_brackets(AFF_BASIS, {("e1", "e2"): {"e2": 1}}, "aff(R)")


def heisenberg_algebra() -> StructureConstants:
    return StructureConstants.from_brackets(("e0", "e1", "e2"), {("e1", "e2"): {"e0": 1}}, "h3")


def abelian(n: int) -> StructureConstants:
    return StructureConstants.abelian(n)


# ---- left-symmetric products on e(2) ---------------------------------------

def e2_F1(alpha=0) -> ProductTable:
    a = to_scalar(alpha)
    return ProductTable.from_products(E2_BASIS, {
        ("e1", "d"): {"e1": a},
        ("e2", "d"): {"e2": a},
        ("d", "e1"): {"e1": a, "e2": 1},
        ("d", "e2"): {"e1": -1, "e2": a},
        ("d", "d"): {"d": a},
    }, f"F1({a})")


def e2_F2(alpha=1) -> ProductTable:
    a = to_scalar(alpha)
    return ProductTable.from_products(E2_BASIS, {
        ("d", "e1"): {"e2": 1},
        ("d", "e2"): {"e1": -1},
        ("d", "d"): {"d": a},
    }, f"F2({a})")


def e2_F3() -> ProductTable:
    return ProductTable.from_products(E2_BASIS, {
        ("e1", "e1"): {"d": 1},
        ("e2", "e2"): {"d": 1},
        ("d", "e1"): {"e2": 1},
        ("d", "e2"): {"e1": -1},
    }, "F3")


def e2_F4() -> ProductTable:
    u = {"e1": 1, "e2": 2, "d": -1}
    return ProductTable.from_products(E2_BASIS, {
        ("e1", "e1"): u,
        ("e1", "d"): u,
        ("e2", "e2"): u,
        ("e2", "d"): {"e1": 2, "e2": 4, "d": -2},
        ("d", "e1"): {"e1": 1, "e2": 3, "d": -1},
        ("d", "e2"): {"e1": 1, "e2": 4, "d": -2},
        ("d", "d"): {"e1": 3, "e2": 11, "d": -5},
    }, "F4")


# ---- left-symmetric products on the oscillator algebra ---------------------

def _osc_common(t, q) -> dict:
    return {
        ("e1", "e1"): {"e0": t},
        ("e1", "e2"): {"e0": q},
        ("e2", "e1"): {"e0": -q},
        ("e2", "e2"): {"e0": t},
        ("d", "e1"): {"e2": 1},
        ("d", "e2"): {"e1": -1},
    }


def osc_F1(t=0, s=0, q=Q_DEFAULT) -> ProductTable:
    t, s, q = map(to_scalar, (t, s, q))
    table = _osc_common(t, q)
    table[("d", "d")] = {"e0": s}
    return ProductTable.from_products(OSC_BASIS, table, f"F1(0,{t},{s},{q})")


def osc_F2(alpha=1, t=0, q=Q_DEFAULT) -> ProductTable:
    a, t, q = map(to_scalar, (alpha, t, q))
    table = _osc_common(t, q)
    table[("d", "d")] = {"d": a}
    return ProductTable.from_products(OSC_BASIS, table, f"F2({a},{t},{q})")


def osc_F3(q=Q_DEFAULT) -> ProductTable:
    q = to_scalar(q)
    return ProductTable.from_products(OSC_BASIS, {
        ("e1", "e1"): {"d": 1},
        ("e1", "e2"): {"e0": q},
        ("e2", "e1"): {"e0": -q},
        ("e2", "e2"): {"d": 1},
        ("d", "e1"): {"e2": 1},
        ("d", "e2"): {"e1": -1},
    }, f"F3({q})")


def osc_F4(q=Q_DEFAULT) -> ProductTable:
    q = to_scalar(q)
    h, quarter = half, Fraction(1, 4)
    return ProductTable.from_products(OSC_BASIS, {
        ("e1", "e1"): {"e1": h, "e2": 1, "d": -1},
        ("e1", "e2"): {"e0": q},
        ("e1", "d"): {"e0": q, "e1": quarter, "e2": h, "d": -h},
        ("e2", "e1"): {"e0": -q},
        ("e2", "e2"): {"e1": h, "e2": 1, "d": -1},
        ("e2", "d"): {"e0": -q / 2, "e1": h, "e2": 1, "d": -1},
        ("d", "e1"): {"e0": q, "e1": quarter, "e2": Fraction(3, 2), "d": -h},
        ("d", "e2"): {"e0": -q / 2, "e1": -h, "e2": 1, "d": -1},
        ("d", "d"): {"e1": Fraction(-3, 8), "e2": Fraction(7, 4), "d": Fraction(-5, 4)},
    }, f"F4({q})")


# ---- aff(R) ----------------------------------------------------------------

def aff_nabla1(alpha=1) -> ProductTable:
    """Family whose parallel coframe is (x^(a-1) dx, a/(a-1)(x^(a-1)-1) dx + dy)."""
    a = to_scalar(alpha)
    return ProductTable.from_products(AFF_BASIS, {
        ("e1", "e1"): {"e1": a, "e2": a},
        ("e1", "e2"): {"e2": 1},
    }, f"nabla1({a})")


def aff_nabla2(alpha=0) -> ProductTable:
    """Family whose parallel coframe is (x^(a-1) dx, a(y-x+1)x^(a-1) dx + x^a dy)."""
    a = to_scalar(alpha)
    return ProductTable.from_products(AFF_BASIS, {
        ("e1", "e1"): {"e1": a, "e2": -a},
        ("e1", "e2"): {"e2": a + 1},
        ("e2", "e1"): {"e2": a},
    }, f"nabla2({a})")


def aff_iso1() -> ProductTable:
    return ProductTable.from_products(AFF_BASIS, {("e1", "e1"): {"e1": -1}, ("e1", "e2"): {"e2": 1}}, "iso1")


def aff_iso2() -> ProductTable:
    return ProductTable.from_products(AFF_BASIS, {
        ("e1", "e1"): {"e1": -half},
        ("e1", "e2"): {"e2": half},
        ("e2", "e1"): {"e2": -half},
    }, "iso2")


def aff_hess_expected() -> ProductTable:
    """The Hess connection table as printed (identical to iso1)."""
    return ProductTable.from_products(AFF_BASIS, {("e1", "e1"): {"e1": -1}, ("e1", "e2"): {"e2": 1}}, "hess")


def aff_symplectic_product_expected() -> ProductTable:
    return ProductTable.from_products(AFF_BASIS, {("e1", "e1"): {"e1": -1}, ("e2", "e1"): {"e2": -1}}, "odot")


def aff_omega() -> BilinearForm:
    return BilinearForm.from_entries(2, {(0, 1): 1}, "antisymmetric", AFF_BASIS)


def aff_lorentz() -> BilinearForm:
    return BilinearForm.from_entries(2, {(0, 1): 1}, "symmetric", AFF_BASIS)


# ---- oscillator duals --------------------------------------------------------

def oscillator_bivector(a1=0, a2=0, a3=0):
    from .yang_baxter import Bivector

    a1, a2, a3 = map(to_scalar, (a1, a2, a3))
    return Bivector.from_entries(oscillator_algebra(), {(0, 1): a1, (0, 2): a2, (0, 3): a3})


def oscillator_invariant_metric() -> BilinearForm:
    """Ad-invariant Lorentz scalar product on o: <e1,e1> = <e2,e2> = <e0,d> = 1.

    Not derived from the other data; this is a conventional choice.
    """
    return BilinearForm.from_entries(4, {(1, 1): 1, (2, 2): 1, (0, 3): 1}, "symmetric", OSC_BASIS)


def osc_dual_omega() -> BilinearForm:
    """omega(e1*, e2*) = omega(e0*, d*) = 1, the two planes omega-orthogonal."""
    return BilinearForm.from_entries(4, {(1, 2): 1, (0, 3): 1}, "antisymmetric", OSC_DUAL_BASIS)


def osc_dual_bracket_expected(a1=0, a2=0, a3=0) -> StructureConstants:
    a1, a2, a3 = map(to_scalar, (a1, a2, a3))
    return StructureConstants.from_brackets(OSC_DUAL_BASIS, {
        ("e0*", "e1*"): {"d*": -a2, "e2*": a3},
        ("e0*", "e2*"): {"d*": a1, "e1*": -a3},
    }, "o*(r)")


def osc_dual_product_expected(a1=0, a2=0, a3=0) -> ProductTable:
    a1, a2, a3 = map(to_scalar, (a1, a2, a3))
    return ProductTable.from_products(OSC_DUAL_BASIS, {
        ("e0*", "e0*"): {"e1*": a2, "e2*": -a1},
        ("e0*", "e1*"): {"d*": -a2, "e2*": a3},
        ("e0*", "e2*"): {"d*": a1, "e1*": -a3},
    }, "r-dual product")


def osc_symplectic_products_printed(a1=0, a2=0, a3=0) -> dict[tuple[str, str], dict[str, Fraction]]:
    """The five products displayed for omega(xy, z) = -omega(y, [x, z]), verbatim."""
    a1, a2, a3 = map(to_scalar, (a1, a2, a3))
    return {
        ("e0*", "e2*"): {"e1*": -a3},
        ("e1*", "e1*"): {"d*": -a3},
        ("e2*", "e2*"): {"d*": -a3},
        ("e0*", "e0*"): {"e2*": -a2, "e0*": -a1},
        ("e0*", "e1*"): {"e2*": a3},
    }


def double_brackets_printed(a1=0, a2=0, a3=0) -> dict[tuple[str, str], dict[str, Fraction]]:
    """Brackets of D(o, r) as listed in the remark on double Lie groups."""
    a1, a2, a3 = map(to_scalar, (a1, a2, a3))
    return {
        ("e1", "e0*"): {"e2": -a3, "e2*": -1},
        ("e2", "e0*"): {"e1": a3, "e1*": 1},
        ("d", "e0*"): {"e1": -a2, "e2": a1},
        ("e2", "e1*"): {"e0": -a3, "d*": -1},
        ("d", "e1*"): {"e0": a2, "e2*": -1},
        ("e1", "e2*"): {"e0": a3, "d*": 1},
        ("d", "e2*"): {"e0": -a1, "e1*": -1},
        ("e0*", "e1*"): {"d*": -a2, "e2*": a3},
        ("e0*", "e2*"): {"d*": a1, "e1*": -a3},
        ("e1", "e2"): {"e0": 1},
        ("d", "e1"): {"e2": 1},
        ("d", "e2"): {"e1": -1},
    }


def dual_group_case(a1, a2, a3) -> str:
    a1, a2, a3 = map(to_scalar, (a1, a2, a3))
    if a1 == a2 == a3 == 0:
        return "abelian"
    if a3 != 0:
        return "cplx_semidirect"
    if a1 != 0 and a2 != 0:
        return "central_ext"
    return "heisenberg_x_line"


# ---- cohomology expectations ----------------------------------------------------

def h2_expected():
    """(product, dim H^2, representatives as elementary-matrix combos) per proposition."""
    E = lambda combo: BilinearForm.elementary(3, combo)  # noqa: E731
    return [
        ("F1(0)", e2_F1(0), 3, [E({(1, 2): 1, (2, 1): -1}), E({(2, 2): 1, (1, 1): 1}), E({(3, 3): 1})]),
        ("F1(2)", e2_F1(2), 0, []),
        ("F2(1)", e2_F2(1), 2, [E({(1, 1): 1, (2, 2): 1}), E({(1, 2): 1, (2, 1): -1})]),
        ("F3", e2_F3(), 1, [E({(1, 2): 1, (2, 1): -1})]),
        ("F4", e2_F4(), 1, [E({(1, 2): 1, (2, 1): -1, (1, 3): 2, (2, 3): -1})]),
    ]


# ---- registry ----------------------------------------------------------------------

@dataclass
class CatalogEntry:
    name: str
    lie: StructureConstants
    product: ProductTable | None = None
    forms: dict[str, BilinearForm] = field(default_factory=dict)
    bivector: object | None = None
    params: dict[str, Fraction] = field(default_factory=dict)


def _dual_entry(name, params, which):
    from .symplectic import product_from_symplectic
    from .yang_baxter import dual_bracket, dual_product

    a = [to_scalar(params.get(k, 0)) for k in ("a1", "a2", "a3")]
    r = oscillator_bivector(*a)
    lie = dual_bracket(r)
    if which == "r":
        prod = dual_product(r)
    else:
        prod = product_from_symplectic(osc_dual_omega(), lie)
    return CatalogEntry(name, lie, prod, {"omega": osc_dual_omega()}, r, dict(zip(("a1", "a2", "a3"), a)))


def _entry(name, lie, product=None, **kw):
    return lambda params: CatalogEntry(name, lie(), product(params) if product else None, **kw)


def _p(params, key, default):
    return to_scalar(params.get(key, default))


_REGISTRY: dict[str, tuple[Callable[[Mapping], CatalogEntry], tuple[str, ...]]] = {
    "oscillator": (lambda p: CatalogEntry("oscillator", oscillator_algebra(),
                                          forms={"metric": oscillator_invariant_metric()}), ()),
    "oscillator:F1": (lambda p: CatalogEntry("oscillator:F1", oscillator_algebra(),
                                             osc_F1(_p(p, "t", 0), _p(p, "s", 0), _p(p, "q", half))), ("t", "s", "q")),
    "oscillator:F2": (lambda p: CatalogEntry("oscillator:F2", oscillator_algebra(),
                                             osc_F2(_p(p, "alpha", 1), _p(p, "t", 0), _p(p, "q", half))),
                      ("alpha", "t", "q")),
    "oscillator:F3": (lambda p: CatalogEntry("oscillator:F3", oscillator_algebra(), osc_F3(_p(p, "q", half))), ("q",)),
    "oscillator:F4": (lambda p: CatalogEntry("oscillator:F4", oscillator_algebra(), osc_F4(_p(p, "q", half))), ("q",)),
    "e2": (lambda p: CatalogEntry("e2", e2_algebra()), ()),
    "e2:F1": (lambda p: CatalogEntry("e2:F1", e2_algebra(), e2_F1(_p(p, "alpha", 0))), ("alpha",)),
    "e2:F2": (lambda p: CatalogEntry("e2:F2", e2_algebra(), e2_F2(_p(p, "alpha", 1))), ("alpha",)),
    "e2:F3": (lambda p: CatalogEntry("e2:F3", e2_algebra(), e2_F3()), ()),
    "e2:F4": (lambda p: CatalogEntry("e2:F4", e2_algebra(), e2_F4()), ()),
    "aff": (lambda p: CatalogEntry("aff", aff_algebra(), forms={"omega": aff_omega(), "lorentz": aff_lorentz()}), ()),
    "aff:nabla1": (lambda p: CatalogEntry("aff:nabla1", aff_algebra(), aff_nabla1(_p(p, "alpha", 1))), ("alpha",)),
    "aff:nabla2": (lambda p: CatalogEntry("aff:nabla2", aff_algebra(), aff_nabla2(_p(p, "alpha", 0))), ("alpha",)),
    "aff:iso1": (lambda p: CatalogEntry("aff:iso1", aff_algebra(), aff_iso1(), {"omega": aff_omega()}), ()),
    "aff:iso2": (lambda p: CatalogEntry("aff:iso2", aff_algebra(), aff_iso2(), {"omega": aff_omega()}), ()),
    "aff:hess": (lambda p: CatalogEntry("aff:hess", aff_algebra(), aff_hess_expected(),
                                        {"omega": aff_omega(), "lorentz": aff_lorentz()}), ()),
    "heisenberg": (lambda p: CatalogEntry("heisenberg", heisenberg_algebra()), ()),
    "oscillator-dual": (lambda p: _dual_entry("oscillator-dual", p, "r"), ("a1", "a2", "a3")),
    "oscillator-dual:symplectic": (lambda p: _dual_entry("oscillator-dual:symplectic", p, "omega"),
                                   ("a1", "a2", "a3")),
}


def names() -> list[str]:
    return sorted(_REGISTRY) + ["abelianN (N = 1, 2, ...)"]


def get(name: str, params: Mapping | None = None) -> CatalogEntry:
    params = dict(params or {})
    if name.startswith("abelian") and name[len("abelian"):].isdigit():
        n = int(name[len("abelian"):])
        if n < 1:
            raise KeyError(name)
        basis = tuple(f"e{i}" for i in range(n))
        return CatalogEntry(name, StructureConstants.abelian(basis, name), ProductTable.zero(basis))
    if name not in _REGISTRY:
        raise KeyError(f"unknown catalog object {name!r}")
    builder, allowed = _REGISTRY[name]
    unknown = set(params) - set(allowed)
    if unknown:
        raise ValueError(f"{name} takes parameters {list(allowed)}, got unknown {sorted(unknown)}")
    entry = builder(params)
    entry.params = entry.params or {k: to_scalar(v) for k, v in params.items()}
    return entry


def acceptance_tables():
    """(label, product, algebra) for every table in the left-symmetry suite, over the default samples."""
    out = []
    e2, osc = e2_algebra(), oscillator_algebra()
    for a in ALPHA_SAMPLES:
        out.append((f"e2 F1({a})", e2_F1(a), e2))
        out.append((f"e2 F2({a})", e2_F2(a), e2))
    out.append(("e2 F3", e2_F3(), e2))
    out.append(("e2 F4", e2_F4(), e2))
    for t, s in itertools.product(TS_SAMPLES, repeat=2):
        out.append((f"o F1(0,{t},{s},1/2)", osc_F1(t, s), osc))
    for a, t in itertools.product(ALPHA_SAMPLES, TS_SAMPLES):
        out.append((f"o F2({a},{t},1/2)", osc_F2(a, t), osc))
    out.append(("o F3(1/2)", osc_F3(), osc))
    out.append(("o F4(1/2)", osc_F4(), osc))
    return out
