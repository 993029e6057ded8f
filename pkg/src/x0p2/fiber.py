"""Exact intersection calculus on the special fiber at p and its contraction to the minimal model.

The five-component fiber (two multiplicity-one curves C20/C02, the chain curve
C11 and the two low-genus tails E/F) is stored with its residue-class
intersection table in exact rationals, the log(p) scale factored out.
Contractions follow the (-1)-curve criterion; pullbacks and canonical degrees
are carried through each step so the fiber relation, kernel property and the
adjunction identity stay machine-checkable at every stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .modular import genus, is_prime
from .numerics import DomainError

COMPONENT_ORDER = ("C20", "C02", "C11", "E", "F")


@dataclass(frozen=True)
class Component:
    name: str
    multiplicity: int
    arith_genus: Fraction = Fraction(0)


@dataclass(frozen=True)
class FiberModel:
    p: int
    components: tuple[Component, ...]
    inter: tuple[tuple[Fraction, ...], ...]  # local intersection numbers, log p factored out
    kdeg: tuple[Fraction, ...]               # canonical degrees K . C, carried through blow-downs

    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.components)

    def idx(self, name: str) -> int:
        return self.names().index(name)

    def pairing(self, a: str, b: str) -> Fraction:
        return self.inter[self.idx(a)][self.idx(b)]


@dataclass(frozen=True)
class PullbackMap:
    """Rational coefficients of the total transform of each surviving component."""

    basis: tuple[str, ...]
    coeffs: dict[str, dict[str, Fraction]]

    def coefficient(self, component: str, basis_component: str) -> Fraction:
        return self.coeffs[component].get(basis_component, Fraction(0))

    def compose(self, inner: "PullbackMap") -> "PullbackMap":
        """Pull this map (over the intermediate basis) back through `inner`."""
        out: dict[str, dict[str, Fraction]] = {}
        for name, row in self.coeffs.items():
            acc: dict[str, Fraction] = {}
            for mid, coef in row.items():
                for orig, inner_coef in inner.coeffs[mid].items():
                    acc[orig] = acc.get(orig, Fraction(0)) + coef * inner_coef
            out[name] = {k: v for k, v in acc.items() if v != 0}
        return PullbackMap(inner.basis, out)

    @classmethod
    def identity(cls, names: tuple[str, ...]) -> "PullbackMap":
        return cls(names, {n: {n: Fraction(1)} for n in names})


def _table(p: int) -> list[list[Fraction]]:
    r = p % 12
    f = Fraction
    diag = {1: -f(p * (p - 1), 12), 5: -f(p * p - p + 4, 12),
            7: -f(p * p - p + 6, 12), 11: -f(p * p - p + 10, 12)}[r]
    off = f(p - r, 12)  # C20.C02 = C20.C11 = (p - r)/12 in every case
    c20_e = f(1) if r in (7, 11) else f(0)
    c20_f = f(1) if r in (5, 11) else f(0)
    z = f(0)
    return [
        [diag, off, off, c20_e, c20_f],
        [off, diag, off, c20_e, c20_f],
        [off, off, f(-1), f(1), f(1)],
        [c20_e, c20_e, f(1), f(-2), z],
        [c20_f, c20_f, f(1), z, f(-3)],
    ]


def edixhoven_fiber(p: int) -> FiberModel:
    """Five-component special fiber with the residue-class intersection table."""
    if not is_prime(p) or p < 7:
        raise DomainError(f"fiber model needs a prime p >= 7, got {p}")
    r = p % 12
    m_e = (p - 1) // 2 if r in (1, 5) else (p + 1) // 2
    m_f = (p - 1) // 3 if r in (1, 7) else (p + 1) // 3
    mults = (1, 1, p - 1, m_e, m_f)
    comps = tuple(Component(n, m) for n, m in zip(COMPONENT_ORDER, mults))
    inter = tuple(tuple(row) for row in _table(p))
    kdeg = tuple(-2 - row[i] for i, row in enumerate(inter))  # all components rational
    return FiberModel(p, comps, inter, kdeg)


def derive_multiplicities(inter) -> tuple[Fraction, ...]:
    """Kernel vector of the intersection matrix, normalized to lead with 1.

    The fiber divisor is principal, so the multiplicity vector must span the
    kernel; a kernel of dimension != 1 signals a broken table.
    """
    n = len(inter)
    m = [[Fraction(x) for x in row] for row in inter]
    # fraction-exact RREF
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        scale = m[r][col]
        m[r] = [x / scale for x in m[r]]
        for i in range(n):
            if i != r and m[i][col] != 0:
                fac = m[i][col]
                m[i] = [a - fac * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise DomainError(f"kernel dimension is {len(free)}, expected 1")
    col = free[0]
    vec = [Fraction(0)] * n
    vec[col] = Fraction(1)
    for row_idx, pc in enumerate(pivots):
        vec[pc] = -m[row_idx][col]
    lead = vec[0]
    if lead == 0:
        raise DomainError("kernel vector has vanishing leading coordinate")
    return tuple(v / lead for v in vec)


def canonical_degrees(model: FiberModel) -> tuple[Fraction, ...]:
    """Canonical degrees K . C; independently recomputed when all components are rational."""
    if all(c.arith_genus == 0 for c in model.components):
        recomputed = tuple(-2 - model.inter[i][i] for i in range(len(model.components)))
        if recomputed != model.kdeg:
            raise ArithmeticError("stored canonical degrees disagree with rationality")
    total = sum(c.multiplicity * k for c, k in zip(model.components, model.kdeg))
    if total != 2 * genus(model.p) - 2:
        raise ArithmeticError(
            f"adjunction sum {total} != 2g-2 = {2 * genus(model.p) - 2} at p={model.p}")
    return model.kdeg


def contractible(model: FiberModel) -> list[Component]:
    """Components eligible for contraction: rational with self-intersection -1."""
    out = []
    for i, comp in enumerate(model.components):
        if comp.arith_genus == 0 and model.inter[i][i] == -1:
            out.append(comp)
    return out


def blow_down(model: FiberModel, name: str) -> tuple[FiberModel, PullbackMap]:
    """Contract one (-1)-component; returns the new model and the one-step pullbacks.

    For X^2 = -1 the total transform of a surviving D is D + (D.X) X, which
    fixes the new pairing, the new canonical degrees (K.X = -1) and the new
    arithmetic genera via adjunction.
    """
    if name not in {c.name for c in contractible(model)}:
        raise DomainError(f"component {name} is not contractible")
    x = model.idx(name)
    keep = [i for i in range(len(model.components)) if i != x]
    inter2 = tuple(
        tuple(model.inter[i][j] + model.inter[i][x] * model.inter[j][x] for j in keep)
        for i in keep)
    kdeg2 = tuple(model.kdeg[i] + model.inter[i][x] * model.kdeg[x] for i in keep)
    comps2 = []
    for pos, i in enumerate(keep):
        pa = 1 + (kdeg2[pos] + inter2[pos][pos]) / 2
        comps2.append(Component(model.components[i].name, model.components[i].multiplicity, pa))
    pull = PullbackMap(model.names(), {
        model.components[i].name: {
            model.components[i].name: Fraction(1),
            **({name: model.inter[i][x]} if model.inter[i][x] != 0 else {}),
        }
        for i in keep})
    return FiberModel(model.p, tuple(comps2), inter2, kdeg2), pull


def minimal_model(model: FiberModel) -> tuple[FiberModel, PullbackMap]:
    """Contract (-1)-curves until none remain; composed pullbacks over the input basis."""
    total = PullbackMap.identity(model.names())
    current = model
    while True:
        targets = contractible(current)
        if not targets:
            break
        current, step = blow_down(current, targets[0].name)
        total = step.compose(total)
    s = Fraction(model.p * model.p - 1, 24)
    names = current.names()
    if names != ("C20", "C02") or current.inter != ((-s, s), (s, -s)):
        raise ArithmeticError(f"contraction did not reach the expected two-component fiber at p={model.p}")
    return current, total


def validate_fiber(model: FiberModel) -> dict[str, bool]:
    """Exact structural checks: symmetry, fiber relation, kernel, adjunction."""
    n = len(model.components)
    mult = [c.multiplicity for c in model.components]
    sym = all(model.inter[i][j] == model.inter[j][i] for i in range(n) for j in range(n))
    fiber_rel = all(sum(mult[i] * model.inter[i][j] for i in range(n)) == 0 for j in range(n))
    kernel_ok = derive_multiplicities(model.inter) == tuple(Fraction(m) for m in mult)
    adjunction = sum(m * k for m, k in zip(mult, model.kdeg)) == 2 * genus(model.p) - 2
    return {"symmetric": sym, "fiber_relation": fiber_rel,
            "kernel_is_multiplicities": kernel_ok, "adjunction": adjunction}
