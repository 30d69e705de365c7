"""First-order formula builders over polynomial circuits.

The definitional tower (trace set S, T, units of T, the sets I^c, the
radical sets J and their powers and inverses, disjointness) is compiled
into prenex formulas with exact quantifier/atom/degree accounting.  Two
conjunction combiners (anisotropic norm form, sum of squares) collapse
conjunctions of equations into single equations, and a prenexing identity
turns "universal-or-existential" into one forall-exists formula with a
single atom.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .circuits import Circuit
from .forms import BinaryForm

# matrix nodes: ("eq", Circuit) | ("neq", Circuit) | ("and", tuple) | ("or", tuple)
MatrixNode = tuple

FORALL = "forall"
EXISTS = "exists"


class Gensym:
    """Deterministic fresh-name source: x1, x2, ... in construction order."""

    def __init__(self, start: int = 1):
        self.counter = start

    def fresh(self) -> str:
        name = f"x{self.counter}"
        self.counter += 1
        return name

    def take(self, k: int) -> List[str]:
        return [self.fresh() for _ in range(k)]


def _matrix_atoms(matrix: MatrixNode) -> List[Tuple[str, Circuit]]:
    kind = matrix[0]
    if kind in ("eq", "neq"):
        return [(kind, matrix[1])]
    if kind in ("and", "or"):
        out = []
        for child in matrix[1]:
            out.extend(_matrix_atoms(child))
        return out
    raise ValueError(f"unknown matrix node {kind!r}")


class Formula:
    """Prenex formula: quantifier prefix over a quantifier-free matrix of
    polynomial (in)equations.  Immutable."""

    __slots__ = ("prefix", "matrix", "free", "degree_override", "real_embedded")

    def __init__(
        self,
        prefix: Sequence[Tuple[str, str]],
        matrix: MatrixNode,
        free: Sequence[str],
        degree_override: Optional[int] = None,
        real_embedded: bool = False,
    ):
        self.prefix = tuple((str(q), str(n)) for q, n in prefix)
        self.matrix = matrix
        self.free = tuple(str(n) for n in free)
        self.degree_override = degree_override
        self.real_embedded = real_embedded
        bound = [n for _, n in self.prefix]
        if len(set(bound)) != len(bound):
            raise ValueError("a variable is bound twice")
        if set(bound) & set(self.free):
            raise ValueError("a variable is both free and bound")
        for q, _ in self.prefix:
            if q not in (FORALL, EXISTS):
                raise ValueError(f"bad quantifier {q!r}")
        names = set(self.free) | set(bound)
        for _, circ in _matrix_atoms(matrix):
            stray = set(circ.free_vars()) - names
            if stray:
                raise ValueError(f"unbound matrix variables: {sorted(stray)}")

    def atoms(self) -> List[Circuit]:
        return [c for _, c in _matrix_atoms(self.matrix)]

    def __eq__(self, other):
        if not isinstance(other, Formula):
            return NotImplemented
        return (
            self.prefix == other.prefix
            and self.free == other.free
            and self.degree_override == other.degree_override
            and self.real_embedded == other.real_embedded
            and _matrix_eq(self.matrix, other.matrix)
        )

    def __repr__(self):
        st = stats(self)
        return (f"Formula({st.universals} forall, {st.existentials} exists, "
                f"{st.atoms} atoms, degree<={st.degree_bound})")


def _matrix_eq(m1: MatrixNode, m2: MatrixNode) -> bool:
    if m1[0] != m2[0]:
        return False
    if m1[0] in ("eq", "neq"):
        return m1[1] == m2[1]
    return len(m1[1]) == len(m2[1]) and all(
        _matrix_eq(a, b) for a, b in zip(m1[1], m2[1])
    )


@dataclass(frozen=True)
class FormulaStats:
    universals: int
    existentials: int
    atoms: int
    degree_bound: int
    real_embedded: bool = False


def stats(f: Formula) -> FormulaStats:
    """Quantifier counts, atom count, and the syntactic degree bound (the
    stored override wins when a substitution has inflated the bound)."""
    universals = sum(1 for q, _ in f.prefix if q == FORALL)
    existentials = sum(1 for q, _ in f.prefix if q == EXISTS)
    atom_list = f.atoms()
    if f.degree_override is not None:
        degree = f.degree_override
    else:
        degree = max(c.degree() for c in atom_list)
    return FormulaStats(universals, existentials, len(atom_list), degree,
                        f.real_embedded)


# ---------------------------------------------------------------------------
# the definitional tower; each block returns (bound names, atom circuits)
# ---------------------------------------------------------------------------

def _s_block(a: Circuit, b: Circuit, r: Circuit, gs: Gensym):
    """r is a reduced trace of a norm-1 quaternion:
    exists x2,x3,x4: r^2 - 4a x2^2 - 4b x3^2 + 4ab x4^2 = 4."""
    n2, n3, n4 = gs.take(3)
    x2, x3, x4 = Circuit.var(n2), Circuit.var(n3), Circuit.var(n4)
    atom = r**2 - 4*a*x2**2 - 4*b*x3**2 + 4*a*b*x4**2 - 4
    return [n2, n3, n4], [atom]


def _t_block(a, b, r, gs):
    """r is a sum of two traces."""
    nx = gs.fresh()
    x = Circuit.var(nx)
    v1, a1 = _s_block(a, b, x, gs)
    v2, a2 = _s_block(a, b, r - x, gs)
    return [nx] + v1 + v2, a1 + a2


def _t_unit_block(a, b, r, gs):
    """r is an invertible element of T: r in T and r v = 1 with v in T."""
    v1, a1 = _t_block(a, b, r, gs)
    nv = gs.fresh()
    v = Circuit.var(nv)
    v2, a2 = _t_block(a, b, v, gs)
    return v1 + [nv] + v2, a1 + a2 + [r*v - 1]


def _i_block(a, b, c, r, gs):
    """r in I^c: r = c x^2 u and r = 1 - y^2 v with u, v units of T."""
    nx, ny, nu, nv = gs.take(4)
    x, y = Circuit.var(nx), Circuit.var(ny)
    u, v = Circuit.var(nu), Circuit.var(nv)
    vu, au = _t_unit_block(a, b, u, gs)
    vv, av = _t_unit_block(a, b, v, gs)
    atoms = au + av + [r - c*x**2*u, r - 1 + y**2*v]
    return [nx, ny, nu, nv] + vu + vv, atoms


def _j_block(a, b, r, gs):
    """r in the radical set of (a,b): r and r-x in I^a, r and r-y in I^b."""
    nx, ny = gs.take(2)
    x, y = Circuit.var(nx), Circuit.var(ny)
    v1, a1 = _i_block(a, b, a, x, gs)
    v2, a2 = _i_block(a, b, a, r - x, gs)
    v3, a3 = _i_block(a, b, b, y, gs)
    v4, a4 = _i_block(a, b, b, r - y, gs)
    return [nx, ny] + v1 + v2 + v3 + v4, a1 + a2 + a3 + a4


def _jabcd_block(a, b, c, d, r, gs):
    """r in J of (a,b,c,d): r = x + (r - x) with x in J(a,b), r-x in J(c,d)."""
    nx = gs.fresh()
    x = Circuit.var(nx)
    v1, a1 = _j_block(a, b, x, gs)
    v2, a2 = _j_block(c, d, r - x, gs)
    return [nx] + v1 + v2, a1 + a2


def _inv_j_block(a, b, c, d, r, gs):
    """r inverts an element of J: r y = 1 with y in J."""
    ny = gs.fresh()
    y = Circuit.var(ny)
    v1, a1 = _jabcd_block(a, b, c, d, y, gs)
    return [ny] + v1, a1 + [r*y - 1]


def _disjoint_block(a, b, c, d, a2, b2, c2, d2, gs):
    """The two radical place sets are disjoint: all eight parameters are
    nonzero and 1 = y + (1-y) splits across the two radicals."""
    nx, ny = gs.take(2)
    x, y = Circuit.var(nx), Circuit.var(ny)
    nonzero = a*b*c*d*a2*b2*c2*d2*x - 1
    v1, a1 = _jabcd_block(a, b, c, d, y, gs)
    v2, a2_ = _jabcd_block(a2, b2, c2, d2, 1 - y, gs)
    return [nx, ny] + v1 + v2, [nonzero] + a1 + a2_


def _jn_block(a, b, c, d, n, r, gs):
    """r in J_n: r = x y^(n-1) with x, y in J."""
    if n < 2:
        raise ValueError("n must be >= 2 (n = 1 is the plain radical set)")
    nx, ny = gs.take(2)
    x, y = Circuit.var(nx), Circuit.var(ny)
    product = r - x*y**(n - 1)
    v1, a1 = _jabcd_block(a, b, c, d, x, gs)
    v2, a2 = _jabcd_block(a, b, c, d, y, gs)
    return [nx, ny] + v1 + v2, [product] + a1 + a2


def _inv_jn_block(a, b, c, d, n, r, gs):
    """r inverts an element of J_n."""
    ny = gs.fresh()
    y = Circuit.var(ny)
    v1, a1 = _jn_block(a, b, c, d, n, y, gs)
    return [ny] + v1, [r*y - 1] + a1


def _premise_block(a, b, c, d, a2, b2, c2, d2, r, gs):
    """Disjointness of the two radicals together with r inverting an
    element of the second radical."""
    v1, a1 = _disjoint_block(a, b, c, d, a2, b2, c2, d2, gs)
    v2, a2_ = _inv_j_block(a2, b2, c2, d2, r, gs)
    return v1 + v2, a1 + a2_


# ---------------------------------------------------------------------------
# public builders
# ---------------------------------------------------------------------------

def _check_names(*names: str):
    if len(set(names)) != len(names):
        raise ValueError(f"variable names must be distinct: {names}")
    for n in names:
        if n.startswith("x") and n[1:].isdigit():
            raise ValueError(f"free name {n!r} collides with the gensym scheme")


def _exists_formula(free_names, bound, atoms) -> Formula:
    matrix = ("and", tuple(("eq", c) for c in atoms)) if len(atoms) > 1 \
        else ("eq", atoms[0])
    return Formula([(EXISTS, n) for n in bound], matrix, free_names)


def build_S(a_var: str = "a", b_var: str = "b", r_var: str = "r") -> Formula:
    _check_names(a_var, b_var, r_var)
    gs = Gensym(start=2)  # quaternion coordinates x2, x3, x4
    bound, atoms = _s_block(Circuit.var(a_var), Circuit.var(b_var),
                            Circuit.var(r_var), gs)
    return _exists_formula((a_var, b_var, r_var), bound, atoms)


def build_T(a_var: str = "a", b_var: str = "b", r_var: str = "r") -> Formula:
    _check_names(a_var, b_var, r_var)
    gs = Gensym()
    bound, atoms = _t_block(Circuit.var(a_var), Circuit.var(b_var),
                            Circuit.var(r_var), gs)
    return _exists_formula((a_var, b_var, r_var), bound, atoms)


def build_T_unit(a_var: str = "a", b_var: str = "b", r_var: str = "r") -> Formula:
    _check_names(a_var, b_var, r_var)
    gs = Gensym()
    bound, atoms = _t_unit_block(Circuit.var(a_var), Circuit.var(b_var),
                                 Circuit.var(r_var), gs)
    return _exists_formula((a_var, b_var, r_var), bound, atoms)


def build_I(a_var: str = "a", b_var: str = "b", c_var: str = "c",
            r_var: str = "r") -> Formula:
    _check_names(a_var, b_var, c_var, r_var)
    gs = Gensym()
    bound, atoms = _i_block(Circuit.var(a_var), Circuit.var(b_var),
                            Circuit.var(c_var), Circuit.var(r_var), gs)
    return _exists_formula((a_var, b_var, c_var, r_var), bound, atoms)


def build_J(a_var: str = "a", b_var: str = "b", r_var: str = "r") -> Formula:
    _check_names(a_var, b_var, r_var)
    gs = Gensym()
    bound, atoms = _j_block(Circuit.var(a_var), Circuit.var(b_var),
                            Circuit.var(r_var), gs)
    return _exists_formula((a_var, b_var, r_var), bound, atoms)


_ABCDR = ("a", "b", "c", "d", "r")


def build_Jabcd(names: Sequence[str] = _ABCDR) -> Formula:
    _check_names(*names)
    a, b, c, d, r = (Circuit.var(n) for n in names)
    gs = Gensym()
    bound, atoms = _jabcd_block(a, b, c, d, r, gs)
    return _exists_formula(tuple(names), bound, atoms)


def build_inv_J(names: Sequence[str] = _ABCDR) -> Formula:
    _check_names(*names)
    a, b, c, d, r = (Circuit.var(n) for n in names)
    gs = Gensym()
    bound, atoms = _inv_j_block(a, b, c, d, r, gs)
    return _exists_formula(tuple(names), bound, atoms)


_EIGHT = ("a", "b", "c", "d", "a2", "b2", "c2", "d2")


def build_disjoint(names: Sequence[str] = _EIGHT) -> Formula:
    _check_names(*names)
    args = [Circuit.var(n) for n in names]
    gs = Gensym()
    bound, atoms = _disjoint_block(*args, gs)
    return _exists_formula(tuple(names), bound, atoms)


def build_Jn(n: int, names: Sequence[str] = _ABCDR) -> Formula:
    _check_names(*names)
    a, b, c, d, r = (Circuit.var(nm) for nm in names)
    gs = Gensym()
    bound, atoms = _jn_block(a, b, c, d, n, r, gs)
    return _exists_formula(tuple(names), bound, atoms)


def build_inv_Jn(n: int, names: Sequence[str] = _ABCDR) -> Formula:
    _check_names(*names)
    a, b, c, d, r = (Circuit.var(nm) for nm in names)
    gs = Gensym()
    bound, atoms = _inv_jn_block(a, b, c, d, n, r, gs)
    return _exists_formula(tuple(names), bound, atoms)


def build_premise(names: Sequence[str] = _EIGHT + ("r",)) -> Formula:
    """The hypothesis block of the main formula: disjoint radicals and r
    inverting an element of the second radical."""
    _check_names(*names)
    args = [Circuit.var(n) for n in names]
    gs = Gensym()
    bound, atoms = _premise_block(*args, gs)
    return _exists_formula(tuple(names), bound, atoms)


# ---------------------------------------------------------------------------
# combiners and prenexing
# ---------------------------------------------------------------------------

N_Q = 2  # smallest positive nonsquare: x^2 - 2 has no rational roots


def combine_pair(f: Circuit, g: Circuit) -> Circuit:
    """f^2 - 2 g^2 vanishes over Q iff both f and g do."""
    return f**2 - N_Q * g**2


def combine_many(fs: Sequence[Circuit]) -> Circuit:
    """Norm-form composition: vanishes over Q iff every f does.  Degree is
    len(fs) * max degree; the norm polynomial itself stays opaque."""
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one circuit")
    if len(fs) == 1:
        return fs[0]
    return Circuit.norm(fs)


def combine_sos(fs: Sequence[Circuit]) -> Circuit:
    """Sum of squares; vanishes over a real-embedded field iff every f does."""
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one circuit")
    acc = fs[0]**2
    for f in fs[1:]:
        acc = acc + f**2
    return acc


class _MultiPoly:
    """Minimal multivariate polynomial on exponent-tuple keys; only what
    the norm-form determinant needs."""

    def __init__(self, terms: Dict[tuple, int]):
        self.terms = {e: c for e, c in terms.items() if c}

    @staticmethod
    def monomial(coef: int, var: int, nvars: int) -> "_MultiPoly":
        e = [0] * nvars
        e[var] = 1
        return _MultiPoly({tuple(e): coef})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return _MultiPoly(out)

    def __mul__(self, other):
        out: Dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return _MultiPoly(out)

    def __neg__(self):
        return _MultiPoly({e: -c for e, c in self.terms.items()})


def norm_form(n: int) -> Circuit:
    """The expanded norm form of degree n in y1..yn: the determinant of the
    multiplication-by-(sum y_j t^(j-1)) matrix in Z[t]/(t^n - 2).  Its only
    rational zero is the origin."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Circuit.var("y1")
    # M[i][j] = y_(i-j+1) if i >= j else 2*y_(n+i-j+1), 0-indexed vars
    def entry(i: int, j: int) -> _MultiPoly:
        if i >= j:
            return _MultiPoly.monomial(1, i - j, n)
        return _MultiPoly.monomial(2, n + i - j, n)

    # subset DP over column sets: det of rows 0..|S|-1 against columns S
    dets: Dict[frozenset, _MultiPoly] = {frozenset(): _MultiPoly({(0,) * n: 1})}
    for size in range(1, n + 1):
        nxt: Dict[frozenset, _MultiPoly] = {}
        row = size - 1
        for cols in combinations(range(n), size):
            acc = _MultiPoly({})
            for pos, j in enumerate(cols):
                rest = frozenset(cols) - {j}
                term = entry(row, j) * dets[rest]
                acc = acc + (term if (row + pos) % 2 == 0 else -term)
            nxt[frozenset(cols)] = acc
        dets = nxt
    poly = dets[frozenset(range(n))]
    variables = [Circuit.var(f"y{i+1}") for i in range(n)]
    result = None
    for e, c in sorted(poly.terms.items()):
        term: Circuit = Circuit.const(c)
        for i, k in enumerate(e):
            if k == 1:
                term = term * variables[i]
            elif k > 1:
                term = term * variables[i]**k
        result = term if result is None else result + term
    return result


def prenex_or(universal_part: Formula, existential_part: Formula) -> Formula:
    """Merge "forall x: P(x) != 0" OR "exists z: Q(z) = 0" into the single
    prenex formula forall x exists y exists z: (y P(x) - 1) Q(z) = 0.

    Valid because when some x makes P vanish no y can invert it, forcing
    Q to vanish for a suitable z; and otherwise y = 1/P(x) frees Q."""
    if any(q != FORALL for q, _ in universal_part.prefix):
        raise ValueError("universal part must have an all-forall prefix")
    if universal_part.matrix[0] != "neq":
        raise ValueError("universal part must be a single inequation")
    if any(q != EXISTS for q, _ in existential_part.prefix):
        raise ValueError("existential part must have an all-exists prefix")
    if existential_part.matrix[0] != "eq":
        raise ValueError("existential part must be a single equation")
    used = {n for _, n in universal_part.prefix}
    used |= {n for _, n in existential_part.prefix}
    used |= set(universal_part.free) | set(existential_part.free)
    idx = 1
    while f"x{idx}" in used:
        idx += 1
    y_name = f"x{idx}"
    P = universal_part.matrix[1]
    Q = existential_part.matrix[1]
    atom = (Circuit.var(y_name) * P - 1) * Q
    prefix = (list(universal_part.prefix) + [(EXISTS, y_name)]
              + list(existential_part.prefix))
    bound = {n for _, n in prefix}
    free = [n for n in dict.fromkeys(universal_part.free + existential_part.free)
            if n not in bound]
    return Formula(prefix, ("eq", atom), free)


# ---------------------------------------------------------------------------
# the headline formulas
# ---------------------------------------------------------------------------

def build_campana(n: int, real_embedded: bool = False,
                  names: Sequence[str] = _ABCDR) -> Formula:
    """The forall-exists definition of the Campana condition with modulus n,
    free in (a,b,c,d,r): for every second parameter tuple with disjoint
    radical set, if r inverts an element of its radical then r inverts an
    element of its n-th power."""
    if n < 2:
        raise ValueError("n must be >= 2 (the n = 1 set is the whole field)")
    _check_names(*names)
    a, b, c, d, r = (Circuit.var(nm) for nm in names)
    gs = Gensym()
    u_names = gs.take(4)  # the universally quantified second tuple
    a2, b2, c2, d2 = (Circuit.var(nm) for nm in u_names)
    prem_vars, prem_atoms = _premise_block(a, b, c, d, a2, b2, c2, d2, r, gs)
    concl_vars, concl_atoms = _inv_jn_block(a2, b2, c2, d2, n, r, gs)
    combine = combine_sos if real_embedded else combine_many
    P = combine(prem_atoms)
    Q = combine(concl_atoms)
    universal = Formula(
        [(FORALL, nm) for nm in u_names + prem_vars],
        ("neq", P), tuple(names),
    )
    existential = Formula(
        [(EXISTS, nm) for nm in concl_vars],
        ("eq", Q), tuple(names) + tuple(u_names),
    )
    out = prenex_or(universal, existential)
    return Formula(out.prefix, out.matrix, out.free,
                   real_embedded=real_embedded)


def build_integrality(real_embedded: bool = False,
                      names: Sequence[str] = _ABCDR) -> Formula:
    """The forall-exists definition of integrality outside the radical set:
    whenever a second tuple has disjoint radical set and r inverts one of
    its radical elements, that radical must be trivial (contain 1)."""
    _check_names(*names)
    a, b, c, d, r = (Circuit.var(nm) for nm in names)
    gs = Gensym()
    u_names = gs.take(4)
    a2, b2, c2, d2 = (Circuit.var(nm) for nm in u_names)
    prem_vars, prem_atoms = _premise_block(a, b, c, d, a2, b2, c2, d2, r, gs)
    concl_vars, concl_atoms = _jabcd_block(a2, b2, c2, d2, Circuit.const(1), gs)
    combine = combine_sos if real_embedded else combine_many
    P = combine(prem_atoms)
    Q = combine(concl_atoms)
    universal = Formula(
        [(FORALL, nm) for nm in u_names + prem_vars],
        ("neq", P), tuple(names),
    )
    existential = Formula(
        [(EXISTS, nm) for nm in concl_vars],
        ("eq", Q), tuple(names) + tuple(u_names),
    )
    out = prenex_or(universal, existential)
    return Formula(out.prefix, out.matrix, out.free,
                   real_embedded=real_embedded)


def substitute_form(base: Formula, F: BinaryForm,
                    r_var: str = "r", lam_var: str = "lam") -> Formula:
    """Replace the free variable r by F(lam, 1).  The degree bound is
    recorded as deg(F) times the base bound: the substitution composes the
    defining polynomial with F, and the composed bound is what matters even
    when the syntactic recomputation would come out lower."""
    if r_var not in base.free:
        raise ValueError(f"{r_var!r} is not free in the formula")
    used = set(base.free) | {n for _, n in base.prefix}
    if lam_var in used - {r_var}:
        raise ValueError(f"{lam_var!r} already occurs in the formula")
    lam = Circuit.var(lam_var)
    coeffs = F.dehomogenized()
    replacement = None
    for power in sorted(coeffs):
        c = coeffs[power]
        term = Circuit.const(c) if power == 0 else \
            (Circuit.const(c) * lam**power)
        replacement = term if replacement is None else replacement + term

    def subst_matrix(m: MatrixNode) -> MatrixNode:
        if m[0] in ("eq", "neq"):
            return (m[0], _substitute_var(m[1], r_var, replacement))
        return (m[0], tuple(subst_matrix(c) for c in m[1]))

    free = tuple(lam_var if n == r_var else n for n in base.free)
    base_bound = stats(base).degree_bound
    return Formula(base.prefix, subst_matrix(base.matrix), free,
                   degree_override=F.degree * base_bound,
                   real_embedded=base.real_embedded)


def _substitute_var(circ: Circuit, name: str, replacement: Circuit) -> Circuit:
    nodes: List[tuple] = list(replacement.nodes)
    off = len(nodes)
    remap = {}
    for i, nd in enumerate(circ.nodes):
        if nd[0] == "var" and nd[1] == name:
            remap[i] = replacement.root
        else:
            op = nd[0]
            if op in ("var", "int"):
                nodes.append(nd)
            elif op in ("add", "mul"):
                nodes.append((op, remap[nd[1]], remap[nd[2]]))
            elif op == "neg":
                nodes.append((op, remap[nd[1]]))
            elif op == "pow":
                nodes.append((op, remap[nd[1]], nd[2]))
            elif op == "norm":
                nodes.append((op, tuple(remap[j] for j in nd[1])))
            remap[i] = len(nodes) - 1
    return Circuit(tuple(nodes), remap[circ.root])


# ---------------------------------------------------------------------------
# evaluation and interchange
# ---------------------------------------------------------------------------

def evaluate_matrix(f: Formula, assignment: Mapping[str, Union[int, Fraction]]) -> bool:
    """Exact truth value of the quantifier-free matrix under a full
    assignment (free and bound variables alike)."""

    def ev(m: MatrixNode) -> bool:
        if m[0] == "eq":
            return m[1].evaluate(assignment) == 0
        if m[0] == "neq":
            return m[1].evaluate(assignment) != 0
        if m[0] == "and":
            return all(ev(c) for c in m[1])
        if m[0] == "or":
            return any(ev(c) for c in m[1])
        raise ValueError(f"unknown matrix node {m[0]!r}")

    return ev(f.matrix)


def _emit_circuit(circ: Circuit, nodes_out: List[dict]) -> int:
    order = circ._reachable()
    remap = {}
    base = len(nodes_out)
    for new, old in enumerate(order):
        remap[old] = base + new
    for old in order:
        nd = circ.nodes[old]
        op = nd[0]
        if op == "var":
            nodes_out.append({"op": "var", "name": nd[1]})
        elif op == "int":
            v = nd[1]
            nodes_out.append({"op": "int",
                              "value": v if isinstance(v, int) else str(v)})
        elif op in ("add", "mul"):
            nodes_out.append({"op": op, "args": [remap[nd[1]], remap[nd[2]]]})
        elif op == "neg":
            nodes_out.append({"op": "neg", "arg": remap[nd[1]]})
        elif op == "pow":
            nodes_out.append({"op": "pow", "arg": remap[nd[1]], "k": nd[2]})
        elif op == "norm":
            nodes_out.append({"op": "norm",
                              "args": [remap[j] for j in nd[1]]})
    return remap[circ.root]


def _emit_matrix(m: MatrixNode, nodes_out: List[dict]) -> dict:
    if m[0] in ("eq", "neq"):
        return {m[0]: _emit_circuit(m[1], nodes_out)}
    return {m[0]: [_emit_matrix(c, nodes_out) for c in m[1]]}


def _sexpr_circuit(circ: Circuit, idx: int) -> str:
    nd = circ.nodes[idx]
    op = nd[0]
    if op == "var":
        return f"(var {nd[1]})"
    if op == "int":
        return f"(int {nd[1]})"
    if op in ("add", "mul"):
        return f"({op} {_sexpr_circuit(circ, nd[1])} {_sexpr_circuit(circ, nd[2])})"
    if op == "neg":
        return f"(neg {_sexpr_circuit(circ, nd[1])})"
    if op == "pow":
        return f"(pow {_sexpr_circuit(circ, nd[1])} {nd[2]})"
    if op == "norm":
        inner = " ".join(_sexpr_circuit(circ, j) for j in nd[1])
        return f"(norm {inner})"
    raise AssertionError(op)


def _sexpr_matrix(m: MatrixNode) -> str:
    if m[0] in ("eq", "neq"):
        return f"({m[0]} {_sexpr_circuit(m[1], m[1].root)})"
    inner = " ".join(_sexpr_matrix(c) for c in m[1])
    return f"({m[0]} {inner})"


def _latex_circuit(circ: Circuit, idx: int) -> str:
    nd = circ.nodes[idx]
    op = nd[0]
    if op == "var":
        name = nd[1]
        if len(name) > 1 and name[1:].isdigit():
            return f"{name[0]}_{{{name[1:]}}}"
        return name
    if op == "int":
        v = nd[1]
        if isinstance(v, Fraction):
            return rf"\tfrac{{{v.numerator}}}{{{v.denominator}}}"
        return str(v)
    if op == "add":
        return (f"\\left({_latex_circuit(circ, nd[1])} + "
                f"{_latex_circuit(circ, nd[2])}\\right)")
    if op == "mul":
        return (f"{_latex_circuit(circ, nd[1])} \\cdot "
                f"{_latex_circuit(circ, nd[2])}")
    if op == "neg":
        return f"-{_latex_circuit(circ, nd[1])}"
    if op == "pow":
        return f"\\left({_latex_circuit(circ, nd[1])}\\right)^{{{nd[2]}}}"
    if op == "norm":
        inner = ", ".join(_latex_circuit(circ, j) for j in nd[1])
        return rf"\mathrm{{N}}_{{{len(nd[1])}}}\!\left({inner}\right)"
    raise AssertionError(op)


def _latex_matrix(m: MatrixNode) -> str:
    if m[0] == "eq":
        return f"{_latex_circuit(m[1], m[1].root)} = 0"
    if m[0] == "neq":
        return f"{_latex_circuit(m[1], m[1].root)} \\neq 0"
    joiner = r" \land " if m[0] == "and" else r" \lor "
    return "(" + joiner.join(_latex_matrix(c) for c in m[1]) + ")"


def emit(f: Formula, format: str = "json") -> bytes:
    """Serialize a formula.  json is canonical and round-trips through
    parse(); sexpr is a lossless prefix rendering; latex is for human eyes."""
    if format == "json":
        nodes: List[dict] = []
        matrix = _emit_matrix(f.matrix, nodes)
        doc = {
            "free": list(f.free),
            "prefix": [[q, n] for q, n in f.prefix],
            "nodes": nodes,
            "matrix": matrix,
        }
        if f.degree_override is not None:
            doc["degree_override"] = f.degree_override
        if f.real_embedded:
            doc["real_embedded"] = True
        return json.dumps(doc, separators=(",", ":"), sort_keys=True).encode()
    if format == "sexpr":
        free = " ".join(f.free)
        prefix = " ".join(f"({q} {n})" for q, n in f.prefix)
        text = (f"(formula (free {free}) (prefix {prefix}) "
                f"(matrix {_sexpr_matrix(f.matrix)}))")
        return text.encode()
    if format == "latex":
        quant = {"forall": r"\forall", "exists": r"\exists"}
        prefix = r"\,".join(f"{quant[q]} {n}" for q, n in f.prefix)
        return (prefix + r"\colon " + _latex_matrix(f.matrix)).encode()
    raise ValueError(f"unknown format {format!r}")


def parse(data: Union[bytes, str]) -> Formula:
    """Inverse of emit(..., 'json')."""
    doc = json.loads(data)
    raw_nodes = []
    for nd in doc["nodes"]:
        op = nd["op"]
        if op == "var":
            raw_nodes.append(("var", nd["name"]))
        elif op == "int":
            v = nd["value"]
            raw_nodes.append(("int", v if isinstance(v, int) else Fraction(v)))
        elif op in ("add", "mul"):
            raw_nodes.append((op, nd["args"][0], nd["args"][1]))
        elif op == "neg":
            raw_nodes.append(("neg", nd["arg"]))
        elif op == "pow":
            raw_nodes.append(("pow", nd["arg"], nd["k"]))
        elif op == "norm":
            raw_nodes.append(("norm", tuple(nd["args"])))
        else:
            raise ValueError(f"unknown circuit op {op!r}")
    nodes = tuple(raw_nodes)

    def parse_matrix(m: dict) -> MatrixNode:
        (kind, payload), = m.items()
        if kind in ("eq", "neq"):
            return (kind, Circuit(nodes, payload))
        if kind in ("and", "or"):
            return (kind, tuple(parse_matrix(c) for c in payload))
        raise ValueError(f"unknown matrix node {kind!r}")

    return Formula(
        [(q, n) for q, n in doc["prefix"]],
        parse_matrix(doc["matrix"]),
        doc["free"],
        degree_override=doc.get("degree_override"),
        real_embedded=doc.get("real_embedded", False),
    )
