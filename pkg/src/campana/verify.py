"""Seeded property suites behind the `verify` CLI command.

Each suite returns a list of (name, passed, detail) rows; a failing row's
detail is a replayable description of the first counterexample.
"""
from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from . import arith, formulas as fm, kernels, parametrize, places, semantics
from .circuits import Circuit

Row = Tuple[str, bool, str]


def _sample_rational(rng: random.Random, num: int = 10**6, den: int = 1000) -> Fraction:
    n = rng.randint(-num, num)
    d = rng.randint(1, den)
    return Fraction(n if n else 1, d)


def suite_hilbert(seed: int, samples: int) -> List[Row]:
    rng = random.Random(seed)
    rows: List[Row] = []

    bad = None
    oracle_trials = min(samples, 2000)
    for _ in range(oracle_trials):
        a = rng.randint(-50, 50) or 1
        b = rng.randint(-50, 50) or 1
        p = rng.choice([2, 3, 5, 7, 11, 13, 17, 19, 23])
        got = places.hilbert(a, b, p)
        want = places.hilbert_oracle(a, b, p, places.default_oracle_precision(a, b, p))
        if got != want:
            bad = f"hilbert({a},{b},{p}) = {got}, oracle says {want}"
            break
    rows.append((f"symbol vs oracle ({oracle_trials} trials)", bad is None, bad or "agree"))

    bad = None
    for _ in range(samples):
        a, b = _sample_rational(rng, 10**4, 100), _sample_rational(rng, 10**4, 100)
        if not places.reciprocity_check(a, b):
            bad = f"product formula fails for a={a}, b={b}"
            break
    rows.append((f"reciprocity ({samples} pairs)", bad is None, bad or "product is +1"))

    bad = None
    for _ in range(min(samples, 500)):
        a = _sample_rational(rng, 1000, 50)
        v = rng.choice(["inf", 2, 3, 5, 7, 11])
        if arith.is_square_local(a, v):
            continue
        b = places.find_local_counterexample(a, v)
        if places.hilbert(a, b, v) != -1:
            bad = f"find_local_counterexample({a},{v}) = {b} but symbol is +1"
            break
    rows.append(("local counterexamples ramify", bad is None, bad or "all -1"))
    return rows


def suite_construct(seed: int, samples: int) -> List[Row]:
    rng = random.Random(seed)
    rows: List[Row] = []
    small = [p for p in arith.primes_up_to(100)]
    trials = [sorted(rng.sample(small, rng.randint(0, 4)))
              for _ in range(min(samples, 50))]
    trials += [list(s) for k in range(5)
               for s in itertools.combinations([2, 3, 5, 7], k)]
    bad = None
    worst = 0.0
    for S in trials:
        t0 = time.monotonic()
        try:
            report = parametrize.construct_omega(S)
        except Exception as exc:
            bad = f"construct_omega({S}) raised {exc!r}"
            break
        worst = max(worst, time.monotonic() - t0)
        if not report.success:
            bad = f"construct_omega({S}) achieved {report.achieved}"
            break
    rows.append((f"round trip ({len(trials)} sets, worst {worst:.2f}s)",
                 bad is None, bad or "achieved = target"))
    return rows


def suite_semantics(seed: int, samples: int) -> List[Row]:
    rng = random.Random(seed)
    rows: List[Row] = []

    bad = None
    for _ in range(samples):
        x0 = rng.randint(-10**6, 10**6)
        x1 = rng.randint(1, 10**6)
        n = rng.randint(1, 6)
        S = sorted(rng.sample([2, 3, 5, 7, 11, 13], rng.randint(0, 3)))
        via = semantics.campana_via_coordinates(x0, x1, S, n)
        direct = semantics.campana_member(S, n, Fraction(x0, x1))
        if via != direct:
            bad = f"(x0,x1,S,n)=({x0},{x1},{S},{n}): coords {via}, direct {direct}"
            break
    rows.append((f"coordinate equivalence ({samples} samples)",
                 bad is None, bad or "equivalent"))

    bad = None
    for _ in range(samples):
        r = _sample_rational(rng, 10**5, 1024)
        S = sorted(rng.sample([2, 3, 5, 7], rng.randint(0, 2)))
        if not semantics.campana_member(S, 1, r):
            bad = f"r={r}, S={S} rejected at n=1"
            break
        prev = semantics.campana_member(S, 11, r)
        for n in range(10, 0, -1):
            cur = semantics.campana_member(S, n, r)
            if prev and not cur:
                bad = f"r={r}, S={S}: member at n={n+1} but not n={n}"
                break
            prev = cur
        if bad:
            break
        if semantics.s_integer_member(S, r):
            if not all(semantics.campana_member(S, n, r) for n in range(1, 11)):
                bad = f"integer r={r}, S={S} missing from some level"
                break
    rows.append((f"filtration ({samples} samples)", bad is None, bad or "monotone"))

    bad = None
    for i in range(min(samples, 1000)):
        a = rng.randint(-20, 20) or 1
        b = rng.randint(-20, 20) or 1
        t, w = semantics.generate_trace_element(a, b, seed + i)
        if t*t - 4*a*w[1]**2 - 4*b*w[2]**2 + 4*a*b*w[3]**2 != 4:
            bad = f"trace witness broken for a={a}, b={b}, seed={seed+i}"
            break
    rows.append(("trace witnesses on the conic", bad is None, bad or "exact"))
    return rows


def suite_formulas(seed: int, samples: int) -> List[Row]:
    rng = random.Random(seed)
    rows: List[Row] = []

    ledger = {
        "S": (fm.build_S(), (0, 3, 1, 4)),
        "T": (fm.build_T(), (0, 7, 2, 4)),
        "T_unit": (fm.build_T_unit(), (0, 15, 5, 4)),
        "I": (fm.build_I(), (0, 34, 12, 4)),
        "J": (fm.build_J(), (0, 138, 48, 4)),
        "Jabcd": (fm.build_Jabcd(), (0, 277, 96, 4)),
        "inv_J": (fm.build_inv_J(), (0, 278, 97, 4)),
        "disjoint": (fm.build_disjoint(), (0, 556, 193, 9)),
        "Jn(7)": (fm.build_Jn(7), (0, 556, 193, 7)),
        "inv_Jn(2)": (fm.build_inv_Jn(2), (0, 557, 194, 4)),
        "premise": (fm.build_premise(), (0, 834, 290, 9)),
        "campana(2)": (fm.build_campana(2), (838, 558, 1, 3387)),
        "campana(100)": (fm.build_campana(100), (838, 558, 1, 22011)),
        "campana(2,real)": (fm.build_campana(2, real_embedded=True),
                            (838, 558, 1, 27)),
    }
    bad = None
    for name, (f, want) in ledger.items():
        s = fm.stats(f)
        got = (s.universals, s.existentials, s.atoms, s.degree_bound)
        if got != want:
            bad = f"{name}: stats {got}, expected {want}"
            break
    rows.append(("quantifier/atom/degree ledger", bad is None, bad or "exact match"))

    bad = None
    x, y = Circuit.var("x"), Circuit.var("y")
    pair = fm.combine_pair(x, y)
    for _ in range(min(samples, 2000)):
        px = _sample_rational(rng, 100, 10) if rng.random() < 0.8 else Fraction(0)
        py = _sample_rational(rng, 100, 10) if rng.random() < 0.8 else Fraction(0)
        want = px == 0 and py == 0
        if (pair.evaluate({"x": px, "y": py}) == 0) != want:
            bad = f"combine_pair zero set broken at ({px},{py})"
            break
    rows.append(("combine_pair zero set", bad is None, bad or "preserved"))

    bad = None
    for n in range(1, 7):
        nf = fm.norm_form(n)
        if nf.degree() != n:
            bad = f"norm_form({n}) degree {nf.degree()}"
            break
        lam = Fraction(rng.randint(2, 9))
        pt = {f"y{i+1}": Fraction(rng.randint(-30, 30)) for i in range(n)}
        scaled = {k: lam * v for k, v in pt.items()}
        if nf.evaluate(scaled) != lam**n * nf.evaluate(pt):
            bad = f"norm_form({n}) not homogeneous at {pt}"
            break
        for _ in range(min(samples, 200)):
            pt = [_sample_rational(rng, 50, 8) for _ in range(n)]
            if kernels.norm_value(pt) == 0:
                bad = f"norm_form({n}) vanishes at nonzero {pt}"
                break
        if bad:
            break
    rows.append(("norm forms anisotropic + homogeneous", bad is None, bad or "ok"))

    bad = None
    for f in (fm.build_S(), fm.build_T(), fm.build_Jn(3), fm.build_campana(2)):
        if fm.parse(fm.emit(f, "json")) != f:
            bad = f"round trip failed for {f!r}"
            break
    rows.append(("emit/parse round trip", bad is None, bad or "identity"))
    return rows


SUITES: Dict[str, Callable[[int, int], List[Row]]] = {
    "hilbert": suite_hilbert,
    "construct": suite_construct,
    "semantics": suite_semantics,
    "formulas": suite_formulas,
}


def run(suite: str, seed: int = 42, samples: int = 1000) -> Tuple[bool, str]:
    """Run one suite (or 'all'); returns (all_passed, printable table)."""
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
    lines = []
    ok = True
    for name in names:
        for label, passed, detail in SUITES[name](seed, samples):
            ok &= passed
            mark = "PASS" if passed else "FAIL"
            lines.append(f"{mark}  {name}: {label} -- {detail}")
    lines.append("all suites passed" if ok else "FAILURES above")
    return ok, "\n".join(lines)
