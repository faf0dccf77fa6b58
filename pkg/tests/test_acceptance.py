"""Acceptance criteria, one PASS/FAIL line each.

Run ``pytest -v tests/test_acceptance.py`` (the lines are printed outside the
capture) or ``python tests/test_acceptance.py`` for just the report.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from ksgraph import holieb, homology, mcsolver, ncgb, tpoly
from ksgraph.gclie import bracket, differential
from ksgraph.graphcore import EDGE, GraphVector, enumerate_basis
from ksgraph.linalg import Echelon, Inconsistent

_KS = {}


def ks(order):
    if order not in _KS:
        _KS[order] = mcsolver.ks_series(order)
    return _KS[order]


def c1_delta_squared():
    count = 0
    for n in range(1, 6):
        for l in range(0, 2 * n):
            for g in enumerate_basis(n, l):
                count += 1
                if differential(differential(GraphVector({g: 1}))):
                    return False, "delta^2 != 0 on %r" % (g,)
    return True, "%d basis graphs with n <= 5" % count


def c2_upsilon4():
    y = mcsolver.upsilon4()
    if differential(y):
        return False, "Y4 not closed"
    try:
        mcsolver.solve_exact(y)
    except Inconsistent:
        return True, "closed; delta X = Y4 inconsistent over the (3,4) basis"
    return False, "Y4 is exact"


def c3_cohomology():
    r45, r44 = homology.cohomology(4, 5), homology.cohomology(4, 4)
    basis = enumerate_basis(4, 5)
    index = {g: i for i, g in enumerate(basis)}
    ech = Echelon()
    for g in enumerate_basis(3, 4):
        ech.add({index[h]: c for h, c in differential(GraphVector({g: 1})).terms.items()})
    base = ech.rank
    ech.add({index[g]: c for g, c in mcsolver.upsilon4().terms.items()})
    y_new = ech.rank == base + 1
    rep = r45.representatives[0] if r45.representatives else GraphVector()
    in_span = not ech.add({index[g]: c for g, c in rep.terms.items()})
    ok = r45.dim_cohomology == 1 and r44.dim_cohomology == 1 and y_new and in_span
    return ok, "dim H(4,5) = %d, dim H(4,4) = %d, representative ~ Y4: %s" % (
        r45.dim_cohomology, r44.dim_cohomology, in_span)


def c4_order_two():
    s = ks(2)
    y6 = s[2]
    residual = differential(y6) + bracket(s[1], s[1]) * Fraction(1, 2)
    ok = (y6.vertex_counts() == {6} and {g.l for g in y6.terms} == {9}
          and y6.degree() == 1 and not residual)
    return ok, "Y6 has %d graphs, delta Y6 + [Y4,Y4]/2 = 0: %s" % (len(y6.terms), not residual)


def c5_weight_zero():
    edge = GraphVector({EDGE: 1})
    n_checked = 0
    for total in range(2, 7):
        for m in range(1, total):
            if not holieb.is_generator(m, total - m, 0):
                continue
            n_checked += 1
            if holieb.act(0, edge, holieb.Corolla(m, total - m, 0)) != holieb.delta_classical(m, total - m):
                return False, "mismatch at (%d,%d)" % (m, total - m)
    return True, "%d generators with m+n <= 6" % n_checked


def c6_quantizability_term():
    t, sign = holieb.quantizability_composite()
    d = holieb.delta_diamond(holieb.Corolla(1, 1, 1), ks(1), 1)
    terms = list(d.terms.items())
    ok = len(terms) == 1 and terms[0][0] == t and abs(terms[0][1]) == 2
    return ok, "single four-corolla term, coefficient %s (Y4 weight 2 on the contributing shape)" % (
        terms[0][1] if terms else 0)


def c7_delta_diamond_squared():
    s = ks(2)
    checked = 0
    for total in range(2, 6):
        for m in range(1, total):
            for a in range(3):
                if not holieb.is_generator(m, total - m, a):
                    continue
                checked += 1
                if holieb.delta_squared(holieb.Corolla(m, total - m, a), s, 2):
                    return False, "nonzero at (%d,%d,%d)" % (m, total - m, a)
    return True, "%d corollas, m+n <= 5, a <= 2, mod hbar^3" % checked


def c8_strongly_free():
    for n in range(3, 13):
        ok, cert = ncgb.strongly_free_check(n, ncgb.cubic_relations(n), ncgb.MonomialOrder.multiples_of_three_high(n))
        if not ok:
            return False, "n = %d: %s" % (n, cert["problems"])
        if ncgb.hilbert(n, 10) != ncgb.hilbert_series_coefficients(n, 10):
            return False, "Hilbert mismatch at n = %d" % n
    return True, "n = 3..12"


def c9_dg_cohomology():
    table = ncgb.dg_cohomology(3, 8)
    off = {k: v for k, v in table.items() if k[1] and v}
    deg0 = [table[(w, 0)] for w in range(9)]
    ok = not off and deg0 == ncgb.hilbert(3, 8)
    return ok, "degree-zero dims %s" % deg0


def _rand_poly(rng, m):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        x = [0] * 3
        for _ in range(rng.randint(0, 2)):
            x[rng.randrange(3)] += 1
        terms[(tuple(x), tuple(rng.sample(range(3), m)))] = rng.randint(-3, 3)
    return tpoly.PolyVector(3, terms)


def c10_tpoly():
    rng = random.Random(10)
    S = tpoly.schouten
    done = 0
    while done < 100:
        ms = [rng.randint(0, 3) for _ in range(3)]
        a, b, c = [_rand_poly(rng, m) for m in ms]
        if not (a and b and c):
            continue
        done += 1
        e = (-1) ** ((ms[0] - 1) * (ms[1] - 1))
        if S(a, b) != -S(b, a).scale(e):
            return False, "antisymmetry"
        if S(a, S(b, c)) != S(S(a, b), c) + S(b, S(a, c)).scale(e):
            return False, "Jacobi"
        if S(a, b.wedge(c)) != S(a, b).wedge(c) + b.wedge(S(a, c)).scale((-1) ** ((ms[0] - 1) * ms[1])):
            return False, "Leibniz"
    so3 = tpoly.PolyVector(3, {((0, 0, 1), (0, 1)): 1, ((1, 0, 0), (1, 2)): 1, ((0, 1, 0), (2, 0)): 1})
    if S(so3, so3):
        return False, "so(3) not Poisson"
    y4 = mcsolver.upsilon4()
    shifts = 0
    while shifts < 20:
        ins = [_rand_poly(rng, rng.randint(1, 3)) for _ in range(4)]
        if not all(ins) or any(len(set(i.psi_counts())) != 1 for i in ins):
            continue
        v = tpoly.ks_bracket(y4, ins)
        if v:
            shifts += 1
            if set(v.psi_counts()) != {sum(i.psi_count() for i in ins) - 5}:
                return False, "psi shift"
    return True, "100 random triples, so(3), 20 shift cases"


def c11_bialgebra():
    rng = random.Random(11)
    passed = trivial = 0
    for _ in range(3000):
        d = rng.choice((2, 3))
        qmon = [m for m in [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
                if sum(m[:d]) == 2 and not any(m[d:])]
        lmon = [tuple(int(i == j) for j in range(d)) for i in range(d)]
        xi = tpoly.PolyVector(d, {(rng.choice(qmon)[:d], (rng.randrange(d),)): rng.choice((-1, 1))
                                  for _ in range(rng.randint(0, 2))})
        phi = tpoly.PolyVector(d, {(rng.choice(lmon), tuple(rng.sample(range(d), 2))): rng.choice((-1, 1))
                                   for _ in range(rng.randint(0, 2))})
        if not tpoly.check_odd_bialgebra(xi, phi)["ok"]:
            continue
        passed += 1
        if tpoly.involutivity_value(xi, phi):
            return False, "involutivity composite nonzero"
        if not xi or not phi:
            trivial += 1
            if not tpoly.check_quantizable(xi, phi)[1]:
                return False, "trivial family not quantizable"
    return trivial > 0, "%d passing pairs (%d trivial), involutivity always 0" % (passed, trivial)


ACCEPTANCE_COMMANDS = [
    ["gc", "cohomology", "--vertices", "4", "--edges", "5"],
    ["gc", "cohomology", "--vertices", "5", "--edges", "6"],
    ["mc", "verify", "--order", "1"],
    ["holieb", "delta", "--m", "1", "--n", "1", "--a", "1"],
    ["holieb", "d2-check", "--max-arity", "3", "--max-weight", "1"],
    ["ncgb", "strongly-free", "--n", "12"],
    ["ncgb", "hilbert", "--n", "5", "--max-degree", "10"],
    ["ncgb", "dg-cohomology", "--n", "3", "--max-degree", "6"],
]


def c12_determinism():
    for cmd in ACCEPTANCE_COMMANDS:
        outs = []
        for extra in ([], [], ["--threads", "2"]):
            res = subprocess.run([sys.executable, "-m", "ksgraph.cli", *cmd, *extra],
                                 capture_output=True, text=True)
            outs.append((res.returncode, res.stdout))
        if len(set(outs)) != 1:
            return False, " ".join(cmd)
        json.loads(outs[0][1])
    return True, "%d commands, two runs and --threads 2 identical" % len(ACCEPTANCE_COMMANDS)


CRITERIA = [
    (1, "delta squared vanishes on graphs with n <= 5", c1_delta_squared),
    (2, "Y4 closed and not exact", c2_upsilon4),
    (3, "cohomology at (4,5) and (4,4) is one-dimensional", c3_cohomology),
    (4, "order-two extension", c4_order_two),
    (5, "weight-zero action matches the classical differential", c5_weight_zero),
    (6, "quantizability term of the (1,1,1) corolla", c6_quantizability_term),
    (7, "delta-diamond squared mod hbar^3", c7_delta_diamond_squared),
    (8, "strongly free relations and Hilbert series", c8_strongly_free),
    (9, "dg algebra cohomology concentrated in degree zero", c9_dg_cohomology),
    (10, "Schouten bracket structure", c10_tpoly),
    (11, "odd bialgebra and involutivity", c11_bialgebra),
    (12, "CLI determinism", c12_determinism),
]


def run_criterion(num, name, fn):
    t = time.time()
    ok, detail = fn()
    line = "criterion %2d %s: %s (%s; %.1fs)" % (num, "PASS" if ok else "FAIL", name, detail, time.time() - t)
    return ok, line


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[str(c[0]) for c in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, line = run_criterion(num, name, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
