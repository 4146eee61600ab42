"""Acceptance criteria, one test each.

Every test carries ``criterion(number, title)``; the session summary prints
one PASS/FAIL line per criterion with the measured values.  Tolerances and
time limits are the stated ones.  Timings use ``perf_counter`` and cover
only the work the criterion describes: the seconds the trace collector
spends on d=2 property checks (criterion 11) are subtracted.
"""

import math
import random
import time

import pytest

from growsched.basic import path_schedule, star_schedule, trimming_schedule
from growsched.bounds import chromatic_number, g_full_degree_sum, g_full_schedule, hardness_gadget, min_edge_difference, slot_lower_bound
from growsched.composite import planar_schedule, tree_schedule
from growsched.graph import Graph, complete_graph, cycle_graph, degeneracy_ordering, grid_graph, is_tree, path_graph, petersen_graph, random_tree, star_graph
from growsched.kernels import TwoSatFormula, max_matching, two_sat
from growsched.oracle import all_graphs, connected_graphs, min_excess_with_budget, min_slots_zero_excess, zero_excess_witness
from growsched.schedule import normalize_deletions, simulate, validate
from growsched.zero_excess import elimination_schedule, fast_growth

# Envelope constants, fitted once on random trees / grids with n = 2^8 and
# rounded up: tree slots / log2(n)^2 = 0.266 there, tree excess / n = 0.56,
# planar excess / (n log2 n) = 0.57.  Larger n must stay inside them.
C_TREE_SLOTS = 0.30
C_TREE_EXCESS = 0.60
C_PLANAR_EXCESS = 1.0


def ceil_log2(n):
    return (n - 1).bit_length()


class Clock:
    """Wall time minus the time spent in the property-check collector."""

    def __init__(self, collector):
        self.collector = collector
        self.t0 = time.perf_counter()
        self.c0 = collector.seconds

    @property
    def s(self):
        return time.perf_counter() - self.t0 - (self.collector.seconds - self.c0)


@pytest.mark.criterion(1, "path/star: ceil(log n) slots, excess bounds, lifetime after normalize")
def test_c1_path_star_optimality(collector, detail):
    clock = Clock(collector)
    worst_path = worst_star = 0.0
    star_life = set()
    for n in range(2, 1025):
        k = ceil_log2(n)
        p = path_graph(n)
        m = validate(normalize_deletions(path_schedule(n), p), p)
        assert m.slots == k and m.excess_edges <= n - 2
        assert m.max_excess_lifetime == (1 if m.excess_edges else 0)
        s = star_graph(n)
        m2 = validate(normalize_deletions(star_schedule(n), s), s)
        assert m2.slots == k and m2.excess_edges <= n - k
        assert m2.max_excess_lifetime <= 1
        star_life.add(m2.max_excess_lifetime)
        worst_path = max(worst_path, m.excess_edges / max(n - 2, 1))
        worst_star = max(worst_star, m2.excess_edges / max(n - k, 1))
    elapsed = clock.s
    detail(f"max excess/(n-2) path {worst_path:.2f}, star excess/(n-ceil log n) {worst_star:.2f}, "
           f"star lifetimes {sorted(star_life)}, {elapsed:.2f}s")
    assert elapsed < 5.0


def _tree_classes(n):
    return [g for g in connected_graphs(n) if is_tree(g)]


@pytest.mark.criterion(2, "trimming (d=1) equals the oracle minimum; paths ceil(n/2), stars n-1")
def test_c2_trimming_optimality(collector, detail):
    clock = Clock(collector)
    exhaustive = 0
    for n in range(1, 9):
        for t in _tree_classes(n):
            assert validate(trimming_schedule(t), t).slots == min_slots_zero_excess(t, d=1)
            exhaustive += 1
    rng = random.Random(2024)
    against_oracle = 0
    for i in range(200):
        n = rng.randint(2, 20) if i % 4 == 0 else rng.randint(2, 200)
        t = random_tree(n, rng.randrange(1 << 30))
        k = validate(trimming_schedule(t), t).slots
        assert k >= slot_lower_bound(t, 1)
        if n <= 20:
            assert k == min_slots_zero_excess(t, d=1, cap=20)
            against_oracle += 1
    for n in range(2, 201):
        assert validate(trimming_schedule(path_graph(n)), path_graph(n)).slots == (n + 1) // 2
        assert validate(trimming_schedule(star_graph(n)), star_graph(n)).slots == n - 1
    elapsed = clock.s
    detail(f"{exhaustive} tree classes n<=8 exhaustive, {against_oracle}/200 random trees also oracle-checked, {elapsed:.2f}s")
    assert elapsed < 30.0


@pytest.mark.criterion(3, "elimination_schedule exists iff the oracle finds a zero-excess schedule (n<=7)")
def test_c3_elimination_completeness(collector, detail):
    clock = Clock(collector)
    total = found = 0
    for n in range(1, 8):
        for g in connected_graphs(n):
            s = elimination_schedule(g)
            assert (s is not None) == (min_slots_zero_excess(g) is not None)
            if s is not None:
                m = validate(s, g)
                assert (m.slots, m.excess_edges) == (n - 1, 0)
                found += 1
            total += 1
    elapsed = clock.s
    detail(f"{found}/{total} classes eliminable, {elapsed:.2f}s")
    assert elapsed < 300.0


@pytest.mark.criterion(4, "fast_growth exists iff a log n slot zero-excess schedule exists (n in 2,4,8)")
def test_c4_fast_growth_completeness(collector, detail):
    clock = Clock(collector)
    counts = {}
    for n in (2, 4, 8):
        k = ceil_log2(n)
        yes = 0
        for g in connected_graphs(n):
            s = fast_growth(g)
            assert (s is not None) == (zero_excess_witness(g, k) is not None)
            if s is not None:
                m = validate(s, g)
                assert (m.slots, m.excess_edges) == (k, 0)
                yes += 1
        counts[n] = (yes, len(connected_graphs(n)))
    assert fast_growth(path_graph(4)) is not None
    for g in (cycle_graph(4), complete_graph(4), star_graph(4)):
        assert fast_growth(g) is None
    elapsed = clock.s
    detail(", ".join(f"n={n}: {a}/{b}" for n, (a, b) in counts.items()) + f", {elapsed:.2f}s")
    assert elapsed < 600.0


def _brute_matching_size(g: Graph) -> int:
    """Maximum matching by DP over vertex subsets (lowest vertex is either
    unmatched or matched to some neighbour)."""
    memo = {0: 0}
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]

    def best(mask):
        if mask in memo:
            return memo[mask]
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        out = best(rest)
        cand = nbr[v] & rest
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            out = max(out, 1 + best(rest & ~(1 << w)))
        memo[mask] = out
        return out

    return best((1 << g.n) - 1)


def _truth_table_sat(f: TwoSatFormula) -> bool:
    """Evaluate the formula on all 2^V assignments at once: bit a of
    ``true[x]`` says whether variable x is true in assignment a."""
    size = 1 << f.num_vars
    full = (1 << size) - 1
    true = []
    for x in range(f.num_vars):
        block = ((1 << (1 << x)) - 1) << (1 << x)  # 2^x zeros then 2^x ones
        period = 1 << (x + 1)
        pattern = 0
        for start in range(0, size, period):
            pattern |= block << start
        true.append(pattern)
    ok = full
    for (a, sa), (b, sb) in f.clauses:
        la = true[a] if sa else full ^ true[a]
        lb = true[b] if sb else full ^ true[b]
        ok &= la | lb
        if not ok:
            return False
    return ok != 0


@pytest.mark.criterion(5, "max_matching and two_sat agree with brute force")
def test_c5_kernels(collector, detail):
    clock = Clock(collector)
    graphs = 0
    for n in range(1, 9):
        for g in all_graphs(n):
            m = max_matching(g)
            assert m.is_valid(g) and len(m) == _brute_matching_size(g)
            graphs += 1
    pet = max_matching(petersen_graph())
    assert len(pet) == 5 and pet.is_valid(petersen_graph())
    rng = random.Random(15)
    sat = 0
    for _ in range(10_000):
        nv = rng.randint(1, 15)
        f = TwoSatFormula(nv)
        for _ in range(rng.randint(0, 4 * nv)):
            f.add((rng.randrange(nv), rng.random() < 0.5), (rng.randrange(nv), rng.random() < 0.5))
        sol = two_sat(f)
        assert (sol is not None) == _truth_table_sat(f)
        if sol is not None:
            assert f.satisfied_by(sol)
            sat += 1
    elapsed = clock.s
    detail(f"{graphs} graph classes n<=8, Petersen 5, 10000 formulas ({sat} sat), {elapsed:.2f}s")
    assert elapsed < 120.0


@pytest.mark.criterion(6, "tree_schedule: slots <= C log^2 n, excess <= C' n for n = 2^8..2^16")
def test_c6_tree_envelope(collector, detail):
    clock = Clock(collector)
    worst_c = worst_cp = 0.0
    for e in range(8, 17):
        n = 1 << e
        t = random_tree(n, e)
        m = validate(tree_schedule(t), t)
        c, cp = m.slots / e**2, m.excess_edges / n
        assert m.slots <= C_TREE_SLOTS * e**2, (n, m)
        assert m.excess_edges <= C_TREE_EXCESS * n, (n, m)
        worst_c, worst_cp = max(worst_c, c), max(worst_cp, cp)
    elapsed = clock.s
    detail(f"C={C_TREE_SLOTS} (max seen {worst_c:.3f}), C'={C_TREE_EXCESS} (max seen {worst_cp:.3f}), {elapsed:.2f}s")
    assert elapsed < 60.0


@pytest.mark.criterion(7, "planar_schedule: slots <= (k+1) ceil(log n) + 5, excess <= C'' n log n")
def test_c7_planar_envelope(collector, detail):
    clock = Clock(collector)
    worst = 0.0
    cases = [grid_graph(s, s) for s in (8, 16, 32, 64, 128)]
    cases += [random_tree(n, n) for n in (64, 256, 1024, 4096)]
    for g in cases:
        k = degeneracy_ordering(g)[1]
        m = validate(planar_schedule(g), g)
        lg = math.log2(g.n)
        assert m.slots <= (k + 1) * ceil_log2(g.n) + 5, (g.n, m)
        assert m.excess_edges <= C_PLANAR_EXCESS * g.n * lg, (g.n, m)
        worst = max(worst, m.excess_edges / (g.n * lg))
    elapsed = clock.s
    detail(f"C''={C_PLANAR_EXCESS} (max seen {worst:.3f}), grids to 128x128 and trees to 4096, {elapsed:.2f}s")
    assert elapsed < 60.0


@pytest.mark.criterion(8, "oracle min excess at log n slots >= exact min edge difference (n in 4, 8)")
def test_c8_lower_bound_soundness(collector, detail):
    clock = Clock(collector)
    compared = tight = 0
    for n in (4, 8):
        k = ceil_log2(n)
        for g in connected_graphs(n):
            ed = min_edge_difference(g)
            assert ed.exact
            ell = min_excess_with_budget(g, k)
            if ell is None:
                continue  # no k-slot schedule at all: nothing to bound
            assert ell >= ed.value
            compared += 1
            tight += ell == ed.value
    star = min_edge_difference(star_graph(8))
    assert star.exact and star.value == 4
    elapsed = clock.s
    detail(f"{compared} graphs with a log n slot schedule, bound tight on {tight}, K1,7 ED=4, {elapsed:.2f}s")
    assert elapsed < 600.0


@pytest.mark.criterion(9, "g_full simulated degree sum equals f(2)=2, f(2x)=3f(x)+2x")
def test_c9_g_full_recurrence(collector, detail):
    clock = Clock(collector)
    f = {1: 0}
    for delta in range(1, 13):
        x = 1 << (delta - 1)
        f[2 * x] = 2 if x == 1 else 3 * f[x] + 2 * x
    for delta in range(0, 13):
        final = simulate(g_full_schedule(delta)).final
        degree_sum = 2 * len(final.edges)
        assert degree_sum == f[1 << delta] == g_full_degree_sum(delta)
    elapsed = clock.s
    detail(f"delta<=12, f(4096)={f[4096]}, {elapsed:.2f}s")
    assert elapsed < 5.0


@pytest.mark.criterion(10, "hardness gadget: oracle slots vs chi(g)+|V(g)|, within 1")
def test_c10_hardness_gadget(collector, detail):
    clock = Clock(collector)
    rows = []
    for name, g in (("K1", Graph(1)), ("K2", path_graph(2)), ("P3", path_graph(3)), ("C5", cycle_graph(5))):
        measured = min_slots_zero_excess(hardness_gadget(g), cap=10)
        chi, exact = chromatic_number(g)
        assert exact
        kappa = chi + g.n
        # the oracle does not count the initiator's own slot 0
        assert measured + 1 == kappa
        assert abs(measured - kappa) <= 1
        rows.append(f"{name} {measured}+1={kappa}")
    elapsed = clock.s
    detail(", ".join(rows) + f", {elapsed:.2f}s")
    assert elapsed < 600.0


@pytest.mark.criterion(11, "check_properties reports no violation on any d=2 trace of the run")
@pytest.mark.property_suite
def test_c11_property_suite(collector, detail):
    detail(f"{collector.checked} traces ({collector.sampled} sampled), {len(collector.violations)} violations, {collector.seconds:.1f}s of checks")
    assert collector.checked > 0
    assert collector.violations == []
