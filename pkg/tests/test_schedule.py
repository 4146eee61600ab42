import random

import pytest

from growsched import _purekernels
from growsched.basic import path_schedule, star_schedule
from growsched.errors import FormatError, ScheduleError, TargetMismatch
from growsched.graph import Graph, complete_graph, path_graph, star_graph
from growsched.schedule import (
    Generation,
    Schedule,
    Slot,
    check_properties,
    defer_deletions,
    normalize_deletions,
    simulate,
    validate,
)
from growsched.schedule_io import emit_schedule, parse_schedule

try:
    from growsched import _speedups
except ImportError:  # pragma: no cover
    _speedups = None


def sched(d, *slots, init=0):
    return Schedule(d, init, tuple(Slot(tuple(Generation(*g) for g in gens), dels) for gens, dels in slots))


TRIANGLE = sched(2, ([(0, 1, [0])], ()), ([(0, 2, [0, 1])], ()))


def test_empty_schedule_is_single_vertex():
    tr = simulate(Schedule(2, 0, ()))
    assert len(tr) == 1 and tr.final.vertices == {0} and tr.final.edges == set()
    assert validate(Schedule(2, 0, ()), Graph(1)).as_dict() == {"slots": 0, "excess_edges": 0, "max_excess_lifetime": 0}


def test_triangle_example():
    tr = simulate(TRIANGLE)
    assert tr.final.as_graph() == complete_graph(3)
    assert [inst.n for inst in tr.instances] == [1, 2, 3]
    assert tr.instance(1).edges == {(0, 1)}


def test_d1_non_parent_activation_is_illegal():
    s = sched(1, ([(0, 1, [0])], ()), ([(0, 2, [0, 1])], ()))
    with pytest.raises(ScheduleError) as exc:
        simulate(s)
    assert exc.value.code == ScheduleError.ILLEGAL_ACTIVATION and exc.value.slot == 2


def test_same_slot_children_cannot_be_joined():
    s = sched(2, ([(0, 1, [0])], ()), ([(0, 2, [0]), (1, 3, [1, 2])], ()))
    with pytest.raises(ScheduleError) as exc:
        simulate(s)
    assert exc.value.code == ScheduleError.ILLEGAL_ACTIVATION


@pytest.mark.parametrize(
    "slots, code",
    [
        ((([(0, 1, [0]), (0, 2, [0])], ()),), ScheduleError.DUPLICATE_PARENT),
        ((([(5, 1, [5])], ()),), ScheduleError.UNKNOWN_PARENT),
        ((([(0, 1, [0])], ()), ([(1, 0, [1])], ())), ScheduleError.DUPLICATE_CHILD),
        ((([(0, 1, [0])], ((0, 1),)),), ScheduleError.DISCONNECTING_DELETION),
        ((([(0, 1, [0])], ((0, 7),)),), ScheduleError.UNKNOWN_EDGE_DELETION),
    ],
)
def test_error_codes(slots, code):
    with pytest.raises(ScheduleError) as exc:
        simulate(sched(2, *slots))
    assert exc.value.code == code and exc.value.slot >= 1


def test_missing_parent_edge():
    with pytest.raises(ScheduleError) as exc:
        simulate(Schedule(2, 0, (Slot((Generation.raw(0, 1, ()),)),)))
    assert exc.value.code == ScheduleError.MISSING_PARENT_EDGE


def test_deletions_are_sequential_in_sorted_order():
    # triangle plus pendant: deleting (0,1) then (0,2) would isolate 0; the
    # second deletion is refused only because the first already happened
    s = sched(2, ([(0, 1, [0])], ()), ([(0, 2, [0, 1])], ((0, 1), (0, 2))))
    with pytest.raises(ScheduleError) as exc:
        simulate(s)
    assert exc.value.code == ScheduleError.DISCONNECTING_DELETION and exc.value.item == (0, 2)


def test_validate_examples():
    assert validate(path_schedule(8), path_graph(8)).slots == 3
    assert validate(star_schedule(16), star_graph(16)).slots == 4
    with pytest.raises(TargetMismatch) as exc:
        validate(Schedule(2, 0, ()), path_graph(2))
    assert exc.value.code == ScheduleError.TARGET_MISMATCH


def test_target_mismatch_lists_edges():
    with pytest.raises(TargetMismatch) as exc:
        validate(TRIANGLE, path_graph(3))
    assert exc.value.symmetric_difference == [(0, 2)] or exc.value.symmetric_difference == [(0, 2), (1, 2)]


def test_metrics_lifetime():
    s = sched(2, ([(0, 1, [0])], ()), ([(0, 2, [0, 1])], ()), ([], ((0, 2),)))
    m = validate(s, Graph(3, [(0, 1), (1, 2)]))
    assert m.as_dict() == {"slots": 3, "excess_edges": 1, "max_excess_lifetime": 1}


def test_trace_doubling_bound():
    tr = simulate(path_schedule(100))
    sizes = [inst.n for inst in tr.instances]
    assert all(b <= 2 * a for a, b in zip(sizes, sizes[1:]))
    assert len(tr) == tr.k + 1


def test_normalize_examples():
    p8 = path_graph(8)
    s = normalize_deletions(defer_deletions(path_schedule(8)), p8)
    m = validate(s, p8)
    assert (m.slots, m.excess_edges, m.max_excess_lifetime) == (3, 4, 1)
    tr = simulate(s)
    assert all(tr.deletion[e] == tr.activation[e] + 1 for e in tr.deletion)
    fixed = normalize_deletions(s, p8)
    assert fixed == s
    zero = sched(2, ([(0, 1, [0])], ()))
    assert normalize_deletions(zero, path_graph(2)) == zero


def test_normalize_never_increases_lifetime():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(2, 60)
        for build, g in ((path_schedule, path_graph(n)), (star_schedule, star_graph(n))):
            s = build(n)
            before = validate(s, g)
            after = validate(normalize_deletions(s, g), g)
            assert (after.slots, after.excess_edges) == (before.slots, before.excess_edges)
            assert after.max_excess_lifetime <= before.max_excess_lifetime


def test_normalize_rejects_invalid_input():
    with pytest.raises(ScheduleError):
        normalize_deletions(TRIANGLE, path_graph(3))


def test_check_properties_on_basic_traces():
    for s in (path_schedule(8), star_schedule(8), sched(2, ([(0, 1, [0])], ()))):
        rep = check_properties(simulate(s))
        assert rep.ok and rep.exhaustive
        assert rep.checked["independent_set"] == s.n_final - 1


def test_check_properties_flags_forged_trace():
    tr = simulate(path_schedule(4))
    # claim that two same-slot children are adjacent in the target
    kids = tr.slot_children[-1]
    target = Graph(4, [(0, 1), (1, 2), (2, 3), tuple(sorted(kids[:2]))])
    assert not check_properties(tr, target).ok


def test_check_properties_skips_other_d():
    s = sched(1, ([(0, 1, [0])], ()))
    assert check_properties(simulate(s)).checked == {}


# -- JSON -----------------------------------------------------------------------


def test_schedule_round_trip():
    for s in (TRIANGLE, path_schedule(13), star_schedule(9), Schedule(2, 3, ())):
        text = emit_schedule(s)
        assert parse_schedule(text) == s
        assert emit_schedule(parse_schedule(text)) == text


def test_schedule_io_errors():
    with pytest.raises(FormatError, match="'d'"):
        parse_schedule('{"initiator": 0, "slots": []}')
    dup = '{"d": 2, "initiator": 0, "slots": [{"gen": [{"p": 0, "c": 1, "act": [0]}, {"p": 0, "c": 1, "act": [0]}]}]}'
    with pytest.raises(FormatError, match="duplicate child identifier 1"):
        parse_schedule(dup)
    with pytest.raises(FormatError, match="parent"):
        parse_schedule('{"d": 2, "initiator": 0, "slots": [{"gen": [{"p": 0, "c": 1, "act": []}]}]}')
    with pytest.raises(FormatError, match="line 1"):
        parse_schedule("{")
    with pytest.raises(FormatError, match=r"\$\.slots\[0\]\.gen\[0\]\.c"):
        parse_schedule('{"d": 2, "initiator": 0, "slots": [{"gen": [{"p": 0, "c": "x", "act": [0]}]}]}')


# -- compiled and pure simulators agree --------------------------------------------


def _random_slots(rng):
    d = rng.choice([1, 2, 2, 2, 3])
    adj = {0: set()}
    slots, nxt = [], 1
    for _ in range(rng.randint(1, 5)):
        gens, new = [], []
        for p in sorted(adj):
            if rng.random() < 0.6:
                c, nxt = nxt, nxt + 1
                act = {p} | ({w for w in adj[p] if rng.random() < 0.5} if d >= 2 else set())
                if rng.random() < 0.05:
                    act.add(rng.randrange(nxt + 1))
                gens.append(Generation(p, c, act))
                new += [(c, w) for w in act]
        for g in gens:
            adj[g.child] = set()
        for c, w in new:
            if w in adj:
                adj[c].add(w)
                adj[w].add(c)
        edges = sorted({(min(u, w), max(u, w)) for u in adj for w in adj[u]})
        dels = tuple(e for e in edges if rng.random() < 0.25)
        if rng.random() < 0.03:
            dels += ((0, nxt + 5),)
        slots.append((tuple(gens), dels))
        for u, w in dels:
            if u in adj and w in adj:
                adj[u].discard(w)
                adj[w].discard(u)
    return d, slots


def _plain_norm(r):
    return (r[0], None if r[1] is None else set(r[1])) + tuple(r[2:])


@pytest.mark.skipif(_speedups is None, reason="compiled extension not built")
def test_backends_agree_on_random_schedules():
    rng = random.Random(1)
    for _ in range(1500):
        d, slots = _random_slots(rng)
        assert _speedups.run(d, 0, slots) == _purekernels.run(d, 0, slots)
        a = _plain_norm(_speedups.normalize_core(d, 0, slots))
        b = _plain_norm(_purekernels.normalize_core(d, 0, slots))
        assert a == b
