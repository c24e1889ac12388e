"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line that is printed in the terminal summary.
Expected values come from the brute-force oracles in ``conftest``.
"""

from __future__ import annotations

import itertools
import time
from contextlib import contextmanager
from fractions import Fraction

import networkx as nx

from conftest import (
    ACCEPTANCE_RESULTS,
    DATA,
    all_matchings,
    brute_independent_set,
    brute_lp,
    brute_mu,
    has_augmenting_path,
    is_koenig_by_definition,
    load,
)
from kedkit.generators import SplitMix64, gen_cnf, gen_graph
from kedkit.graph import Graph, delete_edges, read_graph_file, write_graph
from kedkit.koenig import brute_force_min_ked, brute_force_min_ked_dfm, is_koenig
from kedkit.lp import nt_decomposition
from kedkit.matching import maximum_matching, saturating_cut_matching
from kedkit.reductions import KedDfmInstance, reduce_a2sat_to_keddfm, reduce_is_to_ked, solve_keddfm
from kedkit.twosat import almost_2sat, brute_force_almost_2sat, deletion_size, parse_cnf, write_cnf

PROBABILITIES = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)]

# graphs with at most 10 vertices seen by the sweeps, rechecked by criterion 8
SMALL_GRAPHS: list[Graph] = []


@contextmanager
def criterion(name: str, limit: float | None = None):
    start = time.perf_counter()
    state = {"detail": ""}
    try:
        yield state
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_RESULTS.append((name, False, f"{elapsed:.1f}s {state['detail']} {type(exc).__name__}: {str(exc).splitlines()[0]}".strip()))
        raise
    elapsed = time.perf_counter() - start
    ok = limit is None or elapsed < limit
    ACCEPTANCE_RESULTS.append((name, ok, f"{elapsed:.1f}s {state['detail']}".strip()))
    assert ok, f"{name} took {elapsed:.1f}s, limit {limit}s"


def _atlas_graphs() -> list[Graph]:
    out = []
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= 7 and nx.is_connected(h):
            out.append(Graph(h.number_of_nodes(), frozenset((u + 1, v + 1) for u, v in h.edges())))
    return out


def _sweep_graph(seed: int, max_n: int, min_n: int = 1) -> Graph:
    rng = SplitMix64(seed)
    n = min_n + rng.below(max_n - min_n + 1)
    return gen_graph(n, PROBABILITIES[rng.below(len(PROBABILITIES))], seed)


def test_criterion_1_recognition_matches_definition():
    with criterion("1 recognition vs mu = vc", 60) as state:
        atlas = _atlas_graphs()
        assert len(atlas) >= 853
        graphs = atlas + [_sweep_graph(1000 + s, 10) for s in range(500)]
        wrong = [g for g in graphs if is_koenig(g) != is_koenig_by_definition(g)]
        SMALL_GRAPHS.extend(graphs)
        state["detail"] = f"{len(atlas)} atlas + 500 random, {len(wrong)} disagreements"
        assert not wrong


def test_criterion_2_nemhauser_trotter():
    with criterion("2 NT value, minimal S_half, S1->S0 matching", 300) as state:
        bad = 0
        for s in range(300):
            g = _sweep_graph(2000 + s, 12)
            sol = nt_decomposition(g)
            best, fewest = brute_lp(g)
            ok = (
                sol.value * 2 == best
                and len(sol.s_half) == fewest
                and saturating_cut_matching(g.induced(sol.s1 | sol.s0), sol.s1) is not None
            )
            bad += not ok
            if g.n <= 10:
                SMALL_GRAPHS.append(g)
        state["detail"] = f"300 graphs, {bad} failures"
        assert bad == 0


def test_criterion_3_counterexample():
    with criterion("3 matching-counterexample facts", 30) as state:
        gf = load("matching_counterexample.gr")
        g, m = gf.graph, gf.matching
        facts = {}
        facts["mu=7"] = brute_mu(g) == 7 == len(m)
        facts["unique maximum matching"] = all_matchings(g, 7) == [m]
        facts["not Koenig"] = not is_koenig_by_definition(g)
        edges = g.canonical_edges()
        by_size = {
            r: [frozenset(f) for f in itertools.combinations(edges, r) if is_koenig_by_definition(delete_edges(g, f))]
            for r in (0, 1, 2)
        }
        facts["min KED size 2"] = not by_size[0] and not by_size[1] and bool(by_size[2])
        avoiding = [f for f in by_size[2] if not f & m]
        facts["every size-2 KED meets M"] = not avoiding
        dfm = [f for r in (0, 1, 2) for f in by_size[r] if not f & m]
        facts["KED-dfM absent for k<=2"] = not dfm
        failed = [name for name, ok in facts.items() if not ok]
        state["detail"] = (
            f"{len(by_size[2])} size-2 KEDs, {len(avoiding)} avoid M (e.g. {sorted(min(avoiding)) if avoiding else '-'}); "
            f"failed: {failed or 'none'}"
        )
        assert not failed, f"facts not reproduced: {failed}"


def test_criterion_4_independent_set_reduction():
    with criterion("4 IS(G,2) <=> KED(G',2), no size-1 KED, perfect matching", 600) as state:
        yes = bad = 0
        for s in range(100):
            g = _sweep_graph(4000 + s, 7, min_n=5)
            SMALL_GRAPHS.append(g)
            inst = reduce_is_to_ked(g, 2)
            gp = inst.graph
            has_is = brute_independent_set(g, 2)
            f = brute_force_min_ked(gp, 2)
            ok = (f is not None) == has_is
            ok &= brute_force_min_ked(gp, 1) is None
            ok &= 2 * len(maximum_matching(gp)) == gp.n
            yes += has_is
            bad += not ok
        state["detail"] = f"100 graphs ({yes} with a 2-independent set), {bad} failures"
        assert bad == 0


def test_criterion_5_almost_2sat_reduction():
    with criterion("5 Almost-2-SAT <=> KED-dfM on the literal graph", 600) as state:
        bad = yes = 0
        for s in range(100):
            rng = SplitMix64(5000 + s)
            nvars = 1 + rng.below(5)
            units = rng.below(min(2 * nvars, 3) + 1)
            pairs = rng.below(min(8 - units, 2 * nvars * (nvars - 1)) + 1)
            k = rng.below(3)
            phi = gen_cnf(nvars, pairs, 5000 + s, units=units)
            inst = reduce_a2sat_to_keddfm(phi, k)
            d = brute_force_almost_2sat(phi, k)
            f = brute_force_min_ked_dfm(inst.graph, inst.matching, k)
            ok = (d is None) == (f is None) and (d is None or deletion_size(d) == len(f))
            yes += d is not None
            bad += not ok
        state["detail"] = f"100 formulas ({yes} yes), {bad} failures"
        assert bad == 0


def _fixture_instances():
    for path in sorted(DATA.glob("*.gr")):
        gf = read_graph_file(path.read_text())
        m = gf.matching if gf.matching is not None else maximum_matching(gf.graph)
        ks = [gf.k] if gf.k is not None else [0, 1, 2]
        for k in ks:
            yield path.name, KedDfmInstance(gf.graph, m, k)


def test_criterion_6_keddfm_solver():
    with criterion("6 solve_keddfm vs exhaustive KED-dfM", 600) as state:
        instances = []
        for s in range(200):
            g = _sweep_graph(6000 + s, 9)
            SMALL_GRAPHS.append(g)
            instances.append(KedDfmInstance(g, maximum_matching(g), SplitMix64(s).below(3)))
        instances += [inst for _, inst in _fixture_instances()]
        bad = 0
        for inst in instances:
            f = solve_keddfm(inst)
            oracle = brute_force_min_ked_dfm(inst.graph, inst.matching, inst.k)
            bad += (f is None) != (oracle is None) or (f is not None and len(f) != len(oracle))
        state["detail"] = f"{len(instances)} instances, {bad} disagreements"
        assert bad == 0


def test_criterion_7_almost_2sat_solver():
    with criterion("7 almost_2sat vs exhaustive oracle", 300) as state:
        bad = 0
        for s in range(500):
            rng = SplitMix64(7000 + s)
            nvars = 1 + rng.below(6)
            units = rng.below(min(2 * nvars, 4) + 1)
            pairs = rng.below(min(12 - units, 2 * nvars * (nvars - 1)) + 1)
            k = rng.below(4)
            phi = gen_cnf(nvars, pairs, 7000 + s, units=units, max_multiplicity=3)
            bad += almost_2sat(phi, k) != brute_force_almost_2sat(phi, k)
        state["detail"] = f"500 formulas, {bad} disagreements"
        assert bad == 0


def test_criterion_8_matching_engine():
    with criterion("8 blossom size = exhaustive mu, no augmenting path") as state:
        graphs = list(SMALL_GRAPHS) or [_sweep_graph(8000 + s, 10) for s in range(300)]
        graphs += [read_graph_file(p.read_text()).graph for p in sorted(DATA.glob("*.gr"))]
        graphs = [g for g in graphs if g.n <= 10] + [load("matching_counterexample.gr").graph]
        bad = 0
        for g in graphs:
            m = maximum_matching(g)
            bad += len(m) != brute_mu(g) or has_augmenting_path(g, m)
        state["detail"] = f"{len(graphs)} graphs, {bad} failures"
        assert bad == 0


def test_criterion_9_round_trips():
    with criterion("9 bit-exact fixture round-trips") as state:
        files = sorted(DATA.glob("*.gr")) + sorted(DATA.glob("*.cnf"))
        bad = []
        for path in files:
            text = path.read_text()
            if path.suffix == ".gr":
                gf = read_graph_file(text)
                again = write_graph(gf.graph, gf.matching, gf.k)
            else:
                again = write_cnf(parse_cnf(text))
            if again != text:
                bad.append(path.name)
        state["detail"] = f"{len(files)} files, mismatched: {bad or 'none'}"
        assert not bad
