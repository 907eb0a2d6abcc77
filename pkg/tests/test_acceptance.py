"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import json
import math
import os
import random
import subprocess
import sys
import time
from collections import Counter
from fractions import Fraction

import networkx as nx
import pytest

from pseudoperiodic import catalog
from pseudoperiodic import chorizo as chz
from pseudoperiodic import conjugacy as cj
from pseudoperiodic import graphs as gr
from pseudoperiodic.chains import cone_chain, nonamph_chain
from pseudoperiodic.chorizo import build_generalized_quotient, curve_chain
from pseudoperiodic.cli import run
from pseudoperiodic.generate import random_data, relabel, shuffle_order
from pseudoperiodic.model import Valency, to_json, validate

from oracles import chain_from_hj, enumerate_chain_sequences, extended_dynkin, psd_rank

RANDOM_SEEDS = range(120)


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def graph_of(ch):
    g = nx.MultiGraph()
    for c in ch.components:
        g.add_node(c.id, m=c.multiplicity, g=c.genus)
    g.add_edges_from(ch.nodes)
    return g


def dynkin_graph(center, arms):
    mults, edges = extended_dynkin(center, arms)
    g = nx.MultiGraph()
    for i, m in enumerate(mults):
        g.add_node(i, m=m, g=0)
    g.add_edges_from(edges)
    return g


# extended Dynkin diagrams with their null vectors, written out by hand
KODAIRA = {
    "kodaira-I0*": (dynkin_graph(2, [[1], [1], [1], [1]]), [2, 1, 1, 1, 1]),
    "kodaira-IV*": (dynkin_graph(3, [[2, 1], [2, 1], [2, 1]]), [3, 2, 2, 2, 1, 1, 1]),
    "kodaira-III*": (dynkin_graph(4, [[3, 2, 1], [3, 2, 1], [2]]), [4, 3, 3, 2, 2, 2, 1, 1]),
    "kodaira-II*": (dynkin_graph(6, [[5, 4, 3, 2, 1], [4, 2], [3]]), [6, 5, 4, 4, 3, 3, 2, 2, 1]),
}
# the multiset printed for II* has ten entries; an E8-tilde tree has nine vertices
PRINTED_II_STAR = [6, 5, 4, 4, 3, 3, 2, 2, 2, 1]


def test_criterion_1_kodaira(capsys):
    start = time.perf_counter()
    bad = []
    for name, (oracle, multiset) in KODAIRA.items():
        ch = build_generalized_quotient(catalog.builtin_get(name).data)
        g = graph_of(ch)
        same = nx.is_isomorphic(g, oracle, node_match=lambda a, b: a == b)
        if not same or ch.multiplicity_multiset() != multiset:
            bad.append(name)
        if not all(x == -2 for x in chz.self_intersections(ch)):
            bad.append(name + " self-intersections")
    elapsed = time.perf_counter() - start
    # the printed II* list is not the null vector of any 9-vertex tree: its length and sum are off
    assert len(PRINTED_II_STAR) == 10 and sum(PRINTED_II_STAR) == 32
    assert sum(KODAIRA["kodaira-II*"][1]) == 30 and KODAIRA["kodaira-II*"][0].number_of_nodes() == 9
    report(capsys, 1, not bad and elapsed < 1.0,
           f"D4~, E6~, E7~, E8~ dual graphs match hand-built oracles in {elapsed:.3f}s"
           + (f"; mismatches {bad}" if bad else "")
           + "; II* checked against [6,5,4,4,3,3,2,2,1], the printed 10-entry list is a typo")


def _units(lam):
    return [0] if lam == 1 else [s for s in range(1, lam) if math.gcd(s, lam) == 1]


def _uniqueness_run(max_l):
    found = enumerate_chain_sequences(12, max_l, 200, 6)
    compatible = wrong = missing = multiple = zero_ok = 0
    worst = 0
    for l1 in range(1, 13):
        for s1 in _units(l1):
            v1 = Valency(l1, s1)
            for l2 in range(1, 13):
                for s2 in _units(l2):
                    v2 = Valency(l2, s2)
                    frac = (v1.rotation + v2.rotation) % 1
                    for num in range(1, 6 * l1 * l2 + 1):
                        s = Fraction(num, l1 * l2)
                        seqs = found.get((l1, s1, l2, s2, s), [])
                        if s % 1 != frac:
                            zero_ok += not seqs
                            wrong += bool(seqs)
                            continue
                        compatible += 1
                        chain = nonamph_chain(v1, v2, s).entries
                        worst = max(worst, len(chain) - 1)
                        if not seqs:
                            missing += 1
                        elif len(seqs) > 1:
                            multiple += 1
                        elif seqs[0] != chain:
                            wrong += 1
    return dict(compatible=compatible, missing=missing, multiple=multiple, wrong=wrong,
                incompatible_empty=zero_ok, longest_l=worst)


@pytest.mark.slow
def test_criterion_2_chain_uniqueness(capsys):
    start = time.perf_counter()
    r = _uniqueness_run(16)
    elapsed = time.perf_counter() - start
    ok = r["missing"] == r["multiple"] == r["wrong"] == 0 and elapsed < 600
    report(capsys, 2, ok,
           f"length <= 16, entries <= 200: {r['compatible']} compatible tuples, {r['missing']} have no "
           f"sequence within the length bound (longest chain has l = {r['longest_l']}), {r['multiple']} "
           f"non-unique, {r['wrong']} disagree with nonamph_chain; {r['incompatible_empty']} incompatible "
           f"tuples find zero; {elapsed:.0f}s")


@pytest.mark.slow
def test_criterion_2_extended_length(capsys):
    start = time.perf_counter()
    r = _uniqueness_run(32)
    elapsed = time.perf_counter() - start
    ok = r["missing"] == r["multiple"] == r["wrong"] == 0 and r["longest_l"] <= 32
    report(capsys, "2 (length <= 32)", ok,
           f"{r['compatible']} compatible tuples each have exactly one sequence, equal to nonamph_chain "
           f"(longest l = {r['longest_l']}); {r['incompatible_empty']} incompatible tuples find zero; {elapsed:.0f}s")


def test_criterion_3_cone_oracle(capsys):
    pairs = [(lam, s) for lam in range(2, 51) for s in _units(lam)]
    bad = [(lam, s) for lam, s in pairs if list(cone_chain(Valency(lam, s))) != chain_from_hj(lam, s)]
    report(capsys, 3, not bad, f"cone_chain equals the continued-fraction oracle on {len(pairs)} pairs"
           + (f"; mismatches {bad[:5]}" if bad else ""))


def _structural_failures(data):
    ch = build_generalized_quotient(data)
    fails = []
    if not chz.euler_balance(ch, data.genus):
        fails.append("euler")
    try:
        chz.self_intersections(ch)
    except chz.MultiplicityMismatch:
        fails.append("divisibility")
        return fails
    ok, radical = chz.intersection_form_semidefinite(ch)
    q = chz.intersection_matrix(ch)
    m = [c.multiplicity for c in ch.components]
    psd, rank = psd_rank([[-x for x in row] for row in q])
    null = all(sum(row[j] * m[j] for j in range(len(m))) == 0 for row in q)
    if not (ok and psd and null and rank == len(m) - 1 and list(radical) == m):
        fails.append("semidefinite")
    return fails


def test_criterion_4_structural(capsys):
    inputs = [(n, catalog.builtin_get(n).data) for n in catalog.builtin_list()]
    inputs += [(f"random-{s}", random_data(s)) for s in RANDOM_SEEDS]
    assert all(validate(d).ok for _, d in inputs)
    bad = {n: f for n, d in inputs if (f := _structural_failures(d))}
    report(capsys, 4, not bad, f"{len(inputs) - len(bad)}/{len(inputs)} inputs "
           f"({len(catalog.builtin_list())} catalog, {len(RANDOM_SEEDS)} random) pass euler balance, "
           "divisibility and semidefiniteness with radical <m>" + (f"; failures {bad}" if bad else ""))


def test_criterion_5_counterexample(capsys):
    f1, f2 = (catalog.builtin_get(n).data for n in ("nielsen-f1", "nielsen-f2"))
    verdicts = [cj.conjugate(f1, f2).verdict for _ in range(3)]
    t1, t2 = cj.invariants(f1), cj.invariants(f2)
    same_s = chz.chorizo_isomorphic(t1.chorizo, t2.chorizo)
    same_y = gr.weighted_isomorphic(t1.weighted_graph, t2.weighted_graph)
    twin = [cj.conjugate(f1, relabel(f1, random.Random(seed))).verdict for seed in range(5)]
    ok = verdicts == [cj.DISTINCT_ACTION] * 3 and same_s and same_y and twin == [cj.INVARIANTS_EQUAL] * 5
    report(capsys, 5, ok, f"f1 vs f2: {verdicts[0]} with S isomorphic={same_s}, Y isomorphic={same_y}; "
           f"f1 vs relabeled f1: {sorted(set(twin))}")


def _count_mismatches(data):
    st = data.structure
    ch = build_generalized_quotient(data)
    per_label = Counter(c.part_label for c in ch.components)
    bad = []
    for key in st.body_orbits:
        cones = st.body_orbit_data[key].cone_points
        want = 1 + sum(cone_chain(v).length for v in cones)
        arms = Counter(c.id.split("/")[1] for c in ch.components if c.id.startswith(f"b:{key}/cone"))
        if per_label["b:" + key] != want or sorted(arms.values()) != sorted(cone_chain(v).length for v in cones):
            bad.append(("body", key))
    for key in st.curve_orbits:
        l = curve_chain(data, key).length
        if st.amphidrome[key]:
            if per_label["m:" + key] != l + 2:
                bad.append(("amphidrome", key))
        elif per_label["c:" + key] != l - 1:
            bad.append(("non-amphidrome", key))
    return bad


def test_criterion_6_component_counts(capsys):
    kinds = Counter()
    bad = {}
    for seed in RANDOM_SEEDS:
        d = random_data(seed)
        st = d.structure
        kinds["cone"] += sum(len(st.body_orbit_data[k].cone_points) for k in st.body_orbits)
        kinds["amphidrome"] += sum(st.amphidrome.values())
        kinds["non-amphidrome"] += sum(not a for a in st.amphidrome.values())
        if m := _count_mismatches(d):
            bad[seed] = m
    ok = not bad and min(kinds.values()) >= 20
    report(capsys, 6, ok, f"{len(RANDOM_SEEDS)} random inputs: {kinds['cone']} cone points add l spheres, "
           f"{kinds['non-amphidrome']} non-amphidrome orbits add l-1, {kinds['amphidrome']} amphidrome orbits "
           f"add l+2" + (f"; mismatches {bad}" if bad else ""))


def _cli(args, env=None, stdin=None):
    r = subprocess.run([sys.executable, "-m", "pseudoperiodic", *args], input=stdin, capture_output=True,
                       text=True, env=env, check=True)
    return r.stdout


def test_criterion_7_determinism(capsys, tmp_path):
    names = ["nielsen-f1", "amphidrome-genus2", "kodaira-II*"]
    datasets = [catalog.builtin_get(n).data for n in names] + [random_data(s) for s in (3, 17, 29)]
    bad = []
    for i, d in enumerate(datasets):
        path = tmp_path / f"in{i}.json"
        path.write_text(json.dumps(to_json(d)))
        for cmd in ("quotient", "invariants"):
            runs = {_cli([cmd, str(path)], env={**os.environ, "PYTHONHASHSEED": str(seed)})
                    for seed in range(10)}
            rng = random.Random(i)
            for k in range(10):
                p = tmp_path / f"in{i}-{k}.json"
                p.write_text(json.dumps(to_json(shuffle_order(d, rng))))
                capsys.readouterr()
                run([cmd, str(p)])
                runs.add(capsys.readouterr().out)
            if len(runs) != 1:
                bad.append((i, cmd))
    report(capsys, 7, not bad, f"quotient and invariants byte-identical over 10 runs with different hash seeds "
           f"and 10 input permutations, {len(datasets)} inputs" + (f"; differing {bad}" if bad else ""))
