"""Acceptance gate: timed end-to-end checks over both inference routes,
the combination algebra, and the command line."""

import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from evlogic.cli import main
from evlogic.errors import (
    ImpermissibleConditional,
    Incoherent,
    Infeasible,
    InfeasibleIntervals,
    TotalConflict,
)
from evlogic.evidential import (
    EvidentialInterval,
    IntervalSystem,
    combine,
    evidential_entail,
    mass_function,
    plausibility,
    support,
)
from evlogic.formula import parse
from evlogic.linsolve import linear_program, solve
from evlogic.problog import (
    bayes_posterior,
    conditional,
    entail_bounds,
    extend_joint,
    joint_distribution,
    marginal,
)
from evlogic.semantics import interpretation_space, sentence_set

from .oracles import (
    conflict_oracle,
    entail_vertex_oracle,
    random_mass,
    truth_entail_oracle,
    vertex_lp_oracle,
)

F = Fraction
ZERO, ONE = F(0), F(1)
DATA = Path(__file__).parent / "data"

POOL = [
    "P", "Q", "R", "~P", "P -> Q", "Q -> R", "P & Q", "P | Q",
    "P <-> Q", "~P | R", "P & ~Q", "(P & Q) -> R",
]
PARSED_POOL = [parse(text) for text in POOL]


def named(formulas):
    return sentence_set((f"s{i}", f) for i, f in enumerate(formulas))


def atom_space(n: int):
    return sentence_set((f"x{i}", parse(f"x{i}")) for i in range(n))


def point_system(sentences, pi):
    return IntervalSystem(
        sentences, tuple(EvidentialInterval(p, p) for p in pi))


class TestAcceptance:
    def test_1_modus_ponens_bounds(self, criterion):
        with criterion("1", "modus-ponens bounds match the vertex oracle", 1.0):
            formulas = [parse("P"), parse("P -> Q")]
            pi = [F(7, 10), F(9, 10)]
            target = parse("Q")
            answer = entail_bounds(named(formulas), pi, target, "strict")
            assert answer == (F(3, 5), F(9, 10))
            assert answer == entail_vertex_oracle(formulas, pi, target, "strict")

    def test_2_zero_one_reduction_to_logic(self, criterion):
        targets = [parse(t) for t in ("Q", "~Q", "P -> R", "P & ~P")]
        with criterion(
                "2", "0/1 probabilities reduce to truth-table entailment", 60.0):
            for n in (1, 2, 3):
                for formulas in itertools.combinations(PARSED_POOL, n):
                    sentences = named(formulas)
                    for bits in itertools.product((False, True), repeat=n):
                        pi = [ONE if b else ZERO for b in bits]
                        for target in targets:
                            expected = truth_entail_oracle(
                                formulas, bits, target)
                            if expected == "incoherent":
                                with pytest.raises(Incoherent):
                                    entail_bounds(
                                        sentences, pi, target, "strict")
                            else:
                                assert entail_bounds(
                                    sentences, pi, target, "strict") == expected

    def test_3_point_intervals_collapse(self, criterion):
        target = parse("Q")
        grid = (ZERO, F(1, 2), ONE)
        cycle = (F(7, 10), F(9, 10), F(1, 3), F(2, 5), F(3, 5))
        with criterion(
                "3", "point-interval evidential bounds equal the "
                "probabilistic bounds", 120.0):
            for n in (1, 2):
                sets = list(itertools.combinations(PARSED_POOL, n))
                for k, formulas in enumerate(sets):
                    sentences = named(formulas)
                    vectors = [
                        tuple(cycle[(k + i) % len(cycle)] for i in range(n))
                    ]
                    vectors.extend(itertools.product(grid, repeat=n))
                    for pi in vectors:
                        system = point_system(sentences, pi)
                        try:
                            expected = entail_bounds(
                                sentences, list(pi), target, "strict")
                        except Incoherent:
                            with pytest.raises(InfeasibleIntervals):
                                evidential_entail(system, target)
                            continue
                        answer = evidential_entail(system, target)
                        assert (answer.spt, answer.pls) == expected

            # the unique three-sentence distribution pins the conjunction
            formulas = [parse("P"), parse("P -> Q"), parse("Q")]
            sentences = named(formulas)
            pi3 = (F(1, 2), F(3, 4), F(1, 2))
            conj = parse("P & Q")
            expected = entail_bounds(sentences, list(pi3), conj, "strict")
            assert expected == (F(1, 4), F(1, 4))
            answer = evidential_entail(point_system(sentences, pi3), conj)
            assert (answer.spt, answer.pls) == expected

    def test_4_dempster_algebra(self, criterion):
        rng = random.Random(101)
        spaces = [interpretation_space(atom_space(n)) for n in (1, 2, 3)]
        with criterion(
                "4", "combination is commutative, associative, unital, and "
                "matches pair-enumerated conflict", 30.0):
            buckets = [[], [], []]
            for i in range(500):
                space = spaces[i % 3]
                buckets[i % 3].append(
                    mass_function(space, random_mass(rng, space.size)))
            pair_checks = triple_checks = 0
            for space, bucket in zip(spaces, buckets):
                vacuous = mass_function(
                    space, {frozenset(range(space.size)): ONE})
                for m in bucket:
                    same, conflict = combine(m, vacuous)
                    assert same.focal == m.focal and conflict == 0
                for m1, m2 in zip(bucket, bucket[1:]):
                    expected_k = conflict_oracle(m1.focal, m2.focal)
                    if expected_k == 1:
                        for a, b in ((m1, m2), (m2, m1)):
                            with pytest.raises(TotalConflict):
                                combine(a, b)
                        continue
                    left, k1 = combine(m1, m2)
                    right, k2 = combine(m2, m1)
                    assert k1 == k2 == expected_k
                    assert left.focal == right.focal
                    pair_checks += 1
                for m1, m2, m3 in zip(bucket, bucket[1:], bucket[2:]):
                    try:
                        left = combine(combine(m1, m2)[0], m3)[0]
                        right = combine(m1, combine(m2, m3)[0])[0]
                    except TotalConflict:
                        continue
                    assert left.focal == right.focal
                    triple_checks += 1
            assert pair_checks >= 300
            assert triple_checks >= 300

    def test_5_duality_and_normalization(self, criterion):
        rng = random.Random(103)
        spaces = [interpretation_space(atom_space(n)) for n in (1, 2, 3)]
        with criterion(
                "5", "support is dominated by plausibility and normalized",
                10.0):
            for i in range(1000):
                space = spaces[i % 3]
                m = mass_function(space, random_mass(rng, space.size))
                a = {j for j in range(space.size) if rng.random() < 0.5}
                complement = set(range(space.size)) - a
                assert support(m, a) <= plausibility(m, a)
                assert support(m, a) + support(m, complement) <= 1
                assert support(m, range(space.size)) == 1

    def test_6_bayes_identities(self, criterion):
        rng = random.Random(107)
        spaces = [interpretation_space(atom_space(n)) for n in (1, 2, 3, 4)]
        with criterion(
                "6", "posterior equals direct conditional and total "
                "probability expands marginals", 30.0):
            for i in range(1000):
                space = spaces[i % 4]
                n = space.sentences.n
                weights = [rng.randint(1, 9) for _ in range(space.size)]
                total = sum(weights)
                joint = joint_distribution(
                    space, [F(w, total) for w in weights])
                u_indices = rng.sample(range(n), rng.randint(0, n - 1))
                u = {j: rng.random() < 0.5 for j in u_indices}
                free = next(j for j in range(n) if j not in u)
                w = {free: rng.random() < 0.5}
                assert bayes_posterior(joint, u, w) == conditional(joint, w, u)
                expansion = sum(
                    conditional(joint, u, {free: b})
                    * marginal(joint, {free: b})
                    for b in (False, True)
                )
                assert expansion == marginal(joint, u)

    def test_7_quaker_transcript(self, criterion, capsys):
        with criterion(
                "7", "contradictory certainties fail strict mode and "
                "widen to [0, 1] in generalized mode", 30.0):
            code = main(["entail", str(DATA / "quaker.kb")])
            captured = capsys.readouterr()
            assert code == 2
            assert captured.out == ""
            assert captured.err == "error: incoherent probability assignment\n"
            code = main(
                ["entail", str(DATA / "quaker.kb"), "--mode", "generalized"])
            captured = capsys.readouterr()
            assert code == 0
            assert captured.out == "Pa: [0, 1] (0.000000, 1.000000)\n"

    def test_8_extend_joint_properties(self, criterion):
        rng = random.Random(109)
        spaces = [interpretation_space(atom_space(n)) for n in (1, 2, 3, 4)]
        with criterion(
                "8", "appending a sentence conserves mass and multiplies "
                "conditionals", 60.0):
            rejected = 0
            for i in range(500):
                space = spaces[i % 4]
                n = space.sentences.n
                weights = [rng.randint(1, 9) for _ in range(space.size)]
                total = sum(weights)
                joint = joint_distribution(
                    space, [F(w, total) for w in weights])
                if i % 5 == 4:
                    # target over the existing atoms: only its indicator is
                    # a permissible conditional, anything else must raise
                    text = rng.choice(
                        ["x0", "~x0"] if n < 2 else
                        ["x0", "~x0", "x0 & x1", "x0 | x1"])
                    target = parse(text)
                    truth = {
                        space.vector(j):
                            ONE if _holds(text, space.vector(j)) else ZERO
                        for j in range(space.size)
                    }
                    flip = rng.randrange(space.size)
                    bad = dict(truth)
                    bad[space.vector(flip)] = F(1, 2)
                    with pytest.raises(ImpermissibleConditional):
                        extend_joint(joint, target, bad, "strict")
                    rejected += 1
                    extended = extend_joint(joint, target, truth, "strict")
                    q = truth
                else:
                    target = parse("y")
                    q = {
                        space.vector(j): F(rng.randint(0, 4), 4)
                        for j in range(space.size)
                    }
                    extended = extend_joint(joint, target, q, "strict")
                assert sum(extended.probs) == 1
                for j, p in enumerate(joint.probs):
                    assert (extended.probs[2 * j]
                            + extended.probs[2 * j + 1] == p)
                expected = sum(
                    (joint.probs[j] * q[space.vector(j)]
                     for j in range(space.size)),
                    ZERO,
                )
                assert marginal(extended, {n: True}) == expected
                back = rng.randrange(n)
                assert marginal(extended, {back: True}) == marginal(
                    joint, {back: True})
            assert rejected == 100

    def test_9a_desk_scale_entailment(self, criterion):
        with criterion(
                "9a", "eight chained sentences over eight atoms solve "
                "promptly", 5.0):
            pairs = [("s0", parse("x0"))]
            pairs += [
                (f"s{i}", parse(f"x{i - 1} -> x{i}")) for i in range(1, 8)
            ]
            sentences = sentence_set(pairs)
            pi = [F(1, 3)] + [ONE] * 7
            # certain implications chain the premise bound up to x7
            assert entail_bounds(
                sentences, pi, parse("x7"), "strict") == (F(1, 3), ONE)

    def test_9b_lp_oracle_equivalence(self, criterion):
        rng = random.Random(2026)
        with criterion(
                "9b", "the simplex agrees with vertex enumeration on random "
                "programs", 30.0):
            compared = 0
            for _ in range(200):
                num_vars = rng.randint(1, 4)
                constraints = []
                for _ in range(rng.randint(1, 3)):
                    coeffs = [
                        (i, F(rng.randint(-3, 3)))
                        for i in range(num_vars)
                        if rng.random() < 0.8
                    ]
                    relation = rng.choice(["<=", ">=", "="])
                    constraints.append(
                        (coeffs, relation, F(rng.randint(-2, 4))))
                constraints.append(
                    ([(i, ONE) for i in range(num_vars)], "<=", F(5)))
                objective = [
                    (i, F(rng.randint(-3, 3))) for i in range(num_vars)]
                lp = linear_program(num_vars, constraints, objective)
                expected = vertex_lp_oracle(num_vars, constraints, objective)
                if expected is None:
                    for direction in ("minimize", "maximize"):
                        with pytest.raises(Infeasible):
                            solve(lp, direction)
                    continue
                low, _ = solve(lp, "minimize")
                high, _ = solve(lp, "maximize")
                assert (low, high) == expected
                compared += 1
            assert compared >= 100


def _holds(text: str, v: tuple) -> bool:
    if text == "x0":
        return v[0]
    if text == "~x0":
        return not v[0]
    if text == "x0 & x1":
        return v[0] and v[1]
    return v[0] or v[1]
