#!/usr/bin/env python

"""\
Unit tests for the various lchkit modules.

@author: lchkit developers
@license: GPL-3
"""

import os
import json
import random
import unittest
from io import StringIO
from collections import Counter

import numpy as np
import yaml

import lchkit
from lchkit import gf2
from lchkit.diagram import FrontWord, parse_front, classical_invariants, \
    maslov_number, maslov_potential, reeb_chords, crossing_signs, \
    strand_heights, FrontSyntaxError, RangeError, TopologyError, SPREAD
from lchkit.discs import all_disks, enumerate_disks, sweeps_agree, \
    differential, cusp_chords, disks_as_json_lines, disk_action, \
    check_action, DiskWord, ActionError
from lchkit.dga import FreeDGA, FormalSum, DGAMorphism, dga_from_json, \
    apply_boundary, check_d_squared, euler_characteristic, identity, compose, \
    UnknownGenerator, DegreeError, NotDSquaredZero, ChainMapViolation, \
    MismatchedDGAs
from lchkit.augment import Augmentation, enumerate_augmentations, \
    enumerate_matrix_reps, is_augmentation, is_matrix_rep, inflate, \
    pull_back, BudgetExceeded
from lchkit.linhom import PoincarePolynomial, GradedComplex, bilinearise, \
    linearise, homology, dualize, lch_class_set, duality_report, \
    sabloff_holds, induced_map, InvalidAugmentation, NotAComplex, \
    COHOMOLOGICAL
from lchkit.cthulhu import CthulhuComplex, load, verify, spectral_sequence, \
    extract_les, load_concatenation, verify_concatenation, concatenate, \
    transfer_map, cotransfer_map, is_identity, composition_holds, \
    middle_identity, SchemaError, StructureError, ModeError, NotExact, \
    DIRECTED, V_SHAPED
from lchkit.obstruct import BettiVector, circle, concordance_obstruction, \
    endocobordism_constraints, les_feasibility, solve_ranks, \
    brute_force_ranks, OBSTRUCTED, NOT_OBSTRUCTED, PAIR, DUALITY, \
    MAYER_VIETORIS
from lchkit.yamlparser import YAMLParser
from lchkit.commands import CommandError, parse_dims
from lchkit.interface import Session, RunConfig, load_config
from lchtool import tool_main
print('lchkit imported from "%s"' % lchkit.__path__[0])


TESTDIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'test')


def fixture(name):
    with open(os.path.join(TESTDIR, name)) as f:
        return yaml.safe_load(f)


def P(dims):
    return PoincarePolynomial(dims)


class TestGF2(unittest.TestCase):
    """\
    Tests for the gf2 module.
    """
    def test_rank(self):
        self.assertEqual(gf2.rank(gf2.asmatrix([[1, 1], [1, 1]])), 1)
        self.assertEqual(gf2.rank(gf2.asmatrix([[1, 1, 0], [0, 1, 1],
                                                [1, 0, 1]])), 2)
        self.assertEqual(gf2.rank(gf2.zeros(0, 3)), 0)

    def test_nullspace(self):
        M = gf2.asmatrix([[1, 1, 0], [0, 1, 1]])
        N = gf2.nullspace(M)
        self.assertEqual(N.shape, (3, 1))
        self.assertTrue(gf2.is_zero(gf2.matmul(M, N)))

    def test_inverse(self):
        M = gf2.asmatrix([[1, 1], [0, 1]])
        self.assertTrue(np.array_equal(gf2.matmul(M, gf2.inverse(M)),
                                       gf2.identity(2)))
        self.assertRaises(ValueError, gf2.inverse, gf2.asmatrix([[1, 1],
                                                                 [1, 1]]))

    def test_in_span(self):
        M = gf2.asmatrix([[1, 0], [1, 1], [0, 1]])
        self.assertTrue(gf2.in_span(np.array([1, 0, 1], dtype=np.uint8), M))
        self.assertFalse(gf2.in_span(np.array([1, 0, 0], dtype=np.uint8), M))


class TestDiagram(unittest.TestCase):
    """\
    Tests for the diagram module.
    """
    def setUp(self):
        self.unknot = FrontWord(2, [])
        self.trefoil = FrontWord(4, [2, 2, 2])

    def test_parse(self):
        self.assertEqual(parse_front('strands=4; [2,2,2]'), self.trefoil)
        self.assertEqual(parse_front('{"strands": 4, "word": [2, 2, 2]}'),
                         self.trefoil)
        self.assertEqual(parse_front(str(self.trefoil)), self.trefoil)
        self.assertEqual(parse_front('strands=2; []'), self.unknot)
        f = parse_front('strands=4; [2,2,2]; orient=1')
        self.assertEqual(f.orient, 1)
        self.assertEqual(parse_front(str(f)), f)

    def test_parse_errors(self):
        self.assertRaises(FrontSyntaxError, parse_front, 'strands 4 [2]')
        self.assertRaises(FrontSyntaxError, parse_front, 'strands=4; [2,,2]')
        self.assertRaises(RangeError, parse_front, 'strands=3; []')
        self.assertRaises(RangeError, parse_front, 'strands=4; [4]')
        self.assertRaises(RangeError, parse_front, 'strands=4; [0]')
        self.assertRaises(TopologyError, parse_front, 'strands=4; []')

    def test_invariants(self):
        self.assertEqual(tuple(classical_invariants(self.unknot)), (-1, 0))
        self.assertEqual(tuple(classical_invariants(self.trefoil)), (1, 0))
        for word in ([2, 2, 2, 1, 1, 2, 2], [2, 2, 2, 1, 3, 2, 2]):
            self.assertEqual(tuple(classical_invariants(FrontWord(4, word))),
                             (1, 0))

    def test_fixture_fronts(self):
        parser = YAMLParser()
        f = parser.front('nine46')
        self.assertEqual(tuple(classical_invariants(f)), (-1, 0))
        chords = reeb_chords(f)
        self.assertEqual(len(chords), len(f.word) + f.n_cusps)
        self.assertEqual([c.degree for c in chords],
                         [0, 0, 1, -1, 0, 0, 1, -1, 0, 0, 1, 1, 1])
        one, two = parser.front('chekanov1'), parser.front('chekanov2')
        self.assertNotEqual(one, two)
        for f in (one, two):
            self.assertEqual(tuple(classical_invariants(f)), (1, 0))
            self.assertEqual(len(reeb_chords(f)), 15)

    def test_stabilised(self):
        f = FrontWord(2, [1, 1, 1])
        inv = classical_invariants(f)
        self.assertEqual(inv.tb, -4)
        self.assertEqual(abs(inv.rot), 1)
        self.assertEqual(maslov_number(f), 2)
        self.assertTrue(all(0 <= c.degree < 2 for c in reeb_chords(f)))

    def test_potential(self):
        mu = maslov_potential(self.trefoil)
        self.assertEqual(sorted(mu), ['S1', 'S2', 'S3', 'S4'])
        for lower, upper in self.trefoil.left_pairs + self.trefoil.right_pairs:
            self.assertEqual(mu['S%d' % upper] - mu['S%d' % lower], 1)

    def test_chords(self):
        chords = reeb_chords(self.unknot)
        self.assertEqual([(c.id, c.degree) for c in chords], [('a1', 1)])
        chords = reeb_chords(self.trefoil)
        self.assertEqual([c.id for c in chords], ['c1', 'c2', 'c3', 'a1', 'a2'])
        self.assertEqual([c.degree for c in chords], [0, 0, 0, 1, 1])
        self.assertEqual([c.height for c in chords], [1, 2, 4, 8, 8])

    def test_heights(self):
        layers = strand_heights(self.trefoil)
        self.assertEqual(len(layers), 4)
        self.assertEqual(layers[0], {1: 1, 2: 2, 3: 3, 4: 4})
        self.assertEqual(layers[1], {1: 2, 3: 4, 2: 6, 4: 8})
        for j, i in enumerate(self.trefoil.word):
            lower, upper = self.trefoil.layer(j)[i - 1], self.trefoil.layer(j)[i]
            self.assertEqual(layers[j][upper] - layers[j][lower], SPREAD ** j)

    def test_sign_parity(self):
        # positive crossings carry even degree, negative ones odd
        rng = random.Random(4104)
        checked = 0
        while checked < 300:
            n = rng.choice([2, 4, 4, 6])
            word = [rng.randint(1, n - 1) for _ in range(rng.randint(0, 8))]
            try:
                f = FrontWord(n, word)
            except TopologyError:
                continue
            chords = reeb_chords(f)
            for c, sign in zip(chords, crossing_signs(f)):
                self.assertEqual(c.degree % 2 == 0, sign == 1, str(f))
            inv = classical_invariants(f)
            if inv.rot == 0:
                even = sum(1 for c in chords if c.degree % 2 == 0)
                self.assertEqual(inv.tb, even - (len(chords) - even), str(f))
            checked += 1


class TestDiscs(unittest.TestCase):
    """\
    Tests for the discs module.
    """
    def setUp(self):
        self.unknot = FrontWord(2, [])
        self.trefoil = FrontWord(4, [2, 2, 2])

    def test_unknot(self):
        disks = enumerate_disks(self.unknot, 'a1')
        self.assertEqual(len(disks), 2)
        self.assertTrue(all(disk.negatives == () for disk in disks))
        d = differential(self.unknot)
        self.assertFalse(d.boundary('a1'))

    def test_trefoil(self):
        d = differential(self.trefoil)
        self.assertEqual(d.boundary('a1'),
                         FormalSum([(), ('c1',), ('c3',), ('c3', 'c2', 'c1')]))
        self.assertEqual(d.boundary('a2'),
                         FormalSum([(), ('c1',), ('c3',), ('c1', 'c2', 'c3')]))
        for c in ('c1', 'c2', 'c3'):
            self.assertFalse(d.boundary(c))
        self.assertEqual(cusp_chords(self.trefoil), ['a1', 'a2'])

    def test_disk_parity(self):
        d = differential(self.trefoil)
        for a in ('a1', 'a2'):
            counts = Counter(disk.negatives
                             for disk in enumerate_disks(self.trefoil, a))
            odd = set(w for w, n in counts.items() if n % 2)
            self.assertEqual(odd, set(d.boundary(a).words))

    def test_degree_and_action(self):
        chords = dict((c.id, c) for c in reeb_chords(self.trefoil))
        for disk in all_disks(self.trefoil):
            top = chords[disk.positive]
            self.assertEqual(top.degree - 1,
                             sum(chords[g].degree for g in disk.negatives))
            self.assertTrue(top.height >
                            sum(chords[g].height for g in disk.negatives))

    def test_action(self):
        chords = reeb_chords(self.trefoil)
        self.assertEqual(disk_action(self.trefoil,
                                     DiskWord('a1', ('c3', 'c2', 'c1'), ()),
                                     chords), 1)
        # c1 is shorter than c3, so no disk can run from c1 to c3
        heavy = DiskWord('c1', ('c3',), ())
        self.assertTrue(disk_action(self.trefoil, heavy) < 0)
        self.assertRaises(ActionError, check_action, self.trefoil, heavy)
        self.assertRaises(ActionError, check_action, self.trefoil,
                          DiskWord('c2', ('c1', 'c1'), ()))

    def test_sweeps_agree(self):
        for word in ([], [2, 2, 2], [2, 2, 2, 1, 1, 2, 2],
                     [2, 2, 2, 1, 3, 2, 2]):
            self.assertTrue(sweeps_agree(FrontWord(len(word) and 4 or 2,
                                                   word)))

    def test_nine46(self):
        f = YAMLParser().front('nine46')
        d = differential(f)
        self.assertEqual(check_d_squared(d), (True, None))
        self.assertEqual(euler_characteristic(d), -1)
        self.assertEqual(d.boundary('a2'),
                         FormalSum([(), ('c2', 'c9'), ('c10', 'c1')]))
        self.assertEqual(d.boundary('c3'), FormalSum([('c2', 'c1')]))
        self.assertTrue(sweeps_agree(f))

    def test_chekanov_pair(self):
        parser = YAMLParser()
        one = differential(parser.front('chekanov1'))
        two = differential(parser.front('chekanov2'))
        for d in (one, two):
            self.assertEqual(check_d_squared(d), (True, None))
            self.assertEqual(euler_characteristic(d), 1)
        self.assertEqual(len(one.generators), len(two.generators))
        self.assertEqual(sorted(one.degree(g) for g in one.generators),
                         sorted(two.degree(g) for g in two.generators))

    def test_unknown_chord(self):
        self.assertRaises(KeyError, enumerate_disks, self.trefoil, 'c9')

    def test_json_lines(self):
        lines = disks_as_json_lines(self.trefoil)
        self.assertEqual(len(lines), len(all_disks(self.trefoil)))
        self.assertTrue(all('positive' in json.loads(line) for line in lines))

    def test_random_plats(self):
        rng = random.Random(1729)
        checked = four = 0
        while checked < 1000:
            n = rng.random() < 0.8 and 4 or 2
            word = [rng.randint(1, n - 1) for _ in range(rng.randint(0, 8))]
            try:
                f = FrontWord(n, word)
            except TopologyError:
                continue
            d = differential(f)
            self.assertTrue(check_d_squared(d)[0], str(f))
            self.assertTrue(sweeps_agree(f), str(f))
            checked += 1
            four += n == 4
        self.assertTrue(four > 500)


class TestDGA(unittest.TestCase):
    """\
    Tests for the dga module.
    """
    def setUp(self):
        self.trefoil = differential(FrontWord(4, [2, 2, 2]))
        # every single-word deletion breaks d^2 = 0 at a
        self.toy = FreeDGA([('a', 2), ('b', 1), ('c', 1), ('e', 0)],
                           {'a': [('b',), ('c',)], 'b': [('e',)],
                            'c': [('e',)]})

    def test_formal_sum(self):
        x = FormalSum([('a',), ('b',)])
        self.assertEqual(x + FormalSum([('a',)]), FormalSum([('b',)]))
        self.assertFalse(x + x)
        self.assertEqual(x * FormalSum([()]), x)
        self.assertEqual(FormalSum([('a',), ('a',)]), FormalSum())
        self.assertEqual(repr(FormalSum([(), ('c3', 'c2')])), '1 + c3 c2')

    def test_leibniz(self):
        d = self.toy
        self.assertEqual(apply_boundary(d, FormalSum([('b', 'c')])),
                         FormalSum([('e', 'c'), ('b', 'e')]))

    def test_d_squared(self):
        for d in (self.trefoil, self.toy, YAMLParser().algebra('nine46')[0],
                  YAMLParser(TESTDIR).algebra('synthetic.json')[0]):
            self.assertEqual(check_d_squared(d), (True, None))

    def test_mutations(self):
        for g in self.toy.generators:
            for w in self.toy.boundary(g).words:
                mutated = self.toy.with_boundary(
                    g, self.toy.boundary(g) + FormalSum([w]))
                self.assertEqual(check_d_squared(mutated), (False, 'a'))
        self.assertRaises(NotDSquaredZero, self.toy.with_boundary, 'b', [],
                          True)

    def test_errors(self):
        self.assertRaises(UnknownGenerator, FreeDGA, [('a', 1)],
                          {'a': [('z',)]})
        self.assertRaises(DegreeError, FreeDGA, [('a', 1), ('b', 1)],
                          {'a': [('b',)]})
        self.assertRaises(NotDSquaredZero, FreeDGA,
                          [('a', 2), ('b', 1), ('c', 0)],
                          {'a': [('b',)], 'b': [('c',)]})

    def test_json(self):
        d = dga_from_json(self.trefoil.dumps())
        self.assertEqual(d.to_json(), self.trefoil.to_json())
        self.assertEqual([g for g in d.emission_order()][:3],
                         ['c1', 'c2', 'c3'])

    def test_euler(self):
        self.assertEqual(euler_characteristic(self.trefoil), 1)
        self.assertEqual(euler_characteristic(differential(FrontWord(2, []))),
                         -1)

    def test_morphisms(self):
        source = FreeDGA([('x', 1), ('y', 0)], {'x': [('y',)]})
        target = FreeDGA([('u', 1), ('v', 0), ('w', 0)],
                         {'u': [('v',), ('w',)]})
        m = DGAMorphism(source, target, {'x': [('u',)],
                                         'y': [('v',), ('w',)]})
        self.assertEqual(m.apply(FormalSum([('y', 'y')])),
                         FormalSum([('v', 'v'), ('v', 'w'), ('w', 'v'),
                                    ('w', 'w')]))
        self.assertRaises(ChainMapViolation, DGAMorphism, source, target,
                          {'x': [('u',)]})
        self.assertEqual(compose(identity(source), m), m)
        self.assertRaises(MismatchedDGAs, compose, m, m)


class TestAugment(unittest.TestCase):
    """\
    Tests for the augment module.
    """
    def setUp(self):
        self.unknot = differential(FrontWord(2, []))
        self.trefoil = differential(FrontWord(4, [2, 2, 2]))

    def test_counts(self):
        self.assertEqual(len(enumerate_augmentations(self.unknot)), 1)
        self.assertEqual(len(enumerate_augmentations(self.trefoil)), 5)
        self.assertEqual(len(enumerate_augmentations(self.unknot, False)), 2)
        self.assertEqual(len(enumerate_augmentations(self.trefoil, False)),
                         20)

    def test_augmentations(self):
        found = enumerate_augmentations(self.trefoil)
        self.assertEqual(found, sorted(found, key=Augmentation.key))
        for eps in found:
            self.assertTrue(is_augmentation(self.trefoil, eps))
            self.assertEqual(eps.evaluate(self.trefoil.boundary('a1')), 0)
        bad = Augmentation(self.trefoil, {})
        self.assertFalse(is_augmentation(self.trefoil, bad))

    def test_scalar_reps(self):
        augs = enumerate_augmentations(self.trefoil)
        reps = enumerate_matrix_reps(self.trefoil, 1)
        self.assertEqual([tuple(v[0] for v in rho.key()) for rho in reps],
                         [eps.key() for eps in augs])

    def test_matrix_reps(self):
        reps = enumerate_matrix_reps(self.trefoil, 2)
        for eps in enumerate_augmentations(self.trefoil):
            self.assertTrue(inflate(eps, 2) in reps)
        self.assertTrue(len(reps) > 5)
        self.assertTrue(all(is_matrix_rep(self.trefoil, rho) for rho in reps))
        self.assertEqual(len(enumerate_matrix_reps(self.unknot, 2)), 1)

    def test_budget(self):
        try:
            enumerate_matrix_reps(self.trefoil, 2, budget=50)
        except BudgetExceeded as e:
            self.assertEqual(e.partial, sorted(e.partial,
                                               key=lambda rho: rho.key()))
        else:
            self.fail('budget not enforced')

    def test_pull_back(self):
        source = FreeDGA([('x', 1), ('y', 0)], {'x': [('y',)]})
        target = FreeDGA([('u', 1), ('v', 0), ('w', 0)],
                         {'u': [('v',), ('w',)]})
        m = DGAMorphism(source, target, {'x': [('u',)],
                                         'y': [('v',), ('w',)]})
        eps = Augmentation(target, {'v': 1, 'w': 1})
        self.assertTrue(is_augmentation(target, eps))
        self.assertEqual(pull_back(m, eps)['y'], 0)


class TestLinhom(unittest.TestCase):
    """\
    Tests for the linhom module.
    """
    def setUp(self):
        self.unknot = differential(FrontWord(2, []))
        self.trefoil = differential(FrontWord(4, [2, 2, 2]))
        self.nine46 = YAMLParser().algebra('nine46')[0]

    def test_polynomial(self):
        self.assertEqual(str(P({-1: 1, 0: 2, 1: 2})), 't^-1 + 2 + 2t')
        self.assertEqual(str(P({})), '0')
        self.assertEqual(str(P({-2: 1, 1: 1, 2: 1})), 't^-2 + t + t^2')
        self.assertEqual(P({0: 2, 1: 1}).to_json(), {'0': 2, '1': 1})
        self.assertEqual(P({3: 0}), P({}))
        self.assertEqual(PoincarePolynomial({3: 1}, 2).dim(1), 1)

    def test_unknot(self):
        eps = enumerate_augmentations(self.unknot)[0]
        self.assertEqual(homology(linearise(self.unknot, eps)), P({1: 1}))
        self.assertEqual(lch_class_set(self.unknot).classes,
                         frozenset([P({1: 1})]))

    def test_trefoil(self):
        for eps in enumerate_augmentations(self.trefoil):
            c = linearise(self.trefoil, eps)
            self.assertEqual(c, bilinearise(self.trefoil, eps, eps))
            p = homology(c)
            self.assertEqual(p, P({0: 2, 1: 1}))
            self.assertEqual(homology(dualize(c)).key(), p.key())
        self.assertTrue(P({0: 2, 1: 1}) in lch_class_set(self.trefoil))

    def test_duality(self):
        rows = duality_report(self.trefoil)
        self.assertEqual(len(rows), 5)
        self.assertTrue(all(row.sabloff and row.fundamental for row in rows))
        self.assertFalse(sabloff_holds(P({0: 2})))
        self.assertTrue(sabloff_holds(P({-2: 1, 1: 1, 2: 1})))

    def test_chekanov(self):
        parser = YAMLParser()
        one = lch_class_set(parser.algebra('chekanov1')[0])
        two = lch_class_set(parser.algebra('chekanov2')[0])
        self.assertEqual(len(one.augmentations), 6)
        self.assertEqual(len(two.augmentations), 4)
        # distinct augmentations of the first knot lose the fundamental class
        self.assertEqual(one.classes, frozenset([P({0: 1}), P({0: 2, 1: 1})]))
        self.assertEqual(two.classes, frozenset([P({-2: 1, 1: 1, 2: 1})]))
        self.assertNotEqual(one.classes, two.classes)

    def test_nine46(self):
        classes = lch_class_set(self.nine46)
        self.assertEqual(sum(classes.multiset.values()),
                         len(classes.augmentations) ** 2)
        self.assertTrue(P({1: 1}) in classes)
        self.assertTrue(any(p.dim(-1) for p in classes.classes))
        for p in classes.classes:
            self.assertEqual(sum((-1) ** k * p.dim(k) for k in p.degrees), -1)
        for eps in classes.augmentations:
            self.assertTrue(homology(linearise(self.nine46, eps)) in classes)

    def test_not_a_complex(self):
        d = FreeDGA([('x', 2), ('y', 1), ('w', 1), ('z', 0)],
                    {'x': [('y', 'z'), ('z', 'y')], 'y': [('z',), ()]})
        good = Augmentation(d, {'z': 1})
        bad = Augmentation(d, {})
        self.assertTrue(is_augmentation(d, good))
        bilinearise(d, good, good)
        self.assertRaises(InvalidAugmentation, bilinearise, d, good, bad)
        self.assertRaises(NotAComplex, bilinearise, d, good, bad, True, False)

    def test_graded_complex(self):
        self.assertRaises(DegreeError, GradedComplex, [('a', 0), ('b', 0)],
                          [[0, 1], [0, 0]])
        self.assertRaises(NotAComplex, GradedComplex,
                          [('a', 0), ('b', 1), ('c', 2)],
                          [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        c = GradedComplex([('a', 0), ('b', 1)], [[0, 1], [0, 0]])
        self.assertEqual(homology(c), P({}))
        c = GradedComplex([('a', 0), ('b', 1)], [[0, 0], [1, 0]],
                          COHOMOLOGICAL)
        self.assertEqual(homology(c), P({}))

    def test_induced_map(self):
        source = FreeDGA([('x', 1), ('y', 0)], {'x': [('y',)]})
        target = FreeDGA([('u', 1), ('v', 0), ('w', 0)],
                         {'u': [('v',), ('w',)]})
        m = DGAMorphism(source, target, {'x': [('u',)],
                                         'y': [('v',), ('w',)]})
        eps = Augmentation(target, {'v': 1, 'w': 1})
        F = induced_map(m, eps, eps)
        self.assertTrue(np.array_equal(F.matrix, [[1, 0], [0, 1], [0, 1]]))
        self.assertEqual(F.adjoint().matrix.shape, (2, 3))
        eps = enumerate_augmentations(self.trefoil)[0]
        F = induced_map(identity(self.trefoil), eps, eps)
        self.assertTrue(np.array_equal(F.matrix, gf2.identity(5)))


class TestCthulhu(unittest.TestCase):
    """\
    Tests for the cthulhu module.
    """
    def setUp(self):
        self.twocopy = load(fixture('twocopy.yaml'))
        self.directed = load(fixture('directed.yaml'))
        self.chords = load(fixture('chords.yaml'))

    def test_load(self):
        self.assertEqual(self.directed.basis('CFminus'), [('r', 1), ('s', 2)])
        self.assertEqual(load(self.twocopy.to_json()).to_json(),
                         self.twocopy.to_json())
        self.assertTrue(verify(load({})).acyclic)

    def test_schema(self):
        self.assertRaises(SchemaError, load, {'Cplus': [], 'd_xx': []})
        self.assertRaises(SchemaError, load, 'just text')
        data = fixture('twocopy.yaml')
        data['d_pm'] = [['g', 'p']]
        self.assertRaises(SchemaError, load, data)
        data = fixture('twocopy.yaml')
        data['d_mp'] = [['h', 'g']]
        self.assertRaises(StructureError, load, data)
        data = fixture('twocopy.yaml')
        data['Cminus'] = [{'id': 'h', 'deg': 2}]
        self.assertRaises(DegreeError, load, data)

    def test_verify(self):
        for c in (self.twocopy, self.directed, self.chords):
            report = verify(c)
            self.assertTrue(report.d_squared)
            self.assertTrue(report.acyclic)

    def test_spectral_sequence(self):
        report = spectral_sequence(self.twocopy)
        self.assertTrue(report.e1_matches_blocks)
        self.assertEqual(report.total(1), 4)
        for level, degree in ((0, 3), (1, 2), (1, 3), (2, 2)):
            self.assertEqual(report.dim(1, level, degree), 1)
        self.assertEqual(report.total(2), 0)
        self.assertEqual(report.total(4), 0)
        self.assertTrue(report.collapse)
        self.assertTrue(report.monotone())
        report = spectral_sequence(self.directed)
        self.assertEqual(report.total(1), 2)
        self.assertEqual(report.total(2), 2)
        self.assertEqual(report.total(3), 0)
        self.assertTrue(report.collapse)

    def test_mutations(self):
        c = self.twocopy
        admissible = detected = 0
        for i in range(len(c)):
            for j in range(len(c)):
                M = c.matrix.copy()
                M[i, j] ^= 1
                try:
                    m = CthulhuComplex(c.bases, M)
                except (StructureError, DegreeError):
                    continue
                admissible += 1
                report = verify(m)
                if report.d_squared:
                    self.assertEqual(report.acyclic,
                                     spectral_sequence(m).collapse)
                if not report.acyclic:
                    detected += 1
        self.assertEqual(admissible, 4)
        self.assertEqual(detected, 3)

    def test_random_mutations(self):
        rng = random.Random(46)
        c = self.directed
        for _ in range(100):
            M = c.matrix.copy()
            M[rng.randrange(len(c)), rng.randrange(len(c))] ^= 1
            try:
                m = CthulhuComplex(c.bases, M)
            except (StructureError, DegreeError):
                continue
            report = verify(m)
            if report.d_squared:
                self.assertEqual(report.acyclic, spectral_sequence(m).collapse)
            else:
                self.assertRaises(NotAComplex, spectral_sequence, m)

    def test_les(self):
        report = extract_les(self.twocopy, V_SHAPED)
        self.assertTrue(report.exact)
        self.assertFalse(report.lch_map_isomorphism)
        report = extract_les(self.directed, DIRECTED)
        self.assertTrue(report.exact)
        self.assertTrue(report.lch_map_isomorphism)
        for mode in (DIRECTED, V_SHAPED):
            self.assertTrue(extract_les(self.chords, mode).lch_map_isomorphism)
        self.assertRaises(ModeError, extract_les, self.twocopy, DIRECTED)
        self.assertRaises(ModeError, extract_les, self.directed, V_SHAPED)

    def test_not_exact(self):
        broken = load(fixture('directed_broken.yaml'))
        self.assertTrue(verify(broken).d_squared)
        with self.assertRaises(NotExact) as cm:
            extract_les(broken, DIRECTED)
        self.assertTrue('H^3(Cplus)' in cm.exception.report.failures)
        self.assertEqual(cm.exception.node, cm.exception.report.failures[0])


class TestConcatenation(unittest.TestCase):
    """\
    Tests for gluing Cthulhu complexes.
    """
    def setUp(self):
        self.data = fixture('concat.yaml')
        self.cd = load_concatenation(self.data)

    def test_verify(self):
        report = verify_concatenation(self.cd)
        self.assertTrue(report.d_squared)
        self.assertTrue(report.middle_identity)
        self.assertTrue(report.psi_involution)
        self.assertTrue(report.cone_structure)
        self.assertFalse(report.transfer_identity)
        self.assertTrue(verify(concatenate(self.cd)).acyclic)

    def test_trivial_cylinders(self):
        cd = load_concatenation(fixture('trivial_upper.yaml'))
        self.assertTrue(is_identity(transfer_map(cd.lower, cd.upper)))
        self.assertTrue(verify_concatenation(cd).transfer_identity)
        cd = load_concatenation(fixture('trivial_lower.yaml'))
        self.assertTrue(is_identity(cotransfer_map(cd)))
        report = verify_concatenation(cd)
        self.assertTrue(report.cotransfer_identity)
        self.assertTrue(report.cone_structure)
        self.assertTrue(middle_identity(cd))

    def test_composition(self):
        top = load_concatenation(fixture('concat_top.yaml'))
        verify_concatenation(top)
        self.assertTrue(composition_holds(self.cd.lower, self.cd, top))

    def test_errors(self):
        data = fixture('concat.yaml')
        data['upper']['Cminus'] = [{'id': 'x', 'deg': 1}]
        data['upper']['d_pm'] = [['g2', 'x']]
        data['upper']['d_m0'] = [['x', 'r2']]
        data['delta_m0'] = []
        data['delta_mp'] = []
        self.assertRaises(SchemaError, load_concatenation, data)
        data = fixture('concat.yaml')
        data['delta_mp'] = []
        self.assertRaises(ChainMapViolation, verify_concatenation,
                          load_concatenation(data))
        data = fixture('concat.yaml')
        data['delta_0p'] = [['g', 'r2']]
        self.assertRaises(SchemaError, load_concatenation, data)


class TestObstruct(unittest.TestCase):
    """\
    Tests for the obstruct module.
    """
    def setUp(self):
        self.unknot = differential(FrontWord(2, []))
        self.nine46 = YAMLParser().algebra('nine46')[0]

    def test_betti(self):
        self.assertTrue(circle().is_sphere())
        self.assertEqual(circle().to_json(), {'0': 1, '1': 1})
        self.assertRaises(ValueError, BettiVector, {0: -1})
        self.assertRaises(ValueError, BettiVector, {3: 1})

    def test_chekanov(self):
        parser = YAMLParser()
        one = parser.algebra('chekanov1')[0]
        two = parser.algebra('chekanov2')[0]
        forward, backward = concordance_obstruction(one, two)
        self.assertEqual(forward.status, OBSTRUCTED)
        self.assertEqual(backward.status, OBSTRUCTED)

    def test_nine46(self):
        forward, backward = concordance_obstruction(self.unknot, self.nine46,
                                                    names=('unknot', 'nine46'))
        self.assertEqual(forward.direction, 'unknot->nine46')
        self.assertEqual(forward.status, NOT_OBSTRUCTED)
        self.assertEqual(forward.witness, None)
        self.assertEqual(backward.status, OBSTRUCTED)
        self.assertTrue(backward.witness in lch_class_set(self.nine46))
        self.assertTrue(backward.witness.dim(-1) >= 1)
        self.assertFalse(backward.witness in lch_class_set(self.unknot))

    def test_class_inclusion(self):
        rng = random.Random(5202)
        knots = [self.unknot, self.nine46,
                 differential(FrontWord(4, [2, 2, 2]))]
        while len(knots) < 8:
            word = [rng.randint(1, 3) for _ in range(rng.randint(1, 7))]
            try:
                knots.append(differential(FrontWord(4, word)))
            except TopologyError:
                continue
        sets = [lch_class_set(d).classes for d in knots]
        t = P({1: 1})
        for dB, setB in zip(knots, sets):
            forward, _ = concordance_obstruction(self.unknot, dB)
            self.assertEqual(forward.status, t in setB and NOT_OBSTRUCTED or
                             OBSTRUCTED)
            for dA, setA in zip(knots, sets):
                forward, _ = concordance_obstruction(dA, dB)
                if setA <= setB:
                    self.assertEqual(forward.status, NOT_OBSTRUCTED)
                else:
                    self.assertEqual(forward.status, OBSTRUCTED)
                    self.assertTrue(forward.witness in setA - setB)

    def test_endocobordism(self):
        report = endocobordism_constraints(self.unknot, circle())
        self.assertTrue(report.hypothesis)
        self.assertEqual(report.forced_betti, BettiVector({0: 1, 1: 1}))
        self.assertTrue(report.homology_cylinder)
        report = endocobordism_constraints(self.unknot,
                                           BettiVector({0: 1, 1: 2}))
        self.assertFalse(report.homology_cylinder)
        stuck = FreeDGA([('a', 1)], {'a': [()]})
        report = endocobordism_constraints(stuck, circle())
        self.assertFalse(report.hypothesis)
        self.assertEqual(report.forced_betti, None)

    def test_solve_ranks(self):
        self.assertEqual(solve_ranks([1, 1]), ([1, 0], None))
        self.assertEqual(solve_ranks([1])[1], 0)
        self.assertEqual(solve_ranks([0, 1, 2])[1], 2)
        self.assertEqual(solve_ranks([2, 1])[1], 1)
        self.assertEqual(brute_force_ranks([1, 1]), [(1, 0)])
        self.assertEqual(brute_force_ranks([1, 2]), [])

    def test_feasibility(self):
        t = P({1: 1})
        result = les_feasibility(t, t, BettiVector({}), PAIR)
        self.assertTrue(result.feasible)
        dims = [a for _, a in result.nodes]
        self.assertEqual(brute_force_ranks(dims), [tuple(result.ranks)])
        result = les_feasibility(P({0: 2, 1: 1}), t, BettiVector({}), PAIR)
        self.assertFalse(result.feasible)
        self.assertTrue(result.cut.startswith('rank equations fail'))
        trefoil = P({0: 2, 1: 1})
        self.assertTrue(les_feasibility(trefoil, trefoil, circle(),
                                        DUALITY).feasible)
        self.assertTrue(les_feasibility(t, t, circle(),
                                        MAYER_VIETORIS).feasible)
        self.assertRaises(ValueError, les_feasibility, t, t, circle(), 'bad')


class TestInterface(unittest.TestCase):
    """\
    Tests for the parser, commands, session and command-line tool.
    """
    def setUp(self):
        self.session = Session(RunConfig(), basepath=TESTDIR)

    def run_json(self, *cmd):
        return json.loads(self.session.execute(list(cmd)))

    def test_parser(self):
        parser = YAMLParser(TESTDIR)
        self.assertEqual(parser.front('trefoil'), FrontWord(4, [2, 2, 2]))
        self.assertEqual(parser.front('strands=2; []'), FrontWord(2, []))
        d, f = parser.algebra('nine46')
        self.assertEqual(f, parser.front('nine46'))
        self.assertEqual(euler_characteristic(d), -1)
        d, f = parser.algebra('synthetic.json')
        self.assertEqual(f, None)
        self.assertEqual(euler_characteristic(d), -1)
        self.assertRaises(FrontSyntaxError, parser.front, 'synthetic.json')
        self.assertRaises(IOError, parser.read, 'missing.yaml')
        self.assertTrue(verify(parser.cthulhu('twocopy.yaml')).acyclic)

    def test_config(self):
        config = load_config()
        self.assertEqual(config['budget'], 200000)
        run = RunConfig.from_config(config, {'LCH_BUDGET': '7'})
        self.assertEqual(run.budget, 7)
        run = RunConfig.from_config({}, {'LCH_BUDGET': '7'}, budget=9, k=3)
        self.assertEqual((run.budget, run.k, run.format), (9, 3, 'json'))
        self.assertRaises(lchkit.InputError, RunConfig.from_config, {},
                          {'LCH_BUDGET': 'many'})
        self.assertRaises(lchkit.InputError, RunConfig, 'nonsense')
        self.assertRaises(lchkit.InputError, RunConfig, format='xml')

    def test_parse_dims(self):
        self.assertEqual(parse_dims('-1:1,0:2'), {-1: 1, 0: 2})
        self.assertEqual(parse_dims('0'), {})
        self.assertRaises(lchkit.InputError, parse_dims, 't+1')

    def test_invariants(self):
        result = self.run_json('invariants', 'unknot')
        self.assertEqual((result['tb'], result['rot']), (-1, 0))
        self.assertEqual([c['degree'] for c in result['chords']], [1])
        result = self.run_json('invariants', 'trefoil')
        self.assertEqual([c['degree'] for c in result['chords']],
                         [0, 0, 0, 1, 1])
        self.assertEqual(result['version'], '0.1.0')

    def test_pipeline(self):
        result = self.run_json('lch', 'unknot')
        self.assertEqual(result['augmentations'], 1)
        self.assertEqual(result['classes'], ['t'])
        self.assertEqual(self.run_json('augs', 'trefoil')['count'], 5)
        result = self.run_json('lch-set', 'nine46')
        self.assertTrue('t' in [c['polynomial'] for c in result['classes']])
        result = self.run_json('invariants', 'nine46')
        self.assertEqual((result['tb'], result['rot']), (-1, 0))
        self.assertEqual(len(result['chords']), 13)
        self.assertTrue(self.run_json('duality', 'trefoil')['holds'])
        result = self.run_json('reps', 'trefoil')
        self.assertTrue(result['contains_inflations'])
        self.assertFalse(result['truncated'])

    def test_concordance(self):
        result = self.run_json('concordance', 'chekanov1', 'chekanov2')
        self.assertEqual([v['status'] for v in result['verdicts']],
                         [OBSTRUCTED, OBSTRUCTED])
        result = self.run_json('concordance', 'unknot', 'nine46')
        self.assertEqual([v['status'] for v in result['verdicts']],
                         [NOT_OBSTRUCTED, OBSTRUCTED])
        self.assertEqual(result['verdicts'][1]['witness']['dims']['-1'], 1)

    def test_endo_and_les(self):
        result = self.run_json('endo-constraints', 'unknot')
        self.assertTrue(result['homology_cylinder'])
        self.assertEqual(result['forced_betti'], {'0': 1, '1': 1})
        result = self.run_json('les-check', 'pair', 'unknot', 'unknot')
        self.assertEqual(result['status'], NOT_OBSTRUCTED)
        result = self.run_json('les-check', 'pair', '0:2,1:1', '1:1')
        self.assertEqual(result['status'], OBSTRUCTED)

    def test_cthulhu(self):
        result = self.run_json('cthulhu', 'verify', 'twocopy.yaml')
        self.assertTrue(result['acyclic'])
        result = self.run_json('cthulhu', 'ss', 'twocopy.yaml')
        self.assertTrue(result['collapse'])
        self.assertTrue(result['consistent'])
        result = self.run_json('cthulhu', 'les', 'directed.yaml', 'directed')
        self.assertTrue(result['lch_map_isomorphism'])
        result = self.run_json('cthulhu', 'concat', 'concat.yaml',
                               'concat_top.yaml')
        self.assertTrue(result['composition'])
        self.assertTrue(result['cone_structure'])

    def test_exit_codes(self):
        try:
            self.session.execute(['invariants', 'strands=4; [2,,2]'])
        except CommandError as e:
            self.assertEqual(e.code, 2)
            self.assertTrue(str(e).startswith('FrontSyntaxError'))
            self.assertTrue('usage: invariants front' in str(e))
        else:
            self.fail('malformed front accepted')
        session = Session(RunConfig(budget=10), basepath=TESTDIR)
        try:
            session.execute('reps trefoil')
        except CommandError as e:
            self.assertEqual(e.code, 3)
            self.assertTrue(json.loads(e.output)['truncated'])
        else:
            self.fail('budget not enforced')
        try:
            self.session.execute('cthulhu les directed_broken.yaml directed')
        except CommandError as e:
            self.assertEqual(e.code, 1)
            self.assertFalse(json.loads(e.output)['exact'])
        else:
            self.fail('inexact sequence accepted')
        try:
            self.session.execute('nonsense')
        except CommandError as e:
            self.assertEqual(e.code, 2)
        self.assertEqual(Session(RunConfig('invariants', ['missing.yaml']),
                                 basepath=TESTDIR).run()[0], 2)

    def test_formats(self):
        text = self.session.execute('augs trefoil', response='text')
        self.assertTrue(text.startswith('5 augmentations'))
        rows = self.session.execute('invariants trefoil', response='csv')
        self.assertEqual(rows.splitlines()[0], 'version,0.1.0')
        self.assertEqual(self.session.execute('lch chekanov2'),
                         self.session.execute('lch chekanov2'))

    def test_emit_disks(self):
        session = Session(RunConfig(emit_disks=True), basepath=TESTDIR)
        result = json.loads(session.execute('dga trefoil'))
        self.assertTrue(result['d_squared'])
        self.assertEqual(len(result['disks']),
                         len(all_disks(FrontWord(4, [2, 2, 2]))))

    def test_tool(self):
        out, err = StringIO(), StringIO()
        self.assertEqual(tool_main(['-f', 'text', 'lch-set', 'chekanov1'],
                                   out, err), 0)
        self.assertEqual(out.getvalue().strip().splitlines(),
                         ['1 (x24)', '2 + t (x12)'])
        out, err = StringIO(), StringIO()
        self.assertEqual(tool_main(['-b', '0', 'augs', 'unknot'], out, err), 2)
        self.assertEqual(tool_main([], out, err), 2)


if __name__ == '__main__':
    unittest.main()
