"""\
Augmentations of free DGAs into F2 and into matrix algebras over F2.

@author: lchkit developers
@license: GPL-3
"""

import logging
from itertools import product

import numpy as np

from . import LCHError
from .dga import as_formal_sum


class BudgetExceeded(LCHError):
    "Search stopped at its node budget; partial results attached."
    def __init__(self, message, partial=()):
        super(BudgetExceeded, self).__init__(message)
        self.partial = list(partial)


class Augmentation(object):
    """\
    Unital algebra map to F2 killing the differential.
    """
    def __init__(self, d, values):
        """\
        Constructor.

        @param d: The algebra.
        @type d: L{FreeDGA}
        @param values: Value of each generator (missing: 0).
        @type values: C{dict}
        """
        self.dga = d
        self.values = dict((g, int(values.get(g, 0)) % 2) for g in d.generators)

    def __getitem__(self, g):
        return self.values[g]

    def word(self, word):
        for g in word:
            if not self.values[g]:
                return 0
        return 1

    def evaluate(self, x):
        return sum(self.word(w) for w in as_formal_sum(x).words) % 2

    def key(self):
        return tuple(self.values[g] for g in self.dga.generators)

    def __eq__(self, other):
        return isinstance(other, Augmentation) and self.values == other.values

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return 'Augmentation(%s)' % ', '.join('%s=%d' % (g, self.values[g])
                                              for g in self.dga.generators)

    def to_json(self):
        return [{'generator': g, 'value': self.values[g]}
                for g in self.dga.generators]


class MatrixRep(object):
    """\
    Unital algebra map to k x k matrices over F2 killing the differential.
    """
    def __init__(self, d, k, values):
        self.dga = d
        self.k = k
        zero = np.zeros((k, k), dtype=np.uint8)
        self.values = dict((g, np.asarray(values.get(g, zero), dtype=np.uint8) % 2)
                           for g in d.generators)

    def __getitem__(self, g):
        return self.values[g]

    def word(self, word):
        M = np.eye(self.k, dtype=np.int64)
        for g in word:
            M = (M @ self.values[g]) % 2
        return M

    def evaluate(self, x):
        total = np.zeros((self.k, self.k), dtype=np.int64)
        for w in as_formal_sum(x).words:
            total += self.word(w)
        return (total % 2).astype(np.uint8)

    def key(self):
        return tuple(tuple(self.values[g].flatten().tolist())
                     for g in self.dga.generators)

    def __eq__(self, other):
        return isinstance(other, MatrixRep) and self.k == other.k and \
            self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key())

    def to_json(self):
        return {'k': self.k,
                'values': dict((g, self.values[g].tolist())
                               for g in self.dga.generators)}


def _free_generators(d, graded):
    if not graded:
        return d.generators
    return [g for g in d.generators if d.same_degree(d.degree(g), 0)]


def is_augmentation(d, eps, graded=True):
    """\
    Check the augmentation equations from scratch.
    """
    free = set(_free_generators(d, graded))
    if any(eps[g] for g in d.generators if g not in free):
        return False
    return not any(eps.evaluate(d.boundary(g)) for g in d.generators)


def is_matrix_rep(d, rho, graded=True):
    free = set(_free_generators(d, graded))
    if any(rho[g].any() for g in d.generators if g not in free):
        return False
    return not any(rho.evaluate(d.boundary(g)).any() for g in d.generators)


def enumerate_augmentations(d, graded=True):
    """\
    All augmentations of a DGA into F2, by brute force.

    @param d: The algebra.
    @type d: L{FreeDGA}
    @param graded: Only let degree-0 generators take the value 1.
    @type graded: C{bool}
    @return: Augmentations in lexicographic order of their values.
    @rtype: C{list} of L{Augmentation}
    """
    free = _free_generators(d, graded)
    relations = [d.boundary(g) for g in d.generators if d.boundary(g)]
    found = []
    for bits in product((0, 1), repeat=len(free)):
        eps = Augmentation(d, dict(zip(free, bits)))
        if not any(eps.evaluate(r) for r in relations):
            found.append(eps)
    found.sort(key=Augmentation.key)
    logging.info('%d augmentations over %d free generators', len(found),
                 len(free))
    return found


def _all_matrices(k):
    for bits in product((0, 1), repeat=k * k):
        yield np.array(bits, dtype=np.uint8).reshape(k, k)


def enumerate_matrix_reps(d, k, budget=200000, graded=True):
    """\
    All representations into k x k matrices over F2, by backtracking.

    Generators are assigned in decreasing order of the number of relations
    they occur in; a relation is tested as soon as all its surviving letters
    carry a value.

    @param d: The algebra.
    @type d: L{FreeDGA}
    @param k: Matrix size.
    @type k: C{int}
    @param budget: Maximum number of search nodes.
    @type budget: C{int}
    @param graded: Only let degree-0 generators be nonzero.
    @type graded: C{bool}
    @rtype: C{list} of L{MatrixRep}
    @raise BudgetExceeded: When the budget runs out (partial list attached).
    """
    if k < 1:
        raise ValueError('matrix size must be positive')
    free = _free_generators(d, graded)
    fixed = set(d.generators) - set(free)
    relations = []
    for g in d.generators:
        words = [w for w in d.boundary(g).words if not fixed.intersection(w)]
        if words:
            relations.append((g, words, set(l for w in words for l in w)))
    count = dict((g, sum(1 for _, _, letters in relations if g in letters))
                 for g in free)
    order = sorted(free, key=lambda g: -count[g])
    position = dict((g, n) for n, g in enumerate(order))
    # relation n is tested once generator ready[n] gets its value
    ready = dict((n, max([position[l] for l in letters] or [-1]))
                 for n, (_, _, letters) in enumerate(relations))
    checks = [[] for _ in order]
    for n, (g, words, letters) in enumerate(relations):
        if ready[n] < 0:
            rho = MatrixRep(d, k, {})
            if rho.evaluate(words).any():
                logging.info('relation d%s has no representation', g)
                return []
        else:
            checks[ready[n]].append(words)
    matrices = list(_all_matrices(k))
    found = []
    nodes = [0]
    values = {}

    def extend(depth):
        if depth == len(order):
            found.append(MatrixRep(d, k, values))
            return
        for M in matrices:
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded('matrix representation search exceeded '
                                     '%d nodes' % budget, found)
            values[order[depth]] = M
            rho = MatrixRep(d, k, values)
            if not any(rho.evaluate(words).any() for words in checks[depth]):
                extend(depth + 1)
        del values[order[depth]]

    try:
        extend(0)
    except BudgetExceeded as e:
        e.partial.sort(key=MatrixRep.key)
        logging.warning('%s; %d representations so far', e, len(e.partial))
        raise
    found.sort(key=MatrixRep.key)
    logging.info('%d representations of dimension %d (%d nodes)', len(found),
                 k, nodes[0])
    return found


def inflate(eps, k):
    """\
    Scalar embedding of an augmentation into k x k matrices.
    """
    eye = np.eye(k, dtype=np.uint8)
    return MatrixRep(eps.dga, k, dict((g, eye * eps[g])
                                      for g in eps.dga.generators))


def pull_back(m, eps):
    """\
    Augmentation of the source of a morphism induced by one of its target.

    @param m: The morphism.
    @type m: L{DGAMorphism}
    @param eps: Augmentation of C{m.target}.
    @type eps: L{Augmentation}
    @rtype: L{Augmentation}
    """
    return Augmentation(m.source, dict((g, eps.evaluate(m.image(g)))
                                       for g in m.source.generators))
