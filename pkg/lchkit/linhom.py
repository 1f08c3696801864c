"""\
Bilinearised Legendrian contact homology over F2.

Given augmentations e0 and e1 of a DGA, the bilinearised differential of a
generator is read off its DGA differential: every word contributes each of
its letters, weighted by e0 of the letters on its left and e1 of the letters
on its right. Taking e0 = e1 gives the linearised complex.

@author: lchkit developers
@license: GPL-3
"""

import logging
from collections import namedtuple, Counter

import numpy as np

from . import InputError, VerdictError
from . import gf2
from .augment import is_augmentation, enumerate_augmentations, pull_back
from .dga import DegreeError, ChainMapViolation


class InvalidAugmentation(InputError):
    "Augmentation does not belong to, or does not augment, the algebra."
    pass

class NotAComplex(VerdictError):
    "Differential does not square to zero."
    pass


HOMOLOGICAL = 'homological'
COHOMOLOGICAL = 'cohomological'


class PoincarePolynomial(object):
    """\
    Graded dimensions of a homology, as a Laurent polynomial in t.
    """
    def __init__(self, dims, modulus=0):
        """\
        Constructor.

        @param dims: Dimension of each degree; zero entries are dropped.
        @type dims: C{dict}
        @param modulus: Order of the grading group (0 for Z).
        @type modulus: C{int}
        """
        self.modulus = modulus
        self._dims = {}
        for k, n in dims.items():
            if n < 0:
                raise ValueError('negative dimension %d in degree %d' % (n, k))
            if modulus:
                k %= modulus
            if n:
                self._dims[k] = self._dims.get(k, 0) + n

    def dim(self, k):
        if self.modulus:
            k %= self.modulus
        return self._dims.get(k, 0)

    @property
    def degrees(self):
        return sorted(self._dims)

    def total(self):
        return sum(self._dims.values())

    def key(self):
        """\
        Sort key: the sorted (degree, dimension) pairs.
        """
        return tuple(sorted(self._dims.items()))

    def __eq__(self, other):
        return isinstance(other, PoincarePolynomial) and \
            self.modulus == other.modulus and self._dims == other._dims

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash((self.modulus, self.key()))

    def __str__(self):
        if not self._dims:
            return '0'
        terms = []
        for k in self.degrees:
            n = self._dims[k]
            if k == 0:
                terms.append(str(n))
                continue
            power = k == 1 and 't' or 't^%d' % k
            terms.append(n == 1 and power or '%d%s' % (n, power))
        return ' + '.join(terms)

    def __repr__(self):
        return 'PoincarePolynomial(%s)' % self

    def to_json(self):
        return dict(('%d' % k, n) for k, n in self.key())


class GradedComplex(object):
    """\
    Finite-dimensional graded chain complex over F2.

    Column C{j} of the matrix is the differential of basis element C{j}.
    """
    def __init__(self, basis, matrix, direction=HOMOLOGICAL, modulus=0):
        """\
        Constructor.

        @param basis: Ordered (id, degree) pairs.
        @type basis: C{list} of C{tuple}
        @param matrix: Square F2 matrix of the differential.
        @type matrix: C{numpy.ndarray}
        @param direction: L{HOMOLOGICAL} (degree -1) or L{COHOMOLOGICAL}
            (degree +1).
        @type direction: C{str}
        @param modulus: Order of the grading group.
        @type modulus: C{int}
        @raise DegreeError: If an entry breaks the degree bookkeeping.
        @raise NotAComplex: If the differential does not square to zero.
        """
        if direction not in (HOMOLOGICAL, COHOMOLOGICAL):
            raise ValueError('unknown direction %r' % direction)
        self.direction = direction
        self.modulus = modulus
        self.basis = [(g, d % modulus if modulus else d) for g, d in basis]
        n = len(self.basis)
        self.matrix = gf2.asmatrix(matrix, shape=(n, n))
        if self.matrix.shape != (n, n):
            raise ValueError('matrix shape %s does not fit %d basis elements'
                             % (self.matrix.shape, n))
        for r, c in zip(*np.nonzero(self.matrix)):
            if not self._same(self.basis[r][1], self.basis[c][1] + self.step):
                raise DegreeError('entry %s -> %s has the wrong degree'
                                  % (self.basis[c][0], self.basis[r][0]))
        if not gf2.is_zero(gf2.matmul(self.matrix, self.matrix)):
            raise NotAComplex('d^2 != 0')

    @property
    def step(self):
        return self.direction == HOMOLOGICAL and -1 or 1

    def _same(self, a, b):
        if self.modulus:
            return (a - b) % self.modulus == 0
        return a == b

    @property
    def ids(self):
        return [g for g, _ in self.basis]

    def degrees(self):
        return sorted(set(d for _, d in self.basis))

    def columns(self, k):
        return [j for j, (_, d) in enumerate(self.basis) if self._same(d, k)]

    def __eq__(self, other):
        return isinstance(other, GradedComplex) and \
            self.basis == other.basis and self.direction == other.direction \
            and self.modulus == other.modulus and \
            np.array_equal(self.matrix, other.matrix)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(self.basis))


def _check_augmentation(d, eps, graded):
    if eps.dga.generators != d.generators:
        raise InvalidAugmentation('augmentation belongs to another algebra')
    if not is_augmentation(d, eps, graded):
        raise InvalidAugmentation('%r does not kill the differential' % eps)


def _complex_modulus(d, graded):
    # ungraded augmentations only give a complex graded mod 1
    return d.modulus if graded else 1


def bilinearise(d, eps0, eps1, graded=True, check=True):
    """\
    Bilinearised complex of a DGA.

    @param d: The algebra.
    @type d: L{FreeDGA}
    @param eps0: Augmentation applied to letters left of the kept one.
    @type eps0: L{Augmentation}
    @param eps1: Augmentation applied to letters right of the kept one.
    @type eps1: L{Augmentation}
    @param graded: Whether the augmentations are graded.
    @type graded: C{bool}
    @param check: Validate the augmentations first.
    @type check: C{bool}
    @rtype: L{GradedComplex}
    @raise InvalidAugmentation: If an augmentation is invalid.
    @raise NotAComplex: If the result does not square to zero.
    """
    if check:
        _check_augmentation(d, eps0, graded)
        _check_augmentation(d, eps1, graded)
    index = dict((g, j) for j, g in enumerate(d.generators))
    M = np.zeros((len(index), len(index)), dtype=np.uint8)
    for g in d.generators:
        for w in d.boundary(g).words:
            for i, x in enumerate(w):
                if eps0.word(w[:i]) and eps1.word(w[i + 1:]):
                    M[index[x], index[g]] ^= 1
    return GradedComplex([(g, d.degree(g)) for g in d.generators], M,
                         HOMOLOGICAL, _complex_modulus(d, graded))


def linearise(d, eps, graded=True):
    """\
    Linearised complex: the bilinearised complex with equal augmentations,
    computed by counting the letters each word has outside the kernel of
    the augmentation.
    """
    _check_augmentation(d, eps, graded)
    index = dict((g, j) for j, g in enumerate(d.generators))
    M = np.zeros((len(index), len(index)), dtype=np.uint8)
    for g in d.generators:
        for w in d.boundary(g).words:
            killed = [i for i, x in enumerate(w) if not eps[x]]
            if not killed:
                for x in w:
                    M[index[x], index[g]] ^= 1
            elif len(killed) == 1:
                M[index[w[killed[0]]], index[g]] ^= 1
    return GradedComplex([(g, d.degree(g)) for g in d.generators], M,
                         HOMOLOGICAL, _complex_modulus(d, graded))


def homology(c):
    """\
    Graded dimensions of the homology of a complex.

    @param c: The complex.
    @type c: L{GradedComplex}
    @rtype: L{PoincarePolynomial}
    @raise NotAComplex: If the differential does not square to zero.
    """
    if not gf2.is_zero(gf2.matmul(c.matrix, c.matrix)):
        raise NotAComplex('d^2 != 0')
    ranks = {}
    for k in c.degrees():
        ranks[k] = gf2.rank(c.matrix[:, c.columns(k)])
    dims = {}
    for k in c.degrees():
        source = k - c.step
        if c.modulus:
            source %= c.modulus
        dims[k] = len(c.columns(k)) - ranks[k] - ranks.get(source, 0)
    return PoincarePolynomial(dims, c.modulus)


def dualize(c):
    """\
    Dual complex, with transposed differential and flipped direction.
    """
    return GradedComplex(c.basis, c.matrix.T.copy(),
                         c.direction == HOMOLOGICAL and COHOMOLOGICAL
                         or HOMOLOGICAL, c.modulus)


class LCHClassSet(object):
    """\
    Bilinearised homologies of a DGA over all ordered pairs of augmentations.

    @ivar augmentations: The augmentations, in enumeration order.
    @ivar table: Rows (i, j, polynomial) for the pair (e_i, e_j).
    @ivar classes: The distinct polynomials.
    """
    def __init__(self, augmentations, table):
        self.augmentations = augmentations
        self.table = table
        self.classes = frozenset(p for _, _, p in table)

    @property
    def multiset(self):
        return Counter(p for _, _, p in self.table)

    def sorted_classes(self):
        return sorted(self.classes, key=PoincarePolynomial.key)

    def __contains__(self, p):
        return p in self.classes

    def __len__(self):
        return len(self.classes)


def lch_class_set(d, graded=True, augmentations=None):
    """\
    The set of bilinearised homologies of a DGA.

    @param d: The algebra.
    @type d: L{FreeDGA}
    @param graded: Use graded augmentations.
    @type graded: C{bool}
    @param augmentations: Precomputed augmentations (default: enumerate).
    @type augmentations: C{list}
    @rtype: L{LCHClassSet}
    """
    if augmentations is None:
        augmentations = enumerate_augmentations(d, graded)
    table = []
    for i, eps0 in enumerate(augmentations):
        for j, eps1 in enumerate(augmentations):
            table.append((i, j, homology(bilinearise(d, eps0, eps1, graded))))
    result = LCHClassSet(augmentations, table)
    logging.info('%d augmentation pairs, %d classes', len(table), len(result))
    return result


DualityRow = namedtuple('DualityRow', ['index', 'polynomial', 'sabloff',
                                       'fundamental'])


def sabloff_holds(p):
    """\
    Whether a linearised homology is symmetric about degree zero, with the
    extra class in degree one.
    """
    top = max([abs(k) for k in p.degrees] + [1])
    if p.dim(1) != p.dim(-1) + 1:
        return False
    return all(p.dim(k) == p.dim(-k) for k in range(2, top + 1))


def duality_report(d, graded=True):
    """\
    Duality and fundamental class checks, one row per augmentation.

    @param d: The algebra of a knot.
    @type d: L{FreeDGA}
    @rtype: C{list} of L{DualityRow}
    """
    rows = []
    for i, eps in enumerate(enumerate_augmentations(d, graded)):
        c = linearise(d, eps, graded)
        p = homology(c)
        rows.append(DualityRow(i, p, sabloff_holds(p),
                               homology(dualize(c)).dim(1) >= 1))
        logging.debug('augmentation %d: %s', i, p)
    return rows


class InducedMap(object):
    """\
    Linear chain map induced by a DGA morphism between bilinearised
    complexes.

    @ivar source: Bilinearised complex of the source, for the pulled-back
        augmentations.
    @ivar target: Bilinearised complex of the target.
    @ivar matrix: Rows indexed by target generators, columns by source ones.
    """
    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = matrix

    def adjoint(self):
        """\
        Transpose, mapping the target's cohomology complex to the source's.
        """
        return InducedMap(dualize(self.target), dualize(self.source),
                          self.matrix.T.copy())


def induced_map(m, eps0, eps1, graded=True):
    """\
    Bilinearised chain map of a DGA morphism.

    @param m: The morphism.
    @type m: L{DGAMorphism}
    @param eps0: Left augmentation of the target.
    @type eps0: L{Augmentation}
    @param eps1: Right augmentation of the target.
    @type eps1: L{Augmentation}
    @rtype: L{InducedMap}
    @raise ChainMapViolation: If the matrix does not commute with the
        differentials.
    """
    target = bilinearise(m.target, eps0, eps1, graded)
    source = bilinearise(m.source, pull_back(m, eps0), pull_back(m, eps1),
                         graded)
    rows = dict((g, j) for j, g in enumerate(m.target.generators))
    F = np.zeros((len(rows), len(m.source.generators)), dtype=np.uint8)
    for col, g in enumerate(m.source.generators):
        for w in m.image(g).words:
            for i, x in enumerate(w):
                if eps0.word(w[:i]) and eps1.word(w[i + 1:]):
                    F[rows[x], col] ^= 1
    if not np.array_equal(gf2.matmul(F, source.matrix),
                          gf2.matmul(target.matrix, F)):
        raise ChainMapViolation('induced map does not commute with the '
                                'bilinearised differentials')
    return InducedMap(source, target, F)


def table_rows(class_set):
    """\
    Flat rows for CSV output: pair indices and sparse degree:dim pairs.
    """
    return [(i, j, ' '.join('%d:%d' % kv for kv in p.key()))
            for i, j, p in class_set.table]
