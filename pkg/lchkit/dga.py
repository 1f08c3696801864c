"""\
Free unital noncommutative differential graded algebras over F2.

Words are tuples of generator ids, the empty tuple being the unit. With F2
coefficients a formal sum is just the set of words occurring an odd number of
times, so sums are symmetric differences and cancellation happens eagerly.

JSON format::

    {"generators": [{"id": "a1", "deg": 1}, {"id": "c1", "deg": 0}],
     "boundary": {"a1": [["c1"], []]},
     "modulus": 0}

where C{[]} is the unit word and C{modulus} (optional, default 0) is the
order of the grading group.

@author: lchkit developers
@license: GPL-3
"""

import re
import json
import logging
from collections import Counter

import yaml

from . import InputError, VerdictError


class UnknownGenerator(InputError):
    "Word mentions a generator the algebra does not have."
    pass

class DegreeError(InputError):
    "Differential or map does not have the required degree."
    pass

class NotDSquaredZero(VerdictError):
    "Differential does not square to zero."
    pass

class ChainMapViolation(VerdictError):
    "Map does not commute with the differentials."
    pass

class MismatchedDGAs(InputError):
    "Morphisms cannot be composed."
    pass


def natural_key(name):
    """\
    Sort key putting C{c2} before C{c10}.
    """
    return tuple((int(part) if part.isdigit() else part)
                 for part in re.split(r'(\d+)', str(name)) if part != '')


def word_key(word):
    return (len(word), tuple(natural_key(g) for g in word))


class FormalSum(object):
    """\
    Element of a free algebra over F2: a finite set of words.
    """
    __slots__ = ('_words',)

    def __init__(self, words=()):
        """\
        Constructor. Words occurring an even number of times cancel.

        @param words: Words (tuples of generator ids).
        @type words: C{iterable}
        """
        counts = Counter(tuple(w) for w in words)
        self._words = frozenset(w for w, c in counts.items() if c % 2)

    @classmethod
    def generator(cls, g):
        return cls([(g,)])

    @property
    def words(self):
        return self._words

    def __iter__(self):
        return iter(sorted(self._words, key=word_key))

    def __len__(self):
        return len(self._words)

    def __bool__(self):
        return bool(self._words)

    def __contains__(self, word):
        return tuple(word) in self._words

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self._words == other._words

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._words)

    def __add__(self, other):
        result = FormalSum()
        result._words = self._words ^ other._words
        return result

    def __mul__(self, other):
        return FormalSum(u + v for u in self._words for v in other._words)

    def __repr__(self):
        if not self._words:
            return '0'
        return ' + '.join(' '.join(w) or '1' for w in self)

    def letters(self):
        return set(g for w in self._words for g in w)


ZERO = FormalSum()
ONE = FormalSum([()])


def as_formal_sum(x):
    if isinstance(x, FormalSum):
        return x
    return FormalSum(x)


class FreeDGA(object):
    """\
    Finitely generated free unital DGA over F2.
    """
    def __init__(self, generators, boundary, modulus=0, check=True):
        """\
        Constructor.

        @param generators: Ordered (id, degree) pairs.
        @type generators: C{list} of C{tuple}
        @param boundary: Differential of each generator; missing generators
            have zero differential.
        @type boundary: C{dict} of L{FormalSum} or word lists
        @param modulus: Order of the grading group (0 for Z).
        @type modulus: C{int}
        @param check: Verify d^2 = 0 on construction.
        @type check: C{bool}
        @raise UnknownGenerator: If a word uses an undeclared generator.
        @raise DegreeError: If some word of dg is not of degree |g| - 1.
        @raise NotDSquaredZero: If C{check} is set and d^2 != 0.
        """
        self._order = [str(g) for g, _ in generators]
        self._degree = dict((str(g), int(d)) for g, d in generators)
        if len(self._degree) != len(self._order):
            raise InputError('duplicate generator ids')
        self.modulus = int(modulus)
        for g in boundary:
            if g not in self._degree:
                raise UnknownGenerator('boundary given for unknown generator '
                                       '%s' % g)
        self._boundary = dict((g, as_formal_sum(boundary.get(g, ())))
                              for g in self._order)
        for g in self._order:
            for w in self._boundary[g]:
                self.check_word(w)
                if not self.same_degree(self.word_degree(w),
                                        self._degree[g] - 1):
                    raise DegreeError('word %s in d(%s) has degree %d, '
                                      'expected %d' % (' '.join(w) or '1', g,
                                      self.word_degree(w), self._degree[g] - 1))
        if check:
            ok, g = check_d_squared(self)
            if not ok:
                raise NotDSquaredZero('d^2(%s) != 0' % g)

    @property
    def generators(self):
        """\
        Generator ids in their stored order.
        """
        return list(self._order)

    def degree(self, g):
        try:
            return self._degree[g]
        except KeyError:
            raise UnknownGenerator('unknown generator %s' % g)

    def word_degree(self, word):
        return sum(self.degree(g) for g in word)

    def same_degree(self, a, b):
        if self.modulus:
            return (a - b) % self.modulus == 0
        return a == b

    def check_word(self, word):
        for g in word:
            if g not in self._degree:
                raise UnknownGenerator('unknown generator %s' % g)

    def boundary(self, g):
        self.degree(g)
        return self._boundary[g]

    def __eq__(self, other):
        return isinstance(other, FreeDGA) and self._order == other._order \
            and self._degree == other._degree \
            and self._boundary == other._boundary \
            and self.modulus == other.modulus

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(self._order))

    def __repr__(self):
        return 'FreeDGA(%s)' % ', '.join('%s:%d' % (g, self._degree[g])
                                         for g in self._order)

    def emission_order(self):
        """\
        Generators ordered by (degree, id).
        """
        return sorted(self._order, key=lambda g: (self._degree[g],
                                                  natural_key(g)))

    def to_json(self):
        """\
        Serialise to the JSON-compatible mapping.

        @rtype: C{dict}
        """
        data = {'generators': [{'id': g, 'deg': self._degree[g]}
                               for g in self.emission_order()],
                'boundary': dict((g, [list(w) for w in self._boundary[g]])
                                 for g in self._order)}
        if self.modulus:
            data['modulus'] = self.modulus
        return data

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def with_boundary(self, g, value, check=False):
        """\
        Copy of this DGA with the differential of C{g} replaced.
        """
        boundary = dict(self._boundary)
        boundary[g] = as_formal_sum(value)
        return FreeDGA([(h, self._degree[h]) for h in self._order], boundary,
                       self.modulus, check=check)


def dga_from_json(data, check=True):
    """\
    Build a DGA from the JSON-compatible mapping (or its text).

    @param data: Mapping or JSON/YAML text.
    @type data: C{dict} or C{str}
    @rtype: L{FreeDGA}
    """
    if isinstance(data, str):
        try:
            data = yaml.safe_load(data)
        except yaml.YAMLError as e:
            raise InputError('unreadable DGA: %s' % e)
    try:
        generators = [(g['id'], g['deg']) for g in data['generators']]
        boundary = dict((g, FormalSum(tuple(w) for w in words))
                        for g, words in data.get('boundary', {}).items())
    except (KeyError, TypeError) as e:
        raise InputError('malformed DGA mapping: %s' % e)
    return FreeDGA(generators, boundary, data.get('modulus', 0), check=check)


def apply_boundary(d, x):
    """\
    Differential of an element, by the Leibniz rule.

    @param d: The algebra.
    @type d: L{FreeDGA}
    @param x: The element.
    @type x: L{FormalSum}
    @rtype: L{FormalSum}
    """
    x = as_formal_sum(x)
    result = []
    for word in x.words:
        d.check_word(word)
        for i, g in enumerate(word):
            prefix, suffix = word[:i], word[i + 1:]
            for w in d.boundary(g).words:
                result.append(prefix + w + suffix)
    return FormalSum(result)


def check_d_squared(d):
    """\
    Check d^2 = 0 generator by generator.

    @return: Verdict and the first failing generator (or C{None}).
    @rtype: C{tuple}
    """
    for g in d.generators:
        if apply_boundary(d, d.boundary(g)):
            return False, g
    return True, None


def euler_characteristic(d):
    """\
    Number of even generators minus number of odd ones; equals tb for the
    algebra of a Legendrian knot.
    """
    return sum((d.degree(g) % 2) and -1 or 1 for g in d.generators)


class DGAMorphism(object):
    """\
    Unital algebra map between free DGAs commuting with the differentials.
    """
    def __init__(self, source, target, assignment, check=True):
        """\
        Constructor.

        @param source: Source algebra.
        @type source: L{FreeDGA}
        @param target: Target algebra.
        @type target: L{FreeDGA}
        @param assignment: Image of each source generator (missing: zero).
        @type assignment: C{dict}
        @param check: Verify degrees and the chain-map identity.
        @type check: C{bool}
        @raise ChainMapViolation: If Phi(dg) != d(Phi(g)) for some g.
        """
        self.source = source
        self.target = target
        for g in assignment:
            source.degree(g)
        self._image = dict((g, as_formal_sum(assignment.get(g, ())))
                           for g in source.generators)
        for g in source.generators:
            for w in self._image[g].words:
                target.check_word(w)
        if check:
            for g in source.generators:
                for w in self._image[g].words:
                    if not target.same_degree(target.word_degree(w),
                                              source.degree(g)):
                        raise DegreeError('image of %s has a word of degree '
                                          '%d' % (g, target.word_degree(w)))
            g = self.failing_generator()
            if g is not None:
                raise ChainMapViolation('Phi(d%s) != d(Phi(%s))' % (g, g))

    def image(self, g):
        return self._image[g]

    def apply(self, x):
        """\
        Image of an element of the source.

        @rtype: L{FormalSum}
        """
        result = []
        for word in as_formal_sum(x).words:
            product = ONE
            for g in word:
                product = product * self._image[g]
            result.extend(product.words)
        return FormalSum(result)

    def failing_generator(self):
        for g in self.source.generators:
            if self.apply(self.source.boundary(g)) != \
               apply_boundary(self.target, self._image[g]):
                return g
        return None

    def __eq__(self, other):
        return isinstance(other, DGAMorphism) and \
            self.source == other.source and self.target == other.target and \
            self._image == other._image

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(sorted(self._image)))


def identity(d):
    return DGAMorphism(d, d, dict((g, FormalSum.generator(g))
                                  for g in d.generators))


def compose(m1, m2):
    """\
    Composite map: apply C{m1}, then C{m2}.

    @raise MismatchedDGAs: If the target of C{m1} is not the source of C{m2}.
    @rtype: L{DGAMorphism}
    """
    if m1.target != m2.source:
        raise MismatchedDGAs('target of first map is not source of second')
    logging.debug('composing morphisms on %d generators',
                  len(m1.source.generators))
    return DGAMorphism(m1.source, m2.target,
                       dict((g, m2.apply(m1.image(g)))
                            for g in m1.source.generators))
