"""\
YAML parser module.

Resolves the inputs named on the command line (bundled fixture names, front
files, DGA files, Cthulhu data) to lchkit objects.

@author: lchkit developers
@license: GPL-3
"""

import os
import re
import pkg_resources

import yaml

from . import InputError
from .diagram import parse_front, front_from_mapping, FrontSyntaxError
from .discs import differential
from .dga import dga_from_json
from . import cthulhu


fixtures = {'unknot':       'knots/unknot.yaml',
            'trefoil':      'knots/trefoil.yaml',
            'chekanov1':    'knots/chekanov1.yaml',
            'chekanov2':    'knots/chekanov2.yaml',
            'nine46':       'knots/nine46.yaml'}

_INLINE_FRONT = re.compile(r'^\s*strands\s*=')


class YAMLParser(object):
    """\
    YAML input parser class.
    """
    def __init__(self, basepath='.'):
        """\
        Constructor.

        @param basepath: Directory relative paths are resolved against.
        @type basepath: C{str}
        """
        self._path = basepath

    @staticmethod
    def _external_path(basepath, filename):
        """\
        Return the path to an external file. Defaults to searching the
        package resources if the file is not found.

        @param basepath: The current base path context.
        @type basepath: C{str}
        @param filename: The filename of the external file.
        @type filename: C{str}
        @return: The path to the external file.
        @rtype: C{str}
        """
        for path in [os.path.join(basepath, filename),
            pkg_resources.resource_filename(__name__, 'resources/' + filename)]:
            if os.path.exists(path):
                return path
        raise IOError('external file %s not found' % filename)

    def read(self, source):
        """\
        Text of an input, by fixture name or path.

        @param source: Fixture name or file path.
        @type source: C{str}
        @rtype: C{str}
        """
        filename = fixtures.get(source, source)
        with open(self._external_path(self._path, filename)) as f:
            return f.read()

    def mapping(self, source):
        try:
            data = yaml.safe_load(self.read(source))
        except yaml.YAMLError as e:
            raise InputError('%s is not readable YAML/JSON: %s' % (source, e))
        if not isinstance(data, dict):
            raise InputError('%s does not hold a mapping' % source)
        return data

    def front(self, source):
        """\
        Parse a front from an inline grammar string, a fixture or a file.

        @rtype: L{FrontWord}
        @raise FrontSyntaxError: If the input is not a front.
        """
        if _INLINE_FRONT.match(source):
            return parse_front(source)
        text = self.read(source)
        if _INLINE_FRONT.match(text):
            return parse_front(text)
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise FrontSyntaxError('unreadable front %s: %s' % (source, e))
        return front_from_mapping(data)

    def algebra(self, source):
        """\
        The DGA of an input, computed from a front or read directly.

        @param source: Inline front, fixture name, or front or DGA file.
        @type source: C{str}
        @return: The algebra and the front it came from (C{None} for DGA
            input).
        @rtype: C{tuple}
        """
        if not _INLINE_FRONT.match(source):
            text = self.read(source)
            if not _INLINE_FRONT.match(text):
                try:
                    data = yaml.safe_load(text)
                except yaml.YAMLError as e:
                    raise InputError('unreadable input %s: %s' % (source, e))
                if isinstance(data, dict) and 'generators' in data:
                    return dga_from_json(data), None
        f = self.front(source)
        return differential(f), f

    def cthulhu(self, source):
        """\
        @rtype: L{CthulhuComplex}
        """
        return cthulhu.load(self.mapping(source))

    def concatenation(self, source):
        """\
        @rtype: L{ConcatenationData}
        """
        return cthulhu.load_concatenation(self.mapping(source))
