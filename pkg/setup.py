#!/usr/bin/env python

from lchkit import __version__
VERSION = "%s.%s.%s" % __version__[0:3]

from setuptools import setup, Command
from setuptools.command.sdist import sdist
from shutil import rmtree
import os
import sys

try:
    import epydoc.cli as doc
except ImportError:
    doc = None

NAME = 'lchkit'
URL = 'http://github.com/lchkit/lchkit'
PACKAGE = 'lchkit'

RESOURCES = ['config.yaml', 'knots/unknot.yaml', 'knots/trefoil.yaml',
             'knots/chekanov1.yaml', 'knots/chekanov2.yaml',
             'knots/nine46.yaml']


class GenerateDoc(Command):
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        if not doc:
            raise ImportError('Epydoc is not available')
        rmtree('doc', ignore_errors=True)
        os.mkdir('doc')
        sys.argv = ['epydoc', '-v', '--name', NAME, '--url', URL, '-o', 'doc', PACKAGE]
        options, names = doc.parse_arguments()
        doc.main(options, names)


class CheckSdist(sdist):
    def run(self):
        for resource in RESOURCES:
            path = os.path.join(PACKAGE, 'resources', resource)
            assert os.path.isfile(path), 'bundled resource \'%s\' not found.' % path
        sdist.run(self)


setup(
    name = NAME,
    version = VERSION,
    license = 'GPL',
    description = 'Legendrian contact homology and Lagrangian cobordism obstruction toolkit.',
    author = 'lchkit developers',
    url = URL,
    keywords = 'legendrian knot contact homology lagrangian cobordism',
    packages = [PACKAGE],
    package_data = {PACKAGE: ['resources/*.*', 'resources/*/*.*']},
    scripts = ['lchtool.py'],
    install_requires = ['PyYAML', 'numpy', 'setuptools'],
    test_suite = 'test',
    cmdclass = {'doc': GenerateDoc, 'sdist': CheckSdist},
)
