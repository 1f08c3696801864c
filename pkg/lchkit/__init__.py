"""\
lchkit - Legendrian Contact Homology Toolkit

Combinatorial Legendrian contact homology of plat-position knot fronts over
F2, the algebra of the four-block Cthulhu complex, and obstruction tests for
exact Lagrangian cobordisms built on both.

@author: lchkit developers
@license: GPL-3
"""

__version__ = (0, 1, 0)


class LCHError(Exception):
    "Base class for lchkit errors."
    pass

class InputError(LCHError):
    "Malformed or inconsistent input data."
    pass

class VerdictError(LCHError):
    "A check on otherwise valid data came out negative."
    pass
