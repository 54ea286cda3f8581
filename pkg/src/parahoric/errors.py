"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for malformed or unsupported input, 3 for resource caps, 1 otherwise.
"""


class ParahoricError(Exception):
    exit_code = 1


class InputError(ParahoricError):
    exit_code = 2


class ParseError(InputError):
    pass


class InvalidSpec(InputError):
    pass


class UnsupportedType(InputError):
    pass


class UnsupportedFamily(InputError):
    pass


class IllFormedWindows(InputError):
    pass


class InvalidConcave(InputError):
    pass


class TooLarge(ParahoricError):
    exit_code = 3


class MixedRings(ParahoricError):
    pass


class MixedGroups(ParahoricError):
    pass


class NotAUnit(ParahoricError):
    pass


class DepthOne(ParahoricError):
    pass


class BadDepth(InputError):
    pass


class NotAdditivePair(ParahoricError):
    pass


class Reducible(ParahoricError):
    pass


class NotComparable(ParahoricError):
    pass


class OutOfWindow(ParahoricError):
    pass


class NotAvailable(ParahoricError):
    pass


class SingularLambda(ParahoricError):
    pass


class NoFactorization(ParahoricError):
    pass


class FactorizationFailed(ParahoricError):
    pass


class NotInProduct(ParahoricError):
    pass


class NonCommutingInputs(ParahoricError):
    pass


class NotTransitive(ParahoricError):
    pass


class NoSuchH(ParahoricError):
    pass


class IncompatibleRings(ParahoricError):
    pass
