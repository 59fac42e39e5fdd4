"""
Exception hierarchy for qsw.

Library code raises these; the CLI turns any QswError into exit code 1.
"""

from typing import Optional, Sequence


class QswError(Exception):
    """Base class for every domain error raised by qsw."""


class CompositionError(QswError):
    pass


class PermutationError(QswError):
    pass


class BasisError(QswError):
    """An element was passed in the wrong basis."""


class GradeMismatch(QswError):
    def __init__(self, left: int, right: int, what: str = "grades"):
        super().__init__(f"{what} do not match: {left} != {right}")
        self.left = left
        self.right = right


class NotInDescentAlgebra(QswError):
    """A permutation expansion is not constant on descent classes."""

    def __init__(self, witness: Optional[Sequence[int]] = None):
        msg = "expansion is not constant on descent classes"
        if witness is not None:
            msg += f" (first offending composition {list(witness)})"
        super().__init__(msg)
        self.witness = witness


class SizeCapExceeded(QswError):
    def __init__(self, what: str, n: int, cap: int):
        super().__init__(f"{what}: n={n} exceeds the cap {cap} (use --force or QSW_MAX_N)")
        self.n = n
        self.cap = cap


class MissingVariable(QswError):
    def __init__(self, name: str):
        super().__init__(f"no value assigned to variable {name}")
        self.name = name


class CharacterCapExceeded(SizeCapExceeded):
    pass


class NegativeWeight(QswError):
    def __init__(self, alpha: Sequence[int], value):
        super().__init__(f"c_{{{list(alpha)},n}} = {value} is negative; not a probability")
        self.alpha = tuple(alpha)
        self.value = value


class AllZero(QswError):
    def __init__(self, n: int):
        super().__init__(f"every c_{{alpha,{n}}} vanishes; no distribution exists")
        self.n = n


class ZeroLambda(QswError):
    def __init__(self):
        super().__init__("lambda = <X^Phi, M_1> is zero; K-bar cannot be normalized")


class ConventionMismatch(QswError):
    pass


class ZeroEigenvalue(QswError):
    def __init__(self, m: int):
        super().__init__(f"lambda_{m} = 0; Z_{m} is undefined")
        self.m = m


class EigenvalueCollision(QswError):
    def __init__(self, m: int, beta: Sequence[int]):
        super().__init__(f"lambda_{m} equals lambda_{list(beta)}; Z_{m} is undefined")
        self.m = m
        self.beta = tuple(beta)


class NotAnEigenvector(QswError):
    pass


class PartitionError(QswError):
    pass


class InvalidLetter(QswError):
    def __init__(self, letter: str):
        super().__init__(f"invalid letter {letter!r} in ab-word")
        self.letter = letter


class ModelError(QswError):
    """Bad shuffle model parameters."""


class SpecSyntaxError(QswError):
    def __init__(self, token: str, grammar: str):
        super().__init__(f"cannot parse {token!r}; expected {grammar}")
        self.token = token
        self.grammar = grammar
