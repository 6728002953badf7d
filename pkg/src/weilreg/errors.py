"""Exception hierarchy for the toolkit.

Every domain failure raises a subclass of WeilregError so callers (and the
session runner) can distinguish "the mathematics said no" from genuine bugs.
"""


class WeilregError(Exception):
    """Base class for all toolkit errors."""


class ArityMismatch(WeilregError):
    """Operands live in polynomial rings with different numbers of variables."""


class BudgetExceeded(WeilregError):
    """A Groebner computation passed the configured S-pair step limit.

    Signals an intractable instance, not wrong input.
    """

    def __init__(self, steps: int, limit: int):
        super().__init__(f"groebner step budget exceeded: {steps} > {limit}")
        self.steps = steps
        self.limit = limit


class ImproperIdeal(WeilregError):
    """A defining ideal is the unit ideal, so the variety would be empty."""


class ZeroDenominator(WeilregError):
    """A denominator vanishes identically on the relevant variety."""


class RepresentativeMismatch(WeilregError):
    """Two representatives of one rational map disagree as rational maps."""


class NotIntoTarget(WeilregError):
    """A representative does not satisfy the target's defining equations."""


class NotDominant(WeilregError):
    """Operation requires a dominant map and the closed image is proper."""


class NotComposable(WeilregError):
    """Target of the first map is not the source of the second."""


class NotBirational(WeilregError):
    """No rational inverse could be certified.

    This is a sound failure to certify, not a proof that no inverse exists.
    """


class PointNotOnVariety(WeilregError):
    """A sample point does not satisfy the variety's defining ideal."""


class EmptyOpen(WeilregError):
    """An open subset degenerated to the empty set."""


class AxiomFailure(WeilregError):
    """A group axiom identity failed; the message names the identity."""


class NotAnAction(WeilregError):
    """An action law failed; carries the offending residue polynomial."""

    def __init__(self, law: str, residue=None):
        msg = f"action law violated: {law}"
        if residue is not None:
            msg += f" (residue {residue})"
        super().__init__(msg)
        self.law = law
        self.residue = residue


class PointNotOnGroup(WeilregError):
    """A group element sample does not satisfy the group's defining ideal."""


class EmptyLocus(WeilregError):
    """The computed G-regular locus is empty (representative set too small)."""


class RoundTripFailure(WeilregError):
    """A constructed map and its claimed inverse fail the round-trip check."""


class NotInSpan(WeilregError):
    """A pullback of a generator escapes the stable linear span."""


class NotFPower(WeilregError):
    """The denominator is not supported on the given principal divisor."""


class SampleBudgetExhausted(WeilregError):
    """Candidate enumeration ended before enough independent points appeared."""


class SliceNotRegular(WeilregError):
    """A sample slice of the function is not regular (hypothesis fails)."""

    def __init__(self, index: int, message: str = ""):
        super().__init__(message or f"slice at sample {index} is not regular")
        self.index = index


class NonPolynomialResidue(WeilregError):
    """A solved component of the certificate is not regular."""


class NotRegularOnSample(WeilregError):
    """A sampled group element does not act by a regular automorphism."""


class SessionSyntaxError(WeilregError):
    """Session text failed to parse; carries position and expectations."""

    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        loc = f"line {line}, column {column}"
        if self.expected:
            message = f"{message} at {loc}; expected one of: " + ", ".join(self.expected)
        else:
            message = f"{message} at {loc}"
        super().__init__(message)


class UseBeforeDeclare(WeilregError):
    """A session statement references a name that was never declared."""
