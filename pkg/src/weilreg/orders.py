"""Monomial orders: lexicographic, graded reverse lexicographic, and block
elimination orders built from the two.

An order exposes a sort key on exponent tuples; bigger key means bigger
monomial.  Block orders compare the elimination block first, which makes them
elimination orders for that block.
"""

from dataclasses import dataclass, field


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on monomials of a fixed arity, compatible with products."""

    kind: str  # "lex" | "grevlex" | "block"
    elim: tuple = field(default=())  # variable indices eliminated first (block only)

    def key(self, exps):
        if self.kind == "lex":
            return tuple(exps)
        if self.kind == "grevlex":
            return _grevlex_key(exps)
        elim = self.elim
        rest = [e for i, e in enumerate(exps) if i not in self._elim_set()]
        head = [exps[i] for i in elim]
        return (_grevlex_key(head), _grevlex_key(rest))

    def _elim_set(self):
        return frozenset(self.elim)

    def eliminates(self, var: int) -> bool:
        return self.kind == "block" and var in self.elim

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block, elim={list(self.elim)})"
        return f"MonomialOrder({self.kind})"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(elim_vars) -> MonomialOrder:
    """Elimination order: monomials in the given variables dominate."""
    return MonomialOrder("block", tuple(sorted(set(elim_vars))))
