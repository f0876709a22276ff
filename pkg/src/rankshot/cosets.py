"""Nested chains of Gabidulin subcodes and their coset decompositions.

A chain K = K_0 > K_1 > ... > K_m = 0 nests the column-span subcodes
R_i generated by the first K_i generator columns.  The coset code
[R_i / R_{i+1}] is spanned by columns K_{i+1} .. K_i - 1; every word of
R_i splits uniquely as a coset leader from that span plus a remainder in
R_{i+1}, which is what multistage decoding peels off level by level.
"""

from __future__ import annotations

from .fields import matvec
from .gabidulin import GabidulinCode
from .linalg import solve_field


class PartitionChain:
    def __init__(self, code: GabidulinCode, ks):
        ks = tuple(int(k) for k in ks)
        if not ks or ks[0] != code.dim:
            raise ValueError("chain must start at the code dimension")
        if ks[-1] != 0:
            raise ValueError("chain must end at 0")
        if any(a <= b for a, b in zip(ks, ks[1:])):
            raise ValueError("chain must be strictly decreasing")
        self.code = code
        self.ks = ks
        self._subcodes: dict[int, GabidulinCode] = {}

    @property
    def m(self) -> int:
        """Number of partition levels."""
        return len(self.ks) - 1

    @property
    def field(self):
        return self.code.field

    def delta_k(self, i: int) -> int:
        return self.ks[i] - self.ks[i + 1]

    def children_count(self, i: int) -> int:
        """Cosets of R_{i+1} inside R_i: q^(M * delta_k)."""
        return self.field.size ** self.delta_k(i)

    def subcode(self, i: int) -> GabidulinCode:
        if i not in self._subcodes:
            self._subcodes[i] = GabidulinCode(
                self.field, self.code.length, self.ks[i], self.code.points
            )
        return self._subcodes[i]

    def subcode_generator(self, i: int) -> tuple:
        """First K_i generator columns, as N row tuples."""
        k = self.ks[i]
        return tuple(row[:k] for row in self.code.generator)

    def coset_code_generator(self, i: int) -> tuple:
        """Generator columns K_{i+1} .. K_i - 1, as N row tuples."""
        lo, hi = self.ks[i + 1], self.ks[i]
        return tuple(row[lo:hi] for row in self.code.generator)

    def coset_leader(self, i: int, word):
        """Decompose a word of R_i as leader + member of R_{i+1}.

        Returns (leader, message) where leader lies in [R_i / R_{i+1}]
        and message is its delta_k coefficient tuple.  Raises ValueError
        when the word is not in R_i.
        """
        k = self.ks[i]
        gen = self.subcode_generator(i)
        sol = solve_field(self.field, gen, list(word)) if k else (None if any(word) else ())
        if sol is None:
            raise ValueError(f"word is not a member of the level-{i} subcode")
        message = tuple(sol[self.ks[i + 1]: k])
        leader = matvec(self.field, self.coset_code_generator(i), message)
        return leader, message

    def __repr__(self):
        return f"PartitionChain(ks={self.ks}, code={self.code!r})"
