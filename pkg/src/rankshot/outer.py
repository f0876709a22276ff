"""Reed-Solomon outer codes and the per-level symbol maps.

Outer codes are evaluation codes: a message (f_0 .. f_{k-1}) encodes to
the values of the polynomial at the points 1, g, g^2, ..., g^(n-1),
where g is the alphabet field's canonical generator element.  They are
MDS with minimum Hamming distance n - k + 1 and decoded either by an
exhaustive nearest-codeword scan (reference semantics; ties break toward
the smaller codeword tuple) or by a Gao-style algebraic decoder that
handles errors and erasures up to 2e + f <= d - 1 and reports failure
beyond that.

A SymbolMap carries level messages between width-w coefficient tuples
over F_{q^M} and symbols of the level alphabet, which for w > 1 is a
freshly constructed degree-w extension of F_{q^M}.
"""

from __future__ import annotations

import itertools

from .errors import GuardError
from .fields import ExtensionField, poly_divmod, poly_eval, poly_mul, poly_sub, poly_trim

ENUM_GUARD = 1 << 20


class SymbolMap:
    """Bijection between width-w tuples over a base field and the symbols
    of the level alphabet."""

    def __init__(self, base_field, width: int):
        if width < 1:
            raise ValueError("symbol width must be >= 1")
        self.base = base_field
        self.width = width
        self.alphabet = base_field if width == 1 else ExtensionField(base_field, degree=width)

    def to_symbol(self, tup) -> int:
        if len(tup) != self.width:
            raise ValueError(f"tuple must have width {self.width}")
        if self.width == 1:
            sym = int(tup[0])
            if not 0 <= sym < self.alphabet.size:
                raise ValueError("coefficient out of range")
            return sym
        return self.alphabet.from_coords(tup)

    def to_tuple(self, sym: int) -> tuple:
        if self.width == 1:
            if not 0 <= sym < self.alphabet.size:
                raise ValueError("symbol out of range")
            return (int(sym),)
        return self.alphabet.coords(sym)


class OuterCode:
    """An [n, k, n-k+1] Reed-Solomon code over a given alphabet field."""

    def __init__(self, field, n: int, k: int):
        if n < 1:
            raise ValueError("block length must be >= 1")
        if not 0 <= k <= n:
            raise ValueError("dimension must satisfy 0 <= k <= n")
        if n >= field.size:
            raise ValueError(f"block length {n} needs an alphabet larger than {field.size}")
        points = tuple(field.pow(field.gen, i) for i in range(n))
        if len(set(points)) != n:
            raise ValueError(
                "evaluation points collide: the alphabet generator has order "
                f"less than {n}"
            )
        self.field = field
        self.n = n
        self.k = k
        self.points = points
        self._codebook = None

    @property
    def d_min(self) -> int:
        return self.n - self.k + 1

    def encode(self, message) -> tuple:
        if len(message) != self.k:
            raise ValueError(f"message must have length {self.k}")
        coeffs = [int(c) for c in message]
        return tuple(poly_eval(self.field, coeffs, p) for p in self.points)

    def codewords(self) -> list:
        """All (message, codeword) pairs in lexicographic message order."""
        if self._codebook is None:
            count = self.field.size ** self.k
            if count > ENUM_GUARD:
                raise GuardError(
                    f"codebook of size {count} exceeds the enumeration guard {ENUM_GUARD}"
                )
            self._codebook = [
                (msg, self.encode(msg))
                for msg in itertools.product(self.field.elements(), repeat=self.k)
            ]
        return self._codebook

    def decode(self, word, erasures=(), method: str = "exhaustive"):
        """Decode to a message tuple, or None on failure.

        Positions listed in *erasures* are ignored when counting
        disagreements.  The exhaustive method always returns the nearest
        codeword's message; the algebraic method is bounded-distance and
        fails (None) outside 2e + f <= d - 1.
        """
        if len(word) != self.n:
            raise ValueError("word has the wrong length")
        erasures = tuple(sorted(set(int(e) for e in erasures)))
        if erasures and (erasures[0] < 0 or erasures[-1] >= self.n):
            raise ValueError("erasure index out of range")
        if method == "exhaustive":
            return self._decode_exhaustive(word, erasures)
        if method == "algebraic":
            return self._decode_gao(word, erasures)
        raise ValueError(f"unknown decode method {method!r}")

    def _decode_exhaustive(self, word, erasures):
        live = [i for i in range(self.n) if i not in erasures]
        best = None
        for msg, cw in self.codewords():
            dist = sum(1 for i in live if cw[i] != word[i])
            key = (dist, cw)
            if best is None or key < best[0]:
                best = (key, msg)
        return best[1]

    def _decode_gao(self, word, erasures):
        f = self.field
        live = [i for i in range(self.n) if i not in erasures]
        n_live = len(live)
        n_erased = self.n - n_live
        if self.k == 0:
            errors = sum(1 for i in live if word[i] != 0)
            return () if 2 * errors + n_erased <= self.d_min - 1 else None
        if n_live < self.k:
            return None
        xs = [self.points[i] for i in live]
        ys = [word[i] for i in live]
        g0 = [1]
        for x in xs:
            g0 = poly_mul(f, g0, [f.neg(x), 1])
        g1 = []
        for x, y in zip(xs, ys):
            if y == 0:
                continue
            num, _ = poly_divmod(f, g0, [f.neg(x), 1])
            denom = poly_eval(f, num, x)
            scale = f.div(y, denom)
            g1 = poly_trim(
                [f.add(a, f.mul(scale, b)) for a, b in
                 itertools.zip_longest(g1, num, fillvalue=0)]
            )
        # partial extended Euclid until the remainder degree drops below
        # (n_live + k) / 2; v tracks the g1 cofactor.
        stop = (n_live + self.k) / 2
        r0, r1 = g0, g1
        v0, v1 = [], [1]
        while r1 and len(r1) - 1 >= stop:
            quot, rem = poly_divmod(f, r0, r1)
            r0, r1 = r1, rem
            v0, v1 = v1, poly_sub(f, v0, poly_mul(f, quot, v1))
        if not v1:
            return None
        if not r1:
            quot, rem = [], []
        else:
            quot, rem = poly_divmod(f, r1, v1)
        if rem or len(quot) > self.k:
            return None
        msg = tuple(quot) + (0,) * (self.k - len(quot))
        cw = self.encode(msg)
        errors = sum(1 for i in live if cw[i] != word[i])
        if 2 * errors + n_erased <= self.d_min - 1:
            return msg
        return None

    def __repr__(self):
        return f"OuterCode(n={self.n}, k={self.k}, alphabet={self.field.size})"
