"""Multilevel (generalized concatenated) construction of multishot codes.

Level i pairs the coset code [R_i / R_{i+1}] of a Gabidulin partition
chain with an outer Reed-Solomon code over an alphabet of matching size.
Encoding runs every outer code, maps each outer symbol to a coefficient
tuple, forms the per-shot coset contribution with the corresponding
generator columns, and sums the contributions: the codeword is an
n-tuple of rank words, one per channel use.

Size and distance bookkeeping:

    log_q |C|          = sum_i M * delta_k_i * k_i
    design distance    = min_i d_R(R_i) * d_H(outer_i)
    rate               = log_q |C| / (n * N * (N + M))     (lifted)

special_situation() builds the single-symbol-per-level family (all
delta_k = 1, outer dimensions driven by a target design distance d),
whose size has the closed form M*K*(n+1) - M * sum_i ceil(d / (N-K+i+1)),
and maximize_bound() picks the inner dimension K that maximizes that
closed form.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .cosets import PartitionChain
from .errors import GuardError
from .fields import ExtensionField, PrimeField, field_from_json, field_to_json, matvec
from .gabidulin import ENUM_GUARD, GabidulinCode
from .outer import OuterCode, SymbolMap


class MultilevelCodeSpec:
    def __init__(self, chain: PartitionChain, n: int, outer_ks):
        outer_ks = tuple(int(k) for k in outer_ks)
        if len(outer_ks) != chain.m:
            raise ValueError(
                f"need one outer dimension per level: {chain.m} levels, got {len(outer_ks)}"
            )
        self.chain = chain
        self.n = int(n)
        self.maps = tuple(SymbolMap(chain.field, chain.delta_k(i)) for i in range(chain.m))
        self.outers = tuple(
            OuterCode(self.maps[i].alphabet, self.n, outer_ks[i]) for i in range(chain.m)
        )
        for i, outer in enumerate(self.outers):
            assert outer.field.size == chain.children_count(i)
        self._codebook = None
        self._underlines = None

    @property
    def field(self):
        return self.chain.field

    @property
    def code(self) -> GabidulinCode:
        return self.chain.code

    @property
    def m(self) -> int:
        return self.chain.m

    @property
    def shot_length(self) -> int:
        return self.code.length

    @property
    def lifted_length(self) -> int:
        return self.code.length + self.field.degree

    # -- encoding ----------------------------------------------------------

    def random_messages(self, rng: np.random.Generator) -> list:
        out = []
        for outer in self.outers:
            out.append(tuple(int(rng.integers(0, outer.field.size)) for _ in range(outer.k)))
        return out

    def level_contributions(self, messages) -> list:
        """Per level, the n per-shot words contributed by that level."""
        if len(messages) != self.m:
            raise ValueError(f"need {self.m} level messages")
        contribs = []
        for i, (outer, smap, msg) in enumerate(zip(self.outers, self.maps, messages)):
            cw = outer.encode(msg)
            gen = self.chain.coset_code_generator(i)
            contribs.append(tuple(matvec(self.field, gen, smap.to_tuple(s)) for s in cw))
        return contribs

    def encode(self, messages) -> tuple:
        """Encode per-level outer messages into an n-tuple of rank words."""
        shots = [(0,) * self.shot_length for _ in range(self.n)]
        for contrib in self.level_contributions(messages):
            shots = [self.field.vec_add(u, v) for u, v in zip(shots, contrib)]
        return tuple(shots)

    def codewords(self) -> list:
        """All (messages, codeword) pairs (guarded)."""
        if self._codebook is None:
            total = 1
            for outer in self.outers:
                total *= outer.field.size ** outer.k
            if total > ENUM_GUARD:
                raise GuardError(
                    f"codebook of size {total} exceeds the enumeration guard {ENUM_GUARD}"
                )
            spaces = [
                list(itertools.product(outer.field.elements(), repeat=outer.k))
                for outer in self.outers
            ]
            self._codebook = [
                (list(msgs), self.encode(list(msgs)))
                for msgs in itertools.product(*spaces)
            ]
        return self._codebook

    def codeword_underlines(self) -> np.ndarray:
        """Stack of per-shot coordinate matrices, shape (|C|, n, N, M)."""
        if self._underlines is None:
            book = self.codewords()
            out = np.zeros(
                (len(book), self.n, self.shot_length, self.field.degree), dtype=np.int64
            )
            for c, (_, word) in enumerate(book):
                for j, shot in enumerate(word):
                    out[c, j] = self.field.underline(shot)
            self._underlines = out
        return self._underlines

    # -- parameters ---------------------------------------------------------

    def cardinality_logq(self) -> int:
        m_deg = self.field.degree
        return sum(
            m_deg * self.chain.delta_k(i) * self.outers[i].k for i in range(self.m)
        )

    def design_distance(self) -> int:
        """Lower bound on the extended rank distance of the code."""
        return min(
            self.chain.subcode(i).designed_distance * self.outers[i].d_min
            for i in range(self.m)
        )

    def design_subspace_distance(self) -> int:
        return 2 * self.design_distance()

    def correctable_budget(self) -> int:
        """Largest rho + 2*tau with guaranteed exact oracle decoding."""
        return (self.design_subspace_distance() - 2) // 2

    def rate(self) -> Fraction:
        return Fraction(self.cardinality_logq(), self.n * self.shot_length * self.lifted_length)

    def to_json(self) -> dict:
        return {
            "field": field_to_json(self.field),
            "N": self.code.length,
            "K": self.code.dim,
            "Ks": list(self.chain.ks),
            "n": self.n,
            "points": list(self.code.points),
            "outers": [{"n": o.n, "k": o.k} for o in self.outers],
        }

    def __repr__(self):
        return (
            f"MultilevelCodeSpec(N={self.code.length}, Ks={self.chain.ks}, "
            f"n={self.n}, outers={[(o.n, o.k) for o in self.outers]})"
        )


def spec_from_json(doc: dict) -> MultilevelCodeSpec:
    if "special" in doc:
        s = doc["special"]
        spec, _ = special_situation(
            int(s["q"]), int(s["M"]), int(s["N"]), int(s["K"]), int(s["n"]), int(s["d"])
        )
        return spec
    field = field_from_json(doc["field"])
    code = GabidulinCode(field, int(doc["N"]), int(doc["K"]), doc.get("points"))
    chain = PartitionChain(code, doc["Ks"])
    outers = doc["outers"]
    n = int(doc["n"])
    for o in outers:
        if "n" in o and int(o["n"]) != n:
            raise ValueError("outer block length disagrees with the shot count n")
    return MultilevelCodeSpec(chain, n, [int(o["k"]) for o in outers])


def special_situation(q: int, M: int, N: int, K: int, n: int, d: int):
    """Single-coefficient-per-level family tuned to a design distance d.

    Every level peels one generator column (delta_k = 1, so the level
    alphabet is F_{q^M} itself) and the outer dimensions are the largest
    that keep level i's contribution at least d.  Returns (spec, logq)
    where logq = M*K*(n+1) - M * sum_i ceil(d / (N-K+i+1)).
    """
    if not 1 <= K <= N:
        raise ValueError("need 1 <= K <= N")
    if d < 1:
        raise ValueError("design distance must be >= 1")
    if d > n * (N - K + 1):
        raise ValueError(
            f"design distance {d} exceeds n*(N-K+1) = {n * (N - K + 1)}: "
            "the level-0 outer dimension would drop below 1"
        )
    field = ExtensionField(PrimeField(q), degree=M)
    code = GabidulinCode(field, N, K)
    chain = PartitionChain(code, range(K, -1, -1))
    ceils = [math.ceil(d / (N - K + i + 1)) for i in range(K)]
    outer_ks = [n - c + 1 for c in ceils]
    spec = MultilevelCodeSpec(chain, n, outer_ks)
    logq = M * K * (n + 1) - M * sum(ceils)
    assert logq == spec.cardinality_logq()
    return spec, logq


def maximize_bound(q: int, M: int, N: int, n: int, d: int):
    """Inner dimension K in 0..N maximizing the closed-form size bound.

    Infeasible K (design distance unreachable) count as log 0.  Ties go
    to the smaller K.  Returns (best_k, best_logq).
    """
    if d < 1:
        raise ValueError("design distance must be >= 1")
    best_k, best_val = 0, 0
    for k in range(1, N + 1):
        if d > n * (N - k + 1):
            continue
        val = M * k * (n + 1) - M * sum(
            math.ceil(d / (N - k + i + 1)) for i in range(k)
        )
        if val > best_val:
            best_k, best_val = k, val
    return best_k, best_val
