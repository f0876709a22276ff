"""Receivers for the lifted matrix channel.

Two decoders share the reduction front end from .reduction:

* oracle decoders scan an entire codebook and return the codeword whose
  lifted image minimizes the (extended) subspace distance to the
  received row spaces.  They are exact but exponential, and guarantee
  success whenever rho + 2*tau stays below half the design subspace
  distance.

* multistage_decode peels the partition chain level by level: per shot
  it runs the exhaustive inner decoder of the level subcode against the
  rebuilt received space (original erasure/deviation blocks, current
  residual word), extracts the coset leader, decodes the resulting
  symbol vector with the level's outer code, and subtracts the accepted
  contribution before the next level.  Diagnostics record, per stage,
  which shots' inner decisions the outer decoder overruled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GuardError
from .fields import matvec
from .gabidulin import ENUM_GUARD
from .linalg import rank_batch, rref
from .multilevel import MultilevelCodeSpec
from .reduction import ReductionTriple, reduce_received, reconstruct  # noqa: F401

__all__ = [
    "ReductionTriple",
    "reduce_received",
    "reconstruct",
    "oracle_decode_oneshot",
    "oracle_decode_multishot",
    "MultistageResult",
    "multistage_decode",
]


def _lifted_distances(Y, und, q: int) -> np.ndarray:
    """Subspace distances from <Y> to every lifted candidate in the stack.

    und has shape (count, N, M); uses d_S = N + 2 rank(P - H U) - rank(Y)
    with [H | P] the RREF basis of Y.
    """
    n = und.shape[1]
    R, piv = rref(Y, q)
    basis = R[: len(piv)]
    y_rank = len(piv)
    h, p = basis[:, :n], basis[:, n:]
    hu = np.einsum("ri,cik->crk", h, und) % q
    resid = (p[None, :, :] - hu) % q
    return n + 2 * rank_batch(resid, q) - y_rank


def oracle_decode_oneshot(field, Y, codebook):
    """Codeword whose lifted image is subspace-closest to <Y>.

    Ties break toward the smaller entry-tuple serialization.  The
    codebook is any enumerable collection of rank words.
    """
    words = list(codebook)
    if len(words) > ENUM_GUARD:
        raise GuardError("codebook exceeds the enumeration guard")
    q = field.base.size
    und = np.zeros((len(words), len(words[0]), field.degree), dtype=np.int64)
    for i, w in enumerate(words):
        und[i] = field.underline(w)
    dists = _lifted_distances(Y, und, q)
    best = int(np.min(dists))
    ties = np.flatnonzero(dists == best)
    return words[min(ties, key=lambda i: tuple(words[i]))]


def oracle_decode_multishot(Ys, spec: MultilevelCodeSpec):
    """Codeword minimizing the extended subspace distance to the shots."""
    if len(Ys) != spec.n:
        raise ValueError(f"need {spec.n} received matrices")
    q = spec.field.base.size
    book = spec.codewords()
    und = spec.codeword_underlines()
    total = np.zeros(len(book), dtype=np.int64)
    for j, y in enumerate(Ys):
        total += _lifted_distances(y, und[:, j], q)
    best = int(np.min(total))
    ties = np.flatnonzero(total == best)
    pick = min(ties, key=lambda i: book[i][1])
    return book[pick][1]


@dataclass
class MultistageResult:
    ok: bool
    stage_failed: int | None
    messages: list | None          # per level, outer message tuples
    outer_codewords: list | None   # per level, accepted outer codewords
    wrong_inner_counts: list       # per stage, shots overruled by the outer code
    wrong_inner_shots: list        # per stage, the overruled shot indices
    erasure_counts: list           # per stage, shots surfaced as erasures
    inner_leaders: list            # per stage, the per-shot inner coset decisions
    inner_messages: list           # per stage, the per-shot coset coefficient tuples

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "stage_failed": self.stage_failed,
            "messages": None if self.messages is None
            else [[int(s) for s in msg] for msg in self.messages],
            "diagnostics": {
                "wrong_inner_counts": list(self.wrong_inner_counts),
                "erasure_counts": list(self.erasure_counts),
            },
        }


def multistage_decode(Ys, spec: MultilevelCodeSpec, outer_method: str = "exhaustive",
                      inner_method: str = "exhaustive") -> MultistageResult:
    """Hard-decision multistage decoding of the multilevel code.

    Stage i inner-decodes each shot's residual word within the level
    subcode R_i, hands the per-shot coset symbols to outer code i, and
    subtracts the accepted contribution from every residual:
    r^(i+1) = r^(i) - v_hat^(i).  A stage whose outer decoder fails ends
    the run with ok=False and that stage index.

    The reference inner path is the exhaustive argmin against the
    reconstruction built from the shot's original (L, E) blocks and the
    current residual; it always commits to a decision, so no erasures
    arise.  inner_method="algebraic" uses the fast rank-error decoder
    instead (no side information); its failures are handed to the outer
    decoder as erasures.
    """
    if len(Ys) != spec.n:
        raise ValueError(f"need {spec.n} received matrices")
    field = spec.field
    chain = spec.chain
    triples = [reduce_received(field, y) for y in Ys]
    residuals = [t.r for t in triples]

    messages, chats = [], []
    wrong_counts, wrong_shots, erasure_counts = [], [], []
    leaders_all, inner_msgs_all = [], []
    for i in range(spec.m):
        sub = chain.subcode(i)
        leaders, mtuples, erased = [], [], []
        for j in range(spec.n):
            if inner_method == "exhaustive":
                decided = sub.decode_bounded(residuals[j], side_info=triples[j])
            else:
                decided = sub.decode_bounded(residuals[j], method=inner_method)
            if decided is None:
                erased.append(j)
                leaders.append(None)
                mtuples.append(None)
                continue
            leader, mtup = chain.coset_leader(i, decided)
            leaders.append(leader)
            mtuples.append(mtup)
        leaders_all.append(leaders)
        inner_msgs_all.append(mtuples)
        erasure_counts.append(len(erased))
        zero = (0,) * chain.delta_k(i)
        symbols = tuple(
            spec.maps[i].to_symbol(t if t is not None else zero) for t in mtuples
        )
        msg = spec.outers[i].decode(symbols, erasures=tuple(erased), method=outer_method)
        if msg is None:
            wrong_counts.append(None)
            wrong_shots.append(None)
            return MultistageResult(
                ok=False, stage_failed=i, messages=None, outer_codewords=None,
                wrong_inner_counts=wrong_counts, wrong_inner_shots=wrong_shots,
                erasure_counts=erasure_counts, inner_leaders=leaders_all,
                inner_messages=inner_msgs_all,
            )
        chat = spec.outers[i].encode(msg)
        gen = chain.coset_code_generator(i)
        v_hats = [matvec(field, gen, spec.maps[i].to_tuple(s)) for s in chat]
        overruled = tuple(
            j for j in range(spec.n)
            if leaders[j] is not None and leaders[j] != v_hats[j]
        )
        wrong_counts.append(len(overruled))
        wrong_shots.append(overruled)
        messages.append(tuple(msg))
        chats.append(chat)
        residuals = [field.vec_sub(residuals[j], v_hats[j]) for j in range(spec.n)]

    return MultistageResult(
        ok=True, stage_failed=None, messages=messages, outer_codewords=chats,
        wrong_inner_counts=wrong_counts, wrong_inner_shots=wrong_shots,
        erasure_counts=erasure_counts, inner_leaders=leaders_all,
        inner_messages=inner_msgs_all,
    )
