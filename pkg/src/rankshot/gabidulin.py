"""Gabidulin rank-metric codes.

The generator matrix has entry (i, j) = g_i^(q^j) for evaluation points
g_0..g_{N-1} that are linearly independent over the base field; the code
is the column space, so a message m in F_{q^M}^K encodes to G m, which is
exactly the evaluation of the linearized polynomial sum(m_j x^(q^j)) at
the points.  These codes are maximum rank distance: d_R = N - K + 1.

Two decode paths are provided.  The exhaustive path is the reference
semantics: scan the whole (guarded) codebook and return the argmin of
the decoding objective, which is plain rank distance, or, when reduction
side information is supplied, the subspace distance between the lifted
candidate and the rebuilt received space.  Ties break toward the
codeword with the smaller entry-tuple serialization.  The algebraic path
is an interpolation decoder for rank errors only: it corrects up to
floor((N-K)/2) rank errors and reports failure (None) beyond that.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import GuardError
from .fields import matvec, field_from_json, field_to_json
from .linalg import kernel_field, rank, rank_batch, rref, solve_field

ENUM_GUARD = 1 << 20


class GabidulinCode:
    def __init__(self, field, length: int, dim: int, points=None):
        m = field.degree
        if not 1 <= length <= m:
            raise ValueError(f"length must satisfy 1 <= N <= M, got N={length}, M={m}")
        if not 0 <= dim <= length:
            raise ValueError(f"dimension must satisfy 0 <= K <= N, got K={dim}")
        if points is None:
            points = tuple(field.pow(field.gen, i) for i in range(length))
        else:
            points = tuple(int(p) for p in points)
            if len(points) != length:
                raise ValueError("need exactly N evaluation points")
        q = field.base.size
        if rank(field.underline(points), q) != length:
            raise ValueError("evaluation points are linearly dependent over the base field")
        self.field = field
        self.length = length
        self.dim = dim
        self.points = points
        self.generator = tuple(
            tuple(field.frobenius(g, j) for j in range(dim)) for g in points
        )
        self._codebook = None
        self._underlines = None

    @property
    def designed_distance(self) -> int:
        return self.length - self.dim + 1

    def encode(self, message) -> tuple:
        if len(message) != self.dim:
            raise ValueError(f"message must have length {self.dim}")
        return matvec(self.field, self.generator, message)

    def codewords(self) -> list:
        """All codewords, in lexicographic message order (guarded)."""
        if self._codebook is None:
            count = self.field.size ** self.dim
            if count > ENUM_GUARD:
                raise GuardError(
                    f"codebook of size {count} exceeds the enumeration guard {ENUM_GUARD}"
                )
            self._codebook = [
                self.encode(msg)
                for msg in itertools.product(self.field.elements(), repeat=self.dim)
            ]
        return self._codebook

    def _codeword_underlines(self) -> np.ndarray:
        if self._underlines is None:
            words = self.codewords()
            out = np.zeros((len(words), self.length, self.field.degree), dtype=np.int64)
            for i, w in enumerate(words):
                out[i] = self.field.underline(w)
            self._underlines = out
        return self._underlines

    def min_rank_distance_exhaustive(self) -> int:
        """Minimum rank weight over all nonzero codewords (guarded scan)."""
        if self.dim == 0:
            raise ValueError("the zero code has no nonzero codewords")
        q = self.field.base.size
        und = self._codeword_underlines()
        ranks = rank_batch(und, q)
        words = self.codewords()
        return int(min(r for r, w in zip(ranks, words) if any(w)))

    def decode_bounded(self, received, side_info=None, method: str = "exhaustive"):
        """Decode a word (or reduced word plus side information).

        method="exhaustive" is the reference argmin scan; it always
        returns a codeword.  method="algebraic" is the fast rank-error
        decoder; it returns None outside its radius and does not accept
        side information.
        """
        if len(received) != self.length:
            raise ValueError("received word has the wrong length")
        if method == "exhaustive":
            return self._decode_exhaustive(received, side_info)
        if method == "algebraic":
            if side_info is not None:
                raise ValueError("the algebraic decoder does not take side information")
            return self.decode_rank_errors(received)
        raise ValueError(f"unknown decode method {method!r}")

    def _decode_exhaustive(self, received, side_info):
        from .reduction import reconstruct

        q = self.field.base.size
        words = self.codewords()
        und = self._codeword_underlines()
        if side_info is None:
            ru = self.field.underline(received)
            dists = rank_batch((und - ru[None]) % q, q)
        else:
            w = reconstruct(side_info, r=received)
            R, piv = rref(w, q)
            basis = R[: len(piv)]
            y_rank = len(piv)
            h, p = basis[:, : self.length], basis[:, self.length:]
            hu = np.einsum("ri,cik->crk", h, und) % q
            resid = (p[None, :, :] - hu) % q
            dists = self.length + 2 * rank_batch(resid, q) - y_rank
        best = int(np.min(dists))
        ties = np.flatnonzero(dists == best)
        return words[min(ties, key=lambda i: words[i])]

    def decode_rank_errors(self, received):
        """Interpolation decoder for rank errors.

        Finds linearized polynomials V (q-degree <= t) and W (q-degree
        <= K + t - 1) with V(r_i) = W(g_i) for all points, then recovers
        the message polynomial as the exact left quotient W = V o f.
        Returns the codeword, or None when no codeword lies within
        t = floor((N - K) / 2) rank errors.
        """
        f = self.field
        n, k = self.length, self.dim
        if len(received) != n:
            raise ValueError("received word has the wrong length")
        t = (n - k) // 2
        if t == 0:
            try:
                msg = solve_field(f, self.generator, list(received))
            except ValueError:
                msg = None
            return tuple(received) if msg is not None else None
        rows = []
        for i in range(n):
            row = [f.frobenius(received[i], l) for l in range(t + 1)]
            row += [f.neg(f.frobenius(self.points[i], l)) for l in range(k + t)]
            rows.append(row)
        kern = kernel_field(f, rows)
        if not kern:
            return None
        vec = kern[0]
        v_poly = list(vec[: t + 1])
        w_poly = list(vec[t + 1:])
        msg = _lin_left_divide(f, v_poly, w_poly)
        if msg is None or len(msg) > k:
            return None
        msg = tuple(msg) + (0,) * (k - len(msg))
        cand = self.encode(msg)
        q = f.base.size
        diff = (f.underline(cand) - f.underline(received)) % q
        if rank(diff, q) <= t:
            return cand
        return None

    def to_json(self) -> dict:
        doc = field_to_json(self.field)
        doc.update({"N": self.length, "K": self.dim, "points": list(self.points)})
        return doc

    def __repr__(self):
        return f"GabidulinCode(N={self.length}, K={self.dim}, q^M={self.field.size})"


def code_from_json(doc: dict) -> GabidulinCode:
    field = field_from_json(doc)
    return GabidulinCode(field, int(doc["N"]), int(doc["K"]), doc.get("points"))


def _lin_left_divide(field, v_poly, w_poly):
    """Solve V o f = W in the linearized-composition sense.

    Composition means (V o f)_k = sum over l+s=k of V_l * f_s^(q^l).
    Returns the coefficient list of f, or None when the division is not
    exact (which signals a decoding failure upstream).
    """
    while v_poly and v_poly[-1] == 0:
        v_poly.pop()
    while w_poly and w_poly[-1] == 0:
        w_poly.pop()
    if not v_poly:
        return None
    if not w_poly:
        return []
    dv = len(v_poly) - 1
    df = len(w_poly) - 1 - dv
    if df < 0:
        return None
    m = field.degree
    rem = list(w_poly)
    out = [0] * (df + 1)
    lead_inv = field.inv(v_poly[-1])
    for s in range(df, -1, -1):
        top = rem[dv + s]
        if top == 0:
            continue
        fs = field.frobenius(field.mul(top, lead_inv), (m - dv) % m)
        out[s] = fs
        for l, vl in enumerate(v_poly):
            if vl:
                rem[l + s] = field.sub(rem[l + s], field.mul(vl, field.frobenius(fs, l)))
    if any(rem):
        return None
    while out and out[-1] == 0:
        out.pop()
    return out
