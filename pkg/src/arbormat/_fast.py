"""Batched integer kernels for the sweep harness.

Everything here is exact int64 arithmetic vectorized over an instance batch
(axis 0).  Inputs are transition matrices with entries in {-1, 0, 1}; all
intermediate magnitudes are bounded well below 2**63, so numpy int64 gives
the same answers as arbitrary-precision arithmetic:

* Berkowitz intermediates: Toeplitz entries are R . M^k . C with |entries|<=1,
  so at most n**(n-1); the running vector holds characteristic-polynomial
  coefficients of principal submatrices, at most C(n,k) * k**(k/2); their
  products stay below 1e15 for n <= 10.
* Geometric-sum iterates: |(A^k)_ij| <= n**(k-1) * n, and the Horner
  accumulator adds 1 per step, so entries stay below (n+1) * n**n.
* Witness kernels additionally gate on observed |entries| <= 1 before any
  charpoly/adjugate work and report out-of-range batches for the exact
  fallback path.

The sister implementations in :mod:`arbormat.algebra` are arbitrary
precision; the test suite asserts agreement between both routes.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

_BATCH_N_CAP = 10  # int64 bound argument above holds through n = 10


def _check_small(n: int):
    if n > _BATCH_N_CAP:
        raise ValueError(f"batched kernels support n <= {_BATCH_N_CAP}, got {n}")


def batched_charpoly(mats: np.ndarray) -> np.ndarray:
    """Characteristic polynomials det(xI - M) of a stack of small integer
    matrices; returns coefficients ascending (constant term first).

    Requires |entries| <= 1 (see module bound analysis)."""
    b, n, _ = mats.shape
    _check_small(n)
    if np.abs(mats).max(initial=0) > 1:
        raise ValueError("batched charpoly requires entries in {-1,0,1}")
    mats = mats.astype(np.int64, copy=False)
    vec = np.ones((b, 1), dtype=np.int64)
    for m in range(1, n + 1):
        t = np.empty((b, m + 1), dtype=np.int64)
        t[:, 0] = 1
        t[:, 1] = -mats[:, m - 1, m - 1]
        if m >= 2:
            r = mats[:, m - 1, : m - 1]
            v = mats[:, : m - 1, m - 1]
            sub = mats[:, : m - 1, : m - 1]
            t[:, 2] = -np.einsum("bi,bi->b", r, v)
            for k in range(3, m + 1):
                v = np.einsum("bij,bj->bi", sub, v)
                t[:, k] = -np.einsum("bi,bi->b", r, v)
        new = np.zeros((b, m + 1), dtype=np.int64)
        for i in range(m + 1):
            for j in range(max(0, i - m), min(i, m - 1) + 1):
                new[:, i] += t[:, i - j] * vec[:, j]
        vec = new
    return vec[:, ::-1]


def batched_geometric_sum_zero(mats: np.ndarray) -> np.ndarray:
    """Whether I + A + ... + A^n vanishes, per batch element."""
    b, n, _ = mats.shape
    _check_small(n)
    acc = np.broadcast_to(np.eye(n, dtype=np.int64), (b, n, n)).copy()
    diag = np.arange(n)
    for _ in range(n):
        acc = mats @ acc
        acc[:, diag, diag] += 1
    return np.all(acc == 0, axis=(1, 2))


def batched_gf2_nonderogatory(mats: np.ndarray) -> np.ndarray:
    """Whether I, M, ..., M^(n-1) are linearly independent over GF(2).

    Together with an all-ones mod-2 characteristic polynomial this pins the
    invariant factor list to the single polynomial 1 + x + ... + x^n."""
    b, n, _ = mats.shape
    _check_small(n)
    m2 = (np.abs(mats) & 1).astype(np.int64)
    power = np.broadcast_to(np.eye(n, dtype=np.int64), (b, n, n)).copy()
    vecs = np.empty((b, n, n * n), dtype=np.uint8)
    for k in range(n):
        vecs[:, k, :] = (power & 1).reshape(b, n * n)
        if k + 1 < n:
            power = (power @ m2) & 1
    packed = np.packbits(vecs, axis=2)
    out = np.empty(b, dtype=bool)
    for idx in range(b):
        basis = []
        ok = True
        for k in range(n):
            row = int.from_bytes(packed[idx, k].tobytes(), "big")
            for known in basis:
                reduced = row ^ known
                if reduced < row:
                    row = reduced
            if row == 0:
                ok = False
                break
            basis.append(row)
        out[idx] = ok
    return out


def batched_path_image_ok(
    spv: np.ndarray, images: np.ndarray, mats: np.ndarray
) -> np.ndarray:
    """Per instance: the matrix transports every signed path vector of (u, w)
    to that of (f(u), f(w)).

    spv: (v+1, v+1, n) signed path table, images: (B, v+1) with images[b, u]
    = f(u), mats: (B, n, n)."""
    lhs = np.einsum("pqi,bij->bpqj", spv[1:, 1:].astype(np.int64), mats)
    fu = images[:, 1:]
    rhs = spv[fu[:, :, None], fu[:, None, :]].astype(np.int64)
    return np.all(lhs == rhs, axis=(1, 2, 3))


def batched_uniform_sign(mats: np.ndarray) -> np.ndarray:
    """Per instance: every row carries a single sign."""
    has_pos = (mats > 0).any(axis=2)
    has_neg = (mats < 0).any(axis=2)
    return ~(has_pos & has_neg).any(axis=1)


def batched_petrie(mats: np.ndarray) -> np.ndarray:
    """Per instance: all entries in {-1,0,1}, each row's nonzero support is
    contiguous and single-signed."""
    b, r, n = mats.shape
    small = (np.abs(mats) <= 1).all(axis=(1, 2))
    nz = mats != 0
    has = nz.any(axis=2)
    first = nz.argmax(axis=2)
    last = n - 1 - nz[:, :, ::-1].argmax(axis=2)
    count = nz.sum(axis=2)
    contiguous = np.where(has, (last - first + 1) == count, True)
    single = ~((mats > 0).any(axis=2) & (mats < 0).any(axis=2))
    return small & (contiguous & single).all(axis=1)


def batched_witness(mats: np.ndarray, seeds: np.ndarray):
    """Iterate seed row vectors under w -> w.A and check the basis claims.

    Returns (gate, det, companion_ok, conjugation_ok):
      gate          all iterate coordinates stayed in {-1,0,1}; the other
                    outputs are only meaningful where gate holds
      det           determinant of the stacked iterate matrix Mf
      companion_ok  Mf.A == C.Mf, via row shifting (rows of Mf.A are the
                    shifted iterates; the last row of C.Mf is -sum of rows)
      conjugation_ok  Mf.A.adj(Mf) == det(Mf).C, the denominator-cleared form
                    of Mf.A.Mf^-1 == C over the rationals
    """
    b, n, _ = mats.shape
    _check_small(n)
    rows = [seeds.astype(np.int64)]
    w = rows[0]
    for _ in range(n - 1):
        w = np.einsum("bi,bij->bj", w, mats)
        rows.append(w)
    mf = np.stack(rows, axis=1)
    gate = np.abs(mf).max(axis=(1, 2)) <= 1
    w_n = np.einsum("bi,bij->bj", rows[-1], mats)
    companion_ok = np.all(w_n == -mf.sum(axis=1), axis=1)

    safe_mf = np.where(gate[:, None, None], mf, 0)
    cp = batched_charpoly(safe_mf)
    det = cp[:, 0] if n % 2 == 0 else -cp[:, 0]

    # adj(M) = (-1)^(n+1) * sum_{k=1..n} c_k M^(k-1), ascending coefficients c
    powers = np.broadcast_to(np.eye(n, dtype=np.int64), (b, n, n)).copy()
    adj = np.zeros_like(safe_mf)
    for k in range(1, n + 1):
        adj += cp[:, k, None, None] * powers
        if k < n:
            powers = powers @ safe_mf
    if n % 2 == 0:
        adj = -adj
    comp = companion_int(n)
    lhs = safe_mf @ mats @ adj
    rhs = det[:, None, None] * comp[None, :, :]
    conjugation_ok = np.all(lhs == rhs, axis=(1, 2))
    return gate, det, companion_ok, conjugation_ok


def companion_int(n: int) -> np.ndarray:
    comp = np.zeros((n, n), dtype=np.int64)
    comp[np.arange(n - 1), np.arange(1, n)] = 1
    comp[n - 1, :] = -1
    return comp


@lru_cache(maxsize=8)
def cycle_images(v: int) -> np.ndarray:
    """All single v-cycles as image arrays: out[b, u] = f(u); column 0 unused."""
    if v > 10:
        raise ValueError("refusing to materialize more than 9! cycle images")
    perms = np.array(
        list(itertools.permutations(range(2, v + 1))), dtype=np.int64
    ).reshape(-1, v - 1)
    b = perms.shape[0]
    seq = np.concatenate([np.ones((b, 1), dtype=np.int64), perms], axis=1)
    nxt = np.roll(seq, -1, axis=1)
    images = np.zeros((b, v + 1), dtype=np.int64)
    np.put_along_axis(images, seq, nxt, axis=1)
    return images


def signed_path_table(tree) -> np.ndarray:
    """(v+1, v+1, n) table of signed path vectors under canonical orientation."""
    from .trees import Orientation

    v = tree.vertex_count
    n = tree.edge_count
    canonical = Orientation.canonical(n)
    table = np.zeros((v + 1, v + 1, n), dtype=np.int8)
    for u in range(1, v + 1):
        for w in range(1, v + 1):
            if u != w:
                table[u, w] = tree.signed_path_vector(canonical, u, w)
    return table


def orient_table(table: np.ndarray, bits: int, n: int) -> np.ndarray:
    """Apply an orientation bitmask: flipping edge k negates coordinate k."""
    signs = np.array(
        [-1 if (bits >> k) & 1 else 1 for k in range(n)], dtype=np.int8
    )
    return table * signs[None, None, :]


def oriented_endpoint_arrays(tree, bits: int):
    first, second = [], []
    for k, (a, b) in enumerate(tree.edges):
        if (bits >> k) & 1:
            a, b = b, a
        first.append(a)
        second.append(b)
    return np.array(first), np.array(second)


def build_oriented_batch(
    table_o: np.ndarray, images: np.ndarray, first: np.ndarray, second: np.ndarray
) -> np.ndarray:
    """Stack of oriented transition matrices: row i of instance b is the
    signed path vector from f_b(first_i) to f_b(second_i)."""
    return table_o[images[:, first], images[:, second], :].astype(np.int64)


def iterate_images(images: np.ndarray, start: int, steps: int) -> np.ndarray:
    """f^steps(start) per batch element."""
    b = images.shape[0]
    col = np.full(b, start, dtype=np.int64)
    rows = np.arange(b)
    for _ in range(steps):
        col = images[rows, col]
    return col
