"""Moebius transformations of R^n ∪ {∞} as chains of primitive maps.

A map is an ordered chain of primitives (translation, positive scaling,
orthogonal map, unit-sphere inversion) applied left to right.  Keeping the
chain instead of a closed-form matrix makes the inverse a syntactic
reversal and the evaluation exact by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .geometry import INFINITY, is_infinity

_TINY_NORM_SQ = 1e-300


@dataclass(frozen=True, eq=False)
class Translate:
    v: np.ndarray


@dataclass(frozen=True, eq=False)
class Scale:
    factor: float


@dataclass(frozen=True, eq=False)
class Orthogonal:
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class Invert:
    """x -> x/|x|^2 with 0 and ∞ exchanged."""


def _prim_dim(prim):
    if isinstance(prim, Translate):
        return prim.v.size
    if isinstance(prim, Orthogonal):
        return prim.matrix.shape[0]
    return None


class MoebiusMap:
    """Immutable composition chain of Moebius primitives acting on R^n ∪ {∞}."""

    def __init__(self, chain, dim: int):
        chain = tuple(chain)
        for prim in chain:
            if isinstance(prim, Translate):
                v = np.asarray(prim.v, dtype=float)
                if v.size != dim or not np.all(np.isfinite(v)):
                    raise PreconditionError("translation vector must be finite of the map dimension")
                object.__setattr__(prim, "v", v)
            elif isinstance(prim, Scale):
                if not (prim.factor > 0.0 and np.isfinite(prim.factor)):
                    raise PreconditionError("scale factor must be a positive finite real")
            elif isinstance(prim, Orthogonal):
                q = np.asarray(prim.matrix, dtype=float)
                if q.shape != (dim, dim):
                    raise PreconditionError("orthogonal matrix shape must match the map dimension")
                if np.max(np.abs(q.T @ q - np.eye(dim))) > 1e-12:
                    raise PreconditionError("matrix is not orthogonal within 1e-12")
                object.__setattr__(prim, "matrix", q)
            elif not isinstance(prim, Invert):
                raise PreconditionError(f"unknown primitive {prim!r}")
        self.chain = chain
        self.dim = dim

    def __call__(self, x):
        return apply(self, x)


def identity_map(dim: int) -> MoebiusMap:
    return MoebiusMap((), dim)


def apply(f: MoebiusMap, x):
    """Image of a point of R^n ∪ {∞} under the chain."""
    if not is_infinity(x):
        x = np.asarray(x, dtype=float)
        if x.size != f.dim:
            raise PreconditionError("point dimension does not match the map")
    for prim in f.chain:
        if is_infinity(x):
            if isinstance(prim, Invert):
                x = np.zeros(f.dim)
            continue
        if isinstance(prim, Translate):
            x = x + prim.v
        elif isinstance(prim, Scale):
            x = x * prim.factor
        elif isinstance(prim, Orthogonal):
            x = prim.matrix @ x
        else:
            n2 = float(x @ x)
            if n2 < _TINY_NORM_SQ:
                x = INFINITY
            else:
                x = x / n2
    return x


def apply_batch(f: MoebiusMap, P: np.ndarray) -> np.ndarray:
    """Apply the chain to rows of P; rows hitting the inversion pole become inf."""
    P = np.array(P, dtype=float)
    at_inf = np.zeros(P.shape[0], dtype=bool)
    for prim in f.chain:
        if isinstance(prim, Translate):
            P[~at_inf] += prim.v
        elif isinstance(prim, Scale):
            P[~at_inf] *= prim.factor
        elif isinstance(prim, Orthogonal):
            P[~at_inf] = P[~at_inf] @ prim.matrix.T
        else:
            n2 = np.einsum("ij,ij->i", P, P)
            pole = (~at_inf) & (n2 < _TINY_NORM_SQ)
            finite = (~at_inf) & ~pole
            P[finite] /= n2[finite, None]
            P[at_inf] = 0.0
            at_inf = pole
    P[at_inf] = np.inf
    return P


def compose(f: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """The map x -> f(g(x))."""
    if f.dim != g.dim:
        raise PreconditionError("cannot compose maps of different dimensions")
    return MoebiusMap(g.chain + f.chain, f.dim)


def _inverted(prim):
    if isinstance(prim, Translate):
        return Translate(-prim.v)
    if isinstance(prim, Scale):
        return Scale(1.0 / prim.factor)
    if isinstance(prim, Orthogonal):
        return Orthogonal(prim.matrix.T.copy())
    return Invert()


def inverse(f: MoebiusMap) -> MoebiusMap:
    return MoebiusMap(tuple(_inverted(p) for p in reversed(f.chain)), f.dim)


def is_similarity(f: MoebiusMap) -> bool:
    """True when the chain contains no inversion (so it fixes ∞)."""
    return not any(isinstance(p, Invert) for p in f.chain)


def similarity_scale(f: MoebiusMap) -> float:
    """Product of the scale factors of an inversion-free chain."""
    if not is_similarity(f):
        raise PreconditionError("chain contains an inversion")
    out = 1.0
    for p in f.chain:
        if isinstance(p, Scale):
            out *= p.factor
    return out


def canonical_h2b(n: int) -> MoebiusMap:
    """The standard Moebius map taking the upper half space onto the unit ball.

    Realizes f(z) = -e_n + 2 (z + e_n) / |z + e_n|^2 as the chain
    translate(e_n), invert, scale(2), translate(-e_n).
    """
    if n < 2:
        raise PreconditionError("dimension must be at least 2")
    en = np.zeros(n)
    en[n - 1] = 1.0
    return MoebiusMap((Translate(en.copy()), Invert(), Scale(2.0), Translate(-en)), n)


def to_json_chain(f: MoebiusMap) -> list:
    out = []
    for p in f.chain:
        if isinstance(p, Translate):
            out.append({"op": "translate", "v": [float(c) for c in p.v]})
        elif isinstance(p, Scale):
            out.append({"op": "scale", "factor": float(p.factor)})
        elif isinstance(p, Orthogonal):
            out.append({"op": "orthogonal", "matrix": [[float(c) for c in row] for row in p.matrix]})
        else:
            out.append({"op": "invert"})
    return out


def from_json_chain(data: list, dim: int | None = None) -> MoebiusMap:
    chain = []
    for entry in data:
        op = entry.get("op")
        if op == "translate":
            v = np.asarray(entry["v"], dtype=float)
            chain.append(Translate(v))
            dim = dim or v.size
        elif op == "scale":
            chain.append(Scale(float(entry["factor"])))
        elif op == "orthogonal":
            q = np.asarray(entry["matrix"], dtype=float)
            chain.append(Orthogonal(q))
            dim = dim or q.shape[0]
        elif op == "invert":
            chain.append(Invert())
        else:
            raise PreconditionError(f"unknown chain op {op!r}")
    if dim is None:
        raise PreconditionError("cannot infer the map dimension from the chain")
    return MoebiusMap(chain, dim)


def load_map(path: str, dim: int | None = None) -> MoebiusMap:
    with open(path) as fh:
        return from_json_chain(json.load(fh), dim)


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    """Orthonormalize a random Gaussian matrix (deterministic given the rng state)."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_moebius(rng: np.random.Generator, n: int = 2, pole_clear: float | None = None) -> MoebiusMap:
    """Random chain: rigid motion, scaling and optionally an inversion.

    When ``pole_clear`` is given the preimage of ∞ is kept at distance
    > pole_clear from the origin so that the image of a domain inside
    B^n(pole_clear) stays a bounded subdomain of R^n.
    """
    chain = []
    if pole_clear is not None:
        u = rng.standard_normal(n)
        u /= np.linalg.norm(u)
        v = u * pole_clear * (1.3 + 2.0 * rng.random())
        chain.append(Translate(-v))  # pole sits at v
        chain.append(Invert())
    chain.append(Orthogonal(random_orthogonal(rng, n)))
    chain.append(Scale(float(np.exp(rng.uniform(np.log(0.2), np.log(5.0))))))
    chain.append(Translate(rng.standard_normal(n)))
    return MoebiusMap(chain, n)
