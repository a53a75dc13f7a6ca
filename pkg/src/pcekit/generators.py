"""The elementary PCE channels and (de)composition of channels into them.

For each multi-index label ``a`` there is an elementary channel that keeps
exactly the components commuting with the Pauli string of ``a`` (half of all
components, unless ``a`` is the zero label, which gives the identity).  Any
PCE channel with preserved subspace W equals the composition of the
elementary channels over a basis of W's annihilator under the symplectic
product, and that annihilator basis is the canonical decomposition used here.
"""

from __future__ import annotations

import numpy as np

from . import gf2
from .errors import DimensionMismatchError
from .maps import PceMap, Subspace, compose, map_to_subspace
from .pauli import MultiIndex, _sp_parity, _swap_pairs, symplectic_product_row

__all__ = [
    "generator_map",
    "generator_subspace",
    "local_action",
    "decompose",
    "recompose",
    "reflection_parity",
]


def generator_map(label: MultiIndex) -> PceMap:
    """Bitmask of the elementary channel: keep components commuting with ``label``."""
    keep = (1 - symplectic_product_row(label)).astype(np.uint8)
    tau = int.from_bytes(np.packbits(keep, bitorder="little").tobytes(), "little")
    return PceMap(label.n, tau)


def generator_subspace(label: MultiIndex) -> Subspace:
    """Preserved subspace of the elementary channel (works for any n <= 16).

    This is the symplectic complement of the single label: dimension 2n for
    the zero label, 2n - 1 otherwise.
    """
    if label.code == 0:
        rows = gf2.nullspace([], 2 * label.n)
    else:
        rows = gf2.nullspace([_swap_pairs(label.code, label.n)], 2 * label.n)
    return Subspace(label.n, tuple(rows))


def local_action(label: MultiIndex, k: int) -> int:
    """The single-qubit digit of the label on qubit ``k``.

    The elementary channel acts on qubit ``k`` alone (after tracing out the
    rest) as the single-qubit elementary channel of this digit; the dense
    cross-check lives in the test suite.
    """
    return label.digit(k)


def decompose(channel: PceMap | Subspace) -> list[MultiIndex]:
    """Canonical labels whose elementary channels compose to ``channel``.

    Returns the RREF basis of the annihilator of the preserved subspace under
    the symplectic product — ``2n - K`` labels, empty for the identity
    channel.  Other label sets can give the same channel; this one is the
    deterministic representative.

    Raises:
        NotAChannelError: if a bitmask input is not completely positive.
    """
    if isinstance(channel, Subspace):
        subspace = channel
    else:
        subspace = map_to_subspace(channel)
    rows = [_swap_pairs(v, subspace.n) for v in subspace.basis]
    annihilator = gf2.nullspace(rows, 2 * subspace.n)
    return [MultiIndex(subspace.n, v) for v in annihilator]


def recompose(labels, n: int | None = None) -> PceMap:
    """Fold of `compose` over the elementary channels of ``labels``.

    ``n`` is only needed for an empty label list (identity channel).
    """
    labels = list(labels)
    if not labels:
        if n is None:
            raise ValueError("empty label list needs an explicit qubit count")
        return PceMap.identity(n)
    if n is not None and labels[0].n != n:
        raise DimensionMismatchError(f"labels have n={labels[0].n}, expected {n}")
    out = generator_map(labels[0])
    for label in labels[1:]:
        out = compose(out, generator_map(label))
    return out


def reflection_parity(label: MultiIndex, k: int) -> int:
    """+1 if the elementary channel's pattern is symmetric under the qubit-k
    reflection (digit swap 0<->3, 1<->2), -1 if it is antisymmetric.

    Symmetric means the reflection fixes the bitmask; antisymmetric means it
    complements every entry.  Equivalent to whether the reflection's base
    index (digit 3 at qubit k) is itself a preserved component.
    """
    if not 1 <= k <= label.n:
        raise ValueError(f"qubit index {k} out of range 1..{label.n}")
    base = 3 << (2 * (k - 1))
    return -1 if _sp_parity(label.code, base, label.n) else 1
