"""Reference membership oracle by literal recursive subdivision.

This mirrors the constructions directly: subdivide each surviving cell
into 3, 9, or 27 children, delete the interiors called out by the
construction (middle third; central square; central cube plus the six
face-center cubes; central cube only), and descend into every closed
child containing the query point.  It shares no code with the digit
predicates in :mod:`spongeknots.ternary`, which it exists to check.
"""

from __future__ import annotations

from itertools import product

from .geometry import frac

# removed child offsets, written out literally per construction
_REMOVED = {
    "cantor": frozenset({(1,)}),
    "carpet_face": frozenset({(1, 1)}),
    "sponge": frozenset(
        {
            (1, 1, 1),  # central cube
            (0, 1, 1), (2, 1, 1),  # face centers, x faces
            (1, 0, 1), (1, 2, 1),  # face centers, y faces
            (1, 1, 0), (1, 1, 2),  # face centers, z faces
        }
    ),
    "carpet2": frozenset({(1, 1, 1)}),
}


def oracle_profile(point, kmax: int, space: str) -> list[bool]:
    """Stage 0..kmax membership verdicts by one literal subdivision descent."""
    if space not in _REMOVED:
        raise ValueError(f"unknown space: {space}")
    if kmax < 0:
        raise ValueError("stage must be >= 0")
    removed = _REMOVED[space]
    dim = len(next(iter(removed)))
    coords = tuple(frac(c) for c in point)
    if len(coords) != dim:
        raise ValueError(f"{space} expects {dim} coordinates")
    for c in coords:
        if not (0 <= c <= 1):
            raise ValueError("point outside the unit cell")

    nums = [c.numerator for c in coords]
    dens = [c.denominator for c in coords]
    # a cell at depth t is the per-axis index tuple of [i/3^t, (i+1)/3^t]
    profile = [True]
    alive = {(0,) * dim}
    scale = 1
    for _ in range(kmax):
        scale *= 3
        nxt = set()
        for cell in alive:
            child_axis_options = []
            for ax in range(dim):
                base = cell[ax] * 3
                opts = []
                for o in range(3):
                    i = base + o
                    # closed containment: i/scale <= c <= (i+1)/scale
                    t = nums[ax] * scale
                    if i * dens[ax] <= t <= (i + 1) * dens[ax]:
                        opts.append(i)
                child_axis_options.append(opts)
            for child in product(*child_axis_options):
                offs = tuple(child[ax] - cell[ax] * 3 for ax in range(dim))
                if offs not in removed:
                    nxt.add(child)
        profile.append(bool(nxt))
        if not nxt:
            profile.extend([False] * (kmax - len(profile) + 1))
            break
        alive = nxt
    return profile


def subdivision_oracle(point, k: int, space: str) -> bool:
    """Membership of a rational point in the stage-k prefractal.

    ``point`` is a tuple of rationals matching the dimension of ``space``
    (1 for cantor, 2 for carpet_face, 3 for sponge/carpet2).
    """
    return oracle_profile(point, k, space)[k]
