"""Mutable working form of an arc graph used while cutting and regluing.

A draft keeps windows as lists of arbitrary hashable arc keys and corners as
lists of region keys; ``corners[b][k]`` is the boundary stretch after slot
``k`` of window ``b`` (the last one wraps around through the marked point).
Regions carry their Euler characteristic rather than a genus so that region
surgery can be done by plain bookkeeping; the genus is recovered on
:meth:`Draft.finish`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable

from .errors import GlueError


class Draft:
    def __init__(self, windows, corners, chi, weights=None, gaps=None, gap_star=None):
        self.windows: list[list[Hashable]] = [list(w) for w in windows]
        self.corners: list[list[Hashable]] = [list(c) for c in corners]
        self.chi: dict[Hashable, int] = dict(chi)
        self.weights: dict[Hashable, Fraction] | None = None if weights is None else dict(weights)
        # widths of the corners of window 0; gap_star is the part of the marked
        # corner that precedes the first arc
        self.gaps: list[Fraction] | None = None if gaps is None else list(gaps)
        self.gap_star: Fraction | None = gap_star

    @classmethod
    def from_graph(cls, graph, weights=None, gaps=None, gap_star=None):
        windows = [[graph.arc_at(b, k) for k in range(len(w))] for b, w in enumerate(graph.partner)]
        corners = [list(c) for c in graph.corner_region]
        chi = {r: graph.region_chi(r) for r in range(graph.region_count)}
        w = None if weights is None else dict(enumerate(weights))
        return cls(windows, corners, chi, w, gaps, gap_star)

    def copy(self):
        return Draft(self.windows, self.corners, self.chi, self.weights, self.gaps, self.gap_star)

    # -- combinatorics ----------------------------------------------------

    def positions(self):
        pos: dict[Hashable, list[tuple[int, int]]] = {}
        for b, w in enumerate(self.windows):
            for k, key in enumerate(w):
                pos.setdefault(key, []).append((b, k))
        for key, p in pos.items():
            if len(p) != 2:
                raise GlueError(f"arc {key!r} has {len(p)} endpoints")
        return pos

    def orbits(self):
        """Cycles of the corner successor map, as lists of (boundary, slot)."""
        pos = self.positions()

        def partner(b, k):
            p, q = pos[self.windows[b][k]]
            return q if p == (b, k) else p

        seen = set()
        out = []
        for b, w in enumerate(self.windows):
            for k in range(len(w)):
                if (b, k) in seen:
                    continue
                orbit = []
                c = (b, k)
                while c not in seen:
                    seen.add(c)
                    orbit.append(c)
                    cb, ck = c
                    c = partner(cb, (ck + 1) % len(self.windows[cb]))
                out.append(orbit)
        return out

    def is_marked(self, corner):
        b, k = corner
        return k == len(self.windows[b]) - 1

    def _corner_width(self, corner):
        b, k = corner
        if b != 0 or self.gaps is None:
            return Fraction(0)
        width = self.gaps[k]
        if self.is_marked(corner):
            width += self.gap_star
        return width

    def find_parallel(self, respect_gaps=False):
        """Return ``(keep, drop, rectangle_region)`` for some parallel pair, or None."""
        by_region: dict[Hashable, list[list[tuple[int, int]]]] = {}
        for orbit in self.orbits():
            by_region.setdefault(self.corners[orbit[0][0]][orbit[0][1]], []).append(orbit)
        for region, orbits in by_region.items():
            if len(orbits) != 1 or self.chi[region] != 1:
                continue
            (orbit,) = orbits
            if len(orbit) != 2 or any(self.is_marked(c) for c in orbit):
                continue
            if respect_gaps and any(self._corner_width(c) > 0 for c in orbit):
                continue
            (b, k), _ = orbit
            left, right = self.windows[b][k], self.windows[b][k + 1]
            if left == right:
                continue
            return left, right, region
        return None

    def remove_arc(self, key, region):
        """Delete arc ``key`` together with the corners of ``region`` beside it.

        ``region`` must be a rectangle bounded by ``key`` and a parallel arc, so
        the dropped corners carry no width worth keeping.
        """
        for b in range(len(self.windows)):
            while key in self.windows[b]:
                k = self.windows[b].index(key)
                m = len(self.windows[b])
                if k != m - 1 and self.corners[b][k] == region:
                    drop = k
                elif k != 0 and self.corners[b][k - 1] == region:
                    drop = k - 1
                else:
                    raise GlueError(f"arc {key!r} is not a side of region {region!r}")
                del self.windows[b][k]
                del self.corners[b][drop]
                if b == 0 and self.gaps is not None:
                    del self.gaps[drop]

    def consolidate(self, respect_gaps=False):
        while True:
            found = self.find_parallel(respect_gaps)
            if found is None:
                return
            keep, drop, region = found
            if self.weights is not None:
                self.weights[keep] += self.weights.pop(drop)
            self.remove_arc(drop, region)
            del self.chi[region]

    def delete_arc(self, key):
        """Erase an arc; the regions on its two sides merge across the erased band."""
        pos = self.positions()[key]
        b, k = pos[0]
        m = len(self.windows[b])
        sides = {self.corners[b][(k - 1) % m], self.corners[b][k]}
        merged = sides.pop()
        # band glued to both sides along its two long edges
        chi = self.chi.pop(merged) - 1
        for other in sides:
            chi += self.chi.pop(other)
        self.chi[merged] = chi
        for b, k in sorted(pos, key=lambda p: (p[0], -p[1])):
            if b == 0 and self.gaps is not None:
                if k == 0:
                    self.gap_star += self.gaps[0]
                else:
                    self.gaps[k - 1] += self.gaps[k]
                del self.gaps[k]
            del self.windows[b][k]
            del self.corners[b][k]
        # every corner touching the erased arc belongs to one of the side regions
        for b in range(len(self.corners)):
            self.corners[b] = [merged if c in sides else c for c in self.corners[b]]
        if self.weights is not None:
            self.weights.pop(key, None)

    # -- output -----------------------------------------------------------

    def finish(self):
        """Canonicalize into ``(ArcGraph, weights, gaps, gap_star)``.

        ``weights`` is a tuple indexed by canonical arc index (or None), ``gaps``
        likewise per window-0 slot.
        """
        from .arcgraph import ArcGraph

        if all(not w for w in self.windows):
            if len(self.windows) != 1 or len(self.chi) != 1:
                raise GlueError("an empty foliation must live on a single boundary")
            (chi,) = self.chi.values()
            genus2 = 1 - chi
            if genus2 < 0 or genus2 % 2:
                raise GlueError(f"capped region has impossible Euler characteristic {chi}")
            return ArcGraph.empty(genus2 // 2), (), (), self.gap_star

        pos = self.positions()
        # canonical arc order: first half-edge in (boundary, slot) order
        first = sorted(pos, key=lambda key: min(pos[key]))
        arc_index = {key: i for i, key in enumerate(first)}
        partner = []
        for b, w in enumerate(self.windows):
            row = []
            for k, key in enumerate(w):
                p, q = pos[key]
                row.append(q if p == (b, k) else p)
            partner.append(tuple(row))

        orbit_count: dict[Hashable, int] = {}
        for orbit in self.orbits():
            regions = {self.corners[b][k] for b, k in orbit}
            if len(regions) != 1:
                raise GlueError(f"face orbit {orbit} spans several regions {regions}")
            r = regions.pop()
            orbit_count[r] = orbit_count.get(r, 0) + 1
        stray = set(self.chi) - set(orbit_count)
        if stray:
            raise GlueError(f"regions {stray} lost all their boundary cycles")

        rename: dict[Hashable, int] = {}
        corner_region = []
        for row in self.corners:
            out = []
            for r in row:
                if r not in rename:
                    rename[r] = len(rename)
                out.append(rename[r])
            corner_region.append(tuple(out))
        genus = [0] * len(rename)
        for r, idx in rename.items():
            g2 = 2 - self.chi[r] - orbit_count[r]
            if g2 < 0 or g2 % 2:
                raise GlueError(
                    f"region {r!r}: chi={self.chi[r]} with {orbit_count[r]} boundary cycles"
                )
            genus[idx] = g2 // 2
        graph = ArcGraph(tuple(partner), tuple(corner_region), tuple(genus))

        weights = None
        if self.weights is not None:
            weights = [None] * len(first)
            for key, i in arc_index.items():
                weights[i] = self.weights[key]
            weights = tuple(weights)
        gaps = None
        if self.gaps is not None:
            gaps = tuple(self.gaps)
        return graph, weights, gaps, self.gap_star
