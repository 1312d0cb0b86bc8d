"""
Combinatorial model of the natural p-tetrahedron triangulation of a
(p,q)-lens space.

The lens space is built from a suspension of a p-gon: two cone points
(the north and south poles, joined by the vertical axis edge Ev), p
equator vertices, and one tetrahedron over each p-gon side.  Tetrahedron
i spans the poles and the equator vertices i and i+1.  Its upper cone
face is glued to the lower cone face of tetrahedron i+q by a twist of q
steps composed with a reflection through the equator plane, so the
gluing is a mirror map.  All horizontal p-gon sides become one edge Eh,
and the slanted edges fall into p classes e_1 .. e_p, where e_i runs
from the north pole to equator vertex i and, via the gluing, from the
south pole to equator vertex i+q.

Everything downstream (matching matrices, surface reconstruction) works
from this module's incidence data, so conventions are centralized here:

* tetrahedra are indexed 1..p and all index arithmetic is mod p with
  canonical representatives in 1..p;
* local corners of a tetrahedron are TOP (north pole), BOT (south
  pole), LEFT (equator vertex i), RIGHT (equator vertex i+1);
* the three quad types of tetrahedron i are numbered 1..3: type 1
  separates Ev from Eh, type 2 separates e_{i+1} from e_{i-q}, type 3
  separates e_i from e_{i-(q-1)};
* a face of a tetrahedron is named by its opposite corner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParams

# Local corner labels of one tetrahedron.
TOP, BOT, LEFT, RIGHT = 0, 1, 2, 3
CORNERS = (TOP, BOT, LEFT, RIGHT)
CORNER_NAMES = {TOP: "top", BOT: "bot", LEFT: "left", RIGHT: "right"}

# The six local edges, and the partition pairs of the three quad types.
# A quad of a given type is disjoint from the two edges of its partition
# pairs and crosses the other four local edges once each.
LOCAL_EDGES = tuple(
    frozenset(e)
    for e in ((TOP, BOT), (LEFT, RIGHT), (TOP, LEFT), (TOP, RIGHT),
              (BOT, LEFT), (BOT, RIGHT))
)

QUAD_PAIRS = {
    1: (frozenset((TOP, BOT)), frozenset((LEFT, RIGHT))),
    2: (frozenset((TOP, RIGHT)), frozenset((BOT, LEFT))),
    3: (frozenset((TOP, LEFT)), frozenset((BOT, RIGHT))),
}
PAIR_TO_QUAD = {pair: j for j, pairs in QUAD_PAIRS.items() for pair in pairs}
QUAD_TYPES = (1, 2, 3)


@dataclass(frozen=True)
class LensParams:
    """Validated parameters (p, q) of a lens space, gcd(p,q)=1."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise InvalidParams(f"p must be at least 2, got {self.p}")
        if not 1 <= self.q <= self.p - 1:
            raise InvalidParams(
                f"q must lie in [1, p-1] = [1, {self.p - 1}], got {self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise InvalidParams(
                f"p and q must be coprime, got gcd({self.p},{self.q}) = "
                f"{math.gcd(self.p, self.q)}")


@dataclass(frozen=True)
class FaceClass:
    """One glued face of the triangulation.

    ``sides`` holds the two (tetrahedron, face) slots, a face being named
    by its opposite corner.  ``vertex_map`` sends local corners of the
    first slot's face to local corners of the second slot's face.
    ``mirror`` records whether the identification reverses orientation
    (true for the cone-face gluings, false for the internal vertical
    faces of the suspension).
    """

    label: str
    sides: tuple[tuple[int, int], tuple[int, int]]
    vertex_map: dict[int, int]
    mirror: bool

    def corners(self):
        """(corner on side 0, matched corner on side 1) pairs, sorted."""
        return tuple(sorted(self.vertex_map.items()))


class LensTriangulation:
    """Immutable incidence model of the p-tetrahedron triangulation.

    Construct via :func:`build_triangulation`.  All query methods are
    pure; instances can be shared freely across threads.
    """

    def __init__(self, params: LensParams):
        self.params = params
        self.p = params.p
        self.q = params.q
        self.tetrahedra = tuple(range(1, self.p + 1))
        # Row / reporting order of the edge classes: e_1 .. e_p, Eh, Ev.
        self.edge_classes = tuple(
            [f"e{i}" for i in self.tetrahedra] + ["Eh", "Ev"])
        self._faces = self._build_face_classes()
        self._edge_slots = self._build_edge_slots()

    # -- index helpers ---------------------------------------------------

    def norm(self, i: int) -> int:
        """Canonical representative of a tetrahedron/edge index in 1..p."""
        return (i - 1) % self.p + 1

    def edge_label(self, i: int) -> str:
        return f"e{self.norm(i)}"

    def vertex_name(self, tet: int, corner: int) -> str:
        """Global vertex carried by a local corner, for display."""
        if corner == TOP:
            return "v+"
        if corner == BOT:
            return "v-"
        if corner == LEFT:
            return f"v{self.norm(tet)}"
        return f"v{self.norm(tet + 1)}"

    # -- incidence data --------------------------------------------------

    def edge_of(self, tet: int, local_edge: frozenset) -> str:
        """Edge class of a local edge {u,v} of tetrahedron ``tet``."""
        i, q = self.norm(tet), self.q
        if local_edge == frozenset((TOP, BOT)):
            return "Ev"
        if local_edge == frozenset((LEFT, RIGHT)):
            return "Eh"
        if local_edge == frozenset((TOP, LEFT)):
            return self.edge_label(i)
        if local_edge == frozenset((TOP, RIGHT)):
            return self.edge_label(i + 1)
        if local_edge == frozenset((BOT, LEFT)):
            return self.edge_label(i - q)
        if local_edge == frozenset((BOT, RIGHT)):
            return self.edge_label(i - q + 1)
        raise ValueError(f"not a local edge: {local_edge!r}")

    def _build_edge_slots(self):
        slots = {label: [] for label in self.edge_classes}
        for tet in self.tetrahedra:
            for local_edge in LOCAL_EDGES:
                slots[self.edge_of(tet, local_edge)].append((tet, local_edge))
        return {label: tuple(v) for label, v in slots.items()}

    def edge_slots(self, label: str):
        """All (tetrahedron, local edge) slots of one edge class."""
        return self._edge_slots[label]

    def edge_degree(self, label: str) -> int:
        return len(self._edge_slots[label])

    def _build_face_classes(self):
        faces = []
        # Vertical face k spans the axis and equator vertex k; it is the
        # RIGHT-opposite face of tet k and the LEFT-opposite face of the
        # preceding tetrahedron.
        for k in self.tetrahedra:
            prev = self.norm(k - 1)
            faces.append(FaceClass(
                label=f"V{k}",
                sides=((prev, LEFT), (k, RIGHT)),
                vertex_map={TOP: TOP, BOT: BOT, RIGHT: LEFT},
                mirror=False,
            ))
        # The upper cone face of tet k is glued, pole to pole reversed,
        # onto the lower cone face of tet k+q.
        for k in self.tetrahedra:
            faces.append(FaceClass(
                label=f"H{k}",
                sides=((k, BOT), (self.norm(k + self.q), TOP)),
                vertex_map={TOP: BOT, LEFT: LEFT, RIGHT: RIGHT},
                mirror=True,
            ))
        return tuple(faces)

    @property
    def face_classes(self):
        return self._faces

    def vertex_classes(self):
        """Partition of the 4p local corners into vertex classes.

        Two corners are identified when some face gluing matches them.
        The result is cached; for any coprime (p,q) there are exactly
        two classes, the pole class and the equator class.
        """
        if not hasattr(self, "_vertex_classes"):
            parent = {}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for tet in self.tetrahedra:
                for c in CORNERS:
                    parent[(tet, c)] = (tet, c)
            for face in self._faces:
                (tet_a, _), (tet_b, _) = face.sides
                for za, zb in face.vertex_map.items():
                    ra, rb = find((tet_a, za)), find((tet_b, zb))
                    if ra != rb:
                        parent[ra] = rb
            groups = {}
            for node in parent:
                groups.setdefault(find(node), []).append(node)
            self._vertex_classes = tuple(
                tuple(sorted(g)) for g in
                sorted(groups.values(), key=lambda g: min(g)))
        return self._vertex_classes

    # -- quad semantics --------------------------------------------------

    def quad_separates(self, i: int, j: int) -> tuple[str, str]:
        """The two edge classes a quad of type (i,j) is disjoint from."""
        pair_a, pair_b = QUAD_PAIRS[j]
        return (self.edge_of(i, pair_a), self.edge_of(i, pair_b))

    def quad_crossed_edges(self, i: int, j: int):
        """The four local edges a quad of type (i,j) crosses, with their
        edge classes."""
        pair_a, pair_b = QUAD_PAIRS[j]
        out = []
        for u in pair_a:
            for v in pair_b:
                le = frozenset((u, v))
                out.append((le, self.edge_of(i, le)))
        return out

    # -- senses ----------------------------------------------------------

    def sense_contributions(self, i: int, j: int):
        """Signed unit contributions of quad type (i,j) to the edge
        balance, one per crossed edge, before coincident edge classes
        are merged.

        Around an edge, a quad counts +1 when it climbs left-to-right
        and -1 when it descends; the four crossings of one quad split
        into two of each sign distributed as below.
        """
        i = self.norm(i)
        q = self.q
        if j == 1:
            return (
                (self.edge_label(i - q), +1),
                (self.edge_label(i - q + 1), -1),
                (self.edge_label(i), -1),
                (self.edge_label(i + 1), +1),
            )
        if j == 2:
            return (
                (self.edge_label(i - q + 1), +1),
                (self.edge_label(i), +1),
                ("Eh", -1),
                ("Ev", -1),
            )
        if j == 3:
            return (
                (self.edge_label(i - q), -1),
                (self.edge_label(i + 1), -1),
                ("Eh", +1),
                ("Ev", +1),
            )
        raise ValueError(f"quad type must be 1, 2 or 3, got {j}")

    def sense(self, edge: str, quad: tuple[int, int]) -> int:
        """Net sense of quad type ``quad = (i, j)`` at an edge class.

        Coincident index contributions accumulate, so small p or q = 1
        produce the +-2 entries of the matching matrix.
        """
        if edge not in self._edge_slots:
            raise ValueError(f"unknown edge class {edge!r}")
        i, j = quad
        return sum(s for label, s in self.sense_contributions(i, j)
                   if label == edge)

    def __repr__(self):
        return f"LensTriangulation(p={self.p}, q={self.q})"


def build_triangulation(params_or_p, q: int | None = None) -> LensTriangulation:
    """Build the triangulation for ``LensParams`` or a plain (p, q) pair.

    Raises InvalidParams unless p >= 2, 1 <= q <= p-1 and gcd(p,q) = 1.
    """
    if isinstance(params_or_p, LensParams):
        params = params_or_p
    else:
        params = LensParams(int(params_or_p), int(q))
    return LensTriangulation(params)


def sense(tri: LensTriangulation, edge: str, quad: tuple[int, int]) -> int:
    """Module-level alias for :meth:`LensTriangulation.sense`."""
    return tri.sense(edge, quad)


def face_gluings(tri: LensTriangulation):
    """The 2p face classes with their slot pairs and vertex bijections."""
    return tri.face_classes
