"""Coupling graphs for transmon arrays.

Built-in geometries:

* ``chain``     : open chain of N sites.
* ``surface7``  : 7-site chain plus the (0, 3) and (3, 6) couplings, forming
                  two square plaquettes that share the middle site.
* ``grid3x3``   : 3 x 3 nearest-neighbor square lattice (12 edges).
* ``heavy_hex`` : heavy-hexagon unit cell shipped as an edge-list resource.
* ``custom``    : edge-list file supplied by the caller.

Sites are 0-indexed everywhere.  Sublattice pattern labels (A/B/C) may be
attached per site, either programmatically or from the edge-list file.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

GEOMETRY_TAGS = ("chain", "surface7", "grid3x3", "heavy_hex", "custom")
_VALID_LABELS = frozenset("ABC")


@dataclass(frozen=True)
class Lattice:
    """Sites, undirected edges and optional per-site sublattice labels."""

    n_sites: int
    edges: tuple
    pattern: tuple | None = None
    geometry_tag: str = "custom"
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        for (i, j) in self.edges:
            if not (0 <= i < self.n_sites and 0 <= j < self.n_sites):
                raise ValueError(f"edge ({i},{j}) references a site outside 0..{self.n_sites - 1}")
            if i == j:
                raise ValueError(f"self-loop at site {i}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            seen.add(key)
        if self.pattern is not None:
            if len(self.pattern) != self.n_sites:
                raise ValueError("pattern must assign one label per site")
            bad = {p for p in self.pattern if p is not None and p not in _VALID_LABELS}
            if bad:
                raise ValueError(f"unknown sublattice labels: {sorted(bad)}")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def sites_with_label(self, label):
        if self.pattern is None:
            raise ValueError("lattice carries no sublattice pattern")
        return tuple(i for i, p in enumerate(self.pattern) if p == label)

    def labels_used(self):
        if self.pattern is None:
            return ()
        return tuple(sorted({p for p in self.pattern if p is not None}))


def _normalize_edges(edges):
    return tuple(sorted((min(i, j), max(i, j)) for i, j in edges))


def _chain_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def _grid_edges(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            s = r * cols + c
            if c + 1 < cols:
                edges.append((s, s + 1))
            if r + 1 < rows:
                edges.append((s, s + cols))
    return edges


def _pattern_for(geometry_tag, n_sites, pattern_name):
    """Assign A/B or A/B/A/C labels for the built-in geometries."""
    if pattern_name is None:
        return None
    name = pattern_name.upper()
    if name == "AB":
        if geometry_tag == "grid3x3":
            # Staggered (checkerboard) arrangement: corners + center on A.
            return tuple("A" if (i // 3 + i % 3) % 2 == 0 else "B" for i in range(9))
        return tuple("AB"[i % 2] for i in range(n_sites))
    if name == "ABAC":
        cycle = "ABAC"
        return tuple(cycle[i % 4] for i in range(n_sites))
    raise ValueError(f"unknown pattern name {pattern_name!r} (use 'AB' or 'ABAC')")


def build_lattice(geometry_tag: str, n_sites: int | None = None,
                  pattern: str | None = None, edge_file=None) -> Lattice:
    """Construct one of the recognized geometries.

    ``n_sites`` is required for ``chain``; ``edge_file`` for ``custom``.
    ``pattern`` ('AB' or 'ABAC') attaches sublattice labels to the built-in
    geometries; file-based lattices carry labels in the file itself.
    """
    if geometry_tag == "chain":
        if n_sites is None or n_sites < 2:
            raise ValueError("chain requires n_sites >= 2")
        return Lattice(n_sites, _normalize_edges(_chain_edges(n_sites)),
                       _pattern_for("chain", n_sites, pattern), "chain")
    if geometry_tag == "surface7":
        edges = _chain_edges(7) + [(0, 3), (3, 6)]
        return Lattice(7, _normalize_edges(edges),
                       _pattern_for("surface7", 7, pattern), "surface7")
    if geometry_tag == "grid3x3":
        return Lattice(9, _normalize_edges(_grid_edges(3, 3)),
                       _pattern_for("grid3x3", 9, pattern), "grid3x3")
    if geometry_tag == "heavy_hex":
        ref = resources.files("transmon_chaos").joinpath("data/heavy_hex.edges")
        with resources.as_file(ref) as path:
            lat = load_lattice_from_file(path)
        if pattern is not None:
            return Lattice(lat.n_sites, lat.edges,
                           _pattern_for("heavy_hex", lat.n_sites, pattern), "heavy_hex")
        return Lattice(lat.n_sites, lat.edges, lat.pattern, "heavy_hex")
    if geometry_tag == "custom":
        if edge_file is None:
            raise ValueError("custom geometry requires an edge file")
        return load_lattice_from_file(edge_file)
    raise ValueError(f"unknown geometry tag {geometry_tag!r}; expected one of {GEOMETRY_TAGS}")


def load_lattice_from_file(path) -> Lattice:
    """Parse a plain-text edge list.

    Each non-comment line is ``i j [Li [Lj]]``: an undirected edge between
    0-indexed sites i and j, optionally followed by the sublattice labels
    (A/B/C) of site i and site j.  Conflicting labels for the same site are
    an error; ``#`` starts a comment.
    """
    path = Path(path)
    edges = []
    labels: dict[int, str] = {}
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read edge file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2 or len(tokens) > 4:
            raise ValueError(f"{path}:{lineno}: expected 'i j [Li [Lj]]', got {raw!r}")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: malformed site indices in {raw!r}") from exc
        if i < 0 or j < 0:
            raise ValueError(f"{path}:{lineno}: negative site index")
        edges.append((i, j))
        for site, tok in zip((i, j), tokens[2:4]):
            label = tok.upper()
            if label not in _VALID_LABELS:
                raise ValueError(f"{path}:{lineno}: bad sublattice label {tok!r}")
            if labels.get(site, label) != label:
                raise ValueError(f"{path}:{lineno}: conflicting labels for site {site}")
            labels[site] = label
    if not edges:
        raise ValueError(f"{path}: no edges found")
    n_sites = max(max(i, j) for i, j in edges) + 1
    pattern = None
    if labels:
        pattern = tuple(labels.get(s) for s in range(n_sites))
    return Lattice(n_sites, _normalize_edges(edges), pattern, "custom")
