from __future__ import annotations

from .errors import AmbientMismatchError
from .notation import ambient_header, format_element


class FiniteSet:
    """A deduplicated finite subset of one ambient field.

    Elements are kept in canonical text order, which makes every derived
    object (certificates, reports) deterministic.
    """

    __slots__ = ("ambient", "elements", "_index")

    def __init__(self, ambient, elements=()):
        seen = {}
        for x in elements:
            if x.ambient != ambient:
                raise AmbientMismatchError(f"element {x!r} does not live in {ambient}")
            seen.setdefault(x, None)
        self.ambient = ambient
        self.elements = tuple(sorted(seen, key=format_element))
        self._index = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        if self._index is None:
            self._index = frozenset(self.elements)
        return x in self._index

    def __eq__(self, other):
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self.ambient == other.ambient and self.elements == other.elements

    def __hash__(self):
        return hash((self.ambient, self.elements))

    def __repr__(self):
        shown = ", ".join(format_element(x) for x in self.elements[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"FiniteSet<{ambient_header(self.ambient)}>{{{shown}{more}}} (size {len(self)})"

    @property
    def residue_size(self) -> int:
        return self.ambient.residue_size

    def check_compatible(self, other: FiniteSet):
        if self.ambient != other.ambient:
            raise AmbientMismatchError(f"sets live in {self.ambient} and {other.ambient}")
