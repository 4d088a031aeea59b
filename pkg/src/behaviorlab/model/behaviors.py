"""Behavior catalog: user-editable definitions and the ordered registry.

A definition's identity is the (behavior_name, category_name) pair. The
category_code is only a display rank: lower codes sort first in every list
the operator sees, and equal codes keep their insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass


class DuplicateBehaviorError(ValueError):
    """Raised when a (behavior_name, category_name) pair is already registered."""

    def __init__(self, existing: "BehaviorDefinition"):
        self.existing = existing
        super().__init__(
            f"behavior {existing.behavior_name!r} already exists in "
            f"category {existing.category_name!r}"
        )


class UnknownBehaviorError(KeyError):
    pass


class AmbiguousBehaviorError(KeyError):
    """Behavior name exists in more than one category and no category was given."""


@dataclass(frozen=True)
class BehaviorDefinition:
    category_code: int
    behavior_name: str
    category_name: str

    def __post_init__(self) -> None:
        if not isinstance(self.category_code, int) or self.category_code < 0:
            raise ValueError("category_code must be a non-negative integer")
        if not self.behavior_name:
            raise ValueError("behavior_name must be non-empty")
        if not self.category_name:
            raise ValueError("category_name must be non-empty")

    @property
    def identity(self) -> tuple[str, str]:
        return (self.behavior_name, self.category_name)


@dataclass(frozen=True)
class BehaviorRegistry:
    """Immutable registry; `entries` keeps insertion order, display order is derived."""

    entries: tuple[BehaviorDefinition, ...] = ()
    revision: int = 0

    @property
    def definitions(self) -> tuple[BehaviorDefinition, ...]:
        """Display order: ascending category_code, insertion order breaks ties."""
        return tuple(sorted(self.entries, key=lambda d: d.category_code))

    @property
    def category_names(self) -> tuple[str, ...]:
        seen: list[str] = []
        for d in self.definitions:
            if d.category_name not in seen:
                seen.append(d.category_name)
        return tuple(seen)

    def get(self, behavior_name: str, category_name: str | None = None) -> BehaviorDefinition:
        matches = [d for d in self.entries if d.behavior_name == behavior_name]
        if category_name is not None:
            matches = [d for d in matches if d.category_name == category_name]
        if not matches:
            raise UnknownBehaviorError(behavior_name)
        if len(matches) > 1:
            raise AmbiguousBehaviorError(
                f"behavior {behavior_name!r} exists in several categories; pass category_name"
            )
        return matches[0]

    def upsert(self, defn: BehaviorDefinition) -> "BehaviorRegistry":
        for existing in self.entries:
            if existing.identity == defn.identity:
                raise DuplicateBehaviorError(existing)
        return BehaviorRegistry(self.entries + (defn,), self.revision + 1)

    def replace_all(self, definitions) -> "BehaviorRegistry":
        """Wholesale replacement (the settings screen's "update"); order given = insertion order."""
        defs = tuple(definitions)
        seen: set[tuple[str, str]] = set()
        for d in defs:
            if d.identity in seen:
                raise DuplicateBehaviorError(d)
            seen.add(d.identity)
        return BehaviorRegistry(defs, self.revision + 1)


def registry_upsert(registry: BehaviorRegistry, defn: BehaviorDefinition) -> BehaviorRegistry:
    """Add one definition; rejects duplicates of the identity pair."""
    return registry.upsert(defn)
