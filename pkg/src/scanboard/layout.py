"""Hierarchical keyboard layout: groups -> subgroups -> rows -> keys.

A layout is an immutable tree loaded from a JSON document.  Every key is
addressable both by its unique id and by a 4-tuple scan path (group,
subgroup, row, key) that the scanner walks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterator

KEY_KINDS = ("command", "letter", "digit", "symbol", "control")
CONTROL_IDS = ("enter", "space", "backspace", "clear")

DEFAULT_LAYOUT_RESOURCE = "default_layout.json"


class LayoutError(ValueError):
    """Malformed layout document or violated layout invariant."""


@dataclass(frozen=True)
class HelpEntry:
    summary: str
    example: str


@dataclass(frozen=True)
class KeyDef:
    id: str
    label: str
    output: str
    kind: str
    help: HelpEntry | None = None


@dataclass(frozen=True)
class Subgroup:
    id: str
    label: str
    rows: tuple[tuple[KeyDef, ...], ...]


@dataclass(frozen=True)
class Group:
    id: str
    label: str
    subgroups: tuple[Subgroup, ...]


class Layout:
    """Validated keyboard tree with an id -> scan-path index.

    Instances are immutable after construction and safe to share between
    threads; all mutating state lives in the scanner, never here.
    """

    def __init__(self, name: str, groups: tuple[Group, ...]):
        self.name = name
        self.groups = tuple(groups)
        self._paths: dict[str, tuple[int, int, int, int]] = {}
        self._keys: dict[str, KeyDef] = {}
        self._validate()

    def _validate(self) -> None:
        if not self.groups:
            raise LayoutError("layout has no groups")
        for g, group in enumerate(self.groups):
            if not group.subgroups:
                raise LayoutError(f"group {group.id!r} has no subgroups")
            for s, sub in enumerate(group.subgroups):
                if not sub.rows:
                    raise LayoutError(f"subgroup {sub.id!r} has no rows")
                for r, row in enumerate(sub.rows):
                    if not row:
                        raise LayoutError(
                            f"subgroup {sub.id!r} row {r} is empty"
                        )
                    for k, key in enumerate(row):
                        self._validate_key(key)
                        if key.id in self._keys:
                            raise LayoutError(f"duplicate key id {key.id!r}")
                        self._keys[key.id] = key
                        self._paths[key.id] = (g, s, r, k)

    @staticmethod
    def _validate_key(key: KeyDef) -> None:
        if not key.id:
            raise LayoutError("key with empty id")
        if key.kind not in KEY_KINDS:
            raise LayoutError(f"key {key.id!r} has unknown kind {key.kind!r}")
        if key.kind == "control":
            if key.id not in CONTROL_IDS:
                raise LayoutError(
                    f"control key id must be one of {CONTROL_IDS}, got {key.id!r}"
                )
        elif not key.output:
            raise LayoutError(f"key {key.id!r} has empty output")

    def lookup(self, key_id: str) -> KeyDef | None:
        return self._keys.get(key_id)

    def scan_path(self, key_id: str) -> tuple[int, int, int, int]:
        try:
            return self._paths[key_id]
        except KeyError:
            raise LayoutError(f"unknown key id {key_id!r}") from None

    def keys(self) -> Iterator[KeyDef]:
        """All keys in scan order (group, subgroup, row, key)."""
        for group in self.groups:
            for sub in group.subgroups:
                for row in sub.rows:
                    yield from row

    def key_count(self) -> int:
        return len(self._keys)

    def siblings(self, level: int, path: tuple[int, ...]) -> int:
        """Number of items at `level` (0=group .. 3=key) under `path`."""
        if level == 0:
            return len(self.groups)
        if level == 1:
            return len(self.groups[path[0]].subgroups)
        if level == 2:
            return len(self.groups[path[0]].subgroups[path[1]].rows)
        if level == 3:
            return len(self.groups[path[0]].subgroups[path[1]].rows[path[2]])
        raise ValueError(f"bad level {level}")

    def key_at(self, path: tuple[int, int, int, int]) -> KeyDef:
        g, s, r, k = path
        return self.groups[g].subgroups[s].rows[r][k]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Layout):
            return NotImplemented
        return self.name == other.name and self.groups == other.groups

    def __repr__(self) -> str:
        return f"Layout({self.name!r}, {self.key_count()} keys)"


def _parse_key(obj: object, where: str) -> KeyDef:
    if not isinstance(obj, dict):
        raise LayoutError(f"{where}: key entry must be an object")
    try:
        kid = obj["id"]
        label = obj["label"]
        output = obj["output"]
        kind = obj["kind"]
    except KeyError as exc:
        raise LayoutError(f"{where}: key missing field {exc.args[0]!r}") from None
    if not all(isinstance(v, str) for v in (kid, label, output, kind)):
        raise LayoutError(f"{where}: key fields must be strings")
    help_entry = None
    if "help" in obj and obj["help"] is not None:
        h = obj["help"]
        if not isinstance(h, dict) or not isinstance(h.get("summary"), str) \
                or not isinstance(h.get("example"), str):
            raise LayoutError(f"{where}: malformed help entry for key {kid!r}")
        help_entry = HelpEntry(summary=h["summary"], example=h["example"])
    return KeyDef(id=kid, label=label, output=output, kind=kind, help=help_entry)


def parse_layout(text: str) -> Layout:
    """Parse a layout JSON document, validating every invariant.

    Syntax errors carry the line/column reported by the JSON parser;
    structural errors name the offending group/subgroup/key.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LayoutError(
            f"layout syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise LayoutError("layout document must be a JSON object")
    name = doc.get("name")
    if not isinstance(name, str):
        raise LayoutError("layout 'name' must be a string")
    raw_groups = doc.get("groups")
    if not isinstance(raw_groups, list):
        raise LayoutError("layout 'groups' must be a list")
    groups = []
    for gi, g in enumerate(raw_groups):
        if not isinstance(g, dict) or not isinstance(g.get("id"), str):
            raise LayoutError(f"group {gi}: must be an object with a string id")
        subgroups = []
        for si, s in enumerate(g.get("subgroups", [])):
            where = f"group {g['id']!r} subgroup {si}"
            if not isinstance(s, dict) or not isinstance(s.get("id"), str):
                raise LayoutError(f"{where}: must be an object with a string id")
            rows = []
            for ri, row in enumerate(s.get("rows", [])):
                if not isinstance(row, list):
                    raise LayoutError(f"{where}: row {ri} must be a list")
                rows.append(tuple(
                    _parse_key(k, f"{where} row {ri}") for k in row
                ))
            subgroups.append(Subgroup(
                id=s["id"], label=s.get("label", s["id"]), rows=tuple(rows)
            ))
        groups.append(Group(
            id=g["id"], label=g.get("label", g["id"]), subgroups=tuple(subgroups)
        ))
    return Layout(name=name, groups=tuple(groups))


def render(layout: Layout) -> str:
    """Serialize a layout to canonical JSON (2-space indent, authored order).

    parse_layout(render(layout)) reproduces the layout exactly, and render
    is bit-stable across round trips.
    """
    def key_obj(key: KeyDef) -> dict:
        obj: dict = {
            "id": key.id, "label": key.label,
            "output": key.output, "kind": key.kind,
        }
        if key.help is not None:
            obj["help"] = {
                "summary": key.help.summary, "example": key.help.example,
            }
        return obj

    doc = {
        "name": layout.name,
        "groups": [
            {
                "id": group.id,
                "label": group.label,
                "subgroups": [
                    {
                        "id": sub.id,
                        "label": sub.label,
                        "rows": [
                            [key_obj(k) for k in row] for row in sub.rows
                        ],
                    }
                    for sub in group.subgroups
                ],
            }
            for group in layout.groups
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


@lru_cache(maxsize=1)
def _default_layout_text() -> str:
    return resources.files("scanboard.data").joinpath(
        DEFAULT_LAYOUT_RESOURCE).read_text(encoding="utf-8")


def default_layout() -> Layout:
    """The built-in layout shipped with the package.

    Group 1 holds the Logo vocabulary (motion, pen, control flow,
    variables, arithmetic, I/O); group 2 holds the alphanumeric pages
    (letters, digits, symbols, controls).
    """
    return parse_layout(_default_layout_text())


def scan_path(layout: Layout, key_id: str) -> tuple[int, int, int, int]:
    return layout.scan_path(key_id)


def lookup(layout: Layout, key_id: str) -> KeyDef | None:
    return layout.lookup(key_id)
