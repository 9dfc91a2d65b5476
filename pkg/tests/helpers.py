"""Deterministic generators shared by unit and acceptance tests.

Random structures are built from a seeded random.Random so every failure
reproduces from its seed alone; no test here depends on global RNG state.
"""

from __future__ import annotations

import random

from scanboard.layout import Group, HelpEntry, KeyDef, Layout, Subgroup
from scanboard.scanner import ScanConfig, Scanner

_KINDS = ("command", "letter", "digit", "symbol")


def make_random_layout(rng: random.Random, max_groups: int = 3,
                       max_subgroups: int = 3, max_rows: int = 3,
                       max_keys: int = 5) -> Layout:
    groups = []
    for g in range(rng.randint(1, max_groups)):
        subgroups = []
        for s in range(rng.randint(1, max_subgroups)):
            rows = []
            for r in range(rng.randint(1, max_rows)):
                row = tuple(
                    KeyDef(id=f"g{g}s{s}r{r}k{k}", label=f"K{g}{s}{r}{k}",
                           output=rng.choice("abcdefgh"),
                           kind=rng.choice(_KINDS))
                    for k in range(rng.randint(1, max_keys)))
                rows.append(row)
            subgroups.append(Subgroup(id=f"g{g}s{s}", label=f"S{g}{s}",
                                      rows=tuple(rows)))
        groups.append(Group(id=f"g{g}", label=f"G{g}",
                            subgroups=tuple(subgroups)))
    return Layout(name=f"random-{rng.random():.6f}", groups=tuple(groups))


def make_random_scan_config(rng: random.Random) -> ScanConfig:
    return ScanConfig(
        period_ms=rng.randrange(50, 2000),
        repeat_cycles=rng.randint(1, 3),
        sound_on=rng.random() < 0.5,
        post_select=rng.choice(("reset_to_top", "stay_in_row")),
    )


def make_random_actions(rng: random.Random, max_len: int = 60) -> list[str]:
    return [rng.choice(("press", "tick", "tick"))
            for _ in range(rng.randint(1, max_len))]


def run_actions(scanner: Scanner, actions: list[str]) -> list:
    """Apply press/tick actions, returning the flat scan event log."""
    log = []
    for action in actions:
        log.extend(scanner.press() if action == "press" else scanner.tick())
    return log


def select_by_scanning(scanner: Scanner, path: tuple[int, int, int, int]) -> list:
    """The canonical tick/press sequence that selects the key at `path`.

    One press activates or descends per level; ticks advance focus to
    the wanted index first.  Returns the scan event log.
    """
    log = []
    if scanner.mode == "inactive":
        log.extend(scanner.press())
    for index in path:
        for _ in range(index - scanner.path[-1]):
            log.extend(scanner.tick())
        log.extend(scanner.press())
    return log


def tiny_layout() -> Layout:
    """Two groups, known shape, for hand-computable scanner tests."""
    def key(i: str, out: str, kind: str = "command") -> KeyDef:
        return KeyDef(id=i, label=i, output=out, kind=kind,
                      help=HelpEntry(summary=f"{i} key", example="fd 10")
                      if kind == "command" else None)

    g0 = Group(id="m", label="Main", subgroups=(
        Subgroup(id="m0", label="M0", rows=(
            (key("aa", "aa "), key("bb", "bb ")),
            (key("cc", "cc "),),
        )),
        Subgroup(id="m1", label="M1", rows=(
            (key("dd", "dd "), key("ee", "ee "), key("ff", "ff ")),
        )),
    ))
    g1 = Group(id="x", label="Extra", subgroups=(
        Subgroup(id="x0", label="X0", rows=(
            (key("gg", "gg "),),
        )),
    ))
    return Layout(name="tiny", groups=(g0, g1))
