"""Key-press and scan-time prediction for three program-entry methods.

Methods modeled:
  physical  — typing the program text on a physical keyboard, charging
              one press per character, one Enter per line, and one extra
              press per character that needs a modifier on the modeled
              national layout;
  direct    — pointing at virtual-keyboard keys, one press per selection;
  scanning  — single-switch scanning, four presses per selection (one
              per hierarchy level) plus the focus-advance ticks implied
              by each key's scan path.

The planner converts a program into the selection sequence a virtual
keyboard user would make.  Whole-command keys emit their trailing space,
so most inter-token spaces cost nothing; an explicit space selection is
planned only where dropping the separator would merge two tokens.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from . import logo
from .layout import Layout
from .scanner import ScanConfig

SelectionSequence = list[str]  # ordered key ids


class PlanError(ValueError):
    """The layout cannot produce some part of the program."""


@dataclass(frozen=True)
class PhysicalModel:
    modifier_map: Mapping[str, int]
    count_newlines: bool = True

    def __post_init__(self) -> None:
        if any(v not in (0, 1) for v in self.modifier_map.values()):
            raise ValueError("modifier_map values must be 0 or 1")


# Portuguese layout: " ( ) : are shifted, [ ] are AltGr. These six are
# the only non-alphanumeric characters the language needs.
DEFAULT_PORTUGUESE_MODEL = PhysicalModel(
    modifier_map=MappingProxyType({c: 1 for c in '"():[]'}),
    count_newlines=True,
)


@dataclass(frozen=True)
class CostReport:
    method: str  # physical | direct | scanning
    presses: int
    scan_ticks: int = 0
    est_time_ms: int = 0

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "presses": self.presses,
            "scan_ticks": self.scan_ticks,
            "est_time_ms": self.est_time_ms,
        }


def _canonical_lines(program: str) -> list[list[logo.Token]]:
    """Token rows per source line, with trailing blank lines dropped."""
    tokens = logo.tokenize(program)
    lines: list[list[logo.Token]] = [[]]
    for tok in tokens:
        if tok.kind == "newline":
            lines.append([])
        else:
            lines[-1].append(tok)
    while lines and not lines[-1]:
        lines.pop()
    return lines


def _merges(prev: str, nxt: str) -> bool:
    # Dropping a separator is unsafe only when the characters on both
    # sides belong to the same lexical class and would fuse into one token.
    if prev.isalpha() and nxt.isalpha():
        return True
    numeric = "0123456789."
    return prev in numeric and nxt in numeric


class _Matcher:
    """Greedy longest-output matcher over a layout's keys."""

    def __init__(self, layout: Layout):
        producible = [k for k in layout.keys() if k.output]
        # Longest output first; scan order breaks ties deterministically.
        self.keys = sorted(producible, key=lambda k: -len(k.output))

    def match(self, text: str, pos: int) -> tuple[str, int] | None:
        for key in self.keys:
            if text.startswith(key.output, pos):
                return key.id, len(key.output)
            # A trailing-space output may close out the line: the line
            # break separates tokens just as the space would.
            if key.output.endswith(" ") and text[pos:] == key.output.rstrip(" "):
                return key.id, len(text) - pos
        return None


def plan_selections(program: str, layout: Layout) -> SelectionSequence:
    """Selection sequence that reproduces `program` on the virtual keyboard.

    Greedy longest-output-first matching over the canonicalized program
    text; identifiers and numbers not covered by a command key are spelled
    character by character; one enter per line break except after the
    final line.  Raises PlanError when no key can produce the next
    character.
    """
    matcher = _Matcher(layout)
    lines = _canonical_lines(program)
    plan: SelectionSequence = []
    for lineno, line_tokens in enumerate(lines):
        if lineno > 0:
            plan.append("enter")
        line = logo.render_tokens(line_tokens)
        pos = 0
        while pos < len(line):
            if line[pos] == " ":
                if 0 < pos < len(line) - 1 and _merges(line[pos - 1], line[pos + 1]):
                    if layout.lookup("space") is None:
                        raise PlanError(
                            "layout has no space key to separate "
                            f"{line[pos - 1]!r} from {line[pos + 1]!r}")
                    plan.append("space")
                pos += 1
                continue
            matched = matcher.match(line, pos)
            if matched is None:
                raise PlanError(
                    f"no key in layout {layout.name!r} produces {line[pos]!r} "
                    f"(line {lineno + 1})")
            key_id, length = matched
            plan.append(key_id)
            pos += length
    return plan


def replay_outputs(seq: SelectionSequence, layout: Layout) -> str:
    """Concatenated text the sequence would type (enter -> newline, space -> ' ')."""
    parts = []
    for key_id in seq:
        key = layout.lookup(key_id)
        if key is None:
            raise PlanError(f"unknown key id {key_id!r}")
        if key.kind == "control":
            parts.append({"enter": "\n", "space": " "}.get(key.id, ""))
        else:
            parts.append(key.output)
    return "".join(parts)


def replay_matches(program: str, seq: SelectionSequence,
                   layout: Layout) -> bool:
    """True when the plan types the same token stream as the program.

    A terminating line break changes nothing about what a program means,
    and plans do not press enter after the last line, so trailing
    newline tokens are ignored on both sides.
    """
    def significant(text: str) -> list[logo.Token]:
        tokens = list(logo.tokenize(text))
        while tokens and tokens[-1].kind == "newline":
            tokens.pop()
        return tokens

    return significant(replay_outputs(seq, layout)) == significant(program)


def physical_cost(program: str,
                  model: PhysicalModel = DEFAULT_PORTUGUESE_MODEL) -> CostReport:
    """Presses to type `program` literally on a physical keyboard."""
    lines = program.splitlines()
    presses = sum(len(line) for line in lines)
    if model.count_newlines:
        presses += len(lines)  # one Enter per line, the last included
    presses += sum(model.modifier_map.get(c, 0) for line in lines for c in line)
    return CostReport(method="physical", presses=presses)


def direct_cost(seq: SelectionSequence) -> CostReport:
    """Pointer entry: one press per selection."""
    return CostReport(method="direct", presses=len(seq))


def scanning_cost(seq: SelectionSequence, layout: Layout,
                  config: ScanConfig | None = None) -> CostReport:
    """Single-switch entry: four presses per selection plus focus ticks.

    Tick count sums each selected key's scan-path indices (the focus
    starts at the first sibling on every level).  est_time_ms is a lower
    bound: pure scan-step time with zero human reaction time.
    """
    config = config or ScanConfig()
    ticks = 0
    for key_id in seq:
        g, s, r, k = layout.scan_path(key_id)
        ticks += g + s + r + k
    return CostReport(
        method="scanning",
        presses=4 * len(seq),
        scan_ticks=ticks,
        est_time_ms=ticks * config.period_ms,
    )
