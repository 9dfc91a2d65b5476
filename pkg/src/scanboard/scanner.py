"""Deterministic hierarchical scanning automaton.

Scanning walks the layout tree one level at a time: a clock tick advances
focus among siblings at the current level (wrapping), and a switch press
descends one level — or, at key level, selects the focused key.  Time is
injected through tick(); the scanner itself never reads a clock, which is
what makes every run of the same event sequence identical.

Wrap handling: the tick that returns focus to index 0 both moves the
focus and counts the wrap.  When the wrap count reaches the configured
repeat cycles, that same tick ascends one level (or, at group level,
deactivates scanning) so no dead focus state is ever observable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .layout import Layout

LEVELS = ("group", "subgroup", "row", "key")
POST_SELECT_MODES = ("reset_to_top", "stay_in_row")

MIN_PERIOD_MS = 50


class ScanConfigError(ValueError):
    """Out-of-range or malformed scanner configuration."""


@dataclass(frozen=True)
class ScanConfig:
    period_ms: int = 600
    repeat_cycles: int = 2
    sound_on: bool = True
    highlight_color: tuple[int, int, int] = (255, 170, 0)
    post_select: str = "reset_to_top"

    def validate(self) -> None:
        if not isinstance(self.period_ms, int) or self.period_ms < MIN_PERIOD_MS:
            raise ScanConfigError(
                f"period_ms must be an integer >= {MIN_PERIOD_MS}, got {self.period_ms!r}")
        if not isinstance(self.repeat_cycles, int) or self.repeat_cycles < 1:
            raise ScanConfigError(
                f"repeat_cycles must be an integer >= 1, got {self.repeat_cycles!r}")
        if not isinstance(self.sound_on, bool):
            raise ScanConfigError(f"sound_on must be a boolean, got {self.sound_on!r}")
        color = self.highlight_color
        if (not isinstance(color, tuple) or len(color) != 3
                or not all(isinstance(c, int) and not isinstance(c, bool)
                           and 0 <= c <= 255 for c in color)):
            raise ScanConfigError(f"highlight_color must be an RGB triple, got {color!r}")
        if self.post_select not in POST_SELECT_MODES:
            raise ScanConfigError(
                f"post_select must be one of {POST_SELECT_MODES}, got {self.post_select!r}")


@dataclass(frozen=True)
class ScanEvent:
    kind: str            # focus_changed | descended | selected | ascended | deactivated
    tick_index: int
    path: tuple[int, ...] = ()
    level: str = ""
    key_id: str = ""


class Scanner:
    """Mutable scan state over an immutable layout.

    Calls must be externally serialized (the engine funnels ticks and
    presses through one queue); the scanner never blocks or sleeps.
    """

    def __init__(self, layout: Layout, config: ScanConfig | None = None):
        config = config or ScanConfig()
        config.validate()
        self.layout = layout
        self.config = config
        self.mode = "inactive"
        self._level = 0
        self._focus = [0, 0, 0, 0]
        self._wraps = 0
        self._ticks = 0

    # --- observers ------------------------------------------------------

    @property
    def level_name(self) -> str:
        return LEVELS[self._level]

    @property
    def path(self) -> tuple[int, ...]:
        """Focus indices down to the current level (empty when inactive)."""
        if self.mode == "inactive":
            return ()
        return tuple(self._focus[: self._level + 1])

    @property
    def wraps_at_level(self) -> int:
        return self._wraps

    @property
    def tick_count(self) -> int:
        return self._ticks

    def reconfigure(self, config: ScanConfig) -> None:
        """Swap scan parameters; focus state is kept."""
        config.validate()
        self.config = config

    # --- events -----------------------------------------------------------

    def _focus_event(self) -> ScanEvent:
        return ScanEvent("focus_changed", self._ticks,
                         path=self.path, level=self.level_name)

    def press(self) -> list[ScanEvent]:
        """Switch activation: start scanning, descend, or select."""
        if self.mode == "inactive":
            self.mode = "scanning"
            self._level = 0
            self._focus = [0, 0, 0, 0]
            self._wraps = 0
            return [self._focus_event()]
        if self._level < 3:
            self._level += 1
            self._focus[self._level] = 0
            self._wraps = 0
            return [
                ScanEvent("descended", self._ticks,
                          path=self.path, level=self.level_name),
                self._focus_event(),
            ]
        key = self.layout.key_at(tuple(self._focus))  # type: ignore[arg-type]
        events = [ScanEvent("selected", self._ticks, key_id=key.id)]
        if self.config.post_select == "reset_to_top":
            self._level = 0
            self._focus = [0, 0, 0, 0]
            self._wraps = 0
            events.append(self._focus_event())
        return events

    def tick(self) -> list[ScanEvent]:
        """Clock step: advance focus, wrapping and ascending as configured."""
        if self.mode == "inactive":
            return []
        self._ticks += 1
        count = self.layout.siblings(self._level, tuple(self._focus))
        self._focus[self._level] = (self._focus[self._level] + 1) % count
        if self._focus[self._level] == 0:
            self._wraps += 1
            if self._wraps >= self.config.repeat_cycles:
                if self._level == 0:
                    self.mode = "inactive"
                    return [ScanEvent("deactivated", self._ticks)]
                self._level -= 1
                self._wraps = 0
                return [ScanEvent("ascended", self._ticks,
                                  path=self.path, level=self.level_name)]
        return [self._focus_event()]

    def pointer_select(self, key_id: str) -> list[ScanEvent]:
        """Direct selection by pointer; scan state is left untouched."""
        self.layout.scan_path(key_id)  # raises LayoutError for unknown ids
        return [ScanEvent("selected", self._ticks, key_id=key_id)]


def scanner_new(layout: Layout, config: ScanConfig | None = None) -> Scanner:
    return Scanner(layout, config)
