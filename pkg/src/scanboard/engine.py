"""Session engine: composition root for layout, scanner, and interpreter.

A Session owns one user's state (scan focus, command buffer, interpreter
environment, configuration) and turns client events into server events.
All inputs — switch presses, pointer actions, and clock ticks alike —
arrive through handle(), so replaying an event log reproduces a session
exactly; the engine itself never reads a clock.

Wire protocol: one UTF-8 JSON object per line in both directions.
Client lines are ``{"type": ..., ...}``; server lines add a gapless
``seq`` counter.  No client event terminates the session: every failure
becomes an ``error`` server event.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import logo
from .layout import Layout, LayoutError, default_layout, parse_layout
from .scanner import ScanConfig, ScanConfigError, Scanner

CLIENT_EVENT_TYPES = (
    "switch_press", "pointer_hover", "pointer_select", "clock_tick",
    "config_update", "run_buffer", "clear_buffer", "load_program",
)

DEFAULT_PROFILE_PATH = "~/.scanboard/profile.json"
PROFILE_ENV_VAR = "SCANBOARD_PROFILE"


class ConfigError(ValueError):
    """Invalid engine configuration document or value."""


class ProfileError(Exception):
    """Unreadable or malformed profile file."""


class ProtocolError(ValueError):
    """Malformed client message."""


@dataclass(frozen=True)
class EngineConfig:
    scan: ScanConfig = field(default_factory=ScanConfig)
    transparency: float = 0.0
    zoom_enabled: bool = True
    voice_enabled: bool = False
    keyboard_scale: float = 1.0
    layout_path: str = "builtin"

    def validate(self) -> None:
        self.scan.validate()
        if not isinstance(self.transparency, (int, float)) \
                or isinstance(self.transparency, bool) \
                or not 0.0 <= self.transparency <= 1.0:
            raise ConfigError(f"transparency must be in [0, 1], got {self.transparency!r}")
        if not isinstance(self.keyboard_scale, (int, float)) \
                or isinstance(self.keyboard_scale, bool) \
                or not 0.5 <= self.keyboard_scale <= 3.0:
            raise ConfigError(
                f"keyboard_scale must be in [0.5, 3.0], got {self.keyboard_scale!r}")
        if not isinstance(self.zoom_enabled, bool):
            raise ConfigError("zoom_enabled must be a boolean")
        if not isinstance(self.voice_enabled, bool):
            raise ConfigError("voice_enabled must be a boolean")
        if not isinstance(self.layout_path, str) or not self.layout_path:
            raise ConfigError("layout_path must be a non-empty string")


def config_to_dict(config: EngineConfig) -> dict:
    return {
        "scan": {
            "period_ms": config.scan.period_ms,
            "repeat_cycles": config.scan.repeat_cycles,
            "sound_on": config.scan.sound_on,
            "highlight_color": list(config.scan.highlight_color),
            "post_select": config.scan.post_select,
        },
        "transparency": config.transparency,
        "zoom_enabled": config.zoom_enabled,
        "voice_enabled": config.voice_enabled,
        "keyboard_scale": config.keyboard_scale,
        "layout_path": config.layout_path,
    }


def config_from_dict(doc: object) -> EngineConfig:
    """Build and validate an EngineConfig from its JSON form.

    Missing fields take defaults; unknown fields are rejected so typos
    cannot silently disable a setting.
    """
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    known = {"scan", "transparency", "zoom_enabled", "voice_enabled",
             "keyboard_scale", "layout_path"}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    defaults = EngineConfig()
    scan_doc = doc.get("scan", {})
    if not isinstance(scan_doc, dict):
        raise ConfigError("config 'scan' must be an object")
    scan_known = {"period_ms", "repeat_cycles", "sound_on",
                  "highlight_color", "post_select"}
    scan_unknown = set(scan_doc) - scan_known
    if scan_unknown:
        raise ConfigError(f"unknown scan config fields: {sorted(scan_unknown)}")
    color = scan_doc.get("highlight_color", list(defaults.scan.highlight_color))
    if not isinstance(color, (list, tuple)):
        raise ConfigError(f"highlight_color must be an RGB triple, got {color!r}")
    scan = ScanConfig(
        period_ms=scan_doc.get("period_ms", defaults.scan.period_ms),
        repeat_cycles=scan_doc.get("repeat_cycles", defaults.scan.repeat_cycles),
        sound_on=scan_doc.get("sound_on", defaults.scan.sound_on),
        highlight_color=tuple(color),
        post_select=scan_doc.get("post_select", defaults.scan.post_select),
    )
    config = EngineConfig(
        scan=scan,
        transparency=doc.get("transparency", defaults.transparency),
        zoom_enabled=doc.get("zoom_enabled", defaults.zoom_enabled),
        voice_enabled=doc.get("voice_enabled", defaults.voice_enabled),
        keyboard_scale=doc.get("keyboard_scale", defaults.keyboard_scale),
        layout_path=doc.get("layout_path", defaults.layout_path),
    )
    try:
        config.validate()
    except (ScanConfigError, ConfigError) as exc:
        raise ConfigError(str(exc)) from None
    return config


def profile_path(path: str | os.PathLike | None = None) -> Path:
    """Resolve the profile location: argument, then env var, then default."""
    if path is None:
        path = os.environ.get(PROFILE_ENV_VAR) or DEFAULT_PROFILE_PATH
    return Path(path).expanduser()


def save_profile(config: EngineConfig, path: str | os.PathLike | None = None) -> Path:
    """Persist the config as JSON with whole-file replace semantics."""
    config.validate()
    target = profile_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = target.with_suffix(target.suffix + ".tmp")
    tmp.write_text(json.dumps(config_to_dict(config), indent=2) + "\n",
                   encoding="utf-8")
    os.replace(tmp, target)
    return target


def load_profile(path: str | os.PathLike | None = None) -> EngineConfig:
    target = profile_path(path)
    try:
        text = target.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProfileError(f"cannot read profile {target}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"malformed profile {target}: {exc}") from None
    try:
        return config_from_dict(doc)
    except ConfigError as exc:
        raise ProfileError(f"malformed profile {target}: {exc}") from None


def load_layout_source(layout_path: str) -> Layout:
    """Layout named by a config: the built-in one or a JSON file path."""
    if layout_path == "builtin":
        return default_layout()
    try:
        text = Path(layout_path).expanduser().read_text(encoding="utf-8")
    except OSError as exc:
        raise LayoutError(f"cannot read layout {layout_path}: {exc}") from None
    return parse_layout(text)


@dataclass(frozen=True)
class ClientEvent:
    type: str
    key_id: str = ""
    text: str = ""
    config: dict | None = None

    @classmethod
    def from_dict(cls, msg: object) -> "ClientEvent":
        if not isinstance(msg, dict):
            raise ProtocolError("client message must be a JSON object")
        mtype = msg.get("type")
        if mtype not in CLIENT_EVENT_TYPES:
            raise ProtocolError(f"unknown client event type {mtype!r}")
        if mtype in ("pointer_hover", "pointer_select"):
            key_id = msg.get("key_id")
            if not isinstance(key_id, str) or not key_id:
                raise ProtocolError(f"{mtype} needs a key_id")
            return cls(type=mtype, key_id=key_id)
        if mtype == "load_program":
            text = msg.get("text")
            if not isinstance(text, str):
                raise ProtocolError("load_program needs a text field")
            return cls(type=mtype, text=text)
        if mtype == "config_update":
            config = msg.get("config")
            if not isinstance(config, dict):
                raise ProtocolError("config_update needs a config object")
            return cls(type=mtype, config=config)
        return cls(type=mtype)


@dataclass(frozen=True)
class ServerEvent:
    seq: int
    type: str
    data: dict

    def to_dict(self) -> dict:
        return {"seq": self.seq, "type": self.type, **self.data}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), ensure_ascii=False)


def decode_client_line(line: str) -> ClientEvent:
    try:
        msg = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"not valid JSON: {exc}") from None
    return ClientEvent.from_dict(msg)


class Session:
    """One user's event loop state; handle() is the only entry point.

    Sessions share nothing mutable.  The caller must serialize handle()
    invocations (the server funnels each connection through one queue).
    """

    def __init__(self, config: EngineConfig | None = None,
                 layout: Layout | None = None):
        self.config = config or EngineConfig()
        self.config.validate()
        self.layout = layout if layout is not None \
            else load_layout_source(self.config.layout_path)
        self.scanner = Scanner(self.layout, self.config.scan)
        self.env = logo.Environment()
        self.buffer = ""
        self._selections: list[str] = []  # text appended per selection
        self._seq = 0
        self._help_cache: dict[str, list[list[float]]] = {}

    # --- event plumbing ---------------------------------------------------

    def _emit(self, etype: str, **data: object) -> ServerEvent:
        self._seq += 1
        return ServerEvent(seq=self._seq, type=etype, data=data)

    def _error(self, code: str, message: str) -> ServerEvent:
        return self._emit("error", code=code, message=message)

    def handle(self, event: ClientEvent | dict) -> list[ServerEvent]:
        """Process one client event, returning the server events it caused."""
        if isinstance(event, dict):
            try:
                event = ClientEvent.from_dict(event)
            except ProtocolError as exc:
                return [self._error("bad_message", str(exc))]
        handler = getattr(self, f"_on_{event.type}", None)
        if handler is None:
            return [self._error("bad_message",
                                f"unknown client event type {event.type!r}")]
        return handler(event)

    def handle_line(self, line: str) -> list[ServerEvent]:
        """Wire entry point: one JSON line in, server events out."""
        try:
            event = decode_client_line(line)
        except ProtocolError as exc:
            return [self._error("bad_message", str(exc))]
        return self.handle(event)

    # --- scanning ---------------------------------------------------------

    def _translate_scan(self, scan_events) -> list[ServerEvent]:
        out: list[ServerEvent] = []
        for ev in scan_events:
            if ev.kind == "focus_changed":
                out.append(self._emit("focus", path=list(ev.path), level=ev.level))
            elif ev.kind == "descended":
                pass  # the focus_changed that follows carries the same path
            elif ev.kind == "ascended":
                out.append(self._emit("focus", path=list(self.scanner.path),
                                      level=self.scanner.level_name))
            elif ev.kind == "deactivated":
                out.append(self._emit("focus", path=[], level="inactive"))
            elif ev.kind == "selected":
                out.extend(self._apply_selection(ev.key_id))
        return out

    def _on_switch_press(self, event: ClientEvent) -> list[ServerEvent]:
        return self._translate_scan(self.scanner.press())

    def _on_clock_tick(self, event: ClientEvent) -> list[ServerEvent]:
        return self._translate_scan(self.scanner.tick())

    def _on_pointer_select(self, event: ClientEvent) -> list[ServerEvent]:
        try:
            scan_events = self.scanner.pointer_select(event.key_id)
        except LayoutError as exc:
            return [self._error("unknown_key", str(exc))]
        return self._translate_scan(scan_events)

    def _apply_selection(self, key_id: str) -> list[ServerEvent]:
        key = self.layout.lookup(key_id)
        assert key is not None  # selections originate from the layout
        out = [self._emit("key_selected", key_id=key.id, output=key.output)]
        if key.kind == "control":
            if key.id == "enter":
                self.buffer += "\n"
                self._selections.append("\n")
            elif key.id == "space":
                self.buffer += " "
                self._selections.append(" ")
            elif key.id == "backspace":
                if self._selections:
                    last = self._selections.pop()
                    if last:
                        self.buffer = self.buffer[: -len(last)]
            elif key.id == "clear":
                self.buffer = ""
                self._selections.clear()
        else:
            self.buffer += key.output
            self._selections.append(key.output)
        out.append(self._emit("buffer_changed", text=self.buffer))
        return out

    # --- hover help ---------------------------------------------------------

    def _help_segments(self, key_id: str, example: str) -> list[list[float]]:
        if key_id not in self._help_cache:
            scratch = logo.Environment()
            try:
                report = logo.run(example, scratch)
                segments = [list(seg) for seg in report.segments]
            except logo.LogoError:
                segments = []
            self._help_cache[key_id] = segments
        return self._help_cache[key_id]

    def _on_pointer_hover(self, event: ClientEvent) -> list[ServerEvent]:
        key = self.layout.lookup(event.key_id)
        if key is None:
            return [self._error("unknown_key", f"unknown key id {event.key_id!r}")]
        out: list[ServerEvent] = []
        if self.config.zoom_enabled:
            out.append(self._emit("zoom", key_id=key.id))
        if self.config.voice_enabled:
            out.append(self._emit("speak", text=key.label))
        if key.help is not None:
            out.append(self._emit(
                "help", key_id=key.id, summary=key.help.summary,
                example=key.help.example,
                example_segments=self._help_segments(key.id, key.help.example),
            ))
        return out

    # --- buffer and interpreter ----------------------------------------------

    def _on_run_buffer(self, event: ClientEvent) -> list[ServerEvent]:
        source = self.buffer
        out: list[ServerEvent] = []
        try:
            report = logo.run(source, self.env)
        except logo.LogoError as exc:
            out.append(self._error("logo_error", str(exc)))
        else:
            for line in report.printed:
                out.append(self._emit("printed", line=line))
            if report.cleared:
                out.append(self._emit("turtle_reset"))
            out.append(self._emit(
                "turtle_segments",
                segments=[list(seg) for seg in report.segments]))
        self.buffer = ""
        self._selections.clear()
        out.append(self._emit("buffer_changed", text=""))
        return out

    def _on_clear_buffer(self, event: ClientEvent) -> list[ServerEvent]:
        self.buffer = ""
        self._selections.clear()
        return [self._emit("buffer_changed", text="")]

    def _on_load_program(self, event: ClientEvent) -> list[ServerEvent]:
        self.buffer = event.text
        self._selections.clear()
        return [self._emit("buffer_changed", text=self.buffer)]

    # --- configuration ------------------------------------------------------

    def _on_config_update(self, event: ClientEvent) -> list[ServerEvent]:
        try:
            new_config = config_from_dict(event.config)
        except ConfigError as exc:
            return [self._error("invalid_config", str(exc))]
        if new_config.layout_path != self.config.layout_path:
            try:
                new_layout = load_layout_source(new_config.layout_path)
            except LayoutError as exc:
                return [self._error("invalid_config", str(exc))]
            self.layout = new_layout
            self.scanner = Scanner(new_layout, new_config.scan)
            self._help_cache.clear()
        else:
            self.scanner.reconfigure(new_config.scan)
        self.config = new_config
        return [self._emit("config_echo", config=config_to_dict(self.config))]
