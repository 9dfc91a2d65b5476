"""Virtual scanning keyboard for writing turtle graphics programs.

The package splits into five parts: keyboard layouts (`layout`), the
switch-access scanner (`scanner`), the turtle language interpreter
(`logo`), typing cost models (`cost`), and the session engine plus wire
protocol (`engine`, `server`).  Everything a host application needs is
re-exported here.
"""

from .cost import (CostReport, PhysicalModel, PlanError, direct_cost,
                   physical_cost, plan_selections, replay_matches,
                   replay_outputs, scanning_cost)
from .engine import (ClientEvent, ConfigError, EngineConfig, ProfileError,
                     ProtocolError, ServerEvent, Session, config_from_dict,
                     config_to_dict, decode_client_line, load_profile,
                     save_profile)
from .layout import (Group, HelpEntry, KeyDef, Layout, LayoutError, Subgroup,
                     default_layout, parse_layout, render)
from .logo import (Environment, LogoError, RunReport, TurtleState, run,
                   segments_to_svg, tokenize)
from .scanner import ScanConfig, ScanConfigError, ScanEvent, Scanner

__version__ = "1.0.0"

__all__ = [
    "ClientEvent", "ConfigError", "CostReport", "EngineConfig", "Environment",
    "Group", "HelpEntry", "KeyDef", "Layout", "LayoutError", "LogoError",
    "PhysicalModel", "PlanError", "ProfileError", "ProtocolError", "RunReport",
    "ScanConfig", "ScanConfigError", "ScanEvent", "Scanner", "ServerEvent",
    "Session", "TurtleState", "config_from_dict", "config_to_dict",
    "decode_client_line", "default_layout", "direct_cost", "load_profile",
    "parse_layout", "physical_cost", "plan_selections", "render",
    "replay_matches", "replay_outputs", "run", "save_profile", "scanning_cost",
    "segments_to_svg", "tokenize",
]
