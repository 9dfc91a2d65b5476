"""Scan focus state machine: activation, descent, wrap, ascend, selection."""

import random

import pytest

from scanboard.layout import LayoutError
from scanboard.scanner import (MIN_PERIOD_MS, ScanConfig, ScanConfigError,
                               Scanner)

from helpers import (make_random_actions, make_random_layout,
                     make_random_scan_config, run_actions, select_by_scanning,
                     tiny_layout)


def scanner(config=None):
    return Scanner(tiny_layout(), config or ScanConfig())


def kinds(events):
    return [e.kind for e in events]


# --- configuration ---------------------------------------------------------

def test_default_config_is_valid():
    ScanConfig().validate()


@pytest.mark.parametrize("bad", [
    ScanConfig(period_ms=MIN_PERIOD_MS - 1),
    ScanConfig(period_ms="fast"),
    ScanConfig(repeat_cycles=0),
    ScanConfig(highlight_color=(256, 0, 0)),
    ScanConfig(highlight_color=(1, 2)),
    ScanConfig(sound_on="yes"),
    ScanConfig(post_select="hover"),
])
def test_invalid_configs_rejected(bad):
    with pytest.raises(ScanConfigError):
        bad.validate()


def test_scanner_validates_config_at_construction():
    with pytest.raises(ScanConfigError):
        scanner(ScanConfig(period_ms=10))


# --- activation and ticking -------------------------------------------------

def test_starts_inactive():
    s = scanner()
    assert s.mode == "inactive"
    assert s.path == ()
    assert s.tick() == []


def test_first_press_activates_at_group_zero():
    s = scanner()
    events = s.press()
    assert kinds(events) == ["focus_changed"]
    assert events[0].path == (0,)
    assert events[0].level == "group"


def test_tick_advances_focus():
    s = scanner()
    s.press()
    events = s.tick()
    assert kinds(events) == ["focus_changed"]
    assert events[0].path == (1,)


def test_tick_counter_is_monotone():
    s = scanner()
    s.press()
    for expected in (1, 2, 3):
        s.tick()
        assert s.tick_count == expected


def test_press_descends_through_levels():
    s = scanner()
    s.press()
    events = s.press()
    assert kinds(events) == ["descended", "focus_changed"]
    assert s.path == (0, 0)
    assert s.level_name == "subgroup"
    s.press()
    assert s.path == (0, 0, 0)
    s.press()
    assert s.path == (0, 0, 0, 0)
    assert s.level_name == "key"


def test_fifth_press_selects_and_resets():
    s = scanner()
    for _ in range(4):
        s.press()
    events = s.press()
    assert kinds(events) == ["selected", "focus_changed"]
    assert events[0].key_id == "aa"
    assert s.path == (0,)  # reset_to_top


def test_stay_in_row_keeps_focus_after_selection():
    s = scanner(ScanConfig(post_select="stay_in_row"))
    for _ in range(4):
        s.press()
    events = s.press()
    assert kinds(events) == ["selected"]
    assert s.path == (0, 0, 0, 0)
    assert s.level_name == "key"
    # selecting the same key again is now a single press
    again = s.press()
    assert kinds(again) == ["selected"]
    assert again[0].key_id == "aa"


# --- wrap, ascend, deactivate -----------------------------------------------

def test_wrap_at_group_level_deactivates_after_repeat_cycles():
    s = scanner(ScanConfig(repeat_cycles=2))
    s.press()  # groups: 2 siblings, focus 0
    assert s.tick()[0].path == (1,)
    assert s.tick()[0].path == (0,)   # wrap 1
    assert s.tick()[0].path == (1,)
    events = s.tick()                 # wrap 2
    assert kinds(events) == ["deactivated"]
    assert s.mode == "inactive"
    assert s.path == ()


def test_wrap_in_subgroup_ascends_and_keeps_parent_focus():
    s = scanner(ScanConfig(repeat_cycles=1))
    s.press()          # group level, focus 0
    s.tick()           # focus group 1
    s.press()          # descend: subgroup level of group 1 (1 subgroup)
    events = s.tick()  # single sibling wraps immediately
    assert kinds(events) == ["ascended"]
    assert events[0].path == (1,)
    assert events[0].level == "group"
    assert s.path == (1,)  # parent focus retained


def test_repeat_cycles_one_deactivates_on_first_wrap():
    s = scanner(ScanConfig(repeat_cycles=1))
    s.press()
    s.tick()
    events = s.tick()
    assert kinds(events) == ["deactivated"]


def test_wraps_counter_resets_on_descend():
    s = scanner(ScanConfig(repeat_cycles=2))
    s.press()
    s.tick()
    s.tick()  # wrap 1
    assert s.wraps_at_level == 1
    s.press()
    assert s.wraps_at_level == 0


def test_reconfigure_keeps_focus_state():
    s = scanner()
    s.press()
    s.press()
    s.tick()
    before = s.path
    s.reconfigure(ScanConfig(period_ms=300, repeat_cycles=1))
    assert s.path == before
    assert s.config.period_ms == 300
    with pytest.raises(ScanConfigError):
        s.reconfigure(ScanConfig(period_ms=1))


# --- selection -----------------------------------------------------------

def test_canonical_sequence_reaches_every_key_in_default_layout(layout):
    for key in layout.keys():
        s = Scanner(layout)
        log = select_by_scanning(s, layout.scan_path(key.id))
        selected = [e for e in log if e.kind == "selected"]
        assert [e.key_id for e in selected] == [key.id]


def test_selection_takes_four_presses_from_group_level():
    s = scanner()
    s.press()  # activate
    log = select_by_scanning(s, (0, 1, 0, 2))  # key "ff"
    presses = [e for e in log if e.kind in ("descended", "selected")]
    assert len(presses) == 4
    assert presses[-1].key_id == "ff"


def test_pointer_select_leaves_scan_state_untouched():
    s = scanner()
    s.press()
    s.tick()
    before = (s.mode, s.path, s.tick_count)
    events = s.pointer_select("cc")
    assert kinds(events) == ["selected"]
    assert events[0].key_id == "cc"
    assert (s.mode, s.path, s.tick_count) == before


def test_pointer_select_works_while_inactive():
    s = scanner()
    events = s.pointer_select("gg")
    assert kinds(events) == ["selected"]
    assert s.mode == "inactive"


def test_pointer_select_unknown_key():
    s = scanner()
    with pytest.raises(LayoutError):
        s.pointer_select("zz")


# --- determinism -----------------------------------------------------------

def test_replay_determinism_random_layouts():
    for seed in range(250):
        rng = random.Random(seed)
        layout = make_random_layout(rng)
        config = make_random_scan_config(rng)
        actions = make_random_actions(rng)
        log_a = run_actions(Scanner(layout, config), actions)
        log_b = run_actions(Scanner(layout, config), actions)
        assert log_a == log_b, f"seed {seed} diverged"
        for event in log_a:
            if event.kind in ("focus_changed", "descended", "ascended"):
                level = len(event.path) - 1
                assert 0 <= event.path[-1] < layout.siblings(
                    level, event.path + (0, 0, 0))


def test_focus_paths_always_resolve_to_real_keys():
    for seed in range(50):
        rng = random.Random(1000 + seed)
        layout = make_random_layout(rng)
        s = Scanner(layout, make_random_scan_config(rng))
        for action in make_random_actions(rng, max_len=120):
            events = s.press() if action == "press" else s.tick()
            for event in events:
                if event.kind == "selected":
                    assert layout.lookup(event.key_id) is not None
