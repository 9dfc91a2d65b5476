"""
How many presses does a program cost?
=====================================

The same program can be entered three ways: typed on a physical
keyboard, tapped key by key with a pointer on the virtual keyboard, or
selected with a single switch through scanning.  The cost model counts
presses for each and estimates scan time.
"""

from importlib import resources

from scanboard import (ScanConfig, default_layout, direct_cost,
                       physical_cost, plan_selections, replay_outputs,
                       scanning_cost)

program = (resources.files("scanboard") / "data" / "square.logo"
           ).read_text(encoding="utf-8")
layout = default_layout()

print("program:")
for line in program.splitlines():
    print(f"  {line}")
print()

# The planner turns the text into the key selections a user would make.
# Whole-command keys carry their trailing space, so `fd ` is one press,
# not three.
plan = plan_selections(program, layout)
print(f"selection plan ({len(plan)} selections):")
print("  " + " ".join(plan))
print()

# Replaying the plan reproduces the program (token for token).
print("replayed text:")
for line in replay_outputs(plan, layout).splitlines():
    print(f"  {line}")
print()

# Side by side: the virtual keyboard halves the press count, scanning
# multiplies it by the four hierarchy levels but stays fully switch-
# accessible.
reports = [
    physical_cost(program),
    direct_cost(plan),
    scanning_cost(plan, layout, ScanConfig(period_ms=600)),
]
print(f"{'method':<10} {'presses':>8} {'scan_ticks':>11} {'est_time_ms':>12}")
for r in reports:
    print(f"{r.method:<10} {r.presses:>8} {r.scan_ticks:>11} "
          f"{r.est_time_ms:>12}")
print()

# Scan time scales linearly with the highlight period.
for period in (300, 600, 1200):
    r = scanning_cost(plan, layout, ScanConfig(period_ms=period))
    print(f"period {period:>5} ms -> estimated {r.est_time_ms / 1000:.1f} s")
