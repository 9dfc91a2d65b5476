"""
Selecting keys with a single switch
===================================

A scanning keyboard highlights one item at a time; the clock moves the
highlight, a switch press activates it.  This script walks the focus to
the `fd` key and then to the digit page, narrating every state change.
"""

from scanboard import ScanConfig, Scanner, default_layout

layout = default_layout()
scanner = Scanner(layout, ScanConfig(period_ms=600, repeat_cycles=2))

print(f"layout: {layout.name}, {layout.key_count()} keys")
print(f"groups: {[g.label for g in layout.groups]}")
print()


def show(events):
    for e in events:
        where = "/".join(str(i) for i in e.path) or "-"
        extra = f" key={e.key_id}" if e.key_id else ""
        print(f"  {e.kind:<14} level={e.level or '-':<9} path={where}{extra}")


# The scanner starts asleep; the first press wakes it at the first group.
print("press (wake up):")
show(scanner.press())

# Group 0 is the Logo command group and `fd` lives in its first row,
# so three more presses descend straight to it...
for step in ("descend to subgroup", "descend to row", "descend to key"):
    print(f"press ({step}):")
    show(scanner.press())

# ...and a final press selects the focused key.
print("press (select):")
show(scanner.press())

# Typing the digits of "30" means waiting for the clock to carry the
# focus to the second group first.  scan_path tells us how far away any
# key is; the cost model uses exactly this information.
print()
print(f"scan path of '3': {layout.scan_path('3')}")
print("tick (move focus to the letters/digits group):")
show(scanner.tick())

print()
print("every key is reachable this way; the scanner never blocks, "
      "time only advances when tick() is called.")
