"""
Driving a session over the wire protocol
========================================

A user interface talks to the engine in line-delimited JSON: one client
event per line in, one server event per line out.  The engine is fully
event-sourced; the scan clock itself arrives as an event, so a recorded
session replays identically.  This script plays a short session and
shows both sides of the conversation.
"""

import json

from scanboard import Session

session = Session()

# A hover inspects a key without selecting it: the UI gets a zoom cue
# and a help entry whose example comes with ready-to-draw segments.
script = [
    {"type": "pointer_hover", "key_id": "repeat"},
    {"type": "switch_press"},                       # wake the scanner
    {"type": "clock_tick"},                         # focus: group 1
    {"type": "switch_press"},                       # enter the group
    {"type": "pointer_select", "key_id": "fd"},     # or just point
    {"type": "pointer_select", "key_id": "3"},
    {"type": "pointer_select", "key_id": "0"},
    {"type": "run_buffer"},                         # run "fd 30"
    {"type": "config_update", "config": {"scan": {"period_ms": 400}}},
    {"type": "pointer_select", "key_id": "oops"},   # errors stay in-band
]

for event in script:
    line = json.dumps(event)
    print(f"-> {line}")
    for out in session.handle_line(line):
        text = out.to_json()
        if len(text) > 100:
            text = text[:97] + "..."
        print(f"   <- {text}")

print()
print(f"final buffer: {session.buffer!r} (run_buffer cleared it)")
print(f"scan period now: {session.config.scan.period_ms} ms")
