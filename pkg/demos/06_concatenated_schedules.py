"""Concatenated schedules: gluing construction fragments end to end.

A concatenated schedule runs fragment 1 for its stopping time, then
continues with fragment 2's stage parameters from the tower fragment 1
reached (any h0 declared by a later fragment is ignored; compatibility of
heights is forced by running the recurrence straight through).  Stopping
times are explicit caller inputs.
"""

import json

from cfrank import Schedule, affine, build_levels, concatenate, const
from cfrank.schedule import schedule_from_json, schedule_to_json

# a pure staircase warm-up, then a high staircase with thick spacers
frag1 = Schedule("pure", h0=2, r=const(2), z=const(0))
frag2 = Schedule("thick", h0=999, r=affine(3, 1), z=const(5))  # h0 ignored

joined = concatenate([(frag1, 2), (frag2, 3)])
levels = build_levels(joined, depth=7)
print("name:   ", joined.name)
print("r per stage:", levels.r[:7])
print("z per stage:", levels.z)
print("heights:", list(levels.h))

# fragment 2 keeps going past its stopping time: stage 5 uses its stage-3 law
assert joined.r.at(5) == frag2.r.at(3)

# the same thing as a JSON document with a fragments list
doc = {
    "fragments": [
        dict(schedule_to_json(frag1), stopping_time="2"),
        dict(schedule_to_json(frag2), stopping_time="3"),
    ]
}
again = schedule_from_json(doc)
assert build_levels(again, 7).h == levels.h
print("\nflattened schedule document:")
print(json.dumps(schedule_to_json(joined), indent=2)[:400], "...")
