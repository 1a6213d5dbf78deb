"""
Periodic solutions of one rule
==============================

A 3-state rule, its configuration digraph at spatial period 3 and its
label digraph at temporal period 2.  Both routes end at the same tile.
"""
from periodic_ca import digraph, parse_rule
from periodic_ca.render import spacetime
from periodic_ca.tile import tile_metrics

rule = parse_rule("021102022", 3)
print(rule.as_matrix())  # row a, column b holds f(a, b)

# every word of length 3 has exactly one successor; cycles are the periodic orbits
for rec in digraph.find_config_cycles(rule, 3):
    words = " -> ".join("".join(map(str, w)) for w in rec.words)
    print(f"cycle {words:<18} period {rec.period}  tile {rec.tile}")

# only one cycle keeps the full spatial period
tiles = digraph.ps_with_spatial_period(rule, 3)
print("tiles at spatial period 3:", sorted(tiles))
print("smallest temporal period:", digraph.min_temporal_period(rule, 3))
for t in tiles:
    s, p, lag = tile_metrics(t)
    print(f"states {s}, assigned pairs {p}, lag {lag}")

# fix the temporal period instead; labels are columns of length 2
for label in ("00", "02", "10", "12", "21"):
    succ = ["".join(map(str, b)) for b in digraph.label_successors(rule, tuple(map(int, label)))]
    print(f"{label} -> {succ}")
print("tiles from closed walks of length 3:", sorted(digraph.ps_from_label_cycles(rule, 2, 3)))

# the trajectory itself, two spatial periods wide
for row in spacetime(rule, (1, 2, 0), 5, repeat_width=2):
    print("".join(map(str, row)))
