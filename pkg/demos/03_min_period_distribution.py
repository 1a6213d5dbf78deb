"""
Smallest temporal period of a random rule
=========================================

Sample random rules, record the smallest temporal period at a fixed
spatial period, and compare with the limit CDF.  Writes an SVG chart
next to this script.
"""
from pathlib import Path

from periodic_ca.experiments import ExperimentConfig, run, svg_chart

config = ExperimentConfig(n=60, mode="min_temporal", sigma=2, samples=2000, master_seed=7, y_max=8)
result = run(config)

print("value counts:", result.counts)
for emp, ref in zip(result.estimates["cdf"], result.theory["cdf"]):
    print(f"y={emp['y']:<2}  empirical {emp['p']:.4f}  [{emp['lo']:.4f}, {emp['hi']:.4f}]  limit {ref['p']:.4f}")
print(f"largest CDF gap {result.deviations['max_abs_cdf']:.4f}, {result.runtime:.1f}s")

out = Path(__file__).with_suffix(".svg")
out.write_text(svg_chart(result))
print("chart written to", out)
