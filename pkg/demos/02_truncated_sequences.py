"""
Bounds of truncated sequence examples
=====================================

Optimal biframe bounds of finite truncations approach the limiting bounds.
"""

from biframe.sequences import EXAMPLES, bound_trajectory, non_bessel_witness

for key, Ns in [("ex32", [2, 10, 100, 1000]), ("ex44", [3, 30, 300]), ("ex45", [2, 20, 200])]:
    report = bound_trajectory(EXAMPLES[key], Ns)
    print(f"{key}: {EXAMPLES[key].description}")
    print(f"  limits ({report.limit_lower}, {report.limit_upper})")
    for N, lower, upper, defect in report.entries:
        print(f"  N={N:5d}  lower={lower:.10f}  upper={upper:.10f}  ||G - I||={defect:.2e}")

# Each family alone is unbounded: the upper frame bounds grow with N.
for N in (4, 16, 64):
    print("ex32 upper frame bounds at N =", N, non_bessel_witness(EXAMPLES["ex32"], N))
