"""End-to-end sweep pipeline: config -> data files -> threshold report.

The same pipeline is exposed on the command line as
`dickelab scan <config.json>` / `dickelab compare <data-dir>`.
"""

import json
from pathlib import Path

from dickelab.scan import compare_report, load_rows, parse_config, run_scan

out_dir = Path("demo_output") / "sweep_n3"
config = parse_config({
    "schema_version": 1,
    "model": {"omega_a": 1.0, "omega_b": 1.0, "n_atoms": 3},
    "grid": {"start": 2.0, "stop": 3.0, "count": 11},
    "quantities": ["spectrum", "higgs", "mandel", "weights"],
    "output_dir": str(out_dir),
    "formats": ["csv", "json"],
})

written = run_scan(config)
print("files written:")
for path in written:
    print(f"  {path}")

manifest = json.loads((out_dir / "manifest.json").read_text())
print(f"\nmanifest: code {manifest['code_version']}, g_c = {manifest['critical_coupling']}, "
      f"{len(manifest['grid_g'])} grid points")

def show(report):
    print(f"{'quantity':<10} {'max dev':>10} {'median':>10} {'threshold':>10} {'status':>7}")
    for q in report.quantities:
        fmt = lambda v: "-" if v is None else f"{v:.4f}"
        status = "-" if q.passed is None else ("pass" if q.passed else "FAIL")
        print(f"{q.quantity:<10} {fmt(q.max_deviation):>10} {fmt(q.median_deviation):>10} "
              f"{fmt(q.threshold):>10} {status:>7}")
    print(f"overall: {'pass' if report.passed else 'FAIL'}")


rows = load_rows(out_dir)
print("\nreport with the default engineering bands:")
show(compare_report(rows))

print("\nThe optical weight C_o carries ~1/N finite-size corrections that exceed")
print("its default band at N = 3 (they shrink below 3% by N = 20, see demo 04).")
print("Rerunning with a band wide enough for N = 3:")
show(compare_report(rows, {"higgs": 0.10, "mandel": 0.08, "c_g": 0.15, "c_o": 0.40, "c_h": 0.10}))
