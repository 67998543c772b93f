"""Run the whole identity verification suite at desk scale and print the
report.  Every check is an exact polynomial identity; nothing is sampled
with floating point anywhere."""

import json

from macq import verify_suite

report = verify_suite(max_cells=4, n_vars=3)
for check in report["checks"]:
    status = "PASS" if check["pass"] else "FAIL"
    print(f"{status}  [{check['suite']}] {check['identity']}  ({check['seconds']}s)")
print()
print("overall:", "PASS" if report["pass"] else "FAIL")
print()
print("machine-readable form:")
print(json.dumps(report, sort_keys=True)[:400], "...")
