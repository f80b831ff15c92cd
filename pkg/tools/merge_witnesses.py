"""Merge harvested witness files, keeping the smallest instance per case label."""

import json
import sys

out, *inputs = sys.argv[1:]
best: dict = {}
for path in inputs:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (FileNotFoundError, json.JSONDecodeError):
        continue
    for label, w in data.items():
        if label not in best or (w["m"], w["n"]) < (best[label]["m"], best[label]["n"]):
            best[label] = w
with open(out, "w") as fh:
    json.dump(dict(sorted(best.items())), fh, indent=None, separators=(",", ":"))
    fh.write("\n")
print(sorted((k, v["m"]) for k, v in best.items()))
