"""Running the inequality verifier from Python.

A campaign runs registered properties on seeded random inputs. Reruns with
the same master seed give byte-identical report bodies, and a stored witness
replays to the same margin. Negative controls are expected to fail.
"""

import json

from matmeans.verify import PropertyCase, replay_witness, run_campaign, search_counterexample
from matmeans.verify.properties import det_counterexample, det_values

ids = ["thm-2.7-logsup", "thm-4.7", "prop-5.3", "cor-6.7", "rem-3.3-false", "sec6-det-counterexample"]
cases = [PropertyCase(i, dims=(2, 3, 4), trials=100, seed=7) for i in ids]
report = run_campaign(cases)
for v in report.verdicts:
    print(f"{v.id:26s} expected={v.expected:6s} failures={v.failures:3d}/{v.trials:<3d} worst={v.worst_margin:+.2e}")
print("unexpected outcomes:", report.unexpected or "none")
print("deterministic body:", report.body_json() == run_campaign(cases).body_json())

neg = next(v for v in report.verdicts if v.id == "rem-3.3-false")
witness = json.loads(json.dumps(neg.witness))
print(f"replayed witness margin {replay_witness(witness):+.6e} (stored {neg.worst_margin:+.6e})")

mid, prod = det_values(*det_counterexample())
print(f"det((AZ+ZA)/2) = {mid} while det A det Z = {prod}")

result = search_counterexample("conj-1.7", budget=300, seed=0)
print(f"conj-1.7 search: {result.evaluated} candidates, best margin {result.best_margin:+.2e}, witness: {result.witness is not None}")
