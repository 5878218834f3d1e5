"""Regenerate the golden files under tests/data/golden.

Only rerun this on a deliberate format change; the tests compare against the
checked-in files byte for byte.
"""

import json
from pathlib import Path

from deciderlab import approx, machinefile
from deciderlab.enumeration import ONE_STATE_RANGE, encode_machine, index_of
from deciderlab.zoo import NAMED, delay_then_accept

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "golden"

BUDGETS = [1, 10, 100, 1000, 10000]
POPULATIONS = {
    "first10k": (0, 10**4),
    "one_state_2000": (ONE_STATE_RANGE[0], 2000),
}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    machines = dict(NAMED, **{"delay-then-accept-3": delay_then_accept(3)})
    enc = {
        name: {"bits": encode_machine(m), "index": index_of(m), "source": machinefile.serialize(m, name.replace("-", "_"))}
        for name, m in sorted(machines.items())
    }
    (OUT / "encodings.json").write_text(json.dumps(enc, indent=2, sort_keys=True) + "\n")
    for label, (start, n) in POPULATIONS.items():
        curve = approx.halting_curve(n, BUDGETS, start=start)
        failures = [approx.score(curve.records, b, BUDGETS[-1]) for b in BUDGETS[:-1]]
        (OUT / f"halting_{label}.json").write_text(approx.curve_json(curve, failures))
        (OUT / f"halting_{label}.csv").write_text(approx.records_csv(curve.records))


if __name__ == "__main__":
    main()
