"""
Using the command line
======================

Instance files list the size, the rigidity flags and one line per pair.
The same commands are available as ``rifle <command>`` once installed.
"""

import json
import tempfile
from pathlib import Path

from rifle import catalog
from rifle.cli import main
from rifle.io import outcome_to_json, serialize_instance

work = Path(tempfile.mkdtemp())
market = work / "weak.txt"
market.write_text(serialize_instance(catalog.weak_blocking_market()))
print(market.read_text())

main(["solve", str(market), "--text"])
main(["nondegen", str(market), "--text"])

outcome = work / "outcome.json"
outcome.write_text(json.dumps(outcome_to_json(catalog.weak_blocking_outcome())))
main(["verify", str(market), str(outcome)])

# a random market, reproducible from its seed
main(["gen", "--n", "3", "--max-value", "5", "--rigid-prob", "0.5", "--seed", "4"])
