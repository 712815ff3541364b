"""The whole pipeline on the bundled fixture.

Hypotheses -> pairs -> scores -> predictions -> report, each stage
persisted under the output directory. Equivalent to:

    zentail run --config fixtures/e2e/config.json
"""

import tempfile
from pathlib import Path

from zentail import RunConfig, run_pipeline

fixture = Path(__file__).resolve().parent.parent / "fixtures" / "e2e"

config = RunConfig.from_file(fixture / "config.json")
config.out_dir = tempfile.mkdtemp(prefix="zentail-demo-")

report = run_pipeline(config)
print(report.to_text())

print("artifacts in", config.out_dir)
for path in sorted(Path(config.out_dir).iterdir()):
    print("  ", path.name)
