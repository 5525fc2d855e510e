"""Drive the command line end to end: simulate, re-run from the recorded
config, and confirm the counts artifact is byte-identical."""
import json
import pathlib
import subprocess
import sys
import tempfile

out = pathlib.Path(tempfile.mkdtemp())


def opucz(*args):
    r = subprocess.run([sys.executable, "-m", "opucz.cli", *args],
                       capture_output=True, text=True)
    print(f"$ opucz {' '.join(args)}")
    if r.stdout:
        print("  " + r.stdout.strip().replace("\n", "\n  "))
    if r.returncode != 0:
        print("  stderr:", r.stderr.strip())
    return r


opucz("variance-limit", "--s", "0.3", "--t", "0.6", "--method", "closed")
opucz("intensity", "--limit", "--z", "0.2", "--w", "-0.3")
opucz("basis", "--alphas", "decay:1:1", "--n", "8")

run1 = out / "run1"
opucz("simulate", "--alphas", "zero", "--n", "30", "--region",
      "annulus:0:0.5", "--trials", "60", "--seed", "7",
      "--out", str(run1))

summary = json.loads((out / "run1.summary.json").read_text())
print(f"\nsummary: mean={summary['mean']:.4f} variance={summary['variance']:.4f}"
      f" excluded={summary['excluded']}")

# the summary is itself a config: replay it and diff the counts
run2 = out / "run2"
opucz("simulate", "--config", str(out / "run1.summary.json"),
      "--out", str(run2))
same = (run1.with_suffix(".counts.csv").read_bytes()
        == run2.with_suffix(".counts.csv").read_bytes())
print(f"replayed counts byte-identical: {same}")
