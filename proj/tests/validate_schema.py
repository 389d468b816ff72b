"""Run every kvsp subcommand and validate its JSON against the output schema."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def run(cli, args, expected_exit):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode != expected_exit:
        raise AssertionError(f"{args}: exit {proc.returncode}, expected {expected_exit}\n{proc.stdout}{proc.stderr}")
    return json.loads(proc.stdout)


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)

    cases = [
        (["sample", "--count", "3", "--seed", "1"], 0),
        (["discriminant"], 0),
        (["covers", "--seed", "2"], 0),
        (["orbits"], 0),
        (["chart", "--params", "0.3,-0.7,0.45"], 0),
        (["probe-fiber", "--L0", "1,1,1", "--count", "10"], 0),
        (["decompose", "--L", "1,0,0", "--M", "0,1,0"], 2),
        (["decompose", "--L", "1,1,1", "--M", "1,0.5,0.25"], 2),
        (["chart", "--params", "0,0,0.5"], 2),
        (["sample", "--count", "0"], 1),
    ]

    sample = run(cli, ["sample", "--count", "1", "--seed", "5"], 0)
    pair = sample["p2"][0]
    fmt = lambda p: ",".join(f"{z[0]!r}:{z[1]!r}" for z in p)
    decompose_args = ["decompose", f"--L={fmt(pair['L'])}", f"--M={fmt(pair['M'])}"]
    decomposed = run(cli, decompose_args, 0)
    cases.append((decompose_args, 0))

    with tempfile.TemporaryDirectory() as tmp:
        good = os.path.join(tmp, "good.json")
        with open(good, "w") as f:
            json.dump(decomposed, f)
        cases.append((["verify", "--in", good], 0))
        bad = os.path.join(tmp, "bad.json")
        decomposed["decomposition"]["entries"][0]["lambda"][0] *= 1.01
        with open(bad, "w") as f:
            json.dump(decomposed, f)
        cases.append((["verify", "--in", bad], 3))
        cases.append((["verify", "--in", os.path.join(tmp, "missing.json")], 1))

        failures = 0
        for args, code in cases:
            try:
                doc = run(cli, args, code)
                errors = sorted(validator.iter_errors(doc), key=str)
                if errors:
                    raise AssertionError(f"{args}: {errors[0].message} at {list(errors[0].path)}")
                print(f"ok   {' '.join(args)}")
            except AssertionError as e:
                failures += 1
                print(f"FAIL {e}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
