"""Validates a suite report file against docs/report.schema.json."""
import json
import sys

import jsonschema


def main() -> int:
    schema_path, report_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    with open(report_path) as f:
        reports = json.load(f)
    jsonschema.validate(reports, schema)
    for r in reports:
        if r["pass"] != (r["error"] is None and all(c["pass"] for c in r["checks"])):
            print(f"{r['lemma_tag']}: pass flag disagrees with its checks", file=sys.stderr)
            return 1
    print(f"{len(reports)} reports valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
