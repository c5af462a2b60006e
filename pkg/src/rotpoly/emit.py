"""Byte-stable report emission: canonical JSON and CSV."""
from __future__ import annotations

import json


def to_json(report: dict) -> str:
    """Canonical JSON: sorted keys, LF, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _csv(header: list, rows: list) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def to_csv(report: dict) -> str:
    """CSV rendering of each report family the pipelines produce."""
    if "alphas" in report:
        return _csv(
            ["k", "l", "alpha", "alpha_sq"],
            [[r["k"], r["l"], r["alpha"], r["alpha_sq"]] for r in report["alphas"]],
        )
    if "moments" in report and "checks" not in report and "factorizable" not in report:
        rows = report["moments"]
        if rows and isinstance(rows[0], dict):
            return _csv(["n", "moment"], [[r["n"], r["value"]] for r in rows])
        return _csv(["n", "moment"], list(enumerate(rows)))
    if "factorizable" in report:
        worst = report.get("worst_entry", [None, None])
        return _csv(
            ["factorizable", "q", "c", "log_residual", "worst_k", "worst_l"],
            [
                [
                    report["factorizable"],
                    report.get("q", ""),
                    report.get("c", ""),
                    report["log_residual"],
                    worst[0],
                    worst[1],
                ]
            ],
        )
    if "checks" in report:
        return _csv(
            ["check", "max_residual", "passed"],
            [[c["check"], c["max_residual"], c["passed"]] for c in report["checks"]],
        )
    # generic fallback: key,value pairs in sorted order
    return _csv(
        ["key", "value"],
        [[k, json.dumps(v, sort_keys=True)] for k, v in sorted(report.items())],
    )


def write_artifact(text: str, path: str | None) -> None:
    if path is None:
        print(text, end="")
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
