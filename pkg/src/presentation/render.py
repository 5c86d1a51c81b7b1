"""Human text rendering of report payloads and check listings."""

import json
from typing import Any, Iterable

from src.presentation.schemas import CheckInfoSchema

VERDICT_MARKS = {
    "pass": "PASS",
    "fail": "FAIL",
    "domain-skip": "SKIP",
}


def render_report(payload: dict[str, Any]) -> str:
    """Render the same payload the JSON sink writes, one line per result."""
    lines = [
        f"verify {payload['engine_version']} (schema {payload['schema_version']}, seed {payload['seed']})",
        "",
    ]
    width = max((len(r["id"]) for r in payload["results"]), default=0)
    for result in payload["results"]:
        mark = VERDICT_MARKS.get(result["verdict"], result["verdict"].upper())
        line = f"{mark:<5} {result['id']:<{width}}"
        if "elapsed_seconds" in result:
            line += f"  {result['elapsed_seconds']:.3f}s"
        lines.append(line.rstrip())
        if result["verdict"] != "pass":
            lines.extend(_indent(_evidence(result["payload"]), 6))

    summary = payload["summary"]
    lines += [
        "",
        f"{summary.get('pass', 0)} passed, {summary.get('fail', 0)} failed, "
        f"{summary.get('domain-skip', 0)} skipped",
    ]
    return "\n".join(lines) + "\n"


def render_check_table(checks: Iterable[CheckInfoSchema]) -> str:
    rows = [(c.id, c.severity, c.parameters + (", slow" if c.slow else ""), c.title) for c in checks]
    if not rows:
        return ""
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    return "\n".join(
        f"{row[0]:<{widths[0]}}  {row[1]:<{widths[1]}}  {row[2]:<{widths[2]}}  {row[3]}" for row in rows
    ) + "\n"


def render_explanation(info: CheckInfoSchema, dumps: dict[str, list[str]]) -> str:
    lines = [
        f"{info.id}: {info.title}",
        f"section:    {info.section}",
        f"severity:   {info.severity}",
        f"parameters: {info.parameters}{' (slow)' if info.slow else ''}",
        f"anchor:     {info.anchor}",
    ]
    for name, model_lines in dumps.items():
        lines += ["", f"[{name}]"]
        lines.extend(_indent(model_lines, 2))
    return "\n".join(lines) + "\n"


def render_mapping(values: dict[str, str]) -> str:
    width = max((len(k) for k in values), default=0)
    return "".join(f"{key:<{width}} = {value}\n" for key, value in values.items())


def _evidence(payload: dict[str, Any]) -> list[str]:
    if not payload:
        return []
    if "message" in payload:
        return [f"{payload.get('error', 'error')}: {payload['message']}"]
    return json.dumps(payload, indent=2, sort_keys=True).splitlines()


def _indent(lines: Iterable[str], spaces: int) -> list[str]:
    pad = " " * spaces
    return [pad + line for line in lines]
