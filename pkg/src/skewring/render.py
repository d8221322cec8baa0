"""Deterministic text rendering of report dicts.

The text view is a flat sorted walk of the JSON structure, so the two
output formats carry exactly the same fields.
"""


def render_text(report):
    lines = []

    def walk(prefix, v):
        if isinstance(v, dict):
            if not v:
                lines.append(f"{prefix}: {{}}")
            for k in sorted(v, key=str):
                walk(f"{prefix}.{k}" if prefix else str(k), v[k])
        elif isinstance(v, list):
            if not v:
                lines.append(f"{prefix}: []")
            elif all(not isinstance(x, (dict, list)) for x in v):
                lines.append(f"{prefix}: [{', '.join(str(x) for x in v)}]")
            else:
                for i, x in enumerate(v):
                    walk(f"{prefix}[{i}]", x)
        else:
            lines.append(f"{prefix}: {v}")

    walk("", report)
    return "\n".join(lines)
