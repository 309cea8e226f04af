"""Collects per-criterion outcomes for the end-of-session summary."""

RESULTS: dict = {}


def record(criterion: int, part: str, ok: bool, detail: str = "") -> None:
    RESULTS.setdefault(criterion, []).append((part, ok, detail))


def summary_lines() -> list:
    lines = []
    for crit in sorted(RESULTS):
        parts = RESULTS[crit]
        ok = all(p[1] for p in parts)
        failed = [f"{p[0]}: {p[2]}" for p in parts if not p[1]]
        text = f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({len(parts)} checks)"
        if failed:
            text += "; failing: " + "; ".join(failed)
        lines.append(text)
    return lines
