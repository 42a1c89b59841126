"""Collects one verdict line per acceptance criterion across the test session."""


class _Results:
    def __init__(self):
        self._rows = {}

    def record(self, number, title, ok, detail, elapsed):
        self._rows[number] = (title, ok, detail, elapsed)

    def __bool__(self):
        return bool(self._rows)

    def lines(self):
        out = []
        for n in sorted(self._rows):
            title, ok, detail, elapsed = self._rows[n]
            out.append(f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}  {title}: {detail}  [{elapsed:.1f}s]")
        return out


RESULTS = _Results()
