import pytest

from kpack.geometry import Family, Point, Region


def rect(x0, y0, x1, y1, id=None) -> Region:
    return Region.from_coords([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], id)


def family(*members, **metadata) -> Family:
    return Family(tuple(members), metadata)


def plus_sign():
    """A horizontal and a vertical bar crossing in the middle."""
    return rect(0, 2, 6, 4, "h"), rect(2, 0, 4, 6, "v")


def c_shape(id="c"):
    # opening to the right; a bar through the opening splits A ∩ B in two
    return Region.from_coords(
        [[0, 0], [6, 0], [6, 2], [2, 2], [2, 4], [6, 4], [6, 6], [0, 6]], id
    )


def winding_number(ring, q: Point) -> int:
    """Plain winding number for points off the boundary."""
    w = 0
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        cross = (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y)
        if a.y <= q.y < b.y and cross > 0:
            w += 1
        elif b.y <= q.y < a.y and cross < 0:
            w -= 1
    return w


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one acceptance line; the lines are echoed in the run summary."""

    def _report(label: str, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
