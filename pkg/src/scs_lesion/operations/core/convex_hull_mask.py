from typing import Tuple
import logging
import numpy as np
from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask

# Slack for half-plane tests on scaled (non-integer) hull vertices.
EPSILON = 1e-9


def row_extremes(points: np.ndarray) -> np.ndarray:
    """Leftmost and rightmost point of every occupied row; same hull as the full set."""
    points = np.asarray(points).reshape(-1, 2)
    order = np.lexsort((points[:, 1], points[:, 0]))
    ordered = points[order]
    rows = ordered[:, 0]
    first = np.flatnonzero(np.r_[True, rows[1:] != rows[:-1]])
    last = np.r_[first[1:] - 1, len(ordered) - 1]
    return np.unique(np.concatenate((ordered[first], ordered[last])), axis=0)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_vertices(points: np.ndarray) -> np.ndarray:
    """
    Andrew's monotone chain over (row, col) points.

    Returns the hull vertices (k, 2) in a consistent winding with collinear
    points dropped; a single point or a segment come back as 1 or 2 vertices.
    """
    candidates = row_extremes(points) if len(points) > 2 else np.unique(np.asarray(points), axis=0)
    pts = sorted(map(tuple, candidates.tolist()))
    if len(pts) <= 2:
        return np.asarray(pts, dtype=np.float64).reshape(-1, 2)

    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        hull = [pts[0], pts[-1]]
    return np.asarray(hull, dtype=np.float64)


def row_spans(vertices: np.ndarray, width: int, height: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Column interval [lo, hi] of pixel centres inside the polygon for every row
    of its bounding box clipped to the grid. Empty rows have lo > hi.
    """
    vertices = np.asarray(vertices, dtype=np.float64).reshape(-1, 2)
    r_min = max(0, int(np.ceil(vertices[:, 0].min() - EPSILON)))
    r_max = min(height - 1, int(np.floor(vertices[:, 0].max() + EPSILON)))
    rows = np.arange(r_min, r_max + 1, dtype=np.float64)
    if len(rows) == 0:
        return rows.astype(int), rows.astype(int), rows.astype(int)

    lo = np.full(len(rows), max(0.0, vertices[:, 1].min() - EPSILON))
    hi = np.full(len(rows), min(width - 1.0, vertices[:, 1].max() + EPSILON))
    count = len(vertices)
    if count > 1:
        # orientation so that the interior lies where the cross product is >= 0
        sign = 1.0
        if count > 2:
            area2 = sum(
                vertices[i, 0] * vertices[(i + 1) % count, 1]
                - vertices[(i + 1) % count, 0] * vertices[i, 1]
                for i in range(count)
            )
            sign = 1.0 if area2 > 0 else -1.0
        # a two-vertex hull yields both half-planes of its supporting line
        for i in range(count):
            p = vertices[i]
            q = vertices[(i + 1) % count]
            dr, dc = q[0] - p[0], q[1] - p[1]
            # sign * (dr * (c - pc) - dc * (r - pr)) >= 0, linear in c
            a = sign * dr
            b = -sign * (dr * p[1] + dc * (rows - p[0]))
            if abs(a) < EPSILON:
                hi = np.where(b < -EPSILON, -1.0, hi)
            elif a > 0:
                lo = np.maximum(lo, -b / a - EPSILON)
            else:
                hi = np.minimum(hi, -b / a + EPSILON)

    lo_i = np.ceil(lo).astype(int)
    hi_i = np.floor(hi).astype(int)
    return rows.astype(int), lo_i, hi_i


def rasterize_polygon(vertices: np.ndarray, width: int, height: int) -> np.ndarray:
    """Boolean (height, width) grid of pixel centres inside or on the polygon."""
    bits = np.zeros((height, width), dtype=bool)
    rows, lo, hi = row_spans(vertices, width, height)
    for row, start, stop in zip(rows, lo, hi):
        if start <= stop:
            bits[row, start : stop + 1] = True
    return bits


def polygon_area(vertices: np.ndarray, width: int, height: int) -> int:
    """Pixel count of the rasterized polygon, without building the grid."""
    _, lo, hi = row_spans(vertices, width, height)
    return int(np.clip(hi - lo + 1, 0, None).sum())


class ConvexHullMask(Operation):
    """
    Rasterizes the convex hull of a pixel set
    """

    @classmethod
    def description(cls) -> str:
        return """Rasterizes the 2-D convex hull of the given pixel centres onto a
        width x height grid. Every input pixel stays foreground and the result is
        a fixed point: hulling it again reproduces it."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "pixels": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer"}},
                    "description": "List of [row, col] coordinates",
                },
                "width": {"type": "integer"},
                "height": {"type": "integer"},
            },
            "required": ["pixels", "width", "height"],
        }

    def vertices(self, pixels: np.ndarray) -> np.ndarray:
        pixels = np.asarray(pixels).reshape(-1, 2)
        if len(pixels) == 0:
            raise InvalidInputError("Convex hull of an empty pixel set is undefined")
        return hull_vertices(pixels)

    def area(self, pixels: np.ndarray, width: int, height: int) -> int:
        return polygon_area(self.vertices(pixels), width, height)

    def execute(self, pixels: np.ndarray, width: int, height: int) -> BinaryMask:
        """Pure function: pixel set → hull mask"""
        vertices = self.vertices(pixels)
        logging.debug("Convex hull with %d vertices", len(vertices))
        return BinaryMask(bits=rasterize_polygon(vertices, width, height))

    def execute_json(self, arguments: dict) -> BinaryMask:
        """JSON execution: process arguments and delegate to execute()"""
        pixels = self.argument(arguments, "pixels")
        if isinstance(pixels, BinaryMask):
            pixels = pixels.coordinates()
        if not isinstance(pixels, (list, np.ndarray)):
            raise TypeError(
                f"ConvexHullMask operation expects 'pixels' to be list, got {type(pixels)}"
            )
        width = self.argument(arguments, "width")
        height = self.argument(arguments, "height")
        if not isinstance(width, int) or not isinstance(height, int):
            raise TypeError("ConvexHullMask operation expects 'width' and 'height' to be int")
        return self.execute(np.asarray(pixels, dtype=int), width, height)
