from pydantic import BaseModel, ConfigDict, Field, model_validator

from aerial_cine.types import RunMode


class Histogram(BaseModel):
    """
    Counts over consecutive bins `[edges[i], edges[i+1])`, the last bin closed on the right.
    Values at or beyond the last edge go to `overflow` when the histogram is open-ended.
    """

    edges: list[float]
    """Bin boundaries, ascending, length = len(counts) + 1"""
    counts: list[int]
    """Number of frames per bin"""
    overflow: int = Field(default=0, ge=0)
    """Frames beyond the last edge (open-ended histograms only)"""
    open_ended: bool = False
    """Whether the histogram has an overflow bin `[edges[-1], inf)`"""

    model_config = ConfigDict(use_attribute_docstrings=True)

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.edges) != len(self.counts) + 1:
            raise ValueError("edges must have exactly one more entry than counts")
        if any(b <= a for a, b in zip(self.edges, self.edges[1:])):
            raise ValueError("edges must be strictly ascending")
        if self.overflow and not self.open_ended:
            raise ValueError("only open-ended histograms may hold overflow")
        return self

    @property
    def total(self) -> int:
        return sum(self.counts) + self.overflow

    def rows(self) -> list[tuple[float, float, int]]:
        """(bin_lo, bin_hi, count) triples, including the overflow bin when open-ended"""
        rows = [(lo, hi, c) for lo, hi, c in zip(self.edges, self.edges[1:], self.counts)]
        if self.open_ended:
            rows.append((self.edges[-1], float("inf"), self.overflow))
        return rows


class RunReport(BaseModel):
    """Aggregate metrics of one simulation run (or a merge of runs of the same mode)"""

    mode: RunMode
    """Camera strategy that produced the frames"""
    avg_screen_error_ratio: float = Field(ge=0.0)
    """Mean of |screen error| / screen width over visible frames"""
    avg_viewpoint_error_deg: float = Field(ge=0.0, le=180.0)
    """Mean angular distance to the nearest global optimum over visible frames, degrees"""
    histogram_composition: Histogram
    """Screen error ratio distribution, 0.05-wide bins with a [0.5, inf) overflow bin"""
    histogram_viewpoint: Histogram
    """Viewpoint error distribution, 10-degree bins over [0, 180]"""
    frame_count: int = Field(ge=0)
    """All recorded frames, visible or not"""
    invisible_count: int = Field(ge=0)
    """Frames where the subject was behind the camera; excluded from averages and histograms"""

    model_config = ConfigDict(use_attribute_docstrings=True)

    @model_validator(mode="after")
    def check_counts(self):
        included = self.frame_count - self.invisible_count
        if included < 0:
            raise ValueError("invisible_count cannot exceed frame_count")
        for hist in (self.histogram_composition, self.histogram_viewpoint):
            if hist.total != included:
                raise ValueError(f"histogram holds {hist.total} frames, expected {included}")
        return self

    @property
    def visible_count(self) -> int:
        return self.frame_count - self.invisible_count


class ComparisonRow(BaseModel):
    """One metric compared across two runs. Lower values are better for every metric."""

    metric: str
    a: float
    b: float
    difference: float
    """a - b"""
    favored: str
    """Mode label with the lower value, or "tie" """

    model_config = ConfigDict(use_attribute_docstrings=True)


class ComparisonTable(BaseModel):
    """Side-by-side comparison of two reports"""

    label_a: str
    label_b: str
    rows: list[ComparisonRow]

    model_config = ConfigDict(use_attribute_docstrings=True)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    def to_text(self) -> str:
        """Aligned plain-text table"""
        header = ("Metric", self.label_a, self.label_b, "Difference", "Favored")
        body = [
            (row.metric, f"{row.a:.4f}", f"{row.b:.4f}", f"{row.difference:+.4f}", row.favored)
            for row in self.rows
        ]
        widths = [max(len(line[i]) for line in [header, *body]) for i in range(len(header))]
        lines = [
            "  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip()
            for line in [header, *body]
        ]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"
