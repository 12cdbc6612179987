from dataclasses import dataclass, field

import numpy as np

from aerial_cine.types import DescriptorKind
from aerial_cine.utils.angles import angular_distance, normalize_deg

DEFAULT_RADIUS = 2.5
"""Camera-to-subject horizontal distance, meters"""
DEFAULT_HEIGHT = 2.2
"""Camera height above the ground plane, meters"""


@dataclass(frozen=True)
class SubjectState:
    """Horizontal motion summary of the subject at one instant"""

    centroid_xy: tuple[float, float]
    centroid_z: float
    velocity_xy: tuple[float, float]
    """Windowed centroid displacement divided by the window, m/s"""
    window: float

    def __post_init__(self):
        if not self.window > 0:
            raise ValueError(f"window must be positive, got {self.window}")
        if not np.all(np.isfinite(self.velocity_xy)):
            raise ValueError("velocity must be finite")

    @property
    def speed(self) -> float:
        return float(np.hypot(*self.velocity_xy))

    @property
    def centroid(self) -> np.ndarray:
        return np.array([self.centroid_xy[0], self.centroid_xy[1], self.centroid_z])


@dataclass(frozen=True)
class ViewpointPolar:
    """Camera placement in the subject-centered polar frame"""

    azimuth_deg: float
    radius: float = DEFAULT_RADIUS
    height: float = DEFAULT_HEIGHT

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        object.__setattr__(self, "azimuth_deg", normalize_deg(self.azimuth_deg))

    def to_cartesian(self, center_xy) -> np.ndarray:
        """World position of the camera for a subject centered at `center_xy`"""
        a = np.radians(self.azimuth_deg)
        return np.array(
            [
                center_xy[0] + self.radius * np.cos(a),
                center_xy[1] + self.radius * np.sin(a),
                self.height,
            ]
        )


MAXIMIZER_TOL = 1e-9
"""Values within this of the map maximum count as global maximizers"""


@dataclass(frozen=True, eq=False)
class QualityMap:
    """Normalized viewpoint quality sampled at azimuths k * 360 / n"""

    values: np.ndarray = field(repr=False)
    active_descriptor: DescriptorKind

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or len(values) < 4:
            raise ValueError("a quality map needs at least 4 samples")
        if np.any(values < -1e-12) or np.any(values > 1.0 + 1e-12):
            raise ValueError("quality values must lie in [0, 1]")
        values = np.clip(values, 0.0, 1.0)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n_samples(self) -> int:
        return len(self.values)

    @property
    def bin_deg(self) -> float:
        return 360.0 / self.n_samples

    @property
    def azimuths(self) -> np.ndarray:
        return np.arange(self.n_samples) * self.bin_deg

    def index_of(self, azimuth_deg: float) -> int:
        """Nearest sample index (round half up, wrapping)"""
        return int(np.floor(normalize_deg(azimuth_deg) / self.bin_deg + 0.5)) % self.n_samples

    def azimuth_of(self, index: int) -> float:
        return (index % self.n_samples) * self.bin_deg

    def value_at(self, azimuth_deg: float) -> float:
        return float(self.values[self.index_of(azimuth_deg)])

    def maximizers(self) -> np.ndarray:
        """Indices of all global maxima (within `MAXIMIZER_TOL`)"""
        return np.flatnonzero(self.values >= self.values.max() - MAXIMIZER_TOL)

    def distance_to_maximizers(self, azimuth_deg: float) -> np.ndarray:
        return angular_distance(self.azimuths[self.maximizers()], azimuth_deg)
