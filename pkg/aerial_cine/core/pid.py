from logging import getLogger

from aerial_cine.core.config import SimConfig
from aerial_cine.models.sim import PidState

logger = getLogger(__name__)


def _clamp(value: float, limit: float) -> float:
    return max(-limit, min(limit, value))


def pid_update(pid: PidState, error_px: tuple[float, float], dt: float) -> tuple[float, float]:
    """
    One control cycle of the two-axis composition corrector. Mutates `pid`.

    Errors are normalized by the image size (e_x / width, e_y / height). Per axis the output is
    `kp * e + ki * integral + kd * (e - e_prev)`, all gains in degrees per unit of normalized
    error. The derivative acts on the change over one control cycle and is zero on the first
    cycle after a reset.

    The integral (normalized error * s) only grows while the error is not shrinking, is cleared
    when the error changes sign, and is clamped to `pid.integral_limit`. The caller accumulates
    the outputs into the orientation correction.

    Returns:
        (dyaw_deg, dpitch_deg), each clamped to `pid.clamp_deg`. Positive outputs follow the
        error direction, so the caller subtracts them from yaw and pitch.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    width, height = pid.image_size
    error = (error_px[0] / width, error_px[1] / height)
    outputs = []
    for axis, gains in enumerate((pid.yaw, pid.pitch)):
        e = error[axis]
        previous = None if pid.prev_error is None else pid.prev_error[axis]
        if previous is not None and e * previous < 0:
            pid.integral[axis] = 0.0
        elif previous is not None and abs(e) >= abs(previous):
            pid.integral[axis] = _clamp(pid.integral[axis] + e * dt, pid.integral_limit)
        derivative = 0.0 if previous is None else e - previous
        raw = gains.kp * e + gains.ki * pid.integral[axis] + gains.kd * derivative
        outputs.append(_clamp(raw, pid.clamp_deg))
    pid.prev_error = error
    return outputs[0], outputs[1]


class PidController:
    """
    Holds a `PidState` and the orientation correction accumulated from its outputs.
    With a static subject and no drift the screen error shrinks every cycle.
    """

    def __init__(
        self, state: PidState, initial_yaw_deg: float = 0.0, initial_pitch_deg: float = 0.0
    ):
        self.state = state
        self.initial = (initial_yaw_deg, initial_pitch_deg)
        self.yaw_correction_deg = initial_yaw_deg
        self.pitch_correction_deg = initial_pitch_deg

    @classmethod
    def from_config(cls, config: SimConfig) -> "PidController":
        yaw, pitch = config.pid_gains
        state = PidState(
            yaw=yaw,
            pitch=pitch,
            image_size=(config.width_px, config.height_px),
            clamp_deg=config.pid_clamp_deg,
            integral_limit=config.pid_integral_limit,
        )
        return cls(
            state,
            initial_yaw_deg=config.initial_yaw_offset_deg,
            initial_pitch_deg=config.initial_pitch_offset_deg,
        )

    def update(self, error_px: tuple[float, float] | None, dt: float) -> tuple[float, float]:
        """Feed one measurement. `None` (subject not visible) leaves everything as is."""
        if error_px is None:
            return 0.0, 0.0
        dyaw, dpitch = pid_update(self.state, error_px, dt)
        self.yaw_correction_deg -= dyaw
        self.pitch_correction_deg -= dpitch
        return dyaw, dpitch

    def reset(self) -> None:
        """Clear the PID memory and return to the initial correction"""
        self.state.reset()
        self.yaw_correction_deg, self.pitch_correction_deg = self.initial
