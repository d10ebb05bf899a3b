"""Simulated optical front end.

Renders the printed board as a reflectance image, generates the nine
detection masks and nineteen display masks, computes single-pixel
measurements (the inner product of an illumination pattern with the
scene, normalized by pattern area, plus additive Gaussian noise), and
classifies the nine intensities back into a game-state vector.

Rendering and mask generation are pure; `measure`/`scan_state` take an
explicit numpy Generator so parallel callers can keep independent
streams.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyMaskError,
    InvalidGeometryError,
)
from .game import Board, SquareState, board_from_codes
from .policy_table import OutputCode, OutputKind


@dataclass(frozen=True)
class Rect:
    """Axis-aligned pixel rectangle: origin (x0, y0), size (w, h)."""

    x0: int
    y0: int
    w: int
    h: int

    @property
    def slices(self) -> tuple[slice, slice]:
        return slice(self.y0, self.y0 + self.h), slice(self.x0, self.x0 + self.w)

    def inside(self, width: int, height: int) -> bool:
        return (
            0 <= self.x0 and 0 <= self.y0
            and self.x0 + self.w <= width and self.y0 + self.h <= height
            and self.w > 0 and self.h > 0
        )

    def overlaps(self, other: "Rect") -> bool:
        return not (
            self.x0 + self.w <= other.x0 or other.x0 + other.w <= self.x0
            or self.y0 + self.h <= other.y0 or other.y0 + other.h <= self.y0
        )


@dataclass(frozen=True)
class GeometryConfig:
    """Pixel layout of the board image.

    Nine square regions in row-major order plus the two status strips
    ("You lose" on top, "You win" at the bottom). All eleven regions
    must fit in the image and be pairwise disjoint.
    """

    width: int
    height: int
    squares: tuple[Rect, ...]
    top_strip: Rect
    bottom_strip: Rect

    def __post_init__(self) -> None:
        if len(self.squares) != 9:
            raise InvalidGeometryError("expected 9 square regions")
        regions = (*self.squares, self.top_strip, self.bottom_strip)
        for r in regions:
            if not r.inside(self.width, self.height):
                raise InvalidGeometryError(f"region {r} outside {self.width}x{self.height} image")
        for i, a in enumerate(regions):
            for b in regions[i + 1:]:
                if a.overlaps(b):
                    raise InvalidGeometryError(f"regions {a} and {b} overlap")

    def square(self, index: int) -> Rect:
        """Region of square `index` (1..9)."""
        if not 1 <= index <= 9:
            raise ValueError(f"square must be in 1..9, got {index}")
        return self.squares[index - 1]

    @staticmethod
    def make(
        width: int = 240,
        height: int = 320,
        square_side: int = 60,
        gap: int = 10,
        strip_height: int = 30,
    ) -> "GeometryConfig":
        """Grid centered in the image, full-width strips at top and bottom."""
        grid_span = 3 * square_side + 2 * gap
        x_off = (width - grid_span) // 2
        y_off = (height - grid_span) // 2
        squares = tuple(
            Rect(
                x0=x_off + (i % 3) * (square_side + gap),
                y0=y_off + (i // 3) * (square_side + gap),
                w=square_side,
                h=square_side,
            )
            for i in range(9)
        )
        return GeometryConfig(
            width=width,
            height=height,
            squares=squares,
            top_strip=Rect(0, 0, width, strip_height),
            bottom_strip=Rect(0, height - strip_height, width, strip_height),
        )


DEFAULT_GEOMETRY = GeometryConfig.make()


@dataclass(frozen=True)
class PhotometryConfig:
    """Card reflectances and the additive measurement-noise level.

    Black cards reflect least, the bare gray board a middle level, white
    cards most; classification margins derive from these three values.
    """

    r_black: float = 0.1
    r_gray: float = 0.5
    r_white: float = 0.9
    r_background: float = 0.0
    noise_sigma: float = 0.02
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.r_black < self.r_gray < self.r_white <= 1.0:
            raise ValueError("need 0 <= r_black < r_gray < r_white <= 1")
        if not 0.0 <= self.r_background <= 1.0:
            raise ValueError("background reflectance must lie in [0, 1]")
        if self.noise_sigma < 0.0:
            raise ValueError("noise sigma cannot be negative")

    def reflectance(self, state: SquareState) -> float:
        if state is SquareState.HUMAN:
            return self.r_black
        if state is SquareState.SPI:
            return self.r_white
        return self.r_gray

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


DEFAULT_PHOTOMETRY = PhotometryConfig()


@dataclass(frozen=True)
class Thresholds:
    """Two intensity cuts separating black / gray / white readings."""

    t_low: float
    t_high: float

    def __post_init__(self) -> None:
        if not 0.0 < self.t_low < self.t_high < 1.0:
            raise ValueError("need 0 < t_low < t_high < 1")


def default_thresholds(photo: PhotometryConfig) -> Thresholds:
    """Midpoint cuts between adjacent reflectance levels."""
    return Thresholds(
        t_low=(photo.r_black + photo.r_gray) / 2.0,
        t_high=(photo.r_gray + photo.r_white) / 2.0,
    )


@dataclass(frozen=True, eq=False)
class SceneImage:
    """Per-pixel reflectance map of the physical board, values in [0, 1]."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        if self.pixels.ndim != 2:
            raise ValueError("scene must be a 2-D array")
        lo, hi = float(self.pixels.min()), float(self.pixels.max())
        if lo < 0.0 or hi > 1.0:
            raise ValueError(f"reflectance out of [0, 1]: min {lo}, max {hi}")


@dataclass(frozen=True, eq=False)
class IlluminationMask:
    """Binary illumination pattern with its purpose attached.

    kind is "detection" (index = square 1..9) or "display"
    (index = pattern 1..19).
    """

    pixels: np.ndarray
    kind: str
    index: int

    @cached_property
    def area(self) -> float:
        return float(self.pixels.sum())

    @cached_property
    def flat(self) -> np.ndarray:
        return self.pixels.ravel()


def _blank(geom: GeometryConfig) -> np.ndarray:
    return np.zeros((geom.height, geom.width), dtype=np.float64)


def render_board(
    board: Board,
    geom: GeometryConfig = DEFAULT_GEOMETRY,
    photo: PhotometryConfig = DEFAULT_PHOTOMETRY,
) -> SceneImage:
    """Reflectance image of the board with cards attached.

    Square regions take the reflectance of their occupant's card (or
    gray when empty); the status strips and everything else sit at the
    background level. Deterministic.
    """
    board = board_from_codes(board)
    pixels = np.full((geom.height, geom.width), photo.r_background, dtype=np.float64)
    for i, state in enumerate(board):
        ys, xs = geom.squares[i].slices
        pixels[ys, xs] = photo.reflectance(state)
    return SceneImage(pixels)


@lru_cache(maxsize=None)
def detection_mask(square: int, geom: GeometryConfig = DEFAULT_GEOMETRY) -> IlluminationMask:
    """Pattern illuminating exactly the region of one square."""
    pixels = _blank(geom)
    ys, xs = geom.square(square).slices
    pixels[ys, xs] = 1.0
    pixels.flags.writeable = False
    return IlluminationMask(pixels, kind="detection", index=square)


def display_pattern_mask(
    code: OutputCode, geom: GeometryConfig = DEFAULT_GEOMETRY
) -> Optional[IlluminationMask]:
    """Output pattern for a lookup result; None for the no-action sentinel.

    Plain moves light the target square; winning moves add the top
    ("You lose") strip; a human win lights the bottom ("You win") strip.
    """
    pattern = code.pattern_index
    if pattern is None:
        return None
    pixels = _blank(geom)
    if code.kind is OutputKind.MOVE:
        assert code.square is not None
        ys, xs = geom.square(code.square).slices
        pixels[ys, xs] = 1.0
        if code.winning:
            ys, xs = geom.top_strip.slices
            pixels[ys, xs] = 1.0
    else:  # human won
        ys, xs = geom.bottom_strip.slices
        pixels[ys, xs] = 1.0
    pixels.flags.writeable = False
    return IlluminationMask(pixels, kind="display", index=pattern)


def measure(
    scene: SceneImage,
    mask: IlluminationMask,
    photo: PhotometryConfig = DEFAULT_PHOTOMETRY,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """One single-pixel reading: area-normalized inner product plus noise.

    The noiseless value equals the mean reflectance of the illuminated
    region, so thresholds are independent of region size. Noise is
    zero-mean Gaussian with sigma `photo.noise_sigma` (skipped entirely
    at sigma = 0).
    """
    if scene.pixels.shape != mask.pixels.shape:
        raise DimensionMismatchError(
            f"scene {scene.pixels.shape} vs mask {mask.pixels.shape}"
        )
    if mask.area == 0.0:
        raise EmptyMaskError("mask has no lit pixels")
    value = float(np.dot(scene.pixels.ravel(), mask.flat)) / mask.area
    if photo.noise_sigma > 0.0:
        if rng is None:
            raise ValueError("rng required when noise_sigma > 0")
        value += rng.normal(0.0, photo.noise_sigma)
    return value


def scan_state(
    scene: SceneImage,
    geom: GeometryConfig = DEFAULT_GEOMETRY,
    photo: PhotometryConfig = DEFAULT_PHOTOMETRY,
    rng: Optional[np.random.Generator] = None,
) -> tuple[float, ...]:
    """Nine sequential detection readings, ordered square 1..9."""
    return tuple(
        measure(scene, detection_mask(i, geom), photo, rng) for i in range(1, 10)
    )


def classify(measurements: tuple[float, ...], thresholds: Thresholds) -> Board:
    """Three-level intensity decision per square: black / gray / white."""
    if len(measurements) != 9:
        raise ValueError(f"expected 9 measurements, got {len(measurements)}")
    codes = []
    for m in measurements:
        if m < thresholds.t_low:
            codes.append(SquareState.HUMAN)
        elif m > thresholds.t_high:
            codes.append(SquareState.SPI)
        else:
            codes.append(SquareState.EMPTY)
    return board_from_codes(codes)


def write_pgm(pixels: np.ndarray, path: str | Path) -> None:
    """Dump a [0, 1] image as binary 8-bit PGM (debugging aid)."""
    data = np.rint(np.asarray(pixels, dtype=np.float64) * 255.0).astype(np.uint8)
    header = f"P5\n{data.shape[1]} {data.shape[0]}\n255\n".encode("ascii")
    Path(path).write_bytes(header + data.tobytes())
