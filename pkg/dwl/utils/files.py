import json
import os
import sys

import numpy as np
import pandas as pd

from utils.errors import OutputError


FLOAT_FORMAT = '%.15g'

# Anchor colours of a viridis-like ramp at 0, 1/8, ..., 1; the 256-entry table interpolates them.
_COLORMAP_ANCHORS = np.array([
    (68, 1, 84),
    (71, 44, 122),
    (59, 81, 139),
    (44, 113, 142),
    (33, 144, 141),
    (39, 173, 129),
    (92, 200, 99),
    (170, 220, 50),
    (253, 231, 37),
], dtype=float)


def colormap() -> np.ndarray:
    """
    256 x 3 uint8 lookup table.
    """
    positions = np.linspace(0.0, 1.0, len(_COLORMAP_ANCHORS))
    samples = np.linspace(0.0, 1.0, 256)
    table = np.column_stack([np.interp(samples, positions, _COLORMAP_ANCHORS[:, channel]) for channel in range(3)])
    return np.rint(table).astype(np.uint8)


COLORMAP = colormap()


def ensure_parent_folder(path):
    """
    Create the folder that will hold `path` if it does not exist yet.
    """
    folder = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(folder, exist_ok=True)
    except OSError as error:
        raise OutputError(f"out: cannot create folder {folder} ({error})")


def write_csv(frame: pd.DataFrame, path=None):
    """
    Header-first CSV with '\\n' line endings and 15 significant digits; stdout when path is None.
    """
    text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    _write_text(text, path)


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple):
        return list(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, default=_json_default) + '\n'


def write_json(payload, path=None):
    """
    One JSON object; keys keep the insertion order of the payload.
    """
    _write_text(to_json(payload), path)


def ppm_bytes(values: np.ndarray) -> bytes:
    """
    Binary P6 image of a (n_s, n_k) array: s runs left to right, k bottom to top.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 2:
        raise ValueError(f"values: expected a 2-d array, got shape {values.shape}")

    lo, hi = float(np.min(values)), float(np.max(values))
    span = hi - lo if hi > lo else 1.0
    indices = np.rint((values - lo) / span * 255.0).astype(np.int64)

    image = COLORMAP[indices.T[::-1]]
    height, width = image.shape[:2]
    header = f"P6\n{width} {height}\n255\n".encode('ascii')
    return header + np.ascontiguousarray(image).tobytes()


def write_ppm(values: np.ndarray, path=None):
    payload = ppm_bytes(values)
    if path is None:
        sys.stdout.buffer.write(payload)
        return
    ensure_parent_folder(path)
    try:
        with open(path, 'wb') as handle:
            handle.write(payload)
    except OSError as error:
        raise OutputError(f"out: cannot write {path} ({error})")


def _write_text(text: str, path=None):
    if path is None:
        sys.stdout.write(text)
        return
    ensure_parent_folder(path)
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
    except OSError as error:
        raise OutputError(f"out: cannot write {path} ({error})")
