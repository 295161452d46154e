#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""CSV / JSON writers. Floats carry 17 significant digits."""

import contextlib
import json
import logging
import math
import sys

import numpy as np
import pandas as pd

from fracscatter.error import OutputError

LOGGER = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'
STDOUT = '-'


@contextlib.contextmanager
def opened(path):
    if path == STDOUT:
        yield sys.stdout
        return
    try:
        f = open(path, 'w', newline='')
    except OSError as e:
        raise OutputError(f'cannot write {path}: {e.strerror}') from e
    with f:
        yield f
    LOGGER.debug(f'wrote {path}')


def frame_to_csv(frame):
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT)


def _plain(value):
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def to_json(data):
    return json.dumps(_plain(data), indent=2) + '\n'


def write(path, fmt, frame=None, data=None):
    """Write a frame as CSV or the JSON document `data`.

    JSON output falls back to the frame's records when no document is given.
    """
    if fmt == 'csv':
        if frame is None:
            frame = pd.DataFrame(data)
        text = frame_to_csv(frame)
    else:
        if data is None:
            data = frame.to_dict(orient='records')
        text = to_json(data)
    try:
        with opened(path) as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f'cannot write {path}: {e}') from e
