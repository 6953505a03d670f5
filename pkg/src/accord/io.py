"""JSON state files: ``{"d": int, "matrix": [[[re, im], ...], ...]}``, row-major."""

import json

import numpy as np

from .errors import BadDimension
from .states import as_density, validate_density


def state_to_dict(rho):
    rho = as_density(rho)
    rows = [[[float(z.real), float(z.imag)] for z in row] for row in rho.matrix]
    return {"d": rho.d, "matrix": rows}


def state_from_dict(obj):
    try:
        d = obj["d"]
        raw = np.asarray(obj["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadDimension(f"malformed state object: {exc}") from exc
    if raw.ndim != 3 or raw.shape[2] != 2:
        raise BadDimension(f"matrix must be rows of [re, im] pairs, got shape {raw.shape}")
    return validate_density(raw[..., 0] + 1j * raw[..., 1], d)


def _num(x):
    # 17 significant digits round-trip IEEE doubles exactly
    return f"{x:.17g}"


def dumps_state(rho):
    obj = state_to_dict(rho)
    rows = ",\n  ".join(
        "[" + ", ".join(f"[{_num(re)}, {_num(im)}]" for re, im in row) + "]" for row in obj["matrix"]
    )
    return f'{{"d": {obj["d"]}, "matrix": [\n  {rows}\n]}}'


def loads_state(text):
    return state_from_dict(json.loads(text))


def save_state(rho, path):
    with open(path, "w") as fh:
        fh.write(dumps_state(rho) + "\n")


def load_state(path):
    with open(path) as fh:
        return state_from_dict(json.load(fh))
