"""JSON round-trip for states.

Amplitudes serialize as [re, im] pairs; complex family parameters as
{"re": ..., "im": ...} objects so they cannot be confused with real pairs.
Floats go through repr, so a dump/load cycle is bit-exact.
"""

import json

import numpy as np

from .errors import InvalidInputError
from .hilbert import BasisSpec, StateVector

__all__ = ["state_to_dict", "state_from_dict", "save_state", "load_state"]


def _encode_param(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if isinstance(value, np.generic):
        return _encode_param(value.item())
    raise InvalidInputError(f"cannot serialize state parameter of type {type(value)!r}")


def _decode_param(value):
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return complex(value["re"], value["im"])
    return value


def state_to_dict(state):
    amp = state.amplitudes
    return {
        "family": state.family,
        "params": {key: _encode_param(val) for key, val in state.params.items()},
        "basis": state.basis.to_dict(),
        "amplitudes": [[float(c.real), float(c.imag)] for c in amp],
        "tail_mass": float(state.tail_mass),
    }


def state_from_dict(doc):
    try:
        basis = BasisSpec.from_dict(doc["basis"])
        pairs = doc["amplitudes"]
        family = doc.get("family")
        params = {k: _decode_param(v) for k, v in doc.get("params", {}).items()}
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed state document: {exc}") from exc
    amp = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    return StateVector(amp, basis, family=family, params=params)


def save_state(state, path):
    with open(path, "w") as fh:
        json.dump(state_to_dict(state), fh, indent=1)
        fh.write("\n")


def load_state(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"state file {path!r} is not valid JSON: {exc}") from exc
    return state_from_dict(doc)
