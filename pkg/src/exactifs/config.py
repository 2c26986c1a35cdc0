"""JSON model files and the bundled presets.

A config looks like::

    {"dimension": 1,
     "lambdas": ["1/2", {"minpoly": [-1, 1, 1], "interval": ["1/2", "1"]}],
     "translations": [["0"], ["1"]],
     "probabilities": ["1/2", "1/2"]}

Scalars are strings (or algebraic literals) so nothing passes through
floats.  An optional ``"constants"`` list names extra algebraic numbers
that translations may use; algebraic translation literals not among the
contractions are added to it automatically.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .algebra.scalar import AlgebraicScalar, parse_scalar_literal, scalar_to_literal
from .errors import InvalidInput
from .ifs import IFSModel, normalize

__all__ = ["PRESETS", "load_preset", "model_to_config", "parse_config", "preset_expected"]

PRESETS = ("doubling", "bernoulli-golden", "overlap-halves", "gasket-thirds")

_KEYS = {"dimension", "lambdas", "translations", "probabilities", "constants"}


def _read_json_resource(name: str):
    try:
        text = resources.files("exactifs.presets").joinpath(name).read_text()
    except FileNotFoundError as exc:
        raise InvalidInput(f"missing bundled file {name}") from exc
    return json.loads(text)


def load_preset(name: str) -> dict:
    if name not in PRESETS:
        raise InvalidInput(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return _read_json_resource(f"{name}.json")


def preset_expected(name: str) -> dict:
    """The expected-result fixture shipped with a preset."""
    if name not in PRESETS:
        raise InvalidInput(f"unknown preset {name!r}")
    return _read_json_resource(f"{name}.expected.json")


def _model_from_dict(data: dict) -> IFSModel:
    if not isinstance(data, dict):
        raise InvalidInput("config must be a JSON object")
    unknown = set(data) - _KEYS
    if unknown:
        raise InvalidInput(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in ("lambdas", "translations"):
        if key not in data:
            raise InvalidInput(f"config is missing {key!r}")
    lams = [parse_scalar_literal(x) for x in data["lambdas"]]
    constants = [parse_scalar_literal(x) for x in data.get("constants", [])]
    trans = data["translations"]
    if not isinstance(trans, list):
        raise InvalidInput("translations must be a list")
    known = lams + constants
    for vec in trans:
        if not isinstance(vec, list):
            raise InvalidInput("each translation must be a list of scalar literals")
        for c in vec:
            if isinstance(c, dict) and "minpoly" in c:
                x = parse_scalar_literal(c)
                if not x.is_rational and not any(x == y for y in known):
                    constants.append(x)
                    known.append(x)
    model = IFSModel(lams, trans, data.get("probabilities"), constants=constants)
    if "dimension" in data:
        dim = data["dimension"]
        if isinstance(dim, bool) or not isinstance(dim, int) or dim != model.d:
            raise InvalidInput(f"dimension {dim!r} does not match translations (d={model.d})")
    return model


def parse_config(source=None, *, preset=None, normalize_model=True) -> IFSModel:
    """Build a validated model from a path, a dict, or a preset name."""
    if (source is None) == (preset is None):
        raise InvalidInput("give exactly one of a config source or a preset")
    if preset is not None:
        data = load_preset(preset)
    elif isinstance(source, (str, Path)):
        path = Path(source)
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError as exc:
            raise InvalidInput(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"config is not valid JSON: {exc}") from exc
    else:
        data = source
    model = _model_from_dict(data)
    return normalize(model) if normalize_model else model


def model_to_config(model: IFSModel) -> dict:
    """Inverse of :func:`parse_config` (without normalisation)."""
    f = model.field
    out = {
        "dimension": model.d,
        "lambdas": [scalar_to_literal(x) for x in model.lambda_scalars],
        "translations": [[f.to_literal(c) for c in v] for v in model.t],
        "probabilities": [str(p) for p in model.p],
    }
    extra = f.generators[model.size:]
    if extra:
        out["constants"] = [scalar_to_literal(AlgebraicScalar(x)) for x in extra]
    return out
