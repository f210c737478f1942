"""Reading and writing instance documents.

An instance document is a JSON object::

    {"model": "lottery", "n": 3, "m": 3, "k": 2,
     "voters": [[{"prob": "0.3", "set": [1, 2]}, ...], ...]}

``model`` is one of ``joint`` (payload key ``profiles``: a list of
``{"prob", "profile"}``), ``lottery`` (``voters``), ``candidate_prob`` or
``3va`` (``matrix``: n rows of m probability strings).  Probability strings
may be decimals (``"0.35"``) or fractions (``"7/20"``); parsing is exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .core import InvalidInputError, Instance
from .models import (
    CandidateProbabilityModel,
    JointProbabilityModel,
    LotteryModel,
    UncertaintyModel,
    ensure_valid,
)

MODEL_KINDS = ("joint", "lottery", "candidate_prob", "3va")


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, digits: int = 12) -> str:
    """Round-half-even decimal rendering with trailing zeros trimmed."""
    x = Fraction(x)
    scaled = round(x * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    frac_text = str(frac).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}.{frac_text}" if frac_text else f"{sign}{whole}"


def _require(doc: dict, key: str):
    if not isinstance(doc, dict):
        raise InvalidInputError(f"expected an object with '{key}', got {doc!r}")
    if key not in doc:
        raise InvalidInputError(f"instance document is missing '{key}'")
    return doc[key]


def _index_list(value, where: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in value):
        raise InvalidInputError(f"{where}: expected a list of candidate indices, got {value!r}")
    return value


def model_from_document(doc: dict, validate: bool = True) -> UncertaintyModel:
    if not isinstance(doc, dict):
        raise InvalidInputError("instance document must be a JSON object")
    kind = _require(doc, "model")
    if kind not in MODEL_KINDS:
        raise InvalidInputError(f"unknown model '{kind}', expected one of {', '.join(MODEL_KINDS)}")
    instance = Instance(_require(doc, "n"), _require(doc, "m"), _require(doc, "k"))
    if kind == "joint":
        entries = []
        for r, entry in enumerate(_require(doc, "profiles"), start=1):
            profile = [_index_list(s, f"profile {r}") for s in _require(entry, "profile")]
            entries.append((_require(entry, "prob"), profile))
        model = JointProbabilityModel.build(instance, entries)
    elif kind == "lottery":
        voters = []
        for i, dist in enumerate(_require(doc, "voters"), start=1):
            voters.append(
                [(_require(e, "prob"), _index_list(_require(e, "set"), f"voter {i}")) for e in dist]
            )
        model = LotteryModel.build(instance, voters)
    else:
        matrix = _require(doc, "matrix")
        if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
            raise InvalidInputError("matrix must be a list of rows")
        model = CandidateProbabilityModel.build(instance, matrix, is_3va=(kind == "3va"))
    return ensure_valid(model) if validate else model


def model_to_document(model: UncertaintyModel) -> dict:
    inst = model.instance
    doc = {"model": model.kind, "n": inst.n, "m": inst.m, "k": inst.k}
    if isinstance(model, JointProbabilityModel):
        doc["profiles"] = [
            {"prob": fraction_str(p), "profile": [sorted(s) for s in profile]}
            for p, profile in model.entries
        ]
    elif isinstance(model, LotteryModel):
        doc["voters"] = [
            [{"prob": fraction_str(p), "set": sorted(s)} for p, s in dist] for dist in model.voters
        ]
    else:
        doc["matrix"] = [[fraction_str(x) for x in row] for row in model.p]
    return doc


def dumps(model: UncertaintyModel) -> str:
    return json.dumps(model_to_document(model), indent=1) + "\n"


def loads(text: str, validate: bool = True) -> UncertaintyModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"instance is not valid JSON: {exc}") from exc
    return model_from_document(doc, validate=validate)


def load(path, validate: bool = True) -> UncertaintyModel:
    return loads(Path(path).read_text(), validate=validate)


def dump(model: UncertaintyModel, path) -> None:
    Path(path).write_text(dumps(model))


GOLDEN = ("lottery_example", "cp_example", "threeva_example")


def golden_path(name: str) -> Path:
    """Path of a bundled worked-example instance (see ``GOLDEN``)."""
    if name not in GOLDEN:
        raise InvalidInputError(f"no golden instance '{name}', expected one of {', '.join(GOLDEN)}")
    return Path(__file__).with_name("golden") / f"{name}.json"


def load_golden(name: str) -> UncertaintyModel:
    return load(golden_path(name))
