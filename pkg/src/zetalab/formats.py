"""Structured-text persistence and tabular export.

Model and symbol files are JSON documents whose numeric fields are exact
rationals rendered as "p/q" strings, so a save/load round trip is lossless.
Pole tables and sweeps export as CSV (exact rendering next to a float
rendering) and as JSON.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .models import Branch, CombinedResidue, LawGenerator, SpectralModel
from .scalars import ExactScalar
from .series import AsymptoticSeries
from .symbols import SymbolExpansion

POLE_TABLE_COLUMNS = ("sigma", "function", "residue_exact", "residue_float")


class FormatError(ValueError):
    """Malformed model/symbol file."""


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {text!r}") from exc


# -- models -----------------------------------------------------------------


def model_to_dict(model: SpectralModel) -> dict:
    branches = []
    for br in model.branches:
        entry = {
            "sign": br.sign,
            "multiplicity": [fraction_str(c) for c in br.mult],
            "law": br.law.serialize(),
            "k0": br.k0,
        }
        if br.generator is not None:
            entry["generator"] = br.generator.serialize()
        branches.append(entry)
    return {
        "format": "zetalab-model/1",
        "name": model.name,
        "order": model.order,
        "dimension": model.dimension,
        "kernel_dim": model.kernel_dim,
        "branches": branches,
        "exceptional": [
            [lam.serialize(), mult] for lam, mult in model.exceptional
        ],
    }


def model_from_dict(data: dict) -> SpectralModel:
    try:
        if data.get("format") != "zetalab-model/1":
            raise FormatError(f"unknown model format {data.get('format')!r}")
        branches = []
        for entry in data["branches"]:
            gen = None
            if "generator" in entry:
                gen = LawGenerator.deserialize(entry["generator"])
            branches.append(
                Branch(
                    int(entry["sign"]),
                    tuple(parse_fraction(c) for c in entry["multiplicity"]),
                    AsymptoticSeries.deserialize(entry["law"]),
                    int(entry["k0"]),
                    gen,
                )
            )
        exceptional = tuple(
            (ExactScalar.deserialize(lam), int(mult))
            for lam, mult in data.get("exceptional", ())
        )
        return SpectralModel(
            branches=tuple(branches),
            exceptional=exceptional,
            kernel_dim=int(data.get("kernel_dim", 0)),
            order=int(data["order"]),
            dimension=int(data["dimension"]),
            name=str(data.get("name", "")),
        )
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed model file: {exc}") from exc


def save_model(model: SpectralModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_model(path: str) -> SpectralModel:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    return model_from_dict(data)


# -- symbols ----------------------------------------------------------------


def save_symbol(symbol: SymbolExpansion, path: str) -> None:
    data = {"format": "zetalab-symbol/1", **symbol.serialize()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_symbol(path: str) -> SymbolExpansion:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    if data.get("format") != "zetalab-symbol/1":
        raise FormatError(f"unknown symbol format {data.get('format')!r}")
    try:
        return SymbolExpansion.deserialize(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed symbol file: {exc}") from exc


# -- tables -----------------------------------------------------------------


def residue_renderings(entry: CombinedResidue, prec: int = 64) -> tuple[str, str]:
    """(exact or empty, float) renderings of a residue."""
    exact = entry.as_exact()
    approx = entry.to_mpc(prec)
    if abs(approx.imag) == 0:
        float_str = mpmath.nstr(approx.real, 17)
    else:
        float_str = mpmath.nstr(approx, 17)
    if exact is not None and exact.is_exact:
        if exact.imag == 0:
            return fraction_str(exact.real), float_str
        return exact.serialize(), float_str
    return "", float_str


def pole_table_rows(
    fns, floor_k: int, prec: int = 64, functions: Sequence[str] | None = None
) -> list[dict]:
    """Rows (sigma, function, residue_exact, residue_float), zeros included."""
    from .models import FUNCTION_NAMES

    names = tuple(functions) if functions else FUNCTION_NAMES
    rows = []
    model = fns.zeta_abs.model
    for k in range(model.dimension, floor_k - 1, -1):
        if k == 0:
            continue
        sigma = Fraction(k, model.order)
        for name in names:
            entry = fns[name].residue(sigma, floor_k)
            exact_s, float_s = residue_renderings(entry, prec)
            rows.append(
                {
                    "sigma": fraction_str(sigma),
                    "function": name,
                    "residue_exact": exact_s,
                    "residue_float": float_s,
                }
            )
    return rows


def write_csv(rows: Iterable[dict], columns: Sequence[str], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=list(columns))
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def rows_to_csv_text(rows: Iterable[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    write_csv(rows, columns, buf)
    return buf.getvalue()


def rows_to_json_text(rows: Iterable[dict]) -> str:
    return json.dumps(list(rows), indent=2, sort_keys=True) + "\n"
