import json
import os
import typing

import pandas as pd

from renewbound._base import InputError
from renewbound.oufn import BoundaryVariants
from renewbound.util import PathOrHandle, closing_if_path, open_text_io_handle_for_reading, open_text_io_handle_for_writing

from ._model import BoundaryKind, FreeBoundary

BOUNDARY_COLUMNS = ("y_mw", "f_eur_mwh", "fhat_eur_mwh")
BOUNDARY_CSV = "boundary.csv"
BOUNDARY_JSON = "boundary.json"

_TOLERANCE_KEYS = ("root_tol", "quad_rel_tol", "quad_max_nodes")


def boundary_metadata(
    fb: FreeBoundary,
    extra: typing.Optional[typing.Mapping[str, typing.Any]] = None,
) -> typing.Dict[str, typing.Any]:
    """
    Get the JSON sidecar content of a boundary: everything but the tabulated values.
    """
    diagnostics = dict(fb.diagnostics)
    meta = {
        "kind": fb.kind.value,
        "terminal_x": fb.terminal_x,
        "f_zero": fb.f_zero,
        "step_h": fb.step_h,
        "beta": fb.beta,
        "theta": fb.theta,
        "n_points": int(fb.y_grid.size),
        "tolerances": {k: diagnostics.pop(k) for k in _TOLERANCE_KEYS if k in diagnostics},
        "variant_tags": dict(fb.variant_tags.to_dict()),
        "diagnostics": diagnostics,
    }
    if extra:
        meta.update(extra)
    return meta


def write_free_boundary(
    fb: FreeBoundary,
    directory: typing.Union[str, os.PathLike],
    extra: typing.Optional[typing.Mapping[str, typing.Any]] = None,
) -> typing.Tuple[str, str]:
    """
    Write the boundary into `boundary.csv` (`y_mw,f_eur_mwh,fhat_eur_mwh`) and the `boundary.json` sidecar
    with the terminal value, the step, the tolerances and the variant tags.

    :param extra: additional entries for the sidecar, such as reference values.
    :returns: the paths of the CSV and JSON files.
    """
    os.makedirs(directory, exist_ok=True)
    csv_path = os.path.join(directory, BOUNDARY_CSV)
    json_path = os.path.join(directory, BOUNDARY_JSON)
    write_boundary_csv(fb, csv_path)
    with open_text_io_handle_for_writing(json_path) as fh:
        json.dump(boundary_metadata(fb, extra), fh, indent=2)
        fh.write("\n")
    return csv_path, json_path


def write_boundary_csv(fb: FreeBoundary, file: PathOrHandle):
    fh = open_text_io_handle_for_writing(file)
    with closing_if_path(file, fh):
        fb.to_frame().to_csv(fh, index=False, float_format="%.17g", lineterminator="\n")


def read_free_boundary(
    csv_file: PathOrHandle,
    json_file: PathOrHandle,
) -> FreeBoundary:
    """
    Read a boundary written by :func:`write_free_boundary`.

    :raises InputError: if the files are malformed or inconsistent.
    """
    fh = open_text_io_handle_for_reading(csv_file)
    with closing_if_path(csv_file, fh):
        frame = pd.read_csv(fh, float_precision="round_trip")
    fh = open_text_io_handle_for_reading(json_file)
    with closing_if_path(json_file, fh):
        try:
            meta = json.load(fh)
        except json.JSONDecodeError as e:
            raise InputError(f"Malformed boundary sidecar: {e}") from e

    if tuple(frame.columns) != BOUNDARY_COLUMNS:
        raise InputError(f"Boundary columns must be {', '.join(BOUNDARY_COLUMNS)} but were {', '.join(frame.columns)}")
    try:
        tolerances = meta.get("tolerances", {})
        diagnostics = dict(meta.get("diagnostics", {}))
        diagnostics.update(tolerances)
        return FreeBoundary(
            kind=BoundaryKind(meta["kind"]),
            y_grid=frame["y_mw"].to_numpy(dtype=float),
            f_values=frame["f_eur_mwh"].to_numpy(dtype=float),
            fhat_values=frame["fhat_eur_mwh"].to_numpy(dtype=float),
            terminal_x=float(meta["terminal_x"]),
            step_h=float(meta["step_h"]),
            beta=float(meta["beta"]),
            variant_tags=BoundaryVariants(**meta["variant_tags"]),
            diagnostics=diagnostics,
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Invalid boundary files: {e}") from e
