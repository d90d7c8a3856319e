"""Catalytic isolation engines: Python front end to the C++ core."""

from ._core import (
    REPORT_SCHEMA_VERSION,
    CorruptionError,
    LimitError,
    arborescence_counts,
    coc,
    family_params,
    fsat,
    hash_eval,
    k_subset,
    run_cli,
    sat_witness,
)

__all__ = [
    "REPORT_SCHEMA_VERSION",
    "CorruptionError",
    "LimitError",
    "arborescence_counts",
    "coc",
    "family_params",
    "fsat",
    "hash_eval",
    "k_subset",
    "run_cli",
    "sat_witness",
    "main",
]


def main(argv=None):
    import sys

    code, out, err = run_cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
