"""Exact-real stream kernel and computable reductions."""

from ._sepkit import (  # noqa: F401
    PlantedInstance,
    Stream,
    generate,
    list_problems,
    list_reductions,
    parse_instance,
    run_reduction,
    seq_decode,
    seq_encode,
    verify_planted,
)
