"""Exact coquasi-bialgebra toolkit.

Structures are plain dicts in the same JSON schema the command-line tool uses.
"""

import json

from . import _core

SchemaError = _core.SchemaError

__all__ = [
    "SchemaError",
    "validate",
    "solve_preantipode",
    "check_preantipode",
    "reconstruct",
    "finite_dual",
    "example",
    "zoo_names",
    "run_cli",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def validate(structure, kind, field=None):
    """Axiom report {"pass", "failures", "flags"} for a structure of the given kind."""
    return json.loads(_core.validate(_dump(structure), kind, field))


def solve_preantipode(structure, kind, field=None):
    """The unique preantipode {"dim", "s"}, or None when there is none or it is not unique."""
    out = _core.solve_preantipode(_dump(structure), kind, field)
    return None if out is None else json.loads(out)


def check_preantipode(structure, s, kind, field=None):
    return json.loads(_core.check_preantipode(_dump(structure), _dump(s), kind, field))


def reconstruct(diagram, field=None):
    """Coend coquasi-bialgebra of a diagram, with "proj" and "preantipode"."""
    return json.loads(_core.reconstruct(_dump(diagram), field))


def finite_dual(quasi, field=None):
    """Dual coquasi-bialgebra of a quasi-bialgebra, with its "preantipode"."""
    return json.loads(_core.finite_dual(_dump(quasi), field))


def example(kind, name):
    """Built-in example: kind is "coquasi", "quasi" or "diagram"."""
    return json.loads(_core.example(kind, name))


def zoo_names(kind):
    return list(_core.zoo_names(kind))


def run_cli(*args):
    """Runs the command-line tool in-process; returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
