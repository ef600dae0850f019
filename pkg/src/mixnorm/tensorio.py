"""JSON file format for coefficient tensors.

::

    {"arity": 2, "dims": [2, 2], "entries": [1, 1, 1, -1]}
    {"arity": 2, "dims": [2, 2], "sparse_entries": [[[1, 1], 1], [[2, 2], -1]]}

``entries`` is flat row-major (last index fastest); sparse indices are
1-based.  Exactly one of the two keys is present.  Numbers are written
with 17 significant digits so that a read/write cycle is bit-exact.
"""
import json
import math

from .forms import make_form, make_sparse_form

__all__ = ["FormatError", "dumps_form", "format_number", "loads_form", "read_form", "write_form"]


class FormatError(ValueError):
    """Raised when a tensor file violates the format."""


def format_number(x):
    x = float(x)
    if not math.isfinite(x):
        raise FormatError(f"non-finite coefficient {x!r}")
    return format(x, ".17g")


def dumps_form(form):
    head = f'{{"arity": {form.arity}, "dims": [{", ".join(str(n) for n in form.dims)}], '
    if form.is_sparse:
        items = (
            f'[[{", ".join(str(i) for i in ix)}], {format_number(v)}]'
            for ix, v in form.sparse_entries()
        )
        return head + f'"sparse_entries": [{", ".join(items)}]}}\n'
    body = ", ".join(format_number(v) for v in form.entries)
    return head + f'"entries": [{body}]}}\n'


def loads_form(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    for key in ("arity", "dims"):
        if key not in obj:
            raise FormatError(f"missing field {key!r}")
    has_dense, has_sparse = "entries" in obj, "sparse_entries" in obj
    if has_dense == has_sparse:
        raise FormatError('exactly one of "entries" / "sparse_entries" must be present')
    arity, dims = obj["arity"], obj["dims"]
    if not isinstance(arity, int) or not isinstance(dims, list) or len(dims) != arity:
        raise FormatError(f"arity {arity!r} does not match dims {dims!r}")
    if not all(isinstance(n, int) and n >= 1 for n in dims):
        raise FormatError(f"dims must be positive integers, got {dims!r}")
    try:
        if has_dense:
            entries = obj["entries"]
            if not isinstance(entries, list) or not all(_is_number(v) for v in entries):
                raise FormatError('"entries" must be a flat list of numbers')
            return make_form(dims, entries)
        pairs = []
        for item in obj["sparse_entries"]:
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], list)
                    and all(isinstance(i, int) for i in item[0]) and _is_number(item[1])):
                raise FormatError(f"bad sparse entry {item!r}")
            pairs.append((tuple(item[0]), item[1]))
        return make_sparse_form(dims, pairs)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def write_form(form, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_form(form))


def read_form(path):
    with open(path, encoding="utf-8") as fh:
        return loads_form(fh.read())
