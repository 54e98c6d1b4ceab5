"""Command-line surface.  All structured output is JSON on stdout.

Exit codes: 0 on success, 2 when ``check-woodall`` answers "no" (so shells
can branch on the verdict), 1 on any error.

The ``--class`` option accepts ``all``, ``dibonds``, ``min``, ``atomic``,
``source-sink``, or ``file:<path>`` where the file lists one in-shore per
line as ``dicut v1,v2,...``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .capacity import hat_transform, tilde_transform
from .classes import DicutClass, find_nested_representation, resolve_class
from .digraph import Capacity, Digraph, format_digraph, parse_digraph, sort_key
from .dicuts import (
    Dicut,
    dicut_from_inshore,
    enumerate_dibonds,
    enumerate_dicuts,
    quotient,
    robbins_two_dijoins,
)
from .errors import DijoinError, FormatError
from .fixtures import fixture
from .oracle import check_woodall, max_disjoint_dijoins
from .packing import pack_corner_closed_uniform, pack_min, pack_nested, verify_packing


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_digraph(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _parse_class(spec: str, d: Digraph) -> DicutClass:
    if spec in ("all", "dibonds", "min", "atomic"):
        return DicutClass.symbolic(spec)
    if spec == "source-sink":
        return DicutClass.symbolic("source_sink")
    if spec.startswith("file:"):
        path = spec[5:]
        dicuts = []
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise FormatError(f"cannot read {path}: {exc}") from exc
        for lineno, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split(None, 1)
            if parts[0] != "dicut" or len(parts) != 2:
                raise FormatError(f"{path}:{lineno}: expected 'dicut v1,v2,...'")
            shore = {tok.strip() for tok in parts[1].split(",") if tok.strip()}
            dicuts.append(dicut_from_inshore(d, shore))
        return DicutClass.explicit(dicuts)
    raise FormatError(f"bad class spec {spec!r}")


def _dicut_json(b: Dicut) -> dict:
    return {
        "in_shore": sorted(map(str, b.in_shore)),
        "edges": sorted(b.edge_ids, key=sort_key),
    }


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _filter_dibonds(d: Digraph, dicuts):
    dibond_sets = {b.edge_ids for b in enumerate_dibonds(d)}
    return [b for b in dicuts if b.edge_ids in dibond_sets]


def cmd_dicuts(args) -> int:
    d, _ = _load(args.input)
    dicuts = enumerate_dicuts(d, include_empty=args.include_empty)
    _emit({"count": len(dicuts), "dicuts": [_dicut_json(b) for b in dicuts]})
    return 0


def cmd_dibonds(args) -> int:
    d, _ = _load(args.input)
    dibonds = enumerate_dibonds(d)
    _emit({"count": len(dibonds), "dibonds": [_dicut_json(b) for b in dibonds]})
    return 0


def _pick_algorithm(d: Digraph, cls: DicutClass, capacity: Capacity) -> str:
    if cls.tag == "min":
        return "min"
    resolved = resolve_class(d, cls, capacity)
    if find_nested_representation(d, resolved) is not None:
        return "nested"
    return "corner"


def cmd_pack(args) -> int:
    d, capacity = _load(args.input)
    cls = _parse_class(args.cls, d)
    algorithm = args.algorithm or _pick_algorithm(d, cls, capacity)
    if algorithm == "min":
        if cls.tag != "min":
            raise DijoinError("--algorithm min packs the minimum class; use --class min")
        packing = pack_min(d, capacity)
        used_capacity: Optional[Capacity] = capacity
    elif algorithm == "nested":
        packing = pack_nested(d, cls)
        used_capacity = None
    else:
        resolved = resolve_class(d, cls, capacity)
        sizes = {b.size() for b in resolved}
        if len(sizes) != 1:
            raise DijoinError(
                "the corner algorithm needs a uniform class; sizes seen: "
                + ", ".join(map(str, sorted(sizes)))
            )
        packing = pack_corner_closed_uniform(d, resolved, sizes.pop())
        used_capacity = None
    verified = bool(verify_packing(d, packing.cls, packing, used_capacity))
    payload = packing.as_json()
    payload["verified"] = verified
    payload["algorithm"] = algorithm
    _emit(payload)
    return 0


def cmd_oracle(args) -> int:
    d, capacity = _load(args.input)
    cls = _parse_class(args.cls, d)
    resolved = resolve_class(d, cls, capacity)
    if args.dibonds_only:
        resolved = tuple(_filter_dibonds(d, resolved))
    report = max_disjoint_dijoins(d, resolved, capacity, max_positive_edges=args.max_edges)
    _emit(report.as_json())
    return 0


def cmd_check_woodall(args) -> int:
    d, capacity = _load(args.input)
    cls = _parse_class(args.cls, d)
    report = check_woodall(d, cls, capacity, max_positive_edges=args.max_edges)
    _emit(report.as_json())
    return 0 if report.woodall else 2


def cmd_transform(args) -> int:
    d, capacity = _load(args.input)
    cls = _parse_class(args.cls, d) if args.cls else DicutClass.explicit(())
    if args.kind == "hat":
        result = hat_transform(d, capacity, cls)
        payload = {
            "digraph": format_digraph(result.digraph),
            "edge_map": {
                str(e): [str(c) for c in clones] for e, clones in result.edge_map.items()
            },
            "class_map": [
                {"dicut": _dicut_json(b), "image": _dicut_json(img)}
                for b, img in result.class_map.items()
            ],
        }
    else:
        result = tilde_transform(d, cls)
        payload = {
            "digraph": format_digraph(result.digraph, result.capacity),
            "subset_vertices": {
                ",".join(sorted(map(str, s))): str(v)
                for s, v in sorted(result.subset_vertex.items(), key=lambda kv: kv[1])
            },
            "class_map": [
                {"dicut": _dicut_json(b), "image": _dicut_json(img)}
                for b, img in result.class_map.items()
            ],
        }
    _emit(payload)
    return 0


def cmd_quotient(args) -> int:
    d, _ = _load(args.input)
    cls = _parse_class(args.cls, d)
    q, vertex_map = quotient(d, resolve_class(d, cls))
    _emit(
        {
            "digraph": format_digraph(q),
            "vertex_map": {str(v): str(w) for v, w in sorted(vertex_map.items(), key=lambda kv: sort_key(kv[0]))},
        }
    )
    return 0


def cmd_robbins(args) -> int:
    d, _ = _load(args.input)
    agree, disagree = robbins_two_dijoins(d)
    _emit({"agree": sorted(agree, key=sort_key), "disagree": sorted(disagree, key=sort_key)})
    return 0


def cmd_fixture(args) -> int:
    fix = fixture(args.name)
    text = format_digraph(fix.digraph, fix.capacity)
    if args.emit:
        sys.stdout.write(text)
        return 0
    payload = {
        "name": fix.name,
        "vertices": fix.digraph.num_vertices(),
        "edges": fix.digraph.num_edges(),
        "digraph": text,
        "class": fix.cls.tag
        if fix.cls.tag is not None
        else [_dicut_json(b) for b in fix.cls.dicuts],
    }
    _emit(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dijoinpack",
        description="Enumerate dicuts and dibonds, pack disjoint dijoins, "
        "and certify the results with a brute-force oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_class_option(p, required=False, default=None):
        p.add_argument(
            "--class",
            dest="cls",
            required=required,
            default=default,
            help="all|dibonds|min|atomic|source-sink|file:<path>",
        )

    p = sub.add_parser("dicuts", help="enumerate all dicuts")
    p.add_argument("input")
    p.add_argument("--include-empty", action="store_true")
    p.set_defaults(func=cmd_dicuts)

    p = sub.add_parser("dibonds", help="enumerate the minimal non-empty dicuts")
    p.add_argument("input")
    p.set_defaults(func=cmd_dibonds)

    p = sub.add_parser("pack", help="construct a maximum family of disjoint dijoins")
    p.add_argument("input")
    add_class_option(p, default="min")
    p.add_argument(
        "--algorithm",
        choices=("nested", "corner", "min"),
        help="default: min for --class min, else nested when the class has a "
        "nested representation, else corner; file capacities are honoured "
        "by min (capacity-disjoint dijoins) and ignored by the other two",
    )
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("oracle", help="brute-force maximum disjoint dijoins")
    p.add_argument("input")
    add_class_option(p, required=True)
    p.add_argument("--dibonds-only", action="store_true",
                   help="restrict the class to its dibonds")
    p.add_argument("--max-edges", type=int, default=14)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check-woodall", help="oracle verdict; exit 2 when it is 'no'")
    p.add_argument("input")
    add_class_option(p, required=True)
    p.add_argument("--max-edges", type=int, default=14)
    p.set_defaults(func=cmd_check_woodall)

    p = sub.add_parser("transform", help="hat / tilde capacity reductions")
    p.add_argument("kind", choices=("hat", "tilde"))
    p.add_argument("input")
    add_class_option(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("quotient", help="contract what the class cannot separate")
    p.add_argument("input")
    add_class_option(p, required=True)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("robbins", help="two disjoint dijoins from a strong orientation")
    p.add_argument("input")
    p.set_defaults(func=cmd_robbins)

    p = sub.add_parser("fixture", help="emit a bundled instance")
    p.add_argument("name")
    p.add_argument("--emit", action="store_true", help="write the raw text format")
    p.set_defaults(func=cmd_fixture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DijoinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
