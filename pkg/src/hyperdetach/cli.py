"""Command-line front end: JSON hypergraphs in, JSON hypergraphs out.

Exit codes: 0 success (and, for `verify`, a passing report), 1 a named
precondition failed, 2 an I/O or format problem.  Output on stdout is
byte-identical across runs for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .embeddings import (
    check_partial_necessary,
    embed_friendly,
    embed_minus_v,
    embed_partial_r,
    embed_r_to_s,
    minus_v_obstructions,
)
from .engine import detach
from .errors import DomainError, HyperdetachError, PreconditionError
from .factorization import baranyai_connected, factorize_nonuniform
from .hypergraph import Hypergraph
from .verify import (
    verify_detachment_parts,
    verify_extension,
    verify_factorization,
)
from .wings import wing_decomposition


def _load(path: str) -> Hypergraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON: {exc}") from None
    # accept both a bare hypergraph and the wrapped output of `detach`
    if isinstance(doc, dict) and "hypergraph" in doc:
        doc = doc["hypergraph"]
    return Hypergraph.from_json_dict(doc)


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise DomainError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(text + "\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from None


def _degree_spec(text: str) -> list[object]:
    """Parse 'lo-hi' windows or plain integers, comma-separated."""
    out: list[object] = []
    for item in text.split(","):
        if "-" in item[1:]:
            lo, hi = item.split("-", 1)
            try:
                out.append((int(lo), int(hi)))
            except ValueError:
                raise DomainError(f"bad degree window {item!r}") from None
        else:
            try:
                out.append(int(item))
            except ValueError:
                raise DomainError(f"bad degree {item!r}") from None
    return out


def _explain(lines: list[str]) -> None:
    for line in lines:
        sys.stderr.write(line + "\n")


# ------------------------------------------------------------- subcommands


def _cmd_detach(args) -> int:
    g = _load(args.input)
    res = detach(g, args.vertex, args.parts, verify_steps=args.verify_steps)
    doc = {
        "hypergraph": res.detached.to_json_dict(),
        "alpha": res.alpha,
        "parts": list(res.parts),
        "psi": {str(v): a for v, a in sorted(res.psi().items())},
    }
    if args.dump_families:
        doc["steps"] = [
            {
                "part": s.part,
                "divisor": s.divisor,
                "moved_edge_ids": list(s.moved_edge_ids),
            }
            for s in res.steps
        ]
    if args.explain:
        _explain([f"detached {res.alpha} into {len(res.parts)} parts over "
                  f"{len(res.steps)} split steps"])
    _emit(doc, args.out)
    return 0


def _cmd_wings(args) -> int:
    g = _load(args.input)
    wings = wing_decomposition(g, args.vertex, args.color)
    doc = {
        "vertex": args.vertex,
        "color": args.color,
        "omega": len(wings),
        "wings": [
            {"edge_ids": sorted(w.edge_ids), "wide": w.wide}
            for w in wings
        ],
    }
    _emit(doc, args.out)
    return 0


def _cmd_baranyai(args) -> int:
    sizes = _ints(args.sizes)
    f = baranyai_connected(args.n, args.h, args.lam, sizes,
                           verify_steps=args.verify_steps)
    if args.explain:
        thr = (args.n - 1 + args.h - 2) // (args.h - 1) if args.h > 1 else None
        _explain([f"class sizes {sizes} partition lambda*C(n,h); "
                  f"connectivity threshold a_j >= ceil((n-1)/(h-1)) = {thr}"])
    _emit(f.to_json_dict(), args.out)
    return 0


def _cmd_embed_partial(args) -> int:
    g = _load(args.input)
    if args.explain:
        _explain(["checked: h-admissible; no r-regular color component; "
                  "per-color edge-count window"])
        _explain(["obstructions: " + "; ".join(
            check_partial_necessary(g, args.n, args.r)) or "obstructions: none"])
    f = embed_partial_r(g, args.n, args.r, verify_steps=args.verify_steps)
    _emit(f.to_json_dict(), args.out)
    return 0


def _cmd_embed_minus_v(args) -> int:
    g = _load(args.input)
    if args.removed is not None:
        removed = _ints(args.removed)
        f = embed_friendly(g, removed, args.r, verify_steps=args.verify_steps)
    else:
        if args.lam is None:
            raise DomainError("--lambda is required unless --removed is given")
        if args.explain:
            obs = minus_v_obstructions(g, args.n, args.r, args.lam)
            _explain(["obstructions: " + ("; ".join(obs) if obs else "none")])
        f = embed_minus_v(g, args.n, args.r, args.lam,
                          verify_steps=args.verify_steps)
    _emit(f.to_json_dict(), args.out)
    return 0


def _cmd_embed_rs(args) -> int:
    g = _load(args.input)
    f = embed_r_to_s(g, args.n, args.s, verify_steps=args.verify_steps)
    _emit(f.to_json_dict(), args.out)
    return 0


def _cmd_rfactor(args) -> int:
    sizes = _ints(args.sizes)
    mults = _ints(args.mults)
    degrees = _degree_spec(args.degrees)
    f, plan = factorize_nonuniform(args.n, sizes, mults, degrees,
                                   connected=args.connected,
                                   verify_steps=args.verify_steps)
    if args.explain:
        _explain([f"edge-type matrix rows (classes x edge sizes): "
                  f"{[list(row) for row in plan.matrix]}"])
    _emit(f.to_json_dict(), args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.mode == "detachment":
        h = _load(args.original)
        f = _load(args.result)
        parts = _ints(args.parts)
        problems = verify_detachment_parts(h, f, args.vertex, parts)
    elif args.mode == "factorization":
        f = _load(args.result)
        degs = _degree_spec(args.degrees)
        conn = [bool(int(x)) for x in _ints(args.connected)]
        if len(conn) != len(degs):
            raise DomainError("--degrees and --connected must match in length")
        problems = verify_factorization(
            f,
            {j + 1: d for j, d in enumerate(degs)},
            {j + 1: c for j, c in enumerate(conn)},
        )
    else:
        g = _load(args.original)
        f = _load(args.result)
        problems = verify_extension(g, f)
    _emit({"mode": args.mode, "pass": not problems, "problems": problems},
          args.out)
    return 0 if not problems else 1


# ------------------------------------------------------------------ parser


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hyperdetach",
        description="Fair detachments, connected decompositions and "
                    "factorization embeddings for multiset hypergraphs.",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", required=True, help="hypergraph JSON file")
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.add_argument("--verify-steps", action="store_true",
                        help="re-check every intermediate step (slow)")
        sp.add_argument("--explain", action="store_true",
                        help="print checked conditions to stderr")

    sp = sub.add_parser("detach", help="fair (alpha,n)-detachment")
    common(sp)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--parts", type=int, required=True,
                    help="number of parts n (the vertex itself included)")
    sp.add_argument("--dump-families", action="store_true",
                    help="include the per-step audit trail in the output")
    sp.set_defaults(run=_cmd_detach)

    sp = sub.add_parser("wings", help="wing decomposition at a vertex")
    common(sp)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--color", type=int, default=None)
    sp.set_defaults(run=_cmd_wings)

    sp = sub.add_parser("baranyai", help="connected Baranyai decomposition")
    common(sp, needs_input=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=int, default=1)
    sp.add_argument("--sizes", required=True,
                    help="comma-separated class sizes summing to lambda*C(n,h)")
    sp.set_defaults(run=_cmd_baranyai)

    sp = sub.add_parser("embed-partial",
                        help="extend a partial r-factorization to n vertices")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.set_defaults(run=_cmd_embed_partial)

    sp = sub.add_parser("embed-minus-v",
                        help="complete an r-factorization of a complete "
                             "hypergraph with a vertex subset deleted")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=int, default=None)
    sp.add_argument("--removed",
                    help="comma-separated deleted vertices; switches to the "
                         "variant keeping edges that merely touch them")
    sp.set_defaults(run=_cmd_embed_minus_v)

    sp = sub.add_parser("embed-rs",
                        help="extend an r-factorization to an s-factorization "
                             "on more vertices")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.set_defaults(run=_cmd_embed_rs)

    sp = sub.add_parser("rfactor",
                        help="factorization of a non-uniform complete "
                             "multiset hypergraph")
    common(sp, needs_input=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sizes", required=True,
                    help="comma-separated edge sizes h_1<...<h_m")
    sp.add_argument("--mults", required=True,
                    help="comma-separated multiplicities lambda_j")
    sp.add_argument("--degrees", required=True,
                    help="per-class degree: integers or lo-hi windows")
    sp.add_argument("--connected", action=argparse.BooleanOptionalAction,
                    default=True)
    sp.set_defaults(run=_cmd_rfactor)

    sp = sub.add_parser("verify", help="independent certification of outputs")
    common(sp, needs_input=False)
    sp.add_argument("--mode", choices=["detachment", "factorization", "extension"],
                    required=True)
    sp.add_argument("--original", help="input hypergraph JSON")
    sp.add_argument("--result", help="output hypergraph JSON")
    sp.add_argument("--vertex", type=int, help="detached vertex")
    sp.add_argument("--parts", help="comma-separated part names, alpha first")
    sp.add_argument("--degrees", help="per-class degrees or lo-hi windows")
    sp.add_argument("--connected", help="per-class 0/1 connectivity flags")
    sp.set_defaults(run=_cmd_verify)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except PreconditionError as exc:
        sys.stderr.write(f"precondition failed: {exc}\n")
        return 1
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except HyperdetachError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
