"""``arcop`` command line: thin wrappers that read JSON files and print JSON."""

from __future__ import annotations

import argparse
import sys

from . import arcgraph as ag
from . import io
from .arcgraph import ArcGraph, GapGraph, WeightedArcGraph
from .cells import Cell, Chain, boundary, chain_compose, dl_class, homology
from .errors import ArcError, InvalidGraphError
from .frobenius import act
from .glue import compose, fatten, thick_compose
from .kgraph import filtration_level, k_label
from .stabilize import st


def _graph(x) -> ArcGraph:
    if isinstance(x, ArcGraph):
        return x
    if isinstance(x, (WeightedArcGraph, GapGraph, Cell)):
        return x.graph
    raise InvalidGraphError(f"expected an arc graph, got {type(x).__name__}")


def _cell(x) -> Cell:
    return x if isinstance(x, Cell) else Cell(_graph(x))


def _weighted(x) -> WeightedArcGraph:
    if isinstance(x, WeightedArcGraph):
        return x
    if isinstance(x, GapGraph):
        return WeightedArcGraph(x.graph, x.weights)
    from .cells import _uniform

    g = _graph(x)
    return WeightedArcGraph(g, _uniform(g))


def _gap(x) -> GapGraph:
    return x if isinstance(x, GapGraph) else fatten(_weighted(x))


def _emit(x, args):
    if getattr(args, "dot", False):
        sys.stdout.write(io.export_dot(_graph(x)))
    else:
        sys.stdout.write(io.dumps(x))


def cmd_validate(args):
    x = io.load(args.file)
    g = _graph(x)
    ag.validate(g, allow_parallel=isinstance(x, GapGraph))
    report = {
        "valid": True,
        "arity": g.arity,
        "arcs": g.arc_count,
        "ambient_genus": ag.ambient_genus(g),
        "euler_defect": ag.euler_defect(g),
        "quasi_filling": ag.is_quasi_filling(g),
        "gtree": ag.is_gtree(g),
        "lgtree": ag.is_gtree(g) and ag.is_lgtree(g),
        "cgtree": ag.is_gtree(g) and ag.is_cgtree(g),
        "twisted_at": [b for b in range(g.boundary_count) if g.window_size(b) and ag.is_twisted_at(g, b)],
    }
    _emit(report, args)


def cmd_compose(args):
    a, b = io.load(args.a), io.load(args.b)
    if args.thick:
        out = thick_compose(_gap(a), args.i, _gap(b))
    else:
        out = compose(_weighted(a), args.i, _weighted(b))
    _emit(out if args.raw else out.normalized(), args)


def cmd_stabilize(args):
    _emit(st(_weighted(io.load(args.file))), args)


def cmd_boundary(args):
    x = io.load(args.file)
    c = x if isinstance(x, Chain) else _cell(x)
    _emit(boundary(c, args.stabilized), args)


def cmd_chain_compose(args):
    a, b = io.load(args.a), io.load(args.b)
    a = a if isinstance(a, Chain) else _cell(a)
    b = b if isinstance(b, Chain) else _cell(b)
    _emit(chain_compose(a, args.i, b, args.stabilized), args)


def cmd_homology(args):
    space = "stlgtree2_filtration" if args.filtration is not None else args.space
    groups = homology(space, args.max_dim, args.coeffs, filtration=args.filtration, p=args.p)
    _emit(groups, args)


def cmd_dl(args):
    _emit(dl_class(args.p), args)


def cmd_seq(args):
    _emit(list(ag.seq(_graph(io.load(args.file)))), args)


def cmd_filtration(args):
    c = _cell(io.load(args.file))
    k = k_label(c)
    _emit({"level": filtration_level(c), "mu": {f"{i},{j}": v for (i, j), v in k.mu}, "sigma": list(k.sigma)}, args)


def cmd_act(args):
    algebra = io.load(args.algebra)
    x = io.load(args.cell)
    inputs = [io.load(f) for f in args.inputs]
    target = Cell(x) if isinstance(x, ArcGraph) else x
    _emit(act(target, algebra, inputs), args)


def cmd_enumerate(args):
    filters = {
        "lgtree": args.lgtree,
        "untwisted": args.untwisted,
        "quasi_filling": args.quasi_filling,
        "max_genus": args.max_genus,
    }
    if args.genus is not None:
        filters["genus"] = args.genus
    graphs = ag.enumerate_graphs(args.n, args.max_arcs, limit=args.limit, **filters)
    _emit([io.to_doc(g) for g in graphs], args)


def cmd_export_dot(args):
    sys.stdout.write(io.export_dot(_graph(io.load(args.file))))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arcop", description="Arc graphs, gluing, stabilization and cell chains.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", cmd_validate, "check a graph file and report its invariants")
    sp.add_argument("file")

    sp = add("compose", cmd_compose, "glue B into input I of A")
    sp.add_argument("a")
    sp.add_argument("i", type=int)
    sp.add_argument("b")
    sp.add_argument("--thick", action="store_true", help="gap-preserving gluing")
    sp.add_argument("--raw", action="store_true", help="skip projective normalization")
    sp.add_argument("--dot", action="store_true")

    sp = add("stabilize", cmd_stabilize, "quasi-filling representative of the stable class")
    sp.add_argument("file")
    sp.add_argument("--dot", action="store_true")

    sp = add("boundary", cmd_boundary, "cellular boundary of a cell or chain")
    sp.add_argument("file")
    sp.add_argument("--stabilized", action="store_true")

    sp = add("chain-compose", cmd_chain_compose, "cellular composition of two cells or chains")
    sp.add_argument("a")
    sp.add_argument("i", type=int)
    sp.add_argument("b")
    sp.add_argument("--stabilized", action="store_true")

    sp = add("homology", cmd_homology, "homology of the two-input stabilized complex")
    sp.add_argument("--space", default="stlgtree2", choices=["stlgtree2", "stlgtree2_filtration"])
    sp.add_argument("--max-dim", type=int, default=5)
    sp.add_argument("--filtration", type=int)
    sp.add_argument("--coeffs", default="Z", choices=["Z", "Zp-sign"])
    sp.add_argument("--p", type=int, default=2)

    sp = add("dl", cmd_dl, "Dyer-Lashof chain on P inputs")
    sp.add_argument("--p", type=int, required=True)

    sp = add("seq", cmd_seq, "window-0 label sequence")
    sp.add_argument("file")

    sp = add("filtration", cmd_filtration, "filtration level and pairwise projection data")
    sp.add_argument("file")

    sp = add("act", cmd_act, "action of a tree cell on Hochschild cochains")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--cell", required=True)
    sp.add_argument("--inputs", nargs="*", default=[])

    sp = add("enumerate", cmd_enumerate, "list all GTree graphs within the bounds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-arcs", type=int, required=True)
    sp.add_argument("--genus", type=int)
    sp.add_argument("--max-genus", type=int, default=1)
    sp.add_argument("--lgtree", action="store_true")
    sp.add_argument("--untwisted", action="store_true")
    sp.add_argument("--quasi-filling", action="store_true")
    sp.add_argument("--limit", type=int, default=2_000_000)

    sp = add("export-dot", cmd_export_dot, "dual graph in DOT format")
    sp.add_argument("file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ArcError, ValueError, OSError) as exc:
        print(f"arcop: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
