"""Command line front end: persistor {rips,level,posneg,sublevel}."""

from __future__ import annotations

import argparse
import hashlib
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from persistor import hodge
from persistor import level as lv
from persistor.complex import INF, read_simplex_file
from persistor.errors import InputError, PersistorError
from persistor.persistence_algebra import CLOSED, INFINITE, OPEN
from persistor.rips import RipsConfig, elz_bars, read_points, rips_pipeline

# -- canonical JSON -------------------------------------------------------------

def dumps(obj) -> str:
    """Sorted keys, floats as %.17g, no whitespace variation."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise InputError("non-finite float in document")
        s = "%.17g" % x
        return s if any(c in s for c in ".en") else s + ".0"
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(f"{dumps(k)}:{dumps(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_atomic(path, text: str) -> None:
    path = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".", prefix=".persistor-")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        Path(tmp).unlink(missing_ok=True)
        raise InputError(f"cannot write {path}: {exc}") from exc


def input_hash(*paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        try:
            h.update(Path(p).read_bytes())
        except OSError as exc:
            raise InputError(f"cannot read {p}: {exc}") from exc
        h.update(b"\0")
    return h.hexdigest()


# -- bar serialisation ------------------------------------------------------------

def _end(index, value, kind) -> dict:
    if kind == INFINITE:
        return {"index": "inf", "value": None, "kind": INFINITE}
    return {"index": index, "value": value, "kind": kind}


def _bar(dim, left, right, mult) -> dict:
    return {"dim": int(dim), "left": left, "right": right, "mult": int(mult)}


def _bar_sort_key(b: dict) -> tuple:
    def pos(e):
        i = e["index"]
        if i == "inf":
            return (1, math.inf)
        if i == "-inf":
            return (-1, -math.inf)
        return (0, i[0] + 0.5 if isinstance(i, list) else i)

    return (b["dim"], pos(b["left"]), pos(b["right"]), b["left"]["kind"], b["right"]["kind"])


def merge_bars(bars: list) -> list:
    """Collapse equal bars into one entry with summed multiplicity, canonically sorted."""
    acc = {}
    for b in bars:
        key = dumps({**b, "mult": 0})
        if key in acc:
            acc[key]["mult"] += b["mult"]
        else:
            acc[key] = dict(b)
    return sorted(acc.values(), key=_bar_sort_key)


def grid_index(h):
    """Half-unit level -> critical index k or midpoint pair [k, k+1]."""
    if h in (INF, -INF):
        return "inf" if h > 0 else "-inf"
    k, odd = divmod(int(h), 2)
    return [k, k + 1] if odd else k


def parse_level(spec: str, N: int) -> int:
    s = spec.strip().replace(" ", "")
    try:
        if s.endswith("+1/2"):
            h = 2 * int(s[:-4]) + 1
        elif s.endswith(".5"):
            h = 2 * int(s[:-2]) + 1
        else:
            h = 2 * int(s)
    except ValueError as exc:
        raise InputError(f"bad level {spec!r}; use k or k+1/2") from exc
    if not 2 <= h <= 2 * N:
        raise InputError(f"level {spec} outside 1..{N}")
    return h


# -- commands -----------------------------------------------------------------------

def cmd_rips(points_file, max_dim: int, max_steps: int, coeff: str = "gf2",
             config: RipsConfig = RipsConfig()) -> dict:
    if max_dim < 1:
        raise InputError("--max-dim must be at least 1")
    if max_steps < 0:
        raise InputError("--max-steps must be non-negative")
    pts = read_points(points_file)
    res = rips_pipeline(pts, max_dim, max_steps, config)
    filt = res.filtration
    eps = list(res.schedule.eps)
    # the filtration is cut at P, so "inf" only means the class outlives step P
    open_right = {**_end(None, None, INFINITE), "label": "right>=P"}
    bars = []
    if coeff == "gf2":
        for b in elz_bars(filt):
            right = open_right if b.right_kind == INFINITE else _end(b.right, eps[b.right], CLOSED)
            bars.append(_bar(b.dim, _end(b.left, eps[b.left], CLOSED), right, b.mult))
    elif coeff == "real":
        mu = hodge.mu_from_beta(hodge.beta_table(filt, hodge.HodgeConfig.from_env()))
        P = filt.P
        for r, s, t in zip(*np.nonzero(mu)):
            right = open_right if t == P + 1 else _end(int(t), eps[t], CLOSED)
            bars.append(_bar(r, _end(int(s), eps[s], CLOSED), right, mu[r, s, t]))
    else:
        raise InputError(f"unknown coefficient field {coeff!r}")
    meta = {
        "pipeline": "rips",
        "input_hash": input_hash(points_file),
        "coeff": coeff,
        "m": max_dim,
        "P": filt.P,
        "N": res.schedule.N,
        "epsilons": eps,
        "scale": res.scale,
        "valid_max_dim": max_dim - 1,
        "n_points": len(pts),
        "n_simplices": len(filt.complex),
    }
    return {"meta": meta, "bars": merge_bars(bars)}


def _load_map(complex_file, values_file, perturb: float = 0.0) -> lv.PLMap:
    cx = read_simplex_file(complex_file)
    vals = lv.read_values_file(values_file)
    return lv.check_generic(cx, vals, perturb)


def _map_meta(f: lv.PLMap, pipeline: str, complex_file, values_file) -> dict:
    return {
        "pipeline": pipeline,
        "input_hash": input_hash(complex_file, values_file),
        "coeff": "gf2",
        "N": f.N,
        "critical_values": list(f.values),
        "vertex_order": list(f.labels),
    }


def level_document(f: lv.PLMap, lb: lv.LevelBarcode) -> list:
    bars = []
    for b in lb.intervals():
        bars.append(_bar(b.dim, _end(b.left, f.values[b.left - 1], b.left_kind),
                         _end(b.right, f.values[b.right - 1], b.right_kind), b.mult))
    return merge_bars(bars)


def cmd_level(complex_file, values_file, method: int = 2, perturb: float = 0.0) -> dict:
    if method not in (1, 2):
        raise InputError("--method must be 1 or 2")
    f = _load_map(complex_file, values_file, perturb)
    stats = lv.Stats()
    _, lb = lv.level_barcode(f, method, stats)
    meta = _map_meta(f, "level", complex_file, values_file)
    meta.update(method=method, reductions=stats.reductions)
    return {"meta": meta, "bars": level_document(f, lb)}


def cmd_posneg(complex_file, values_file, level: str, perturb: float = 0.0) -> dict:
    f = _load_map(complex_file, values_file, perturb)
    h = parse_level(level, f.N)
    pn = lv.posneg(f, h)
    here = _end(grid_index(h), f.value(h), CLOSED)

    def plus_bar(r, b):
        right = _end(None, None, INFINITE) if b == INF else _end(grid_index(b), f.value(b), OPEN)
        return _bar(r, here, right, 1)

    def minus_bar(r, a):
        left = {"index": "-inf", "value": None, "kind": INFINITE} if a == -INF else _end(grid_index(a), f.value(a), OPEN)
        return _bar(r, left, here, 1)

    out = {"plus": [], "minus": [], "pairs": []}
    for r in sorted(pn.pairs):
        # infinite pairs first, then by the upper end
        for (a, b), n in sorted(pn.pairs[r].items(), key=lambda kv: (kv[0][1] != INF, kv[0][1], -kv[0][0])):
            for _ in range(n):
                out["pairs"].append({"dim": r, "plus": plus_bar(r, b), "minus": minus_bar(r, a)})
        out["plus"] += [plus_bar(r, b) for b in sorted(pn.plus.get(r, []), key=lambda x: (x != INF, x))]
        out["minus"] += [minus_bar(r, a) for a in sorted(pn.minus.get(r, []), key=lambda x: (x != -INF, -x))]
    meta = _map_meta(f, "posneg", complex_file, values_file)
    meta["level"] = grid_index(h)
    return {"meta": meta, **out}


def cmd_sublevel(complex_file, values_file, via: str = "direct", perturb: float = 0.0) -> dict:
    f = _load_map(complex_file, values_file, perturb)
    top = max(f.complex.dim, 0)
    if via == "direct":
        mu = lv.sublevel_barcodes_direct(f)
    elif via == "level":
        _, lb = lv.level_barcode(f, 2)
        mu = lv.sublevel_from_level(lb, top)
    else:
        raise InputError(f"unknown route {via!r}")
    N = f.N
    bars = []
    for r, i, j in zip(*np.nonzero(mu)):
        right = _end(None, None, INFINITE) if j == N + 1 else _end(int(j), f.values[j - 1], OPEN)
        bars.append(_bar(r, _end(int(i), f.values[i - 1], CLOSED), right, mu[r, i, j]))
    meta = _map_meta(f, "sublevel", complex_file, values_file)
    meta["via"] = via
    return {"meta": meta, "bars": merge_bars(bars)}


# -- SVG -------------------------------------------------------------------------------

def _pos(e) -> float | None:
    i = e["index"]
    if i in ("inf", "-inf"):
        return None
    return i[0] + 0.5 if isinstance(i, list) else float(i)


def emit_plot(doc: dict, out_path) -> str:
    """Horizontal bars grouped by dimension; hollow = open, filled = closed, arrow = infinite."""
    bars = sorted(doc.get("bars", []), key=_bar_sort_key)
    rows = []
    for b in bars:
        rows += [b] * b["mult"]
    xs = [p for b in rows for p in (_pos(b["left"]), _pos(b["right"])) if p is not None] or [0.0, 1.0]
    lo, hi = min(xs), max(xs) + 1
    W, left_m, right_m, top_m, row_h = 640, 50, 30, 20, 16
    dims = sorted({b["dim"] for b in rows})
    H = top_m * 2 + row_h * (len(rows) + len(dims)) + 30

    def X(v):
        return left_m + (v - lo) / (hi - lo) * (W - left_m - right_m)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
           '<rect width="100%" height="100%" fill="white"/>']
    y0 = H - top_m - 10
    out.append(f'<line x1="{left_m}" y1="{y0}" x2="{W - right_m}" y2="{y0}" stroke="black"/>')
    for k in range(math.floor(lo), math.ceil(hi) + 1):
        if lo <= k <= hi:
            out.append(f'<line x1="{X(k):.2f}" y1="{y0}" x2="{X(k):.2f}" y2="{y0 + 4}" stroke="black"/>')
            out.append(f'<text x="{X(k):.2f}" y="{y0 + 16}" font-size="10" text-anchor="middle">{k}</text>')
    y = top_m
    for d in dims:
        out.append(f'<text x="4" y="{y + 11}" font-size="11">H{d}</text>')
        y += row_h
        for b in (b for b in rows if b["dim"] == d):
            yc = y + row_h / 2
            a = _pos(b["left"])
            c = _pos(b["right"])
            xa = X(a) if a is not None else left_m
            xc = X(c) if c is not None else W - right_m
            out.append(f'<line x1="{xa:.2f}" y1="{yc:.2f}" x2="{xc:.2f}" y2="{yc:.2f}" stroke="black" stroke-width="2"/>')
            for end, x, sign in ((b["left"], xa, -1), (b["right"], xc, 1)):
                if end["kind"] == INFINITE:
                    out.append(f'<polygon points="{x:.2f},{yc:.2f} {x - 6 * sign:.2f},{yc - 4:.2f} '
                               f'{x - 6 * sign:.2f},{yc + 4:.2f}" fill="black"/>')
                else:
                    fill = "black" if end["kind"] == CLOSED else "white"
                    out.append(f'<circle cx="{x:.2f}" cy="{yc:.2f}" r="3.5" fill="{fill}" stroke="black"/>')
            y += row_h
    out.append("</svg>")
    svg = "\n".join(out) + "\n"
    write_atomic(out_path, svg)
    return svg


# -- entry point -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="persistor", description="Persistent and level-persistent homology")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rips", help="bar codes of a point cloud's Rips filtration")
    r.add_argument("points")
    r.add_argument("--max-dim", "-m", type=int, required=True)
    r.add_argument("--max-steps", "-S", type=int, required=True)
    r.add_argument("--coeff", choices=("gf2", "real"), default="gf2")

    def map_args(q):
        q.add_argument("complex")
        q.add_argument("values")
        q.add_argument("--perturb", type=float, default=0.0,
                       help="break value ties by this relative amount")

    lvp = sub.add_parser("level", help="four-kind level bar code of a PL map")
    map_args(lvp)
    lvp.add_argument("--method", type=int, choices=(1, 2), default=2)

    pn = sub.add_parser("posneg", help="positive and negative bar codes at one level")
    map_args(pn)
    pn.add_argument("--level", required=True, help="critical index k or midpoint k+1/2")

    sl = sub.add_parser("sublevel", help="sub-level bar code of a PL map")
    map_args(sl)
    sl.add_argument("--via", choices=("direct", "level"), default="direct")

    for q in (r, lvp, pn, sl):
        q.add_argument("--out", "-o", help="output JSON path (default stdout)")
    for q in (r, lvp, sl):
        q.add_argument("--plot", help="also write an SVG bar code plot")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "rips":
            doc = cmd_rips(args.points, args.max_dim, args.max_steps, args.coeff)
        elif args.command == "level":
            doc = cmd_level(args.complex, args.values, args.method, args.perturb)
        elif args.command == "posneg":
            doc = cmd_posneg(args.complex, args.values, args.level, args.perturb)
        else:
            doc = cmd_sublevel(args.complex, args.values, args.via, args.perturb)
        text = dumps(doc) + "\n"
        if args.out:
            write_atomic(args.out, text)
        else:
            sys.stdout.write(text)
        if getattr(args, "plot", None):
            emit_plot(doc, args.plot)
    except PersistorError as exc:
        print(f"persistor: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"persistor: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
