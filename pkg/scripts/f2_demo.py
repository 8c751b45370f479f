"""The linear map 1..4 on the boundary of a tetrahedron, end to end."""

from persistor import level as L
from persistor.complex import build_complex

SURFACE = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


def show(side, bars):
    for r in sorted(bars):
        print(f"    B{r}{side} = {{{', '.join(bars[r])}}}")


def main():
    f = L.canonical_map(build_complex(SURFACE))
    for i in range(1, f.N + 1):
        pn = L.posneg(f, 2 * i)
        plus = {r: [f"[{i},{'inf' if b == L.INF else b // 2})" for b in sorted(v)] for r, v in pn.plus.items() if v}
        minus = {r: [f"({'-inf' if a == -L.INF else a // 2},{i}]" for a in sorted(v)] for r, v in pn.minus.items() if v}
        print(f"level {i}")
        show("+", plus)
        show("-", minus)

    stats = L.Stats()
    _, lb = L.level_barcode(f, 2, stats)
    print("level bar code:", ", ".join(str(b) for b in lb.intervals()), f"({stats.reductions} reductions)")
    mu = L.sublevel_barcodes_direct(f)
    print("sub-level mu_0(1,inf) =", mu[0, 1, f.N + 1], " mu_2(4,inf) =", mu[2, 4, f.N + 1])


if __name__ == "__main__":
    main()
