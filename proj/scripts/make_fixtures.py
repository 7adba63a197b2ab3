#!/usr/bin/env python3
"""Generate the synthetic benchmark fixtures shipped under data/.

The six CSV files are synthetic stand-ins for the classic effort-estimation
benchmarks (COCOMO81, Desharnais, China, Albrecht, Kemerer, Maxwell), whose
original files are not redistributable here. Each fixture reproduces the
commonly cited summary statistics of its namesake exactly:

    dataset      projects  features  effort min  effort max  effort median
    cocomo81           64        16         5.9     11400.0          102.0
    desharnais         81        12       546.0     23940.0         3647.0
    china             499        14        26.0     54620.0         1829.0
    albrecht           24         8         0.5       105.2           11.5
    kemerer            15         7        23.2      1107.3          130.3
    maxwell            62        27       583.0     63694.0         5189.5

Feature columns carry a controlled amount of signal about effort: per dataset
there is a size-like driver (heavy-tailed, strongly co-moving with effort),
a few medium predictors, weak/noise columns, and categorical columns with no
signal. Column generation retries until the achieved feature/effort Pearson
correlation lands in the intended band, so feature selection at the usual
0.5 threshold behaves the way it does on the real data. Regeneration is
deterministic.

Usage: python3 scripts/make_fixtures.py [out_dir]
"""
import math
import random
import sys
from pathlib import Path


def standardize(vals):
    n = len(vals)
    m = sum(vals) / n
    sd = math.sqrt(sum((v - m) ** 2 for v in vals) / (n - 1))
    return [(v - m) / sd for v in vals]


def pearson(x, y):
    n = len(x)
    mx, my = sum(x) / n, sum(y) / n
    num = sum((a - mx) * (b - my) for a, b in zip(x, y))
    dx = math.sqrt(sum((a - mx) ** 2 for a in x))
    dy = math.sqrt(sum((b - my) ** 2 for b in y))
    if dx == 0.0 or dy == 0.0:
        return None
    return num / (dx * dy)


def make_efforts(rng, n, lo, med, hi, sigma):
    """Lognormal draws quantile-mapped (two log-linear pieces) onto the exact
    lo/med/hi anchors. Median convention: midpoint of the two middle values
    for even n, so both middles are pinned to the target."""
    raw = sorted(math.exp(sigma * rng.gauss(0.0, 1.0)) for _ in range(n))
    lraw = [math.log(v) for v in raw]
    rmin, rmax = lraw[0], lraw[-1]
    rmed = (lraw[n // 2] if n % 2 else 0.5 * (lraw[n // 2 - 1] + lraw[n // 2]))
    llo, lmed, lhi = math.log(lo), math.log(med), math.log(hi)
    out = []
    for v in lraw:
        if v <= rmed:
            t = 0.0 if rmed == rmin else (v - rmin) / (rmed - rmin)
            out.append(math.exp(llo + t * (lmed - llo)))
        else:
            t = (v - rmed) / (rmax - rmed)
            out.append(math.exp(lmed + t * (lhi - lmed)))
    out = [min(max(round(v, 1), lo), hi) for v in out]
    out[0], out[-1] = lo, hi
    if n % 2:
        out[n // 2] = med
    else:
        out[n // 2 - 1] = med
        out[n // 2] = med
    out.sort()
    # scatter sorted efforts across rows
    order = list(range(n))
    rng.shuffle(order)
    efforts = [0.0] * n
    for rank, row in enumerate(order):
        efforts[row] = out[rank]
    return efforts


def round_col(vals, digits):
    if digits == 0:
        return [float(round(v)) for v in vals]
    return [round(v, digits) for v in vals]


class ColumnBuilder:
    """Feature generators with achieved-correlation bands (retried)."""

    TRIES = 400

    def __init__(self, rng, efforts):
        self.rng = rng
        self.efforts = efforts
        self.e_std = standardize(efforts)
        self.l_std = standardize([math.log(v) for v in efforts])

    def _affine(self, xs, lo, hi, digits):
        mn, mx = min(xs), max(xs)
        vals = [lo + (v - mn) / (mx - mn) * (hi - lo) for v in xs]
        return round_col(vals, digits)

    def _retry(self, make, band, lo, hi, digits, scale="lin"):
        best, best_d = None, None
        for _ in range(self.TRIES):
            xs = make()
            if scale == "exp":
                mn, mx = min(xs), max(xs)
                llo, lhi = math.log(lo), math.log(hi)
                col = [math.exp(llo + (v - mn) / (mx - mn) * (lhi - llo)) for v in xs]
                col = round_col(col, digits)
            else:
                col = self._affine(xs, lo, hi, digits)
            r = pearson(col, self.efforts)
            if r is None:
                continue
            if band[0] <= r <= band[1]:
                return col, r
            d = max(band[0] - r, r - band[1])
            if best is None or d < best_d:
                best, best_d = (col, r), d
        return best

    def size_driver(self, sigma, lo, hi, digits, band=(0.55, 0.95)):
        # heavy-tailed, log-linearly tied to effort: the kind of column a
        # size/FP count gives on the real benchmarks
        return self._retry(
            lambda: [l + sigma * self.rng.gauss(0.0, 1.0) for l in self.l_std],
            band, lo, hi, digits, scale="exp")

    def medium(self, r, lo, hi, digits, band=None):
        band = band or (r - 0.04, r + 0.04)
        c = math.sqrt(max(0.0, 1.0 - r * r))
        return self._retry(
            lambda: [r * e + c * self.rng.gauss(0.0, 1.0) for e in self.e_std],
            band, lo, hi, digits)

    def misleading(self, lo, hi, digits, band=(0.50, 0.62)):
        # tracks effort globally but oscillates with log-effort locally,
        # so it points retrieval at the wrong neighbours
        return self._retry(
            lambda: [0.9 * e + 1.0 * math.sin(6.5 * l) + 0.25 * self.rng.gauss(0.0, 1.0)
                     for e, l in zip(self.e_std, self.l_std)],
            band, lo, hi, digits)

    def weak(self, r, lo, hi, digits):
        return self.medium(r, lo, hi, digits, band=(r - 0.05, r + 0.05))

    def noise(self, lo, hi, digits, cap=0.35):
        return self._retry(
            lambda: [self.rng.gauss(0.0, 1.0) for _ in self.e_std],
            (-cap, cap), lo, hi, digits)

    def nominal_noise(self, labels):
        return [labels[self.rng.randrange(len(labels))] for _ in self.e_std], None


DATASETS = {
    "cocomo81": dict(
        n=64, lo=5.9, med=102.0, hi=11400.0, sigma=1.9, effort="actual", seed=8101,
        cols=[
            ("loc",  "num", lambda b: b.size_driver(0.30, 1.9, 1150.0, 1)),
            ("time", "num", lambda b: b.medium(0.60, 1.00, 1.66, 2)),
            ("stor", "num", lambda b: b.medium(0.56, 1.00, 1.56, 2)),
            ("data", "num", lambda b: b.medium(0.53, 0.94, 1.16, 2)),
            ("cplx", "num", lambda b: b.weak(0.40, 0.70, 1.65, 2)),
            ("rely", "num", lambda b: b.weak(0.35, 0.75, 1.40, 2)),
            ("acap", "num", lambda b: b.misleading(0.71, 1.46, 2)),
            ("aexp", "num", lambda b: b.noise(0.82, 1.29, 2)),
            ("pcap", "num", lambda b: b.noise(0.70, 1.42, 2)),
            ("vexp", "num", lambda b: b.noise(0.90, 1.21, 2)),
            ("lexp", "num", lambda b: b.noise(0.95, 1.14, 2)),
            ("modp", "num", lambda b: b.noise(0.82, 1.24, 2)),
            ("tool", "num", lambda b: b.noise(0.83, 1.24, 2)),
            ("turn", "num", lambda b: b.noise(0.87, 1.15, 2)),
            ("sced", "num", lambda b: b.noise(1.00, 1.23, 2)),
            ("virt", "num", lambda b: b.noise(0.87, 1.30, 2)),
        ]),
    "desharnais": dict(
        n=81, lo=546.0, med=3647.0, hi=23940.0, sigma=1.1, effort="effort", seed=8102,
        cols=[
            ("points_adjust",     "num", lambda b: b.size_driver(0.28, 73, 1127, 0)),
            ("transactions",      "num", lambda b: b.medium(0.60, 9, 886, 0)),
            ("entities",          "num", lambda b: b.medium(0.55, 7, 387, 0)),
            ("points_non_adjust", "num", lambda b: b.medium(0.58, 62, 1116, 0)),
            ("envergure",         "num", lambda b: b.weak(0.42, 5, 52, 0)),
            ("length",            "num", lambda b: b.weak(0.44, 1, 39, 0)),
            ("team_exp",          "num", lambda b: b.noise(0, 4, 0)),
            ("manager_exp",       "num", lambda b: b.noise(0, 7, 0)),
            ("year_end",          "num", lambda b: b.noise(82, 88, 0)),
            ("staff",             "num", lambda b: b.noise(1, 12, 0)),
            ("avg_experience",    "num", lambda b: b.noise(1.0, 9.0, 1)),
            ("language",          "nom", lambda b: b.nominal_noise(["cobol", "advanced", "4gl"])),
        ]),
    "china": dict(
        n=499, lo=26.0, med=1829.0, hi=54620.0, sigma=1.2, effort="effort", seed=8103,
        cols=[
            ("afp",       "num", lambda b: b.size_driver(0.26, 9, 17518, 0)),
            ("input",     "num", lambda b: b.medium(0.60, 0, 9404, 0)),
            ("output",    "num", lambda b: b.medium(0.56, 0, 2455, 0)),
            ("enquiry",   "num", lambda b: b.medium(0.54, 0, 952, 0)),
            ("file",      "num", lambda b: b.weak(0.44, 0, 2955, 0)),
            ("interface", "num", lambda b: b.weak(0.35, 0, 1572, 0)),
            ("added",     "num", lambda b: b.medium(0.58, 0, 13580, 0)),
            ("changed",   "num", lambda b: b.weak(0.30, 0, 5193, 0)),
            ("deleted",   "num", lambda b: b.noise(0, 2657, 0)),
            ("pdr_afp",   "num", lambda b: b.weak(0.42, 0.3, 83.8, 1)),
            ("pdr_ufp",   "num", lambda b: b.noise(0.3, 96.6, 1)),
            ("resource",  "ord", lambda b: b.noise(1, 4, 0)),
            ("duration",  "num", lambda b: b.weak(0.45, 1, 84, 0)),
            ("dev_type",  "nom", lambda b: b.nominal_noise(["new", "enhancement", "redev"])),
        ]),
    "albrecht": dict(
        n=24, lo=0.5, med=11.5, hi=105.2, sigma=1.3, effort="effort", seed=8104,
        cols=[
            ("raw_fp",  "num", lambda b: b.size_driver(0.26, 100, 1935, 0)),
            ("adj_fp",  "num", lambda b: b.medium(0.62, 199, 1902, 0)),
            ("sloc",    "num", lambda b: b.medium(0.56, 3.0, 318.0, 1)),
            ("input",   "num", lambda b: b.weak(0.40, 7, 193, 0)),
            ("output",  "num", lambda b: b.misleading(12, 150, 0)),
            ("inquiry", "num", lambda b: b.noise(0, 75, 0)),
            ("file",    "num", lambda b: b.noise(3, 60, 0)),
            ("fp_adj",  "num", lambda b: b.noise(0.75, 1.35, 2)),
        ]),
    "kemerer": dict(
        n=15, lo=23.2, med=130.3, hi=1107.3, sigma=1.0, effort="effort_mm", seed=8105,
        cols=[
            ("ksloc",    "num", lambda b: b.size_driver(0.22, 39.0, 450.0, 1)),
            ("adj_fp",   "num", lambda b: b.medium(0.62, 99, 2307, 0)),
            ("raw_fp",   "num", lambda b: b.medium(0.56, 97, 2284, 0)),
            ("duration", "num", lambda b: b.weak(0.42, 5, 31, 0)),
            ("staff",    "num", lambda b: b.noise(2, 11, 0)),
            ("language", "nom", lambda b: b.nominal_noise(["cobol", "natural", "pl1", "c"])),
            ("hardware", "nom", lambda b: b.nominal_noise(
                ["ibm370", "ibm38", "ibm43", "hp", "dec", "prime"])),
        ]),
    "maxwell": dict(
        n=62, lo=583.0, med=5189.5, hi=63694.0, sigma=1.15, effort="effort", seed=8106,
        cols=[
            ("size",     "num", lambda b: b.size_driver(0.26, 48, 3643, 0)),
            ("duration", "num", lambda b: b.medium(0.58, 4, 54, 0)),
            ("time",     "num", lambda b: b.weak(0.40, 1, 9, 0)),
            ("nlan",     "ord", lambda b: b.noise(1, 4, 0)),
            ("t01", "ord", lambda b: b.noise(1, 5, 0)),
            ("t02", "ord", lambda b: b.noise(1, 5, 0)),
            ("t03", "ord", lambda b: b.weak(0.42, 1, 5, 0)),
            ("t04", "ord", lambda b: b.noise(1, 5, 0)),
            ("t05", "ord", lambda b: b.noise(1, 5, 0)),
            ("t06", "ord", lambda b: b.noise(1, 5, 0)),
            ("t07", "ord", lambda b: b.noise(1, 5, 0)),
            ("t08", "ord", lambda b: b.medium(0.55, 1, 5, 0)),
            ("t09", "ord", lambda b: b.noise(1, 5, 0)),
            ("t10", "ord", lambda b: b.noise(1, 5, 0)),
            ("t11", "ord", lambda b: b.noise(1, 5, 0)),
            ("t12", "ord", lambda b: b.noise(1, 5, 0)),
            ("t13", "ord", lambda b: b.noise(1, 5, 0)),
            ("t14", "ord", lambda b: b.misleading(1, 5, 0)),
            ("t15", "ord", lambda b: b.noise(1, 5, 0)),
            ("syear",    "num", lambda b: b.noise(86, 93, 0)),
            ("app",      "nom", lambda b: b.nominal_noise(["transpro", "infserv", "custserv", "mis"])),
            ("har",      "nom", lambda b: b.nominal_noise(["mainfrm", "pc", "mini", "multi", "network"])),
            ("dba",      "ord", lambda b: b.noise(0, 4, 0)),
            ("ifc",      "ord", lambda b: b.noise(1, 2, 0)),
            ("source",   "ord", lambda b: b.noise(1, 2, 0)),
            ("telonuse", "nom", lambda b: b.nominal_noise(["no", "yes"])),
            ("custpart", "ord", lambda b: b.noise(1, 5, 0)),
        ]),
}


def effort_str(v):
    return f"{v:.1f}"


def write_dataset(name, spec, out_dir):
    rng = random.Random(spec["seed"])
    n = spec["n"]
    efforts = make_efforts(rng, n, spec["lo"], spec["med"], spec["hi"], spec["sigma"])
    b = ColumnBuilder(rng, efforts)
    names, kinds, columns, achieved = [], [], [], []
    for cname, kind, gen in spec["cols"]:
        col, r = gen(b)
        names.append(cname)
        kinds.append(kind)
        columns.append(col)
        achieved.append(r)

    # sanity: exact summary statistics
    s = sorted(efforts)
    med = s[n // 2] if n % 2 else 0.5 * (s[n // 2 - 1] + s[n // 2])
    assert s[0] == spec["lo"] and s[-1] == spec["hi"] and med == spec["med"], name
    assert all(v > 0 for v in efforts)

    int_col = {cname: all(float(v).is_integer() for v in col)
               for cname, kind, col in zip(names, kinds, columns) if kind != "nom"}

    csv_path = out_dir / f"{name}.csv"
    with open(csv_path, "w") as f:
        f.write(",".join(names + [spec["effort"]]) + "\n")
        for i in range(n):
            row = []
            for cname, kind, col in zip(names, kinds, columns):
                v = col[i]
                if kind == "nom":
                    row.append(v)
                elif int_col[cname]:
                    row.append(str(int(v)))
                else:
                    row.append(repr(v))
            row.append(effort_str(efforts[i]))
            f.write(",".join(row) + "\n")

    nominal = [c for c, k in zip(names, kinds) if k == "nom"]
    ordinal = [c for c, k in zip(names, kinds) if k == "ord"]
    with open(out_dir / f"{name}.manifest", "w") as f:
        f.write(f"# schema for {name}.csv\n")
        f.write(f"effort = {spec['effort']}\n")
        if nominal:
            f.write(f"nominal = {', '.join(nominal)}\n")
        if ordinal:
            f.write(f"ordinal = {', '.join(ordinal)}\n")

    print(f"{name}: n={n} features={len(names)} min={s[0]} max={s[-1]} median={med}")
    parts = []
    for cname, kind, r in zip(names, kinds, achieved):
        parts.append(f"{cname}={'nom' if kind == 'nom' else f'{r:+.3f}'}")
    print("   " + "  ".join(parts))


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, spec in DATASETS.items():
        write_dataset(name, spec, out_dir)


if __name__ == "__main__":
    main()
