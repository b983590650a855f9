"""Command line front end: every operation as a subcommand.

Each run emits a single payload {version, config, result} as JSON
(default) or CSV. The echoed config holds every data-affecting flag, so
writing it back as key=value lines and re-running
`pairlab <subcommand> --config <file>` reproduces the output byte for
byte; --out, --format, and --threads never change the data. The two
formats encode identical payloads: CSV uses key,value rows with
JSON-encoded cells, or, when the result carries a row table, scalars on
'# key=value' comment lines above a regular CSV table (plotter-ready).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import traceback
from fractions import Fraction
from math import sqrt

from pairlab import __version__, bourgain, gcdsum, metricmc, paircorr, seqgen
from pairlab import energy as energylib
from pairlab.arith import DEFAULT_BITS, UnitPoint, frac_nums, parse_alpha
from pairlab.errors import ValidationError
from pairlab.parallel import default_threads

RESULT_MAGIC = "# pairlab-result v1"

# flags that shape the output stream, not the data; excluded from the
# config echo so re-runs under any of them stay byte-identical
NON_DATA_KEYS = {"config", "out", "format", "threads", "func", "subcommand"}


# ---- sequence resolution ----

def _spec_from_args(args) -> seqgen.SequenceSpec:
    spec_text = getattr(args, "spec", None)
    set_text = getattr(args, "set", None)
    if spec_text and set_text:
        raise ValidationError("give either --spec or --set, not both")
    if set_text:
        spec_text = "set:" + set_text
    if not spec_text:
        raise ValidationError("a sequence is required: --spec or --set")
    return seqgen.parse_spec(spec_text)


def _sequence(args) -> seqgen.Sequence:
    spec = _spec_from_args(args)
    n = getattr(args, "n", None)
    if n is None:
        if isinstance(spec, seqgen.Explicit):
            n = len(spec.values)
        elif isinstance(spec, seqgen.FromFile):
            return seqgen.load_sequence(spec.path)
        else:
            raise ValidationError("--N is required for generated sequences")
    return seqgen.generate(spec, n)


def _threads(args) -> int:
    return args.threads if args.threads is not None else default_threads()


# ---- subcommand implementations (each returns the result dict) ----

def cmd_gen(args):
    seq = _sequence(args)
    if args.save:
        seqgen.save_sequence(seq, args.save)
    rows = [{"x": i + 1, "value": v} for i, v in enumerate(seq.values)]
    return {"spec": seqgen.spec_label(seq.spec), "n": seq.n, "rows": rows}


def cmd_r2(args):
    seq = _sequence(args)
    alpha = parse_alpha(args.alpha, args.alpha_mode, args.bits)
    stat = paircorr.r2_sequence(alpha, seq, args.s)
    return {"n": stat.n, "s": str(stat.s), "count": stat.ordered_pair_count,
            "value": stat.value,
            "target_mean": float(2 * (stat.n - 1) * stat.s / stat.n),
            "alpha": alpha.payload()}


def cmd_gaps(args):
    seq = _sequence(args)
    alpha = parse_alpha(args.alpha, args.alpha_mode, args.bits)
    nums = frac_nums(alpha, list(seq.values))
    prof = paircorr.gap_profile([UnitPoint(v, alpha.den) for v in nums])
    mult: dict[int, int] = {}
    for g in prof.gap_nums:
        mult[g] = mult.get(g, 0) + 1
    rows = [{"num": g, "count": c, "gap": g / prof.den}
            for g, c in sorted(mult.items())]
    return {"n": seq.n, "den": prof.den,
            "distinct_gap_count": prof.distinct_gap_count,
            "alpha": alpha.payload(), "rows": rows}


def cmd_energy(args):
    seq = _sequence(args)
    rep = energylib.energy(seq, args.algorithm)
    return {"n": rep.n, "E": rep.e, "algorithm": rep.algorithm}


def cmd_energy_scan(args):
    spec = seqgen.parse_spec(args.spec)
    sizes = _int_list(args.sizes, "--sizes")
    fit = energylib.energy_scan(spec, sizes, args.algorithm)
    rows = [{"n": n, "E": e} for n, e in fit.points]
    return {"spec": args.spec, "slope": fit.slope, "intercept": fit.intercept,
            "residual": fit.residual, "rows": rows}


def cmd_autocorr(args):
    seq = _sequence(args)
    prof = energylib.autocorrelation(seq)
    rows = [{"k": k, "count": prof.counts[k]} for k in sorted(prof.counts)]
    return {"n": prof.n, "max_shifted": prof.max_shifted(),
            "energy": prof.energy(), "total": prof.total(), "rows": rows}


def cmd_rz_count(args):
    seq = _sequence(args)
    count = energylib.rz_solution_count(seq, args.m)
    return {"n": seq.n, "M": args.m, "count": count}


def cmd_gcdsum(args):
    if args.ms:
        ms = _int_list(args.ms, "--ms")
    elif args.m is not None:
        ms = list(range(1, args.m + 1))
    else:
        raise ValidationError("gcdsum needs --M or --ms")
    if args.bs:
        bs = [float(x) for x in args.bs.split(",")]
    else:
        bs = [1.0 / sqrt(len(ms))] * len(ms)
    inp = gcdsum.make_gcd_input(ms, bs)
    chk = gcdsum.gcd_sum_bound_check(inp, args.kappa, max_ratio=1.0)
    return {"M": len(ms), "value": chk.lhs, "bound": chk.rhs,
            "ratio": chk.ratio, "kappa": args.kappa, "passed": chk.passed}


def cmd_coeff_check(args):
    if args.v == 0 or args.w == 0:
        raise ValidationError("v and w must be nonzero")
    fc = gcdsum.make_fc(Fraction(args.s), args.n)
    out = {"N": args.n, "s": args.s, "v": args.v, "w": args.w,
           "pair_sum": gcdsum.coefficient_pair_sum(args.v, args.w, fc,
                                                   rel_tol=args.rel_tol),
           "cnto": gcdsum.cnto_gcd_check(args.v, args.w, fc,
                                         rel_tol=args.rel_tol).payload()}
    if args.m is not None:
        out["dyadic"] = gcdsum.cnto_gcd_dyadic_check(args.v, args.w, fc,
                                                     args.m).payload()
    if args.h is not None:
        out["regime"] = gcdsum.regime_bounds_check(args.v, args.w, args.h,
                                                   fc).payload()
    return out


def cmd_variance(args):
    spec = _spec_from_args(args)
    n = args.n
    if n is None:
        if not isinstance(spec, seqgen.Explicit):
            raise ValidationError("--N is required for generated sequences")
        n = len(spec.values)
    est = metricmc.variance_estimate(spec, n, args.s, args.samples, args.seed,
                                     args.bits, threads=_threads(args))
    out = {"estimate": est.payload()}
    if args.kappa_hat is not None:
        rep = energylib.energy(seqgen.generate(spec, n))
        out["bound"] = metricmc.variance_bound_check(est, rep,
                                                     args.kappa_hat).payload()
    return out


def cmd_mean_check(args):
    seq = _sequence(args)
    s = Fraction(args.s)
    if s <= 0:
        raise ValidationError(f"s must be positive, got {args.s}")
    q = args.q
    if q is None:
        # smallest prime q with q*s > 2*max(A)*N
        q = (2 * seq.values[-1] * seq.n * s.denominator) // s.numerator + 1
        while not paircorr._is_prime(q):
            q += 1
    rep = paircorr.grid_mean_check(list(seq.values), s, q)
    return rep.payload()


def cmd_bourgain_lemma(args):
    params = bourgain.RandomSetParams(args.n, args.k, args.seed)
    a, resamples = bourgain.sample_set(params)
    lem = bourgain.lemma6_check(a, params)
    eb = bourgain.energy_bound_check(a, params)
    return {"N": args.n, "K": args.k, "seed": args.seed,
            "resamples": resamples, "lemma6": lem.payload(),
            "energy": eb.payload()}


def cmd_bourgain_blowup(args):
    params = bourgain.RandomSetParams(args.n, args.k, args.seed)
    a, resamples = bourgain.sample_set(params)
    rep = bourgain.blowup_experiment(a, params, args.q, args.p,
                                     args.interval_sample)
    out = rep.payload()
    out.update({"N": args.n, "K": args.k, "seed": args.seed,
                "resamples": resamples})
    return out


def cmd_bourgain_campaign(args):
    schedule = []
    for part in args.schedule.split(","):
        try:
            n_txt, k_txt = part.split(":")
            schedule.append((int(n_txt), int(k_txt)))
        except ValueError:
            raise ValidationError(f"bad schedule entry {part!r}; want N:K") from None
    seeds = _seed_list(args.seeds)
    rows, summary = bourgain.run_campaign(schedule, seeds)
    return {"rows": rows, "summary": summary}


def cmd_measure_check(args):
    seq = _sequence(args)
    rep = metricmc.measure_check(list(seq.values), args.eps, args.samples,
                                 args.seed)
    out = rep.payload()
    out["eps"] = args.eps
    return out


def cmd_dim_bound(args):
    b = metricmc.dimension_bound(args.d, args.eps)
    return {"d": b.d, "epsilon": b.epsilon, "bound": b.bound}


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ValidationError(f"{flag} wants comma-separated integers, got {text!r}") from None


def _seed_list(text: str) -> list[int]:
    """'a:b' means range(a, b); otherwise comma-separated integers."""
    if ":" in text:
        try:
            a, b = (int(x) for x in text.split(":"))
        except ValueError:
            raise ValidationError(f"bad seed range {text!r}; want a:b") from None
        if b <= a:
            raise ValidationError(f"empty seed range {text!r}")
        return list(range(a, b))
    return _int_list(text, "--seeds")


# ---- parser ----

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pairlab",
        description="pair correlation / additive energy / gcd-sum experiments")
    top.add_argument("--version", action="version",
                     version=f"pairlab {__version__}")
    subs = top.add_subparsers(dest="subcommand", required=True,
                              metavar="subcommand")
    top._pairlab_subs = {}

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="key=value lines; explicit flags override")
    common.add_argument("--out", metavar="FILE",
                        help="write the payload here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=None,
                        help="parallelism bound (default $PAIRLAB_THREADS or 1); "
                        "never changes results")
    common.add_argument("--seed", type=int, default=0,
                        help="master seed for randomized subcommands")

    seqargs = argparse.ArgumentParser(add_help=False)
    seqargs.add_argument("--spec",
                         help="sequence spec: mono:d, poly:a0,a1,..., lac:c[,start], "
                         "pow2, ps:beta,alpha, convex:rule[,params], ap:start,step, "
                         "file:PATH, set:v1,v2,...")
    seqargs.add_argument("--set", metavar="V1,V2,...",
                         help="explicit values (shorthand for --spec set:...)")
    seqargs.add_argument("--N", dest="n", type=int, help="number of terms")

    alphargs = argparse.ArgumentParser(add_help=False)
    alphargs.add_argument("--alpha", required=True,
                          help="dilation: p/q, decimal, or random:<seed>")
    alphargs.add_argument("--alpha-mode", choices=("auto", "fixed"),
                          default="auto",
                          help="fixed forces p/q through fixed-point truncation")
    alphargs.add_argument("--bits", type=int, default=DEFAULT_BITS,
                          help="fixed-point precision B")

    def add(name, func, parents, helptext, csv_note=""):
        p = subs.add_parser(name, parents=parents, help=helptext,
                            description=helptext + (f"\nCSV table columns: {csv_note}"
                                                    if csv_note else ""),
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        top._pairlab_subs[name] = p
        return p

    p = add("gen", cmd_gen, [common, seqargs],
            "generate a sequence and emit its values", csv_note="x,value")
    p.add_argument("--save", metavar="FILE",
                   help="also write the sequence file (loadable via file:PATH)")

    add("r2", cmd_r2, [common, seqargs, alphargs],
        "pair correlation R2([-s,s]) of the dilated sequence")
    last = top._pairlab_subs["r2"]
    last.add_argument("--s", default="1", help="interval half-width (fraction)")

    add("gaps", cmd_gaps, [common, seqargs, alphargs],
        "sorted circular gap profile of the dilated sequence",
        csv_note="num,count,gap")

    p = add("energy", cmd_energy, [common, seqargs], "additive energy E(A)")
    p.add_argument("--algorithm", choices=("auto", "hash", "convolution", "oracle"),
                   default="auto")

    p = add("energy-scan", cmd_energy_scan, [common],
            "energy at dyadic sizes plus fitted log-log slope", csv_note="n,E")
    p.add_argument("--spec", required=True)
    p.add_argument("--sizes", required=True, metavar="N1,N2,...",
                   help="increasing dyadic sizes, at least 4")
    p.add_argument("--algorithm", choices=("auto", "hash", "convolution", "oracle"),
                   default="auto")

    add("autocorr", cmd_autocorr, [common, seqargs],
        "autocorrelation profile d(k), k > 0", csv_note="k,count")

    p = add("rz-count", cmd_rz_count, [common, seqargs],
            "solutions of n*(a(x)-a(y)) = m*(a(z)-a(w)) with 0 < |n|,|m| <= M")
    p.add_argument("--M", dest="m", type=int, required=True)

    p = add("gcdsum", cmd_gcdsum, [common],
            "gcd-sum quadratic form against the exponential bound")
    p.add_argument("--M", dest="m", type=int,
                   help="use m = 1..M with uniform normalized coefficients")
    p.add_argument("--ms", metavar="M1,M2,...", help="explicit m values")
    p.add_argument("--bs", metavar="B1,B2,...",
                   help="explicit coefficients (default uniform 1/sqrt(len))")
    p.add_argument("--kappa", type=float, default=4.0)

    p = add("coeff-check", cmd_coeff_check, [common],
            "Fourier coefficient pair sums and their bounds for a pair (v, w)")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--N", dest="n", type=int, required=True)
    p.add_argument("--s", default="1")
    p.add_argument("--h", type=int, help="also check the per-h regime bound")
    p.add_argument("--m", type=int, help="also check the dyadic window 2^m")
    p.add_argument("--rel-tol", type=float, default=1e-15)

    p = add("variance", cmd_variance, [common, seqargs],
            "Monte Carlo variance of R2 over random alpha")
    p.add_argument("--s", default="1")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--bits", type=int, default=DEFAULT_BITS)
    p.add_argument("--kappa-hat", type=float,
                   help="also report the energy-based variance bound")

    p = add("mean-check", cmd_mean_check, [common, seqargs],
            "exact rational-grid average of R2 against 2(N-1)s/N")
    p.add_argument("--s", default="1")
    p.add_argument("--q", type=int,
                   help="prime grid size (default: smallest admissible prime)")

    p = add("bourgain-lemma", cmd_bourgain_lemma, [common],
            "random-set autocorrelation and energy ceilings at one seed")
    p.add_argument("--N", dest="n", type=int, required=True)
    p.add_argument("--K", dest="k", type=int, required=True)

    p = add("bourgain-blowup", cmd_bourgain_blowup, [common],
            "R2 blow-up of the random set at a rational dilation p/q")
    p.add_argument("--N", dest="n", type=int, required=True)
    p.add_argument("--K", dest="k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--interval-sample", action="store_true",
                   help="sample alpha inside the resonant interval around p/q")

    p = add("bourgain-campaign", cmd_bourgain_campaign, [common],
            "batch of random-set experiments over a schedule of (N, K)",
            csv_note=",".join(bourgain.CAMPAIGN_COLUMNS))
    p.add_argument("--schedule", required=True, metavar="N:K[,N:K...]")
    p.add_argument("--seeds", required=True, metavar="A:B|S1,S2,...",
                   help="seed range a:b (half-open) or explicit list")

    p = add("measure-check", cmd_measure_check, [common, seqargs],
            "measure of dilations resonating with some difference of B")
    p.add_argument("--eps", required=True,
                   help="epsilon in (0,1), exact fraction or decimal")
    p.add_argument("--samples", type=int, default=100_000)

    p = add("dim-bound", cmd_dim_bound, [common],
            "exceptional-set dimension bound (d+3-eps)/(d+3)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)

    return top


# ---- config echo / config file ----

def _resolved_config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items()
           if k not in NON_DATA_KEYS and v is not None}
    cfg["subcommand"] = args.subcommand
    return cfg


def config_lines(cfg: dict) -> str:
    """Render an echoed config as a --config file."""
    lines = []
    for k in sorted(cfg):
        v = cfg[k]
        if isinstance(v, bool):
            v = "true" if v else "false"
        lines.append(f"{k}={v}")
    return "\n".join(lines) + "\n"


def _apply_config_file(argv: list[str], parser) -> list[str]:
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise ValidationError("--config needs a file path")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2:]
    sub = None
    if rest and not rest[0].startswith("-"):
        sub, rest = rest[0], rest[1:]
    pairs = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, eq, value = line.partition("=")
                if not eq:
                    raise ValidationError(f"{path}:{lineno}: want key=value")
                pairs.append((key.strip(), value.strip()))
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from None
    filesub = dict(pairs).get("subcommand")
    if sub is None:
        sub = filesub
        if sub is None:
            raise ValidationError("config gives no subcommand and none was "
                                  "passed on the command line")
    elif filesub not in (None, sub):
        raise ValidationError(f"config subcommand {filesub!r} conflicts "
                              f"with {sub!r}")
    sp = parser._pairlab_subs.get(sub)
    if sp is None:
        raise ValidationError(f"unknown subcommand {sub!r} in config")
    actions = {a.dest: a for a in sp._actions if a.option_strings}
    flags = []
    for key, value in pairs:
        if key == "subcommand":
            continue
        if key == "config":
            raise ValidationError("config files cannot nest --config")
        action = actions.get(key)
        if action is None:
            raise ValidationError(f"unknown config key {key!r} for {sub}")
        if isinstance(action, argparse._StoreTrueAction):
            low = value.lower()
            if low in ("true", "1", "yes"):
                flags.append(action.option_strings[-1])
            elif low not in ("false", "0", "no"):
                raise ValidationError(f"config key {key!r} wants true/false")
        else:
            flags.extend([action.option_strings[-1], value])
    return [sub] + flags + rest


# ---- emission ----

def to_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def flatten(obj, prefix: str = "") -> list[tuple[str, object]]:
    """Dotted (key, scalar) pairs; list indices become path segments.
    Empty containers are not representable and never emitted."""
    out: list[tuple[str, object]] = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            out.extend(flatten(obj[k], f"{prefix}{k}."))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            out.extend(flatten(v, f"{prefix}{i}."))
    else:
        out.append((prefix[:-1], obj))
    return out


def unflatten(pairs: list[tuple[str, object]]):
    root: dict = {}
    for key, value in pairs:
        parts = key.split(".")
        node = root
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = value
    return _listify(root)


def _listify(node):
    if not isinstance(node, dict):
        return node
    out = {k: _listify(v) for k, v in node.items()}
    if out and all(k.isdigit() for k in out):
        idx = sorted(int(k) for k in out)
        if idx == list(range(len(idx))):
            return [out[str(i)] for i in idx]
    return out


def to_csv(payload: dict) -> str:
    result = payload.get("result")
    rows = result.get("rows") if isinstance(result, dict) else None
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(rows, list):
        rest = {k: v for k, v in payload.items() if k != "result"}
        rest["result"] = {k: v for k, v in result.items() if k != "rows"}
        lines = [RESULT_MAGIC]
        for key, value in flatten(rest):
            lines.append(f"# {key}={json.dumps(value)}")
        cols = list(rows[0].keys()) if rows else []
        lines.append("# columns=" + json.dumps(cols))
        writer.writerow(cols)
        for row in rows:
            writer.writerow([json.dumps(row[c]) for c in cols])
        return "\n".join(lines) + "\n" + buf.getvalue()
    writer.writerow(["key", "value"])
    for key, value in flatten(payload):
        writer.writerow([key, json.dumps(value)])
    return RESULT_MAGIC + "\n" + buf.getvalue()


def read_result(text: str) -> dict:
    """Parse either output format back into the payload dict."""
    if text.lstrip().startswith("{"):
        return json.loads(text)
    lines = text.splitlines()
    if not lines or lines[0] != RESULT_MAGIC:
        raise ValidationError("not a pairlab result")
    if len(lines) > 1 and lines[1].startswith("# "):
        scalars = []
        cols = None
        body_at = None
        for i, line in enumerate(lines[1:], 1):
            if not line.startswith("# "):
                body_at = i
                break
            key, _, value = line[2:].partition("=")
            if key == "columns":
                cols = json.loads(value)
            else:
                scalars.append((key, json.loads(value)))
        payload = unflatten(scalars)
        rows = []
        if body_at is not None:
            body = list(csv.reader(lines[body_at:]))
            for cells in body[1:]:
                rows.append({c: json.loads(x) for c, x in zip(cols, cells)})
        payload.setdefault("result", {})["rows"] = rows
        return payload
    pairs = []
    for cells in list(csv.reader(lines[1:]))[1:]:
        pairs.append((cells[0], json.loads(cells[1])))
    return unflatten(pairs)


def _emit(payload: dict, args) -> None:
    text = to_json(payload) if args.format == "json" else to_csv(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---- entry point ----

def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config_file(argv, parser)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else 2
        result = args.func(args)
        payload = {"version": __version__, "config": _resolved_config(args),
                   "result": result}
        _emit(payload, args)
        return 0
    except ValidationError as exc:
        print(f"pairlab: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except Exception:
        traceback.print_exc()
        return 1
