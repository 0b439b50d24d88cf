"""Command-line front end.

Subcommands: simulate, select-basis, features, detect, curve.  Every command
is deterministic given its inputs and flags; all outputs are CSV/JSON files
meant for external plotting or downstream tooling.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import atypicality, io, pipeline, selection, synth
from .errors import InsufficientData, InvalidArgument, WavemdlError
from .filters import default_library, get_basis, list_bases


def _add_io_args(p: argparse.ArgumentParser):
    p.add_argument("--input", required=True, help="input CSV (timestamp,value)")
    p.add_argument("--out", default=".", help="output directory (default: .)")


def _add_window_args(p: argparse.ArgumentParser):
    p.add_argument("--length", "-l", type=int, default=256, help="window length (default: 256)")
    p.add_argument("--stride", type=int, default=None, help="window stride (default: length)")


def _add_preprocess_args(p: argparse.ArgumentParser):
    p.add_argument("--bin-seconds", type=float, default=10.0,
                   help="downsampling bin width in seconds (default: 10)")
    p.add_argument("--min-value", type=float, default=30.0,
                   help="outlier floor; lower samples are repaired (default: 30)")
    p.add_argument("--max-drop", type=float, default=3.0,
                   help="max allowed drop below the last valid sample (default: 3)")
    p.add_argument("--raw", action="store_true",
                   help="skip downsampling and outlier repair")


def _preprocess(series, args):
    if args.raw:
        return series
    series = pipeline.downsample(series, args.bin_seconds)
    return pipeline.remove_outliers(series, args.min_value, args.max_drop)


def _resolve_library(spec: str):
    names = [n.strip() for n in spec.split(",") if n.strip()]
    if not names:
        raise InvalidArgument("empty wavelet library")
    return [get_basis(n) for n in names]


def cmd_select_basis(args) -> int:
    series = _preprocess(io.read_timeseries_csv(args.input), args)
    library = default_library() if args.wavelets == "all" else _resolve_library(args.wavelets)
    sums = pipeline.basis_codelengths(series, library, args.length, args.stride)
    ranked = sorted(sums, key=lambda bs: bs[1])
    io.write_csv(
        Path(args.out) / "basis_report.csv",
        ["basis", "total_bits"],
        [(b.name, bits) for b, bits in ranked],
    )
    best, bits = ranked[0]
    print(f"selected {best.name} ({io.fmt(bits)} bits over {len(sums)} bases)")
    return 0


def cmd_features(args) -> int:
    if args.split_ts is None:
        raise InvalidArgument("--split-ts is required to compute before/after ratios")
    split_ts = io.parse_timestamp(args.split_ts)
    series = _preprocess(io.read_timeseries_csv(args.input), args)
    if args.wavelet == "auto":
        basis, _ = pipeline.select_basis(series, default_library(), args.length, args.stride)
    else:
        basis = get_basis(args.wavelet)
    boundaries = pipeline.day_boundaries(
        series.timestamps[0], series.timestamps[-1], args.day_seconds, args.day_offset
    )
    split_day = int(np.searchsorted(boundaries, split_ts, side="right")) - 1
    out = Path(args.out)
    ratios = {}
    for sel in ("mdl", "aic", "bic"):
        profile = pipeline.k_profile(series, basis, args.length, args.stride, selector=sel)
        stats = pipeline.daily_stats(profile, boundaries)
        ratios[sel] = pipeline.shift_ratio(stats, split_day)
        if sel == "mdl":
            io.write_csv(
                out / "kprofile.csv",
                ["origin", "k", "k_fraction", "codelength_bits"],
                zip(profile.window_origins, profile.k_values,
                    profile.k_fraction, profile.score_bits),
            )
            io.write_csv(
                out / "daystats.csv",
                ["day", "mean", "std", "n"],
                [(d.day_index, d.mean_k_fraction, d.std_k_fraction, d.n_windows) for d in stats],
            )
    io.write_json(out / "ratios.json", {
        "basis": basis.name,
        "split_day": split_day,
        "split_ts": split_ts,
        "ratios": ratios,
    })
    print(f"shift ratios (after/before day {split_day}): "
          + ", ".join(f"{k}={v:.4g}" for k, v in ratios.items()))
    return 0


def cmd_detect(args) -> int:
    series = _preprocess(io.read_timeseries_csv(args.input), args)
    basis = get_basis(args.wavelet)
    train_end = io.parse_timestamp(args.train_end)
    test_start = io.parse_timestamp(args.test_start) if args.test_start else train_end
    if test_start < train_end:
        raise InvalidArgument("test range must start at or after the training range")
    train = series.slice_time(None, train_end)
    test = series.slice_time(test_start, None)
    dict_stride = args.dictionary_stride or 64

    if args.tau == "cv":
        cut = int(len(train) * (1.0 - args.val_frac))
        if cut < args.length or len(train) - cut < args.length:
            raise InsufficientData(
                "training range too short to hold out a validation slice; "
                "lower --val-frac or provide a numeric --tau"
            )
        fit = pipeline.TimeSeries(
            train.timestamps[:cut], train.values[:cut], train.sample_rate_hint
        )
        val = pipeline.TimeSeries(
            train.timestamps[cut:], train.values[cut:], train.sample_rate_hint
        )
        dictionary = atypicality.build_dictionary(
            pipeline.sliding_windows(fit, args.length, dict_stride), basis
        )
        val_scores = [
            r.score
            for r in atypicality.detect(val, dictionary, basis, args.length, args.stride,
                                        tau=math.inf)
        ]
        tau = atypicality.choose_tau(val_scores)
        tau_mode = "cv"
    else:
        tau = float(args.tau)
        if tau < 0:
            raise InvalidArgument(f"tau must be >= 0, got {tau}")
        dictionary = atypicality.build_dictionary(
            pipeline.sliding_windows(train, args.length, dict_stride), basis
        )
        tau_mode = "fixed"

    results = atypicality.detect(
        test, dictionary, basis, args.length, args.stride, tau=tau,
        flag_direction=args.flag_direction,
    )
    out = Path(args.out)
    io.save_dictionary(dictionary, out / "dictionary.json")
    io.write_csv(
        out / "detections.csv",
        ["origin", "L_t", "L_a_prime", "score", "flagged", "k_atypical"],
        [(r.origin, r.L_t, r.L_a_prime, r.score, r.flagged, r.k_atypical) for r in results],
    )
    intervals = atypicality.merge_flagged_intervals(results, args.length)
    t = test.timestamps
    io.write_json(out / "summary.json", {
        "tau": tau,
        "tau_mode": tau_mode,
        "dictionary_size": dictionary.size,
        "n_windows": len(results),
        "n_flagged": sum(r.flagged for r in results),
        "flagged_intervals": [[float(t[a]), float(t[b - 1])] for a, b in intervals],
    })
    print(f"flagged {sum(r.flagged for r in results)} of {len(results)} windows "
          f"(tau={io.fmt(tau)}, |D|={dictionary.size})")
    return 0


def cmd_curve(args) -> int:
    series = _preprocess(io.read_timeseries_csv(args.input), args)
    basis = get_basis(args.wavelet)
    windows = pipeline.sliding_windows(series, args.length, args.stride)
    if not 0 <= args.window < len(windows):
        raise InvalidArgument(f"window index {args.window} out of range [0, {len(windows)})")
    curve = selection.selection_curve(windows[args.window], basis)
    best = curve.argmin_k
    io.write_csv(
        Path(args.out) / "curve.csv",
        ["k", "complexity_bits", "error_bits", "total_bits", "is_argmin"],
        zip(curve.k, curve.complexity_bits, curve.error_bits, curve.total_bits,
            (int(k) == best for k in curve.k)),
    )
    print(f"window {args.window}: optimal k = {best} of {args.length // 2 - 1}")
    return 0


def cmd_simulate(args) -> int:
    out = Path(args.out)
    if args.kind == "ar2":
        series = synth.gen_ar2(args.a1, args.a2, args.n, args.noise_std, args.seed, dt=args.dt)
        labels: list = []
    elif args.kind == "sparse":
        basis = get_basis(args.wavelet)
        seg, support = synth.gen_sparse_in_basis(basis, args.length, args.k, args.snr_db, args.seed)
        series = pipeline.TimeSeries(args.dt * np.arange(seg.length), seg.samples,
                                     sample_rate_hint=1.0 / args.dt)
        labels = []
        io.write_json(out / "planted_support.json",
                      {"basis": basis.name, "k": args.k, "support": [int(i) for i in support]})
    elif args.kind == "challenge":
        params = {"days": args.days, "perturb_day": args.perturb_day,
                  "perturb": args.perturb, "dt": args.dt}
        if args.amount is not None:
            params["amount"] = args.amount
        spec = synth.SynthSpec(kind="challenge_like", seed=args.seed, params=params)
        series, labels = synth.gen_challenge_like(spec)
    else:  # unreachable through argparse choices
        raise InvalidArgument(f"unknown kind {args.kind!r}")
    io.write_timeseries_csv(out / "series.csv", series)
    io.write_json(out / "labels.json", {"intervals": [[a, b] for a, b in labels]})
    print(f"wrote {len(series)} samples to {out / 'series.csv'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavemdl",
        description="Codelength-optimal sparse wavelet representations for 1-D time series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("select-basis", help="rank wavelet bases by total codelength")
    _add_io_args(p)
    _add_window_args(p)
    _add_preprocess_args(p)
    p.add_argument("--wavelets", default="all",
                   help=f"comma list of bases or 'all' (available: {', '.join(list_bases())})")
    p.set_defaults(func=cmd_select_basis)

    p = sub.add_parser("features", help="k-profile, daily stats, and before/after shift ratios")
    _add_io_args(p)
    _add_window_args(p)
    _add_preprocess_args(p)
    p.add_argument("--wavelet", default="db8", help="basis name or 'auto' (default: db8)")
    p.add_argument("--split-ts", default=None,
                   help="event timestamp separating before/after (number or RFC3339)")
    p.add_argument("--day-seconds", type=float, default=86400.0)
    p.add_argument("--day-offset", type=float, default=0.0,
                   help="local-midnight offset in epoch seconds")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("detect", help="dictionary-vs-self codelength anomaly detection")
    _add_io_args(p)
    _add_window_args(p)
    _add_preprocess_args(p)
    p.add_argument("--wavelet", default="db8")
    p.add_argument("--train-end", required=True,
                   help="end of the training range (number or RFC3339)")
    p.add_argument("--test-start", default=None,
                   help="start of the test range (default: --train-end)")
    p.add_argument("--tau", default="cv",
                   help="detection threshold in bits, or 'cv' to calibrate on a "
                        "held-out slice of the training range (default: cv)")
    p.add_argument("--val-frac", type=float, default=0.25,
                   help="fraction of the training range held out when --tau cv")
    p.add_argument("--dictionary-stride", type=int, default=64,
                   help="stride for harvesting dictionary windows (default: 64)")
    p.add_argument("--flag-direction", default="atypical-shorter",
                   choices=["atypical-shorter", "typical-shorter"])
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("curve", help="per-k complexity/error/total columns for one window")
    _add_io_args(p)
    _add_window_args(p)
    _add_preprocess_args(p)
    p.add_argument("--wavelet", default="db8")
    p.add_argument("--window", type=int, default=0, help="window index (default: 0)")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("simulate", help="write synthetic datasets in the pipeline CSV format")
    p.add_argument("--kind", required=True, choices=["ar2", "sparse", "challenge"])
    p.add_argument("--out", default=".")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dt", type=float, default=10.0, help="sample spacing in seconds")
    p.add_argument("--n", type=int, default=4096, help="ar2: number of samples")
    p.add_argument("--a1", type=float, default=1.6, help="ar2: first coefficient")
    p.add_argument("--a2", type=float, default=-0.8, help="ar2: second coefficient")
    p.add_argument("--noise-std", type=float, default=1.0)
    p.add_argument("--wavelet", default="db8", help="sparse: synthesis basis")
    p.add_argument("--length", "-l", type=int, default=256, help="sparse: segment length")
    p.add_argument("--k", type=int, default=5, help="sparse: planted sparsity")
    p.add_argument("--snr-db", type=float, default=20.0, help="sparse: signal-to-noise ratio")
    p.add_argument("--days", type=int, default=8, help="challenge: simulated days")
    p.add_argument("--perturb-day", type=float, default=3, help="challenge: onset day (0-based)")
    p.add_argument("--perturb", default="variance_scale", choices=list(synth.PERTURB_KINDS))
    p.add_argument("--amount", type=float, default=None,
                   help="challenge: perturbation amount (default per kind)")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WavemdlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
