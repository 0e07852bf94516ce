"""Command-line entry points: scenario runs and the dashboard service."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import DatasetProfile, ModelConfig, PipelineConfig
from .evaluation import ScenarioConfig, balanced_subset, compare_detectors, run_scenario
from .explain import HttpDescriptionGenerator
from .service import EventLog, ServiceState, create_app, read_events, replay_log
from .synthetic import vocabulary_flip_stream


def _load_events(args) -> list:
    profile = DatasetProfile.by_name(args.profile)
    if args.input == "synthetic":
        return vocabulary_flip_stream(seed=args.seed)
    events, report = read_events(args.input, profile)
    print(
        f"ingested {report.parsed} events ({report.skipped} skipped), "
        f"classes {report.class_counts}",
        file=sys.stderr,
    )
    return events


def cmd_run(args) -> int:
    events = _load_events(args)
    if args.balanced:
        events = balanced_subset(events, args.seed)
    cfg = ScenarioConfig(
        scenario=args.scenario,
        model_kind=args.model,
        detector=args.detector,
        threads=args.threads,
        seed=args.seed,
        profile_name=args.profile,
    )
    report = run_scenario(cfg, events)
    out = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    print(out)
    return 0


def cmd_compare(args) -> int:
    events = _load_events(args)
    if args.balanced:
        events = balanced_subset(events, args.seed)
    reports = compare_detectors(events, model_kind=args.model, seed=args.seed)
    doc = {name: report.to_dict() for name, report in reports.items()}
    out = json.dumps(doc, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    print(out)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    profile = DatasetProfile.by_name(args.profile)
    config = PipelineConfig(
        profile=profile, model=ModelConfig(kind=args.model), detector_kind=args.detector
    )
    generator = None
    endpoint = os.environ.get("SPAMDRIFT_DESCRIBE_ENDPOINT")
    if endpoint:
        generator = HttpDescriptionGenerator(endpoint, os.environ.get("SPAMDRIFT_DESCRIBE_KEY"))

    if args.replay:
        state = replay_log(args.replay, config, snapshot_every=args.snapshot_every)
        state.generator = generator
    else:
        log = EventLog(args.log) if args.log else None
        state = ServiceState(config, log, snapshot_every=args.snapshot_every, generator=generator)
        events = _load_events(args)
        for event in events:
            state.process_event(event)
        print(f"processed {len(events)} events; serving on port {args.port}", file=sys.stderr)
    app = create_app(state, admin_token=os.environ.get("SPAMDRIFT_ADMIN_TOKEN"))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="spamdrift")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an evaluation scenario over a CSV or synthetic stream")
    run.add_argument("--scenario", type=int, choices=(1, 2, 3, 4), required=True)
    run.add_argument("--model", choices=("htc", "hatc", "arfc"), default="htc")
    run.add_argument("--detector", choices=("proposed", "eddm", "adwin"), default="proposed")
    run.add_argument("--threads", type=int, default=1)
    run.add_argument("--input", required=True, help="CSV path or 'synthetic'")
    run.add_argument("--profile", choices=("yelp", "mediawiki"), default="yelp")
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--balanced", action="store_true", help="undersample to equal class counts")
    run.add_argument("--out", help="write the JSON report here")
    run.set_defaults(func=cmd_run)

    compare = sub.add_parser(
        "compare", help="drift-adaptive run with each detector, side-by-side report"
    )
    compare.add_argument("--model", choices=("htc", "hatc", "arfc"), default="htc")
    compare.add_argument("--input", required=True, help="CSV path or 'synthetic'")
    compare.add_argument("--profile", choices=("yelp", "mediawiki"), default="yelp")
    compare.add_argument("--seed", type=int, default=42)
    compare.add_argument("--balanced", action="store_true")
    compare.add_argument("--out", help="write the JSON report here")
    compare.set_defaults(func=cmd_compare)

    serve = sub.add_parser("serve", help="process a stream and serve the dashboard API")
    serve.add_argument("--input", help="CSV path or 'synthetic'")
    serve.add_argument("--replay", help="rebuild state from an append-only log instead")
    serve.add_argument("--profile", choices=("yelp", "mediawiki"), default="yelp")
    serve.add_argument("--model", choices=("htc", "hatc", "arfc"), default="htc")
    serve.add_argument("--detector", choices=("proposed", "eddm", "adwin"), default="proposed")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--seed", type=int, default=42)
    serve.add_argument("--snapshot-every", type=int, default=50)
    serve.add_argument("--log", help="append-only event log path")
    serve.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    if args.command == "serve" and not args.input and not args.replay:
        serve.error("one of --input or --replay is required")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
