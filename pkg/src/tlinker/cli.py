"""Command line entry point.

    tlinker tag      raw .txt (or .tml) files -> .tml with EVENT and TIMEX3 tags
    tlinker link     tagged .tml files -> .tml with TLINKs
    tlinker pipeline tag and link in one go
    tlinker eval     score a system directory against a gold directory

Exit status is 0 on success, 1 when any file failed and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path

from .evaluate import AlignmentError, EvalReport, MatchMode, count_report, evaluate, format_counts, format_report
from .lexicons import LexiconError, default_before_keywords, default_time_words, default_verbs
from .model import AnnotatedDocument
from .pipeline import Lexicons, relink, tag_text
from .timeml import TimeMLError, read_timeml, serialize_timeml
from .tlinks import ClassifierConfig, ConfigError, load_config

log = logging.getLogger("tlinker")

INPUT_SUFFIXES = (".txt", ".tml")


class UsageError(Exception):
    pass


def _collect(paths, suffixes) -> list[Path]:
    files = []
    for p in map(Path, paths):
        if p.is_dir():
            files.extend(sorted(f for f in p.iterdir() if f.is_file() and f.suffix in suffixes))
        else:
            files.append(p)
    return files


def _check_output_dir(files: list[Path], out_dir: Path, overwrite: bool) -> None:
    if overwrite:
        return
    out = out_dir.resolve()
    for f in files:
        if f.parent.resolve() == out:
            raise UsageError(f"output directory {out_dir} holds input {f.name}; pass --overwrite")


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _lexicons(args) -> Lexicons:
    return Lexicons(verbs=default_verbs(args.lexicon_verbs), time_words=default_time_words(args.lexicon_time))


def _classifier(args) -> ClassifierConfig:
    cfg = ClassifierConfig(before_keywords=default_before_keywords(args.lexicon_before))
    if args.config:
        path = Path(args.config)
        cfg = load_config(path.read_text(encoding="utf-8"), cfg, root=path.parent)
    changes = {}
    if args.window is not None:
        changes["window"] = args.window
    if args.max_sentence_gap is not None:
        changes["max_sentence_gap"] = None if args.max_sentence_gap < 0 else args.max_sentence_gap
    if args.no_inverse:
        changes["emit_inverse"] = False
    return replace(cfg, **changes)


def _read_input(path: Path) -> AnnotatedDocument:
    if path.suffix == ".tml":
        return read_timeml(path)
    text = path.read_bytes().decode("utf-8")
    return AnnotatedDocument(text, doc_id=path.stem)


def _run_stages(args, do_tag: bool, do_link: bool) -> int:
    files = _collect(args.inputs, INPUT_SUFFIXES if do_tag else (".tml",))
    out_dir = Path(args.output_dir)
    _check_output_dir(files, out_dir, args.overwrite)
    lexicons = _lexicons(args) if do_tag else None
    cfg = _classifier(args) if do_link else None

    failed = False
    for path in files:
        try:
            doc = _read_input(path)
            if do_tag:
                doc = tag_text(doc.raw_text, path.stem, lexicons)
            if do_link:
                if not doc.events:
                    log.warning("%s: no events, nothing to link", path.name)
                else:
                    if doc.tlinks:
                        log.warning("%s: replacing %d existing TLINKs", path.name, len(doc.tlinks))
                    doc = relink(doc, cfg)
                    if not doc.tlinks:
                        log.warning("%s: no relations found", path.name)
            _write_atomic(out_dir / f"{path.stem}.tml", serialize_timeml(doc))
        except (OSError, UnicodeDecodeError, TimeMLError) as exc:
            log.error("%s: %s", path, exc)
            failed = True
            continue
        fields = [doc.doc_id]
        if do_tag:
            fields += [f"events={len(doc.events)}", f"timexes={len(doc.timexes)}"]
        if do_link:
            fields.append(f"tlinks={len(doc.tlinks)}")
        print("\t".join(fields))
    return 1 if failed else 0


def cmd_tag(args) -> int:
    return _run_stages(args, do_tag=True, do_link=False)


def cmd_link(args) -> int:
    return _run_stages(args, do_tag=False, do_link=True)


def cmd_pipeline(args) -> int:
    return _run_stages(args, do_tag=True, do_link=True)


def cmd_eval(args) -> int:
    gold_dir, sys_dir = Path(args.gold_dir), Path(args.system_dir)
    for d in (gold_dir, sys_dir):
        if not d.is_dir():
            raise UsageError(f"{d} is not a directory")
    gold = {p.name: p for p in gold_dir.glob("*.tml")}
    system = {p.name: p for p in sys_dir.glob("*.tml")}
    for name in sorted(gold.keys() ^ system.keys()):
        side = "gold" if name in gold else "system"
        log.warning("%s: only in %s directory, skipped", name, side)

    mode = MatchMode(args.match)
    failed = False
    reports, pairs = [], []
    for name in sorted(gold.keys() & system.keys()):
        try:
            g, s = read_timeml(gold[name]), read_timeml(system[name])
            reports.append(evaluate(g, s, mode))
        except (OSError, TimeMLError, AlignmentError) as exc:
            log.error("%s: %s", name, exc)
            failed = True
            continue
        pairs.append((g, s))

    total = EvalReport.combine(reports)
    print(format_report(total, tsv=args.tsv), end="")
    print()
    print(format_counts(count_report(pairs), tsv=args.tsv), end="")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tlinker", description="Rule-based TimeML EVENT/TIMEX3/TLINK annotation")
    sub = parser.add_subparsers(dest="command", required=True)

    def stage(name, func, help_text, tagging, linking):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("inputs", nargs="+", help="files or directories")
        p.add_argument("-o", "--output-dir", required=True)
        p.add_argument("--overwrite", action="store_true", help="allow writing into an input directory")
        if tagging:
            p.add_argument("--lexicon-verbs", metavar="FILE")
            p.add_argument("--lexicon-time", metavar="FILE")
        if linking:
            p.add_argument("--lexicon-before", metavar="FILE")
            p.add_argument("--config", metavar="FILE", help="classifier key=value file")
            p.add_argument("--window", type=int, metavar="N")
            p.add_argument(
                "--max-sentence-gap", type=int, metavar="N", help="negative for no limit (default 1)"
            )
            p.add_argument("--no-inverse", action="store_true", help="do not emit implied inverse links")
        p.set_defaults(func=func)

    stage("tag", cmd_tag, "add EVENT and TIMEX3 tags", True, False)
    stage("link", cmd_link, "add TLINKs to tagged files", False, True)
    stage("pipeline", cmd_pipeline, "tag and link", True, True)

    p = sub.add_parser("eval", help="score system output against gold files")
    p.add_argument("gold_dir")
    p.add_argument("system_dir")
    p.add_argument("--match", choices=[m.value for m in MatchMode], default="exact")
    p.add_argument("--tsv", action="store_true")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(format="%(name)s: %(levelname)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError, LexiconError) as exc:
        log.error("%s", exc)
        return 2
    except OSError as exc:
        # an unreadable lexicon or config file is a usage problem
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
